#pragma once

// JSON encodings shared by the CLI and the report. Decoders report schema
// violations as Error(kSchema) with a JSON-pointer location.

#include <string>

#include <json.hpp>

#include "holofol/algebra.hpp"
#include "holofol/foliation.hpp"
#include "holofol/holonomy.hpp"
#include "holofol/loops.hpp"

namespace holofol::json_io {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "foliation/1";

Json encode(Complex c);
Json encode(const BivarPoly& p);
Json encode(const LaurentPoly& p);
Json encode(const RationalFunc1& r);
Json encode(const VectorFieldC2& field);
Json encode(const RationalOneForm& form);
Json encode(const LoopSpec& loop);
Json encode(const HolonomyResult& result);

std::string to_string(Orientation o);
std::string to_string(HolonomyMethod m);

Complex decode_complex(const Json& j, const std::string& where);
BivarPoly decode_bivar(const Json& j, const std::string& where);
LaurentPoly decode_laurent(const Json& j, const std::string& where);
/// Accepts {"num": ..., "den": ...} or a bare LaurentPoly list.
RationalFunc1 decode_rational(const Json& j, const std::string& where);
VectorFieldC2 decode_field(const Json& j, const std::string& where);
/// The curve object {"F": ...}.
BivarPoly decode_curve(const Json& j, const std::string& where);
LoopSpec decode_loop(const Json& j, const std::string& where);
Orientation decode_orientation(const Json& j, const std::string& where);

/// Rejects documents that carry a "schema" other than foliation/1.
void check_schema(const Json& document);

const Json& require(const Json& j, const std::string& key, const std::string& where);
double decode_number(const Json& j, const std::string& where);
int decode_int(const Json& j, const std::string& where);

}  // namespace holofol::json_io
