#include "holofol/json_io.hpp"

#include <cmath>

#include "holofol/errors.hpp"

namespace holofol::json_io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::kSchema, (where.empty() ? "/" : where) + ": " + what);
}

std::string child(const std::string& where, const std::string& key) {
  return where + "/" + key;
}

std::string child(const std::string& where, std::size_t index) {
  return where + "/" + std::to_string(index);
}

const Json& require_array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

}  // namespace

const Json& require(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(child(where, key), "missing required member");
  return *it;
}

double decode_number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "expected a finite number");
  return v;
}

int decode_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

Json encode(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

Complex decode_complex(const Json& j, const std::string& where) {
  if (j.is_number()) return decode_number(j, where);
  return {decode_number(require(j, "re", where), child(where, "re")),
          decode_number(require(j, "im", where), child(where, "im"))};
}

Json encode(const BivarPoly& p) {
  Json out = Json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    out.push_back(Json{{"i", it->first.i},
                       {"j", it->first.j},
                       {"re", it->second.real()},
                       {"im", it->second.imag()}});
  }
  return out;
}

BivarPoly decode_bivar(const Json& j, const std::string& where) {
  require_array(j, where);
  BivarPoly::TermMap terms;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = child(where, k);
    const Json& term = j[k];
    const int i = decode_int(require(term, "i", at), child(at, "i"));
    const int jj = decode_int(require(term, "j", at), child(at, "j"));
    if (i < 0 || jj < 0) fail(at, "exponents must be non-negative");
    const double re = decode_number(require(term, "re", at), child(at, "re"));
    const double im = term.contains("im") ? decode_number(term["im"], child(at, "im")) : 0.0;
    terms[{i, jj}] += Complex{re, im};
  }
  return BivarPoly::from_terms(std::move(terms));
}

Json encode(const LaurentPoly& p) {
  Json out = Json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    out.push_back(Json{{"k", it->first}, {"re", it->second.real()}, {"im", it->second.imag()}});
  }
  return out;
}

LaurentPoly decode_laurent(const Json& j, const std::string& where) {
  require_array(j, where);
  LaurentPoly::TermMap terms;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = child(where, k);
    const Json& term = j[k];
    const int e = decode_int(require(term, "k", at), child(at, "k"));
    const double re = decode_number(require(term, "re", at), child(at, "re"));
    const double im = term.contains("im") ? decode_number(term["im"], child(at, "im")) : 0.0;
    terms[e] += Complex{re, im};
  }
  return LaurentPoly::from_terms(std::move(terms));
}

namespace {

LaurentPoly as_laurent(const Poly1& p) {
  LaurentPoly::TermMap terms;
  for (int k = 0; k <= p.degree(); ++k) {
    if (p[k] != Complex{}) terms[k] = p[k];
  }
  return LaurentPoly::from_terms(std::move(terms));
}

}  // namespace

Json encode(const RationalFunc1& r) {
  return Json{{"num", encode(as_laurent(r.num()))}, {"den", encode(as_laurent(r.den()))}};
}

RationalFunc1 decode_rational(const Json& j, const std::string& where) {
  if (j.is_array()) return RationalFunc1::from_laurent(decode_laurent(j, where));
  const LaurentPoly num = decode_laurent(require(j, "num", where), child(where, "num"));
  const LaurentPoly den = j.contains("den") ? decode_laurent(j["den"], child(where, "den"))
                                            : LaurentPoly::monomial(1.0, 0);
  if (den.is_zero()) fail(child(where, "den"), "denominator is identically zero");
  return RationalFunc1::from_laurent(num, den);
}

Json encode(const VectorFieldC2& field) {
  return Json{{"P", encode(field.P)}, {"Q", encode(field.Q)}};
}

VectorFieldC2 decode_field(const Json& j, const std::string& where) {
  BivarPoly P = decode_bivar(require(j, "P", where), child(where, "P"));
  BivarPoly Q = decode_bivar(require(j, "Q", where), child(where, "Q"));
  if (P.is_zero() && Q.is_zero()) fail(where, "both field components are zero");
  return VectorFieldC2::make(std::move(P), std::move(Q));
}

BivarPoly decode_curve(const Json& j, const std::string& where) {
  BivarPoly F = decode_bivar(require(j, "F", where), child(where, "F"));
  if (F.is_zero()) fail(child(where, "F"), "curve polynomial is zero");
  return F;
}

Json encode(const RationalOneForm& form) {
  auto coeff = [](const RationalCoeff& c) {
    return Json{{"num", encode(c.num)}, {"den", encode(c.den)}};
  };
  return Json{{"dz", coeff(form.a)}, {"dw", coeff(form.b)}};
}

std::string to_string(Orientation o) { return o == Orientation::ccw ? "ccw" : "cw"; }

std::string to_string(HolonomyMethod m) {
  return m == HolonomyMethod::variational ? "variational" : "finite_difference";
}

Orientation decode_orientation(const Json& j, const std::string& where) {
  if (j == "ccw") return Orientation::ccw;
  if (j == "cw") return Orientation::cw;
  fail(where, "orientation must be \"ccw\" or \"cw\"");
}

Json encode(const LoopSpec& loop) {
  return Json{{"map", {{"z", encode(loop.map.z)}, {"w", encode(loop.map.w)}}},
              {"radius", loop.radius},
              {"orientation", to_string(loop.orientation)}};
}

LoopSpec decode_loop(const Json& j, const std::string& where) {
  LoopSpec loop;
  const std::string map_at = child(where, "map");
  const Json& map = require(j, "map", where);
  loop.map.z = decode_rational(require(map, "z", map_at), child(map_at, "z"));
  loop.map.w = decode_rational(require(map, "w", map_at), child(map_at, "w"));
  if (j.contains("radius")) {
    loop.radius = decode_number(j["radius"], child(where, "radius"));
    if (!(loop.radius > 0.0)) fail(child(where, "radius"), "radius must be positive");
  }
  if (j.contains("orientation")) {
    loop.orientation = decode_orientation(j["orientation"], child(where, "orientation"));
  }
  return loop;
}

Json encode(const HolonomyResult& result) {
  Json offsets = Json::array();
  for (const auto& [c0, c1] : result.endpoint_offsets) {
    offsets.push_back(Json{{"c0", encode(c0)}, {"c1", encode(c1)}});
  }
  return Json{{"method", to_string(result.method)},
              {"derivative", encode(result.derivative)},
              {"log_modulus", std::log(std::abs(result.derivative))},
              {"endpoint_offsets", offsets},
              {"diagnostics",
               {{"steps", result.diagnostics.steps},
                {"rejected_steps", result.diagnostics.rejected_steps},
                {"closure_error", result.diagnostics.closure_error},
                {"consistency", result.diagnostics.consistency}}}};
}

void check_schema(const Json& document) {
  if (!document.is_object()) fail("", "expected a JSON object");
  if (document.contains("schema") && document["schema"] != kSchema) {
    fail("/schema", std::string("unsupported schema, expected \"") + kSchema + "\"");
  }
}

}  // namespace holofol::json_io
