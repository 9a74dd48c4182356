#pragma once

// Polynomial vector fields on C^2, their dual 1-forms, invariant curves and
// the rational integrability form alpha with d(omega) = alpha ^ omega.

#include <optional>

#include "holofol/algebra.hpp"

namespace holofol {

/// z' = P(z, w), w' = Q(z, w).
struct VectorFieldC2 {
  BivarPoly P;
  BivarPoly Q;

  /// Throws kInvalidArgument when both components vanish identically.
  static VectorFieldC2 make(BivarPoly P, BivarPoly Q);
};

/// A dz + B dw.
struct PolyOneForm {
  BivarPoly A;
  BivarPoly B;
};

struct RationalCoeff {
  BivarPoly num;
  BivarPoly den;
};

/// (a.num / a.den) dz + (b.num / b.den) dw.
struct RationalOneForm {
  RationalCoeff a;
  RationalCoeff b;
};

/// The form whose kernel is the field: -Q dz + P dw.
PolyOneForm dual_one_form(const VectorFieldC2& field);

/// P F_z + Q F_w.
BivarPoly lie_derivative(const VectorFieldC2& field, const BivarPoly& F);

/// K with lie_derivative(field, F) = K F, when it exists. F = 0 is then an
/// invariant curve of the field.
std::optional<BivarPoly> invariant_cofactor(const VectorFieldC2& field, const BivarPoly& F);

/// P_z + Q_w.
BivarPoly divergence(const VectorFieldC2& field);

/// ((P_z + Q_w) / (P^2 + Q^2)) (P dz + Q dw), numerators expanded over the
/// shared denominator P^2 + Q^2. Throws kDegenerateField when P^2 + Q^2 = 0.
RationalOneForm alpha_form(const VectorFieldC2& field);

/// Coefficient of dz^dw in d(A dz + B dw), i.e. B_z - A_w.
BivarPoly exterior_derivative(const PolyOneForm& form);

/// alpha ^ omega = (num / den) dz^dw.
RationalCoeff wedge(const RationalOneForm& alpha, const PolyOneForm& omega);

/// Expands d(omega) and alpha ^ omega separately and compares them by
/// cross-multiplication.
bool verify_integrability(const VectorFieldC2& field);

/// Cross-multiplied equality of two rational coefficients.
bool equivalent(const RationalCoeff& x, const RationalCoeff& y,
                double rel_tol = kZeroThreshold);
bool equivalent(const RationalOneForm& x, const RationalOneForm& y,
                double rel_tol = kZeroThreshold);

}  // namespace holofol
