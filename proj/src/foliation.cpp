#include "holofol/foliation.hpp"

#include "holofol/errors.hpp"

namespace holofol {

VectorFieldC2 VectorFieldC2::make(BivarPoly P, BivarPoly Q) {
  if (P.is_zero() && Q.is_zero()) {
    throw Error(ErrorKind::kInvalidArgument, "vector field with both components zero");
  }
  return {std::move(P), std::move(Q)};
}

PolyOneForm dual_one_form(const VectorFieldC2& field) { return {-field.Q, field.P}; }

BivarPoly lie_derivative(const VectorFieldC2& field, const BivarPoly& F) {
  return field.P * partial_derivative(F, Var::z) + field.Q * partial_derivative(F, Var::w);
}

std::optional<BivarPoly> invariant_cofactor(const VectorFieldC2& field, const BivarPoly& F) {
  if (F.is_zero()) {
    throw Error(ErrorKind::kInvalidArgument, "candidate curve is the zero polynomial");
  }
  return exact_divide(lie_derivative(field, F), F);
}

BivarPoly divergence(const VectorFieldC2& field) {
  return partial_derivative(field.P, Var::z) + partial_derivative(field.Q, Var::w);
}

RationalOneForm alpha_form(const VectorFieldC2& field) {
  BivarPoly den = field.P * field.P + field.Q * field.Q;
  if (den.is_zero()) {
    throw Error(ErrorKind::kDegenerateField, "P^2 + Q^2 vanishes identically");
  }
  const BivarPoly g = divergence(field);
  return {{g * field.P, den}, {g * field.Q, den}};
}

BivarPoly exterior_derivative(const PolyOneForm& form) {
  return partial_derivative(form.B, Var::z) - partial_derivative(form.A, Var::w);
}

RationalCoeff wedge(const RationalOneForm& alpha, const PolyOneForm& omega) {
  // (a dz + b dw) ^ (A dz + B dw) = (a B - b A) dz^dw
  return {alpha.a.num * omega.B * alpha.b.den - alpha.b.num * omega.A * alpha.a.den,
          alpha.a.den * alpha.b.den};
}

bool equivalent(const RationalCoeff& x, const RationalCoeff& y, double rel_tol) {
  return approx_equal(x.num * y.den, y.num * x.den, rel_tol);
}

bool equivalent(const RationalOneForm& x, const RationalOneForm& y, double rel_tol) {
  return equivalent(x.a, y.a, rel_tol) && equivalent(x.b, y.b, rel_tol);
}

bool verify_integrability(const VectorFieldC2& field) {
  const PolyOneForm omega = dual_one_form(field);
  const RationalCoeff lhs{exterior_derivative(omega), BivarPoly::constant(1.0)};
  const RationalCoeff rhs = wedge(alpha_form(field), omega);
  return equivalent(lhs, rhs);
}

}  // namespace holofol
