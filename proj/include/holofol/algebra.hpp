#pragma once

// Sparse bivariate polynomials, dense univariate polynomials, Laurent
// polynomials and one-variable rational functions over double-precision
// complex coefficients, plus the residue machinery used by the loop
// integrals.

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace holofol {

using Complex = std::complex<double>;

/// Coefficients with modulus below this are dropped from every sparse form.
inline constexpr double kZeroThreshold = 1e-12;

/// Roots of a denominator closer than this are treated as one repeated pole.
inline constexpr double kRootClusterTol = 1e-7;

/// Default minimum distance between a pole and an integration circle.
inline constexpr double kPoleContourTol = 1e-8;

enum class Var { z, w };

struct Exponent {
  int i = 0;  // power of z
  int j = 0;  // power of w

  friend bool operator==(const Exponent&, const Exponent&) = default;
};

// Graded lexicographic order with z > w. The last entry of a map ordered by
// this comparator is the leading term.
struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const {
    if (a.i + a.j != b.i + b.j) return a.i + a.j < b.i + b.j;
    return a.i < b.i;
  }
};

class BivarPoly {
 public:
  using TermMap = std::map<Exponent, Complex, GradedLex>;

  BivarPoly() = default;

  static BivarPoly constant(Complex c);
  static BivarPoly monomial(Complex c, int i, int j);
  static BivarPoly z() { return monomial(1.0, 1, 0); }
  static BivarPoly w() { return monomial(1.0, 0, 1); }

  // Validates exponents and finiteness, then canonicalizes. Duplicate
  // exponents cannot occur in a map, so the input is taken as-is.
  static BivarPoly from_terms(TermMap terms);

  const TermMap& terms() const { return terms_; }
  Complex coeff(int i, int j) const;
  bool is_zero() const { return terms_.empty(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(Var var) const;

  Exponent leading_exponent() const;
  Complex leading_coeff() const;
  double max_abs_coeff() const;
  bool is_real(double tol = kZeroThreshold) const;

  Complex operator()(Complex z, Complex w) const;

  BivarPoly& operator+=(const BivarPoly& other);
  BivarPoly& operator-=(const BivarPoly& other);
  BivarPoly& operator*=(const BivarPoly& other);
  BivarPoly& operator*=(Complex c);

  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  friend BivarPoly operator*(BivarPoly a, const BivarPoly& b) { return a *= b; }
  friend BivarPoly operator*(BivarPoly a, Complex c) { return a *= c; }
  friend BivarPoly operator*(Complex c, BivarPoly a) { return a *= c; }
  friend BivarPoly operator-(BivarPoly a) { return a *= -1.0; }

  friend bool operator==(const BivarPoly& a, const BivarPoly& b) {
    return a.terms_ == b.terms_;
  }

 private:
  void canonicalize();

  TermMap terms_;
};

/// Coefficient-wise comparison, relative to the larger of the two operands'
/// coefficient scales (never below an absolute kZeroThreshold).
bool approx_equal(const BivarPoly& a, const BivarPoly& b,
                  double rel_tol = kZeroThreshold);

/// True when every coefficient is at most rel_tol relative to `scale`.
bool is_negligible(const BivarPoly& p, double scale,
                   double rel_tol = kZeroThreshold);

BivarPoly partial_derivative(const BivarPoly& p, Var var);

struct BivarDivision {
  BivarPoly quotient;
  BivarPoly remainder;
};

/// Multivariate reduction of f by the single divisor g under graded-lex
/// order. Throws kDivisionByZero when g is the zero polynomial.
BivarDivision divide(const BivarPoly& f, const BivarPoly& g);

/// Quotient q with f = q*g when the reduction remainder vanishes (relative to
/// the coefficient scale of f), otherwise nullopt.
std::optional<BivarPoly> exact_divide(const BivarPoly& f, const BivarPoly& g);

std::string to_string(const BivarPoly& p);

// ---------------------------------------------------------------------------

/// Dense univariate polynomial in t; coefficients in ascending order.
class Poly1 {
 public:
  Poly1() = default;
  explicit Poly1(std::vector<Complex> coeffs);

  static Poly1 constant(Complex c) { return Poly1({c}); }
  static Poly1 monomial(Complex c, int k);

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Complex operator[](int k) const;
  Complex leading() const;

  /// Lowest exponent with a nonzero coefficient; -1 for the zero polynomial.
  int low_order() const;

  Complex operator()(Complex t) const;
  Poly1 derivative() const;

  /// Divides by t^k; the dropped low coefficients must already be zero.
  Poly1 divided_by_power(int k) const;
  Poly1 times_power(int k) const;

  Poly1& operator+=(const Poly1& other);
  Poly1& operator-=(const Poly1& other);
  Poly1& operator*=(Complex c);

  friend Poly1 operator+(Poly1 a, const Poly1& b) { return a += b; }
  friend Poly1 operator-(Poly1 a, const Poly1& b) { return a -= b; }
  friend Poly1 operator*(const Poly1& a, const Poly1& b);
  friend Poly1 operator*(Poly1 a, Complex c) { return a *= c; }
  friend Poly1 operator*(Complex c, Poly1 a) { return a *= c; }

  friend bool operator==(const Poly1& a, const Poly1& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void canonicalize();

  std::vector<Complex> coeffs_;
};

Poly1 power(const Poly1& p, int n);

/// Coefficients of p(a + u) as a polynomial in u.
Poly1 taylor_shift(const Poly1& p, Complex a);

/// Synthetic division by (t - a); the remainder is written to *remainder when
/// requested.
Poly1 deflate(const Poly1& p, Complex a, Complex* remainder = nullptr);

/// All roots with multiplicity: exact zeros for the factor t^k, eigenvalues of
/// the companion matrix for the rest.
std::vector<Complex> polynomial_roots(const Poly1& p);

// ---------------------------------------------------------------------------

class LaurentPoly {
 public:
  using TermMap = std::map<int, Complex>;

  LaurentPoly() = default;
  static LaurentPoly from_terms(TermMap terms);
  static LaurentPoly monomial(Complex c, int k);

  const TermMap& terms() const { return terms_; }
  Complex coeff(int k) const;
  bool is_zero() const { return terms_.empty(); }
  int min_exponent() const;
  int max_exponent() const;

  Complex operator()(Complex t) const;
  LaurentPoly derivative() const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  LaurentPoly& operator*=(Complex c);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
  friend LaurentPoly operator*(LaurentPoly a, Complex c) { return a *= c; }
  friend LaurentPoly operator*(Complex c, LaurentPoly a) { return a *= c; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }

 private:
  void canonicalize();

  TermMap terms_;
};

/// Coefficient of t^-1.
Complex laurent_residue(const LaurentPoly& p);

// ---------------------------------------------------------------------------

// num/den with den monic and no common factor of t. Common non-monomial
// factors are only removed by reduced().
class RationalFunc1 {
 public:
  RationalFunc1() : den_(Poly1::constant(1.0)) {}
  RationalFunc1(Poly1 num, Poly1 den);

  static RationalFunc1 constant(Complex c);
  static RationalFunc1 from_laurent(const LaurentPoly& p);
  static RationalFunc1 from_laurent(const LaurentPoly& num, const LaurentPoly& den);

  const Poly1& num() const { return num_; }
  const Poly1& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Complex operator()(Complex t) const;
  RationalFunc1 derivative() const;

  /// Cancels numerator roots that coincide with denominator roots.
  RationalFunc1 reduced(double rel_tol = 1e-9) const;

  /// Laurent form when the denominator is a monomial.
  std::optional<LaurentPoly> as_laurent() const;

  RationalFunc1& operator+=(const RationalFunc1& other);
  RationalFunc1& operator-=(const RationalFunc1& other);
  RationalFunc1& operator*=(const RationalFunc1& other);
  RationalFunc1& operator/=(const RationalFunc1& other);
  RationalFunc1& operator*=(Complex c);

  friend RationalFunc1 operator+(RationalFunc1 a, const RationalFunc1& b) { return a += b; }
  friend RationalFunc1 operator-(RationalFunc1 a, const RationalFunc1& b) { return a -= b; }
  friend RationalFunc1 operator*(RationalFunc1 a, const RationalFunc1& b) { return a *= b; }
  friend RationalFunc1 operator/(RationalFunc1 a, const RationalFunc1& b) { return a /= b; }
  friend RationalFunc1 operator*(RationalFunc1 a, Complex c) { return a *= c; }
  friend RationalFunc1 operator*(Complex c, RationalFunc1 a) { return a *= c; }

 private:
  void normalize();

  Poly1 num_;
  Poly1 den_;
};

/// p(z(t), w(t)) as a single rational function of t.
RationalFunc1 compose(const BivarPoly& p, const RationalFunc1& z,
                      const RationalFunc1& w);

struct Pole {
  Complex location;
  int order = 0;
  Complex residue;
};

/// Non-removable poles of r with their residues.
std::vector<Pole> poles(const RationalFunc1& r,
                        double cluster_tol = kRootClusterTol);

/// Sum of residues of r at the poles strictly inside |t| < radius. Throws
/// kContourCollision when a pole lies within pole_contour_tol of the circle.
Complex rational_residues_in_disk(const RationalFunc1& r, double radius,
                                  double pole_contour_tol = kPoleContourTol);

}  // namespace holofol
