#include "holofol/algebra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <sstream>

#include "holofol/errors.hpp"

namespace holofol {

namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

void require_finite(Complex c) {
  if (!finite(c)) {
    throw Error(ErrorKind::kInvalidArgument, "non-finite polynomial coefficient");
  }
}

std::string format_real(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// Coefficient text used by to_string. Returns "" for a unit coefficient on a
// non-constant monomial so that "1z" prints as "z".
std::string format_coeff(Complex c, bool constant_term) {
  const bool re_zero = std::abs(c.real()) < kZeroThreshold;
  const bool im_zero = std::abs(c.imag()) < kZeroThreshold;
  if (im_zero) {
    if (!constant_term && c.real() == 1.0) return "";
    if (!constant_term && c.real() == -1.0) return "-";
    return format_real(c.real());
  }
  if (re_zero) {
    if (c.imag() == 1.0) return "i";
    if (c.imag() == -1.0) return "-i";
    return format_real(c.imag()) + "i";
  }
  std::ostringstream os;
  os.precision(12);
  os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// BivarPoly

BivarPoly BivarPoly::constant(Complex c) { return monomial(c, 0, 0); }

BivarPoly BivarPoly::monomial(Complex c, int i, int j) {
  TermMap terms;
  terms[{i, j}] = c;
  return from_terms(std::move(terms));
}

BivarPoly BivarPoly::from_terms(TermMap terms) {
  for (const auto& [e, c] : terms) {
    if (e.i < 0 || e.j < 0) {
      throw Error(ErrorKind::kInvalidArgument, "negative exponent in bivariate polynomial");
    }
    require_finite(c);
  }
  BivarPoly p;
  p.terms_ = std::move(terms);
  p.canonicalize();
  return p;
}

void BivarPoly::canonicalize() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kZeroThreshold; });
}

Complex BivarPoly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Complex{} : it->second;
}

int BivarPoly::degree() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first.i + terms_.rbegin()->first.j;
}

int BivarPoly::degree_in(Var var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, var == Var::z ? e.i : e.j);
  return d;
}

Exponent BivarPoly::leading_exponent() const {
  return terms_.empty() ? Exponent{} : terms_.rbegin()->first;
}

Complex BivarPoly::leading_coeff() const {
  return terms_.empty() ? Complex{} : terms_.rbegin()->second;
}

double BivarPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

bool BivarPoly::is_real(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [tol](const auto& kv) { return std::abs(kv.second.imag()) < tol; });
}

Complex BivarPoly::operator()(Complex z, Complex w) const {
  if (terms_.empty()) return {};
  const int dz = degree_in(Var::z);
  const int dw = degree_in(Var::w);
  std::vector<Complex> pz(dz + 1, 1.0), pw(dw + 1, 1.0);
  for (int k = 1; k <= dz; ++k) pz[k] = pz[k - 1] * z;
  for (int k = 1; k <= dw; ++k) pw[k] = pw[k - 1] * w;
  Complex sum{};
  for (const auto& [e, c] : terms_) sum += c * pz[e.i] * pw[e.j];
  return sum;
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& other) {
  for (const auto& [e, c] : other.terms_) terms_[e] += c;
  canonicalize();
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& other) {
  for (const auto& [e, c] : other.terms_) terms_[e] -= c;
  canonicalize();
  return *this;
}

BivarPoly& BivarPoly::operator*=(const BivarPoly& other) {
  TermMap product;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      product[{ea.i + eb.i, ea.j + eb.j}] += ca * cb;
    }
  }
  terms_ = std::move(product);
  canonicalize();
  return *this;
}

BivarPoly& BivarPoly::operator*=(Complex c) {
  require_finite(c);
  for (auto& [e, v] : terms_) v *= c;
  canonicalize();
  return *this;
}

bool is_negligible(const BivarPoly& p, double scale, double rel_tol) {
  return p.max_abs_coeff() <= rel_tol * std::max(1.0, scale);
}

bool approx_equal(const BivarPoly& a, const BivarPoly& b, double rel_tol) {
  const double scale = std::max(a.max_abs_coeff(), b.max_abs_coeff());
  BivarPoly diff = a;
  diff -= b;
  return is_negligible(diff, scale, rel_tol);
}

BivarPoly partial_derivative(const BivarPoly& p, Var var) {
  BivarPoly::TermMap out;
  for (const auto& [e, c] : p.terms()) {
    const int power = var == Var::z ? e.i : e.j;
    if (power == 0) continue;
    const Exponent d = var == Var::z ? Exponent{e.i - 1, e.j} : Exponent{e.i, e.j - 1};
    out[d] += c * static_cast<double>(power);
  }
  return BivarPoly::from_terms(std::move(out));
}

BivarDivision divide(const BivarPoly& f, const BivarPoly& g) {
  if (g.is_zero()) {
    throw Error(ErrorKind::kDivisionByZero, "division by the zero polynomial");
  }
  const double noise = kZeroThreshold * std::max(1.0, f.max_abs_coeff());
  const Exponent lead = g.leading_exponent();
  const Complex lead_coeff = g.leading_coeff();

  BivarPoly::TermMap work = f.terms();
  BivarPoly::TermMap quotient;
  BivarPoly::TermMap remainder;
  while (!work.empty()) {
    const auto top = std::prev(work.end());
    const Exponent e = top->first;
    const Complex c = top->second;
    work.erase(top);
    if (std::abs(c) <= noise) continue;
    if (e.i >= lead.i && e.j >= lead.j) {
      const Exponent shift{e.i - lead.i, e.j - lead.j};
      const Complex factor = c / lead_coeff;
      quotient[shift] += factor;
      for (const auto& [ge, gc] : g.terms()) {
        const Exponent target{ge.i + shift.i, ge.j + shift.j};
        if (target == e) continue;  // cancelled exactly by construction
        work[target] -= factor * gc;
      }
    } else {
      remainder[e] += c;
    }
  }
  return {BivarPoly::from_terms(std::move(quotient)),
          BivarPoly::from_terms(std::move(remainder))};
}

std::optional<BivarPoly> exact_divide(const BivarPoly& f, const BivarPoly& g) {
  BivarDivision d = divide(f, g);
  if (!is_negligible(d.remainder, f.max_abs_coeff())) return std::nullopt;
  return std::move(d.quotient);
}

std::string to_string(const BivarPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string coeff = format_coeff(c, e.i == 0 && e.j == 0);
    std::string mono;
    if (e.i > 0) mono += e.i == 1 ? "z" : "z^" + std::to_string(e.i);
    if (e.j > 0) mono += e.j == 1 ? "w" : "w^" + std::to_string(e.j);
    std::string term = coeff + mono;
    if (out.empty()) {
      out = term;
    } else if (!term.empty() && term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Poly1

Poly1::Poly1(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  for (Complex c : coeffs_) require_finite(c);
  canonicalize();
}

Poly1 Poly1::monomial(Complex c, int k) {
  if (k < 0) throw Error(ErrorKind::kInvalidArgument, "negative exponent in polynomial");
  std::vector<Complex> v(k + 1);
  v[k] = c;
  return Poly1(std::move(v));
}

void Poly1::canonicalize() {
  for (Complex& c : coeffs_) {
    if (std::abs(c) < kZeroThreshold) c = 0.0;
  }
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Complex Poly1::operator[](int k) const {
  return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : Complex{};
}

Complex Poly1::leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }

int Poly1::low_order() const {
  for (int k = 0; k < static_cast<int>(coeffs_.size()); ++k) {
    if (coeffs_[k] != Complex{}) return k;
  }
  return -1;
}

Complex Poly1::operator()(Complex t) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Poly1 Poly1::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return Poly1(std::move(d));
}

Poly1 Poly1::divided_by_power(int k) const {
  if (k <= 0 || coeffs_.empty()) return *this;
  if (k > static_cast<int>(coeffs_.size())) return {};
  return Poly1(std::vector<Complex>(coeffs_.begin() + k, coeffs_.end()));
}

Poly1 Poly1::times_power(int k) const {
  if (k <= 0 || coeffs_.empty()) return *this;
  std::vector<Complex> v(k, Complex{});
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return Poly1(std::move(v));
}

Poly1& Poly1::operator+=(const Poly1& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  canonicalize();
  return *this;
}

Poly1& Poly1::operator-=(const Poly1& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  canonicalize();
  return *this;
}

Poly1& Poly1::operator*=(Complex c) {
  require_finite(c);
  for (Complex& v : coeffs_) v *= c;
  canonicalize();
  return *this;
}

Poly1 operator*(const Poly1& a, const Poly1& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Poly1(std::move(out));
}

Poly1 power(const Poly1& p, int n) {
  Poly1 result = Poly1::constant(1.0);
  for (int k = 0; k < n; ++k) result = result * p;
  return result;
}

Poly1 taylor_shift(const Poly1& p, Complex a) {
  // Repeated synthetic division (Horner's scheme for all derivatives).
  std::vector<Complex> c = p.coeffs();
  const int n = static_cast<int>(c.size());
  for (int k = 0; k < n - 1; ++k) {
    for (int j = n - 2; j >= k; --j) c[j] += a * c[j + 1];
  }
  return Poly1(std::move(c));
}

Poly1 deflate(const Poly1& p, Complex a, Complex* remainder) {
  const auto& c = p.coeffs();
  if (c.empty()) {
    if (remainder) *remainder = 0.0;
    return {};
  }
  std::vector<Complex> q(c.size() - 1);
  Complex acc = c.back();
  for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
    q[k] = acc;
    acc = c[k] + a * acc;
  }
  if (remainder) *remainder = acc;
  return Poly1(std::move(q));
}

std::vector<Complex> polynomial_roots(const Poly1& p) {
  if (p.is_zero()) {
    throw Error(ErrorKind::kInvalidArgument, "roots of the zero polynomial are undefined");
  }
  const int zeros = p.low_order();
  std::vector<Complex> roots(zeros, Complex{});
  const Poly1 rest = p.divided_by_power(zeros);
  const int n = rest.degree();
  if (n == 1) {
    roots.push_back(-rest[0] / rest[1]);
  } else if (n > 1) {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    const Complex lead = rest.leading();
    for (int k = 0; k < n; ++k) {
      if (k + 1 < n) companion(k + 1, k) = 1.0;
      companion(k, n - 1) = -rest[k] / lead;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorKind::kConvergenceFailure, "companion eigenvalue iteration failed");
    }
    for (int k = 0; k < n; ++k) roots.push_back(solver.eigenvalues()(k));
  }
  return roots;
}

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly LaurentPoly::from_terms(TermMap terms) {
  for (const auto& [k, c] : terms) require_finite(c);
  LaurentPoly p;
  p.terms_ = std::move(terms);
  p.canonicalize();
  return p;
}

LaurentPoly LaurentPoly::monomial(Complex c, int k) { return from_terms({{k, c}}); }

void LaurentPoly::canonicalize() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kZeroThreshold; });
}

Complex LaurentPoly::coeff(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Complex{} : it->second;
}

int LaurentPoly::min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int LaurentPoly::max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

Complex LaurentPoly::operator()(Complex t) const {
  Complex sum{};
  for (const auto& [k, c] : terms_) sum += c * std::pow(t, k);
  return sum;
}

LaurentPoly LaurentPoly::derivative() const {
  TermMap d;
  for (const auto& [k, c] : terms_) {
    if (k != 0) d[k - 1] = c * static_cast<double>(k);
  }
  return from_terms(std::move(d));
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  for (const auto& [k, c] : other.terms_) terms_[k] += c;
  canonicalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  for (const auto& [k, c] : other.terms_) terms_[k] -= c;
  canonicalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
  TermMap product;
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : other.terms_) product[ka + kb] += ca * cb;
  }
  terms_ = std::move(product);
  canonicalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(Complex c) {
  require_finite(c);
  for (auto& [k, v] : terms_) v *= c;
  canonicalize();
  return *this;
}

Complex laurent_residue(const LaurentPoly& p) { return p.coeff(-1); }

// ---------------------------------------------------------------------------
// RationalFunc1

namespace {

struct RootCluster {
  Complex center;
  int multiplicity = 0;
};

struct ClusteredRoots {
  std::vector<Complex> roots;
  std::vector<int> owner;  // cluster index of each root
  std::vector<RootCluster> clusters;
};

ClusteredRoots cluster_roots(const Poly1& den, double cluster_tol) {
  ClusteredRoots out;
  out.roots = polynomial_roots(den);
  const int zeros = den.low_order();
  out.owner.assign(out.roots.size(), -1);
  for (std::size_t seed = 0; seed < out.roots.size(); ++seed) {
    if (out.owner[seed] >= 0) continue;
    const int id = static_cast<int>(out.clusters.size());
    Complex sum{};
    int count = 0;
    bool has_exact_zero = false;
    for (std::size_t k = seed; k < out.roots.size(); ++k) {
      if (out.owner[k] >= 0) continue;
      if (std::abs(out.roots[k] - out.roots[seed]) <= cluster_tol) {
        out.owner[k] = id;
        sum += out.roots[k];
        ++count;
        has_exact_zero |= static_cast<int>(k) < zeros;
      }
    }
    out.clusters.push_back({has_exact_zero ? Complex{} : sum / static_cast<double>(count), count});
  }
  return out;
}

// Number of leading Taylor coefficients of p at a that vanish (relative to
// the size of p near a), capped at `cap`.
int vanishing_order(const Poly1& shifted, const Poly1& p, Complex a, int cap, double rel_tol) {
  double scale = 0.0;
  const double r = std::max(1.0, std::abs(a));
  for (int k = 0; k <= p.degree(); ++k) scale += std::abs(p[k]) * std::pow(r, k);
  int v = 0;
  while (v < cap && std::abs(shifted[v]) <= rel_tol * scale) ++v;
  return v;
}

}  // namespace

RationalFunc1::RationalFunc1(Poly1 num, Poly1 den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void RationalFunc1::normalize() {
  if (den_.is_zero()) {
    throw Error(ErrorKind::kDivisionByZero, "rational function with zero denominator");
  }
  if (num_.is_zero()) {
    den_ = Poly1::constant(1.0);
    return;
  }
  const int common = std::min(num_.low_order(), den_.low_order());
  num_ = num_.divided_by_power(common);
  den_ = den_.divided_by_power(common);
  const Complex lead = den_.leading();
  if (lead != Complex{1.0, 0.0}) {
    num_ *= 1.0 / lead;
    std::vector<Complex> d = den_.coeffs();
    for (Complex& c : d) c /= lead;
    d.back() = 1.0;
    den_ = Poly1(std::move(d));
  }
}

RationalFunc1 RationalFunc1::constant(Complex c) {
  return RationalFunc1(Poly1::constant(c), Poly1::constant(1.0));
}

RationalFunc1 RationalFunc1::from_laurent(const LaurentPoly& p) {
  if (p.is_zero()) return {};
  const int shift = std::max(0, -p.min_exponent());
  std::vector<Complex> num(p.max_exponent() + shift + 1);
  for (const auto& [k, c] : p.terms()) num[k + shift] = c;
  return RationalFunc1(Poly1(std::move(num)), Poly1::monomial(1.0, shift));
}

RationalFunc1 RationalFunc1::from_laurent(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) {
    throw Error(ErrorKind::kDivisionByZero, "rational function with zero denominator");
  }
  return from_laurent(num) / from_laurent(den);
}

Complex RationalFunc1::operator()(Complex t) const { return num_(t) / den_(t); }

RationalFunc1 RationalFunc1::derivative() const {
  return RationalFunc1(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunc1 RationalFunc1::reduced(double rel_tol) const {
  if (num_.is_zero() || den_.degree() == 0) return *this;
  const ClusteredRoots cr = cluster_roots(den_, kRootClusterTol);
  Poly1 num = num_;
  Poly1 den = den_;
  for (const RootCluster& cluster : cr.clusters) {
    const int v = vanishing_order(taylor_shift(num, cluster.center), num, cluster.center,
                                  cluster.multiplicity, rel_tol);
    for (int k = 0; k < v; ++k) {
      num = deflate(num, cluster.center);
      den = deflate(den, cluster.center);
    }
  }
  return RationalFunc1(std::move(num), std::move(den));
}

std::optional<LaurentPoly> RationalFunc1::as_laurent() const {
  const int k = den_.degree();
  if (den_.low_order() != k) return std::nullopt;
  LaurentPoly::TermMap terms;
  for (int j = 0; j <= num_.degree(); ++j) {
    if (num_[j] != Complex{}) terms[j - k] = num_[j];
  }
  return LaurentPoly::from_terms(std::move(terms));
}

RationalFunc1& RationalFunc1::operator+=(const RationalFunc1& other) {
  if (den_ == other.den_) {
    num_ += other.num_;
  } else {
    num_ = num_ * other.den_ + other.num_ * den_;
    den_ = den_ * other.den_;
  }
  normalize();
  return *this;
}

RationalFunc1& RationalFunc1::operator-=(const RationalFunc1& other) {
  if (den_ == other.den_) {
    num_ -= other.num_;
  } else {
    num_ = num_ * other.den_ - other.num_ * den_;
    den_ = den_ * other.den_;
  }
  normalize();
  return *this;
}

RationalFunc1& RationalFunc1::operator*=(const RationalFunc1& other) {
  num_ = num_ * other.num_;
  den_ = den_ * other.den_;
  normalize();
  return *this;
}

RationalFunc1& RationalFunc1::operator/=(const RationalFunc1& other) {
  if (other.is_zero()) {
    throw Error(ErrorKind::kDivisionByZero, "division by the zero rational function");
  }
  num_ = num_ * other.den_;
  den_ = den_ * other.num_;
  normalize();
  return *this;
}

RationalFunc1& RationalFunc1::operator*=(Complex c) {
  num_ *= c;
  normalize();
  return *this;
}

RationalFunc1 compose(const BivarPoly& p, const RationalFunc1& z, const RationalFunc1& w) {
  if (p.is_zero()) return {};
  const int dz = p.degree_in(Var::z);
  const int dw = p.degree_in(Var::w);
  auto powers = [](const Poly1& base, int n) {
    std::vector<Poly1> out{Poly1::constant(1.0)};
    for (int k = 1; k <= n; ++k) out.push_back(out.back() * base);
    return out;
  };
  const auto zn = powers(z.num(), dz);
  const auto zd = powers(z.den(), dz);
  const auto wn = powers(w.num(), dw);
  const auto wd = powers(w.den(), dw);
  Poly1 num;
  for (const auto& [e, c] : p.terms()) {
    num += c * (zn[e.i] * zd[dz - e.i] * wn[e.j] * wd[dw - e.j]);
  }
  return RationalFunc1(std::move(num), zd[dz] * wd[dw]);
}

std::vector<Pole> poles(const RationalFunc1& r, double cluster_tol) {
  if (r.is_zero() || r.den().degree() == 0) return {};
  const ClusteredRoots cr = cluster_roots(r.den(), cluster_tol);
  std::vector<Pole> out;
  for (std::size_t id = 0; id < cr.clusters.size(); ++id) {
    const RootCluster& cluster = cr.clusters[id];
    const Complex a = cluster.center;
    const int m = cluster.multiplicity;

    // The denominator with this cluster's factor (t - a)^m removed, rebuilt
    // from the other roots so that clustered roots do not pollute it.
    Poly1 rest = Poly1::constant(1.0);
    for (std::size_t k = 0; k < cr.roots.size(); ++k) {
      if (cr.owner[k] != static_cast<int>(id)) rest = rest * Poly1({-cr.roots[k], 1.0});
    }

    const Poly1 num_at = taylor_shift(r.num(), a);
    const int v = vanishing_order(num_at, r.num(), a, m, 1e-9);
    if (v >= m) continue;  // removable

    // Residue = coefficient of u^(m-1) in num(a+u) / rest(a+u).
    const Poly1 rest_at = taylor_shift(rest, a);
    std::vector<Complex> series(m);
    for (int k = 0; k < m; ++k) {
      Complex acc = num_at[k];
      for (int j = 1; j <= k; ++j) acc -= rest_at[j] * series[k - j];
      series[k] = acc / rest_at[0];
    }
    out.push_back({a, m - v, series[m - 1]});
  }
  return out;
}

Complex rational_residues_in_disk(const RationalFunc1& r, double radius, double pole_contour_tol) {
  if (!(radius > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "integration radius must be positive");
  }
  Complex sum{};
  for (const Pole& pole : poles(r)) {
    const double modulus = std::abs(pole.location);
    if (std::abs(modulus - radius) < pole_contour_tol) {
      std::ostringstream os;
      os << "pole at t = " << pole.location << " lies on the circle |t| = " << radius;
      throw Error(ErrorKind::kContourCollision, os.str());
    }
    if (modulus < radius) sum += pole.residue;
  }
  return sum;
}

}  // namespace holofol
