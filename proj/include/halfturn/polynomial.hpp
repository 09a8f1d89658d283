#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "halfturn/ball.hpp"

namespace halfturn {

// Dense univariate polynomial, coefficients lowest degree first. The zero
// polynomial has no coefficients; otherwise the leading coefficient is
// nonzero.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Polynomial constant(const T& v) { return Polynomial(std::vector<T>{v}); }
  static Polynomial monomial(int degree, const T& v = T(1)) {
    std::vector<T> c(static_cast<std::size_t>(degree) + 1, T(0));
    c.back() = v;
    return Polynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : T(0);
  }
  const T& leading() const { return c_.back(); }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Polynomial(std::move(r));
  }
  Polynomial operator-() const {
    std::vector<T> r(c_);
    for (auto& x : r) x = -x;
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const T& s, const Polynomial& a) {
    std::vector<T> r(a.c_);
    for (auto& x : r) x *= s;
    return Polynomial(std::move(r));
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * T(static_cast<long>(i));
    return Polynomial(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<T> c_;
};

using IntPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<Rational>;

RatPolynomial to_rational(const IntPolynomial& p);
// Scales by the lcm of denominators and divides by the content, with a
// positive leading coefficient.
IntPolynomial primitive_part(const RatPolynomial& p);
RatPolynomial make_monic(const RatPolynomial& p);

// Euclidean division over the rationals: a = q b + r with deg r < deg b.
std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a,
                                               const RatPolynomial& b);
// Monic gcd (zero if both are zero).
RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b);
bool is_squarefree(const RatPolynomial& p);

Rational evaluate(const RatPolynomial& p, const Rational& x);
ComplexBall evaluate(const RatPolynomial& p, const ComplexBall& z);
RealBall evaluate(const RatPolynomial& p, const RealBall& x);

// Human-readable form, e.g. "t^2 - t + 1".
std::string to_string(const RatPolynomial& p, const std::string& var = "t");
std::string to_string(const IntPolynomial& p, const std::string& var = "t");

// ----------------------------------------------------------------- Sturm

// Sturm chain p, p', -rem(p, p'), ... for a squarefree polynomial.
class SturmSequence {
 public:
  explicit SturmSequence(const RatPolynomial& p);

  // Number of distinct real roots in (a, b]; a < b.
  int count(const Rational& a, const Rational& b) const;
  int count_all() const;

 private:
  int variations_at(const Rational& x) const;
  int variations_at_infinity(bool positive) const;
  std::vector<RatPolynomial> chain_;
};

// Bound B with every complex root satisfying |z| < B (Cauchy bound).
Rational root_bound(const RatPolynomial& p);

// An open interval (lo, hi) isolating exactly one simple real root of a
// squarefree polynomial; neither endpoint is a root (unless lo == hi, when
// the root is the rational lo).
struct RealRootInterval {
  Rational lo;
  Rational hi;
  bool is_exact() const { return lo == hi; }
};

// Exact real root isolation by Sturm bisection; intervals sorted ascending.
std::vector<RealRootInterval> isolate_real_roots(const RatPolynomial& p);

// Halves the interval while preserving the isolated root.
RealRootInterval refine(const RatPolynomial& p, const RealRootInterval& iv);

// Certified complex root isolation for a squarefree polynomial: pairwise
// disjoint balls each containing exactly one root. Throws
// PrecisionExhausted if isolation fails at `prec` bits.
std::vector<ComplexBall> isolate_complex_roots(const RatPolynomial& p, long prec);

// Refines an approximate root by Newton iteration at `prec` bits and returns
// a certified ball that contains a root of p; the ball's radius reflects the
// achieved accuracy.
ComplexBall certified_root_near(const RatPolynomial& p, const ComplexBall& approx,
                                long prec);

}  // namespace halfturn
