#include "halfturn/polynomial.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "halfturn/errors.hpp"

namespace halfturn {

RatPolynomial to_rational(const IntPolynomial& p) {
  std::vector<Rational> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.emplace_back(x);
  return RatPolynomial(std::move(c));
}

IntPolynomial primitive_part(const RatPolynomial& p) {
  if (p.is_zero()) return {};
  Integer l = 1;
  for (const auto& x : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> c;
  Integer g = 0;
  for (const auto& x : p.coeffs()) {
    Rational s = x * l;
    c.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
  }
  if (p.leading() < 0) g = -g;
  for (auto& x : c) x /= g;
  return IntPolynomial(std::move(c));
}

RatPolynomial make_monic(const RatPolynomial& p) {
  if (p.is_zero()) return p;
  return Rational(1 / p.leading()) * p;
}

std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a,
                                               const RatPolynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {RatPolynomial(), a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  const Rational lead = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    Rational f = rem[static_cast<std::size_t>(i)] / lead;
    if (f == 0) continue;
    quo[static_cast<std::size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(i - db + j)] -= f * b.coeff(j);
  }
  return {RatPolynomial(std::move(quo)), RatPolynomial(std::move(rem))};
}

RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b) {
  RatPolynomial x = a, y = b;
  while (!y.is_zero()) {
    RatPolynomial r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(x);
}

bool is_squarefree(const RatPolynomial& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

Rational evaluate(const RatPolynomial& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + *it;
  return acc;
}

ComplexBall evaluate(const RatPolynomial& p, const ComplexBall& z) {
  const long prec = z.precision();
  ComplexBall acc(prec);
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
    acc = acc * z + ComplexBall::from_rational(*it, Rational(0), prec);
  return acc;
}

RealBall evaluate(const RatPolynomial& p, const RealBall& x) {
  const long prec = x.precision();
  RealBall acc(prec);
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
    acc = acc * x + RealBall::from_rational(*it, prec);
  return acc;
}

namespace {

template <class T>
std::string format_poly(const std::vector<T>& c, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    T v = c[static_cast<std::size_t>(i)];
    if (v == 0) continue;
    bool neg = v < 0;
    T mag = neg ? T(-v) : v;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag;
    } else {
      if (mag != 1) os << mag << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace

std::string to_string(const RatPolynomial& p, const std::string& var) {
  return format_poly(p.coeffs(), var);
}

std::string to_string(const IntPolynomial& p, const std::string& var) {
  return format_poly(p.coeffs(), var);
}

// ----------------------------------------------------------------- Sturm

SturmSequence::SturmSequence(const RatPolynomial& p) {
  if (p.is_zero()) throw DomainError("Sturm sequence of the zero polynomial");
  chain_.push_back(p);
  RatPolynomial d = p.derivative();
  if (d.is_zero()) return;
  chain_.push_back(d);
  for (;;) {
    const auto& a = chain_[chain_.size() - 2];
    const auto& b = chain_.back();
    RatPolynomial r = divmod(a, b).second;
    if (r.is_zero()) break;
    chain_.push_back(-r);
  }
}

int SturmSequence::variations_at(const Rational& x) const {
  int changes = 0, last = 0;
  for (const auto& q : chain_) {
    int s = sgn(evaluate(q, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::variations_at_infinity(bool positive) const {
  int changes = 0, last = 0;
  for (const auto& q : chain_) {
    int s = sgn(q.leading());
    if (!positive && q.degree() % 2 == 1) s = -s;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::count(const Rational& a, const Rational& b) const {
  return variations_at(a) - variations_at(b);
}

int SturmSequence::count_all() const {
  return variations_at_infinity(false) - variations_at_infinity(true);
}

Rational root_bound(const RatPolynomial& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(Rational(p.coeff(i) / p.leading()));
    if (r > m) m = r;
  }
  return m + 1;
}

namespace {

// A point strictly inside (lo, hi) that is not a root of p.
Rational split_point(const RatPolynomial& p, const Rational& lo, const Rational& hi) {
  Rational m = (lo + hi) / 2;
  for (long k = 1; evaluate(p, m) == 0; ++k) m = lo + (hi - lo) * Rational(k, 2 * k + 1);
  return m;
}

void isolate_in(const RatPolynomial& p, const SturmSequence& s, const Rational& lo,
                const Rational& hi, int n, std::vector<RealRootInterval>& out) {
  if (n == 0) return;
  if (n == 1) {
    out.push_back({lo, hi});
    return;
  }
  Rational m = split_point(p, lo, hi);
  int left = s.count(lo, m);
  isolate_in(p, s, lo, m, left, out);
  isolate_in(p, s, m, hi, n - left, out);
}

}  // namespace

std::vector<RealRootInterval> isolate_real_roots(const RatPolynomial& p) {
  if (!is_squarefree(p)) throw NonSquarefree("real root isolation needs a squarefree polynomial");
  std::vector<RealRootInterval> out;
  if (p.degree() <= 0) return out;
  SturmSequence s(p);
  Rational b = root_bound(p);
  isolate_in(p, s, -b, b, s.count(-b, b), out);
  return out;
}

RealRootInterval refine(const RatPolynomial& p, const RealRootInterval& iv) {
  if (iv.is_exact()) return iv;
  Rational m = (iv.lo + iv.hi) / 2;
  int sm = sgn(evaluate(p, m));
  if (sm == 0) return {m, m};
  int slo = sgn(evaluate(p, iv.lo));
  if (slo != sm) return {iv.lo, m};
  return {m, iv.hi};
}

// ----------------------------------------------------------- complex roots

namespace {

// Newton step z - p(z)/p'(z) on midpoints only.
ComplexBall newton_step(const RatPolynomial& p, const RatPolynomial& dp,
                        const ComplexBall& z) {
  ComplexBall v = evaluate(p, z.midpoint()).midpoint();
  ComplexBall d = evaluate(dp, z.midpoint()).midpoint();
  if (d.is_exact_zero()) return z.midpoint();
  return (z.midpoint() - (v / d)).midpoint();
}

std::vector<ComplexBall> aberth(const RatPolynomial& p, long prec) {
  const int n = p.degree();
  const RatPolynomial dp = p.derivative();
  // Starting points in double precision on a circle of radius ~ root size.
  double radius = std::pow(std::abs(mpq_get_d(Rational(p.coeff(0) / p.leading()).get_mpq_t())) + 1e-3,
                           1.0 / n);
  radius = std::min(radius, mpq_get_d(root_bound(p).get_mpq_t()));
  std::vector<ComplexBall> z;
  for (int k = 0; k < n; ++k) {
    double ang = 2.0 * M_PI * k / n + 0.4;
    z.push_back(ComplexBall::from_double(radius * std::cos(ang), radius * std::sin(ang), prec));
  }
  const Rational tol(1, Integer(1) << static_cast<unsigned long>(prec - 8));
  for (int iter = 0; iter < 800; ++iter) {
    Rational worst = 0;
    for (int k = 0; k < n; ++k) {
      ComplexBall zk = z[static_cast<std::size_t>(k)];
      ComplexBall v = evaluate(p, zk).midpoint();
      if (v.is_exact_zero()) continue;
      ComplexBall d = evaluate(dp, zk).midpoint();
      ComplexBall sum(prec);
      bool ok = true;
      try {
        for (int j = 0; j < n; ++j) {
          if (j == k) continue;
          sum = (sum + inverse((zk - z[static_cast<std::size_t>(j)]).midpoint())).midpoint();
        }
        ComplexBall ratio = (v / d).midpoint();
        ComplexBall one = ComplexBall::from_int(1, 0, prec);
        ComplexBall w = (ratio / (one - ratio * sum).midpoint()).midpoint();
        z[static_cast<std::size_t>(k)] = (zk - w).midpoint();
        Rational size = w.abs_upper() / (zk.abs_upper() + 1);
        if (size > worst) worst = size;
      } catch (const PrecisionExhausted&) {
        ok = false;
      }
      if (!ok) {
        z[static_cast<std::size_t>(k)] =
            (zk + ComplexBall::from_double(1e-3 * (k + 1), 7e-4, prec)).midpoint();
        worst = 1;
      }
    }
    if (worst < tol) break;
  }
  return z;
}

// Radius n |p(z)| / |p'(z)| of a disk around z that contains a root.
bool root_radius(const RatPolynomial& p, const RatPolynomial& dp, const ComplexBall& z,
                 Rational& out) {
  ComplexBall v = evaluate(p, z.midpoint());
  ComplexBall d = evaluate(dp, z.midpoint());
  Rational dlo = d.abs_lower();
  if (dlo <= 0) return false;
  out = Rational(p.degree()) * v.abs_upper() / dlo;
  return true;
}

ComplexBall with_radius(const ComplexBall& z, const Rational& r) {
  ComplexBall b = z.midpoint();
  Float e(64);
  mpfr_set_q(e.get(), r.get_mpq_t(), MPFR_RNDU);
  b.add_error(e);
  return b;
}

}  // namespace

ComplexBall certified_root_near(const RatPolynomial& p, const ComplexBall& approx,
                                long prec) {
  const RatPolynomial dp = p.derivative();
  ComplexBall z = ComplexBall::from_rational(approx.mid_re().to_rational(),
                                             approx.mid_im().to_rational(), prec);
  const Rational tol(1, Integer(1) << static_cast<unsigned long>(prec - 4));
  for (int it = 0; it < 200; ++it) {
    ComplexBall next = newton_step(p, dp, z);
    ComplexBall step = next - z;
    z = next;
    if (step.abs_upper() <= tol * (z.abs_upper() + 1)) break;
  }
  Rational r;
  if (!root_radius(p, dp, z, r)) throw PrecisionExhausted("derivative vanishes near a root");
  return with_radius(z, r);
}

std::vector<ComplexBall> isolate_complex_roots(const RatPolynomial& p, long prec) {
  if (p.degree() <= 0) return {};
  if (p.degree() == 1) {
    Rational r = -p.coeff(0) / p.coeff(1);
    return {ComplexBall::from_rational(r, Rational(0), prec)};
  }
  const RatPolynomial dp = p.derivative();
  const long work = std::min<long>(prec, 256);
  std::vector<ComplexBall> approx = aberth(p, work);
  std::vector<ComplexBall> out;
  for (const auto& a : approx) out.push_back(certified_root_near(p, a, prec));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (out[i].overlaps(out[j]))
        throw PrecisionExhausted("complex root isolation did not separate roots");
  return out;
}

}  // namespace halfturn
