#include "halfturn/rep.hpp"

#include <cmath>

#include "halfturn/errors.hpp"

namespace halfturn {

// ------------------------------------------------------------------ Params

Params Params::exact(FieldElement rho0, FieldElement rho1, FieldElement rho2) {
  if (rho0.field() != rho1.field() || rho0.field() != rho2.field())
    throw DomainError("parameters must lie in one field");
  Params p;
  p.exact_ = true;
  p.field_ = rho0.field();
  p.exact_rho_ = {std::move(rho0), std::move(rho1), std::move(rho2)};
  return p;
}

Params Params::numeric(ComplexBall rho0, ComplexBall rho1, ComplexBall rho2) {
  Params p;
  p.numeric_rho_ = {std::move(rho0), std::move(rho1), std::move(rho2)};
  return p;
}

const FieldElement& Params::exact_rho(int k) const {
  if (!exact_) throw DomainError("parameters are numeric");
  return exact_rho_.at(static_cast<std::size_t>(k));
}

ComplexBall Params::rho(int k, long prec) const {
  if (exact_) return exact_rho(k).to_ball(prec);
  return numeric_rho_.at(static_cast<std::size_t>(k));
}

bool Params::is_regular() const {
  if (exact_) return exact_rho_[0] == exact_rho_[1] && exact_rho_[0] == exact_rho_[2];
  auto same = [](const ComplexBall& a, const ComplexBall& b) { return a.contains(b) && b.contains(a); };
  return same(numeric_rho_[0], numeric_rho_[1]) && same(numeric_rho_[0], numeric_rho_[2]);
}

std::string Params::to_string() const {
  std::string out;
  for (int k = 0; k < 3; ++k) {
    if (k) out += ", ";
    out += exact_ ? exact_rho_[static_cast<std::size_t>(k)].to_string()
                  : numeric_rho_[static_cast<std::size_t>(k)].to_string(12);
  }
  return "(" + out + ")";
}

// -------------------------------------------------------------- BallMatrix

BallMatrix BallMatrix::identity(long prec) {
  return {ComplexBall::from_int(1, 0, prec), ComplexBall(prec), ComplexBall(prec),
          ComplexBall::from_int(1, 0, prec)};
}

BallMatrix operator*(const BallMatrix& a, const BallMatrix& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

bool BallMatrix::overlaps(const BallMatrix& o) const {
  return m11.overlaps(o.m11) && m12.overlaps(o.m12) && m21.overlaps(o.m21) && m22.overlaps(o.m22);
}

bool BallMatrix::contains_scalar(int sign) const {
  const Rational s(sign);
  return m11.contains(s, 0) && m22.contains(s, 0) && m12.contains(0, 0) && m21.contains(0, 0);
}

bool is_line_matrix(const LineMatrix& m) {
  const long p = m.precision();
  return m.trace().contains(0, 0) && m.det().contains(1, 0) && (m * m).contains_scalar(-1) &&
         p > 0;
}

// ---------------------------------------------------------- construction

namespace {

void check_rho0(const Params& p, long prec) {
  if (p.is_exact()) {
    const auto& r = p.exact_rho(0);
    if (r.is_rational() && abs(r.rational_value()) == 2)
      throw DegenerateParams("rho0 = " + r.rational_value().get_str() + " makes beta^4 = 1");
    return;
  }
  const ComplexBall r = p.rho(0, prec);
  for (int s : {2, -2}) {
    if (!r.contains(Rational(s), 0)) continue;
    if (r.rad().is_zero()) throw DegenerateParams("rho0 = " + std::to_string(s) + " makes beta^4 = 1");
    throw PrecisionExhausted("rho0 ball contains " + std::to_string(s));
  }
}

// beta with beta^2 = (-rho0 + sqrt(rho0^2 - 4))/2, |beta| >= 1.
ComplexBall beta_of(const ComplexBall& rho0) {
  const long prec = rho0.precision();
  const ComplexBall four = ComplexBall::from_int(4, 0, prec);
  const ComplexBall half = ComplexBall::from_rational(Rational(1, 2), 0, prec);
  ComplexBall b2 = (-rho0 + sqrt(rho0 * rho0 - four)) * half;
  const RealBall gap = b2.abs() - RealBall::from_int(1, prec);
  if (gap.certainly_negative()) {
    b2 = inverse(b2);
  } else if (!gap.certainly_positive()) {
    // |beta| = 1 happens exactly for real rho0 in (-2, 2), where either root
    // is acceptable. A wide ball only means the precision is too low.
    Rational width = gap.upper() - gap.lower();
    Rational limit(1);
    limit /= Rational(Integer(1) << static_cast<unsigned long>(prec / 2));
    if (width > limit) throw PrecisionExhausted("cannot compare |beta| with 1");
  }
  return sqrt(b2);
}

BallMatrix line_a(const ComplexBall& beta) {
  const long p = beta.precision();
  return {ComplexBall(p), inverse(beta).times_i(), beta.times_i(), ComplexBall(p)};
}

BallMatrix line_b(const ComplexBall& beta) {
  const long p = beta.precision();
  return {ComplexBall(p), beta.times_i(), inverse(beta).times_i(), ComplexBall(p)};
}

HalfTurnTriple assemble(const Params& params, const ComplexBall& beta, const ComplexBall& c12,
                        const ComplexBall& c21, bool regular) {
  const long prec = beta.precision();
  const ComplexBall one = ComplexBall::from_int(1, 0, prec);
  const ComplexBall c11 = sqrt(c12 * c21 + one).times_i();
  HalfTurnTriple t{line_a(beta), line_b(beta), {c11, c12, c21, -c11}, beta, c11, c12, c21, params,
                   regular};
  return t;
}

}  // namespace

HalfTurnTriple build_representation(const Params& p, long prec) {
  check_rho0(p, prec);
  const ComplexBall r0 = p.rho(0, prec), r1 = p.rho(1, prec), r2 = p.rho(2, prec);
  const ComplexBall beta = beta_of(r0);
  const ComplexBall ib = inverse(beta);
  const ComplexBall b2 = beta * beta;
  const ComplexBall den = (inverse(b2) - b2).times_i();
  const ComplexBall dinv = inverse(den);
  const ComplexBall c21 = (r1 * ib - r2 * beta) * dinv;
  const ComplexBall c12 = (r2 * ib - r1 * beta) * dinv;
  return assemble(p, beta, c12, c21, p.is_regular());
}

HalfTurnTriple build_regular(const Params& p, long prec) {
  if (!p.is_regular()) throw DomainError("parameters are not regular");
  check_rho0(p, prec);
  const ComplexBall beta = beta_of(p.rho(0, prec));
  const ComplexBall ib = inverse(beta);
  const ComplexBall c = ((ib * ib + beta * beta) * inverse(ib + beta)).times_i();
  return assemble(p, beta, c, c, true);
}

HalfTurnTriple build_regular(const ComplexBall& rho) {
  return build_regular(Params::numeric(rho, rho, rho), rho.precision());
}

// ------------------------------------------------------------- geometry

ComplexBall rho_of(const LineMatrix& m1, const LineMatrix& m2) { return (m1 * m2).trace(); }

ComplexBall complex_distance(const LineMatrix& m1, const LineMatrix& m2, bool require_positive_real) {
  const long prec = m1.precision();
  const ComplexBall w = -rho_of(m1, m2) * ComplexBall::from_rational(Rational(1, 2), 0, prec);
  if (require_positive_real && (w.contains(1, 0) || w.contains(-1, 0)))
    throw DegenerateLines("trace is +-2: the lines coincide or meet at angle 0 or pi");
  const ComplexBall one = ComplexBall::from_int(1, 0, prec);
  ComplexBall mu = log(w + sqrt(w * w - one));
  if (mu.real().certainly_negative()) mu = -mu;
  const RealBall two_pi = pi_ball(prec) * RealBall::from_int(2, prec);
  const double k = std::floor(mu.mid_im().to_double() / two_pi.approx());
  if (k != 0) {
    const RealBall shift = two_pi * RealBall::from_double(k, prec);
    mu = ComplexBall::from_parts(mu.real(), mu.imag() - shift);
  }
  return mu;
}

std::array<BoundaryPoint, 2> fixed_points(const LineMatrix& m) {
  const long prec = m.precision();
  if (m.m21.is_exact_zero()) {
    const ComplexBall two = ComplexBall::from_int(2, 0, prec);
    return {BoundaryPoint{true, ComplexBall(prec)},
            BoundaryPoint{false, -m.m12 * inverse(two * m.m11)}};
  }
  if (m.m21.contains_zero()) throw PrecisionExhausted("m21 ball contains zero");
  // Roots of m21 z^2 - 2 m11 z - m12 with m11^2 + m12 m21 = -1.
  const ComplexBall inv = inverse(m.m21);
  const ComplexBall i = ComplexBall::i(prec);
  return {BoundaryPoint{false, (m.m11 + i) * inv}, BoundaryPoint{false, (m.m11 - i) * inv}};
}

GeneralizedCircle diameter_circle(const LineMatrix& m) {
  if (m.m21.is_exact_zero()) throw DegenerateCircle("a fixed point is at infinity");
  if (m.m21.contains_zero()) throw PrecisionExhausted("m21 ball contains zero");
  GeneralizedCircle c;
  c.kind = GeneralizedCircle::Kind::circle;
  c.center = m.m11 * inverse(m.m21);
  c.radius = inverse(m.m21.abs());
  return c;
}

Params params_from_two_generator(const ComplexBall& t0, const ComplexBall& t1, const ComplexBall& t01) {
  return Params::numeric(t0, t1, -t01);
}

Params params_from_two_generator(const FieldElement& t0, const FieldElement& t1,
                                 const FieldElement& t01) {
  return Params::exact(t0, t1, -t01);
}

BallMatrix conjugate_lower(const BallMatrix& m, const ComplexBall& s) {
  const long p = m.precision();
  const BallMatrix P{ComplexBall::from_int(1, 0, p), ComplexBall(p), s, ComplexBall::from_int(1, 0, p)};
  const BallMatrix Pinv{ComplexBall::from_int(1, 0, p), ComplexBall(p), -s,
                        ComplexBall::from_int(1, 0, p)};
  return P * m * Pinv;
}

HalfTurnTriple conjugate_lower(const HalfTurnTriple& t, const ComplexBall& s) {
  HalfTurnTriple out = t;
  out.A = conjugate_lower(t.A, s);
  out.B = conjugate_lower(t.B, s);
  out.C = conjugate_lower(t.C, s);
  return out;
}

std::pair<Rational, Rational> parse_complex_literal(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty complex literal");
  auto constant = [&](const std::string& part) -> Rational {
    RatPolynomial p = parse_polynomial(part, 't');
    if (p.degree() > 0) throw ParseError("not a number: '" + part + "'");
    return p.coeff(0);
  };
  if (s.back() != 'i') return {constant(s), Rational(0)};
  s.pop_back();
  // Split at the last top-level sign that is not leading.
  int depth = 0;
  std::size_t split = std::string::npos;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '(') ++depth;
    if (s[k] == ')') --depth;
    if (depth == 0 && k > 0 && (s[k] == '+' || s[k] == '-') && s[k - 1] != '/' && s[k - 1] != '*')
      split = k;
  }
  std::string re = split == std::string::npos ? "" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  if (!im.empty() && (im.back() == '*')) im.pop_back();
  return {re.empty() ? Rational(0) : constant(re), constant(im)};
}

}  // namespace halfturn
