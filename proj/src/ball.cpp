#include "halfturn/ball.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "halfturn/errors.hpp"

namespace halfturn {

namespace {

constexpr long kMagPrec = 64;

Float mag_abs_up(const Float& x) {
  Float r(kMagPrec);
  mpfr_abs(r.get(), x.get(), MPFR_RNDU);
  return r;
}

Float mag_add(const Float& a, const Float& b) {
  Float r(kMagPrec);
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

Float mag_mul(const Float& a, const Float& b) {
  Float r(kMagPrec);
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

// a / b rounded up; b must be a positive lower bound.
Float mag_div(const Float& a, const Float& b) {
  Float r(kMagPrec);
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

Float hypot_round(const Float& re, const Float& im, mpfr_rnd_t rnd) {
  Float r(kMagPrec);
  mpfr_hypot(r.get(), re.get(), im.get(), rnd);
  return r;
}

// Adds the rounding error of an inexact round-to-nearest result `v` to `rad`.
void account(Float& rad, int ternary, const Float& v) {
  if (ternary == 0) return;
  Float e = mag_abs_up(v);
  mpfr_mul_2si(e.get(), e.get(), 1 - v.precision(), MPFR_RNDU);
  if (e.is_zero()) mpfr_set_ui_2exp(e.get(), 1, mpfr_get_emin(), MPFR_RNDU);
  rad = mag_add(rad, e);
}

Rational exact(const Float& f) { return f.to_rational(); }

long max_prec(long a, long b) { return std::max(a, b); }

}  // namespace

// ---------------------------------------------------------------- Float

Float::Float(long prec) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(std::max<long>(prec, MPFR_PREC_MIN)));
  mpfr_set_zero(value_, 1);
}

Float::Float(const Float& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Float::Float(Float&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Float& Float::operator=(const Float& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Float& Float::operator=(Float&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Float::~Float() { mpfr_clear(value_); }

Rational Float::to_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), value_);
  return q;
}

std::string Float::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  return std::string(buf.data());
}

// ---------------------------------------------------------------- RealBall

RealBall::RealBall(long prec) : mid_(prec), rad_(kMagPrec) {}

RealBall RealBall::from_rational(const Rational& q, long prec) {
  RealBall b(prec);
  int t = mpfr_set_q(b.mid_.get(), q.get_mpq_t(), MPFR_RNDN);
  account(b.rad_, t, b.mid_);
  return b;
}

RealBall RealBall::from_int(long v, long prec) {
  RealBall b(prec);
  int t = mpfr_set_si(b.mid_.get(), v, MPFR_RNDN);
  account(b.rad_, t, b.mid_);
  return b;
}

RealBall RealBall::from_double(double v, long prec) {
  RealBall b(prec);
  int t = mpfr_set_d(b.mid_.get(), v, MPFR_RNDN);
  account(b.rad_, t, b.mid_);
  return b;
}

RealBall RealBall::from_interval(const Rational& lo, const Rational& hi,
                                 long prec) {
  RealBall b(prec);
  Rational m = (lo + hi) / 2;
  mpfr_set_q(b.mid_.get(), m.get_mpq_t(), MPFR_RNDN);
  Rational mq = exact(b.mid_);
  Rational r = std::max(Rational(hi - mq), Rational(mq - lo));
  if (r < 0) r = 0;
  mpfr_set_q(b.rad_.get(), r.get_mpq_t(), MPFR_RNDU);
  return b;
}

Rational RealBall::lower() const {
  Float t(std::max(precision(), kMagPrec) + 2);
  mpfr_sub(t.get(), mid_.get(), rad_.get(), MPFR_RNDD);
  return exact(t);
}

Rational RealBall::upper() const {
  Float t(std::max(precision(), kMagPrec) + 2);
  mpfr_add(t.get(), mid_.get(), rad_.get(), MPFR_RNDU);
  return exact(t);
}

bool RealBall::certainly_positive() const {
  return mpfr_cmp(mid_.get(), rad_.get()) > 0;
}

bool RealBall::certainly_negative() const {
  Float neg(kMagPrec);
  mpfr_neg(neg.get(), rad_.get(), MPFR_RNDN);
  return mpfr_cmp(mid_.get(), neg.get()) < 0;
}

bool RealBall::contains(const Rational& q) const {
  Rational d = q - exact(mid_);
  return abs(d) <= exact(rad_);
}

bool RealBall::overlaps(const RealBall& other) const {
  Rational d = exact(mid_) - exact(other.mid_);
  return abs(d) <= exact(rad_) + exact(other.rad_);
}

RealBall RealBall::operator-() const {
  RealBall r(*this);
  mpfr_neg(r.mid_.get(), r.mid_.get(), MPFR_RNDN);
  return r;
}

void RealBall::add_error(const Float& err) { rad_ = mag_add(rad_, mag_abs_up(err)); }

RealBall operator+(const RealBall& a, const RealBall& b) {
  RealBall r(max_prec(a.precision(), b.precision()));
  int t = mpfr_add(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  r.rad_ = mag_add(a.rad_, b.rad_);
  account(r.rad_, t, r.mid_);
  return r;
}

RealBall operator-(const RealBall& a, const RealBall& b) { return a + (-b); }

RealBall operator*(const RealBall& a, const RealBall& b) {
  RealBall r(max_prec(a.precision(), b.precision()));
  int t = mpfr_mul(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
  r.rad_ = mag_add(mag_add(mag_mul(mag_abs_up(a.mid_), b.rad_),
                           mag_mul(mag_abs_up(b.mid_), a.rad_)),
                   mag_mul(a.rad_, b.rad_));
  account(r.rad_, t, r.mid_);
  return r;
}

RealBall operator/(const RealBall& a, const RealBall& b) { return a * inverse(b); }

bool certainly_less(const RealBall& a, const RealBall& b) {
  return (b - a).certainly_positive();
}

RealBall inverse(const RealBall& x) {
  if (!x.certainly_nonzero())
    throw PrecisionExhausted("inverse of a real ball that may contain zero");
  RealBall r(x.precision());
  Float absm(kMagPrec);
  mpfr_abs(absm.get(), x.mid().get(), MPFR_RNDD);
  Float lo(kMagPrec);
  mpfr_sub(lo.get(), absm.get(), x.rad().get(), MPFR_RNDD);
  Float den(kMagPrec);
  mpfr_mul(den.get(), absm.get(), lo.get(), MPFR_RNDD);
  int t = mpfr_ui_div(r.mid_.get(), 1, x.mid().get(), MPFR_RNDN);
  r.rad_ = x.rad().is_zero() ? Float(kMagPrec) : mag_div(x.rad(), den);
  account(r.rad_, t, r.mid_);
  return r;
}

RealBall sqrt(const RealBall& x) {
  RealBall r(x.precision());
  if (!x.certainly_positive()) {
    if (x.is_exact() && x.mid().is_zero()) return r;
    Float up(kMagPrec);
    mpfr_add(up.get(), x.mid().get(), x.rad().get(), MPFR_RNDU);
    if (up.sign() < 0) throw DomainError("square root of a negative real ball");
    Float h(kMagPrec);
    mpfr_sqrt(h.get(), up.get(), MPFR_RNDU);
    mpfr_mul_2si(h.get(), h.get(), -1, MPFR_RNDU);
    int t = mpfr_set(r.mid_.get(), h.get(), MPFR_RNDN);
    r.rad_ = h;
    account(r.rad_, t, r.mid_);
    return r;
  }
  int t = mpfr_sqrt(r.mid_.get(), x.mid().get(), MPFR_RNDN);
  if (!x.rad().is_zero()) {
    Float lo(kMagPrec);
    mpfr_sub(lo.get(), x.mid().get(), x.rad().get(), MPFR_RNDD);
    mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_mul_2si(lo.get(), lo.get(), 1, MPFR_RNDD);
    r.rad_ = mag_div(x.rad(), lo);
  }
  account(r.rad_, t, r.mid_);
  return r;
}

RealBall abs(const RealBall& x) {
  if (x.certainly_positive()) return x;
  if (x.certainly_negative()) return -x;
  Float h = mag_add(mag_abs_up(x.mid()), x.rad());
  mpfr_mul_2si(h.get(), h.get(), -1, MPFR_RNDU);
  RealBall r(x.precision());
  int t = mpfr_set(r.mid_.get(), h.get(), MPFR_RNDN);
  r.rad_ = h;
  account(r.rad_, t, r.mid_);
  return r;
}

RealBall pi_ball(long prec) {
  RealBall r(prec);
  Float p(prec);
  int t = mpfr_const_pi(p.get(), MPFR_RNDN);
  Float e(kMagPrec);
  account(e, t, p);
  r = RealBall::from_rational(p.to_rational(), prec);
  r.add_error(e);
  return r;
}

// ---------------------------------------------------------------- ComplexBall

ComplexBall::ComplexBall(long prec) : re_(prec), im_(prec), rad_(kMagPrec) {}

ComplexBall ComplexBall::from_rational(const Rational& re, const Rational& im,
                                       long prec) {
  ComplexBall z(prec);
  int t1 = mpfr_set_q(z.re_.get(), re.get_mpq_t(), MPFR_RNDN);
  int t2 = mpfr_set_q(z.im_.get(), im.get_mpq_t(), MPFR_RNDN);
  account(z.rad_, t1, z.re_);
  account(z.rad_, t2, z.im_);
  return z;
}

ComplexBall ComplexBall::from_int(long re, long im, long prec) {
  return from_rational(Rational(re), Rational(im), prec);
}

ComplexBall ComplexBall::from_double(double re, double im, long prec) {
  ComplexBall z(prec);
  int t1 = mpfr_set_d(z.re_.get(), re, MPFR_RNDN);
  int t2 = mpfr_set_d(z.im_.get(), im, MPFR_RNDN);
  account(z.rad_, t1, z.re_);
  account(z.rad_, t2, z.im_);
  return z;
}

ComplexBall ComplexBall::from_real(const RealBall& re) {
  ComplexBall z(re.precision());
  z.re_ = re.mid_;
  z.rad_ = re.rad_;
  return z;
}

ComplexBall ComplexBall::from_parts(const RealBall& re, const RealBall& im) {
  ComplexBall z(max_prec(re.precision(), im.precision()));
  int t1 = mpfr_set(z.re_.get(), re.mid_.get(), MPFR_RNDN);
  int t2 = mpfr_set(z.im_.get(), im.mid_.get(), MPFR_RNDN);
  z.rad_ = mag_add(re.rad_, im.rad_);
  account(z.rad_, t1, z.re_);
  account(z.rad_, t2, z.im_);
  return z;
}

RealBall ComplexBall::real() const {
  RealBall r(precision());
  r.mid_ = re_;
  r.rad_ = rad_;
  return r;
}

RealBall ComplexBall::imag() const {
  RealBall r(precision());
  r.mid_ = im_;
  r.rad_ = rad_;
  return r;
}

RealBall ComplexBall::abs() const {
  RealBall r(precision());
  int t = mpfr_hypot(r.mid_.get(), re_.get(), im_.get(), MPFR_RNDN);
  r.rad_ = rad_;
  account(r.rad_, t, r.mid_);
  return r;
}

Rational ComplexBall::abs_lower() const {
  Float h = hypot_round(re_, im_, MPFR_RNDD);
  mpfr_sub(h.get(), h.get(), rad_.get(), MPFR_RNDD);
  if (h.sign() < 0) return Rational(0);
  return exact(h);
}

Rational ComplexBall::abs_upper() const {
  Float h = hypot_round(re_, im_, MPFR_RNDU);
  return exact(mag_add(h, rad_));
}

bool ComplexBall::certainly_nonzero() const {
  Float h = hypot_round(re_, im_, MPFR_RNDD);
  return mpfr_cmp(h.get(), rad_.get()) > 0;
}

bool ComplexBall::contains(const Rational& re, const Rational& im) const {
  Rational dr = re - exact(re_);
  Rational di = im - exact(im_);
  Rational r = exact(rad_);
  return dr * dr + di * di <= r * r;
}

bool ComplexBall::contains(const ComplexBall& other) const {
  Rational slack = exact(rad_) - exact(other.rad_);
  if (slack < 0) return false;
  Rational dr = exact(other.re_) - exact(re_);
  Rational di = exact(other.im_) - exact(im_);
  return dr * dr + di * di <= slack * slack;
}

bool ComplexBall::overlaps(const ComplexBall& other) const {
  Rational reach = exact(rad_) + exact(other.rad_);
  Rational dr = exact(other.re_) - exact(re_);
  Rational di = exact(other.im_) - exact(im_);
  return dr * dr + di * di <= reach * reach;
}

ComplexBall ComplexBall::operator-() const {
  ComplexBall z(*this);
  mpfr_neg(z.re_.get(), z.re_.get(), MPFR_RNDN);
  mpfr_neg(z.im_.get(), z.im_.get(), MPFR_RNDN);
  return z;
}

ComplexBall ComplexBall::conj() const {
  ComplexBall z(*this);
  mpfr_neg(z.im_.get(), z.im_.get(), MPFR_RNDN);
  return z;
}

ComplexBall ComplexBall::times_i() const {
  ComplexBall z(precision());
  mpfr_neg(z.re_.get(), im_.get(), MPFR_RNDN);
  mpfr_set(z.im_.get(), re_.get(), MPFR_RNDN);
  z.rad_ = rad_;
  return z;
}

void ComplexBall::add_error(const Float& err) { rad_ = mag_add(rad_, mag_abs_up(err)); }

ComplexBall ComplexBall::midpoint() const {
  ComplexBall z(*this);
  z.rad_ = Float(kMagPrec);
  return z;
}

std::string ComplexBall::to_string(int digits) const {
  std::string s = re_.to_string(digits);
  std::string im = im_.to_string(digits);
  if (!im.empty() && im[0] != '-') s += "+";
  s += im + "i";
  if (!rad_.is_zero()) s += " +/- " + rad_.to_string(3);
  return s;
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
  ComplexBall z(max_prec(a.precision(), b.precision()));
  int t1 = mpfr_add(z.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  int t2 = mpfr_add(z.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  z.rad_ = mag_add(a.rad_, b.rad_);
  account(z.rad_, t1, z.re_);
  account(z.rad_, t2, z.im_);
  return z;
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) { return a + (-b); }

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  ComplexBall z(max_prec(a.precision(), b.precision()));
  int t1 = mpfr_fmms(z.re_.get(), a.re_.get(), b.re_.get(), a.im_.get(),
                     b.im_.get(), MPFR_RNDN);
  int t2 = mpfr_fmma(z.im_.get(), a.re_.get(), b.im_.get(), a.im_.get(),
                     b.re_.get(), MPFR_RNDN);
  Float am = hypot_round(a.re_, a.im_, MPFR_RNDU);
  Float bm = hypot_round(b.re_, b.im_, MPFR_RNDU);
  z.rad_ = mag_add(mag_add(mag_mul(am, b.rad_), mag_mul(bm, a.rad_)),
                   mag_mul(a.rad_, b.rad_));
  account(z.rad_, t1, z.re_);
  account(z.rad_, t2, z.im_);
  return z;
}

ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
  return a * inverse(b);
}

ComplexBall square(const ComplexBall& z) { return z * z; }

ComplexBall inverse(const ComplexBall& z) {
  Float mlo = hypot_round(z.mid_re(), z.mid_im(), MPFR_RNDD);
  Float gap(kMagPrec);
  mpfr_sub(gap.get(), mlo.get(), z.rad().get(), MPFR_RNDD);
  if (gap.sign() <= 0)
    throw PrecisionExhausted("inverse of a complex ball that may contain zero");

  const long p = z.precision();
  Float norm(p + 16);
  mpfr_fmma(norm.get(), z.mid_re().get(), z.mid_re().get(), z.mid_im().get(),
            z.mid_im().get(), MPFR_RNDN);
  Float qre(p), qim(p);
  mpfr_div(qre.get(), z.mid_re().get(), norm.get(), MPFR_RNDN);
  mpfr_div(qim.get(), z.mid_im().get(), norm.get(), MPFR_RNDN);
  mpfr_neg(qim.get(), qim.get(), MPFR_RNDN);

  ComplexBall q(p);
  q = ComplexBall::from_rational(qre.to_rational(), qim.to_rational(), p);
  // |1/w - q| <= (|1 - q m| + |q| r) / (|m| - r) for |w - m| <= r.
  ComplexBall residual = ComplexBall::from_int(1, 0, p) - q * z.midpoint();
  Float delta = mag_add(hypot_round(residual.mid_re(), residual.mid_im(), MPFR_RNDU),
                        residual.rad());
  Float qabs = hypot_round(qre, qim, MPFR_RNDU);
  Float num = mag_add(delta, mag_mul(qabs, z.rad()));
  q.add_error(mag_div(num, gap));
  return q;
}

ComplexBall sqrt(const ComplexBall& z) {
  const long p = z.precision();
  ComplexBall s(p);
  if (z.mid_re().is_zero() && z.mid_im().is_zero()) {
    Float h(kMagPrec);
    mpfr_sqrt(h.get(), z.rad().get(), MPFR_RNDU);
    s.add_error(h);
    return s;
  }
  Float h(p + 16);
  mpfr_hypot(h.get(), z.mid_re().get(), z.mid_im().get(), MPFR_RNDN);
  Float sre(p), sim(p), t(p + 16);
  if (z.mid_re().sign() >= 0) {
    mpfr_add(t.get(), h.get(), z.mid_re().get(), MPFR_RNDN);
    mpfr_mul_2si(t.get(), t.get(), -1, MPFR_RNDN);
    mpfr_sqrt(sre.get(), t.get(), MPFR_RNDN);
    mpfr_div(sim.get(), z.mid_im().get(), sre.get(), MPFR_RNDN);
    mpfr_mul_2si(sim.get(), sim.get(), -1, MPFR_RNDN);
  } else {
    mpfr_sub(t.get(), h.get(), z.mid_re().get(), MPFR_RNDN);
    mpfr_mul_2si(t.get(), t.get(), -1, MPFR_RNDN);
    mpfr_sqrt(sim.get(), t.get(), MPFR_RNDN);
    if (z.mid_im().sign() < 0) mpfr_neg(sim.get(), sim.get(), MPFR_RNDN);
    mpfr_div(sre.get(), z.mid_im().get(), sim.get(), MPFR_RNDN);
    mpfr_mul_2si(sre.get(), sre.get(), -1, MPFR_RNDN);
  }
  s = ComplexBall::from_rational(sre.to_rational(), sim.to_rational(), p);

  // For w in the ball, the root of w nearest s lies within (|m - s^2| + r)/|s|.
  ComplexBall residual = z.midpoint() - s * s;
  Float delta = mag_add(hypot_round(residual.mid_re(), residual.mid_im(), MPFR_RNDU),
                        residual.rad());
  Float slo = hypot_round(sre, sim, MPFR_RNDD);
  Float bound1 = mag_div(mag_add(delta, z.rad()), slo);
  // Every root has modulus at most sqrt(|m| + r).
  Float mup = mag_add(hypot_round(z.mid_re(), z.mid_im(), MPFR_RNDU), z.rad());
  Float bound2(kMagPrec);
  mpfr_sqrt(bound2.get(), mup.get(), MPFR_RNDU);
  bound2 = mag_add(bound2, hypot_round(sre, sim, MPFR_RNDU));
  s.add_error(mpfr_cmp(bound1.get(), bound2.get()) < 0 ? bound1 : bound2);
  return s;
}

ComplexBall log(const ComplexBall& z) {
  Float mlo = hypot_round(z.mid_re(), z.mid_im(), MPFR_RNDD);
  Float gap(kMagPrec);
  mpfr_sub(gap.get(), mlo.get(), z.rad().get(), MPFR_RNDD);
  if (gap.sign() <= 0)
    throw PrecisionExhausted("logarithm of a ball that may contain zero");
  const long p = z.precision();
  Float h(p + 16), lre(p), lim(p);
  mpfr_hypot(h.get(), z.mid_re().get(), z.mid_im().get(), MPFR_RNDN);
  mpfr_log(lre.get(), h.get(), MPFR_RNDN);
  mpfr_atan2(lim.get(), z.mid_im().get(), z.mid_re().get(), MPFR_RNDN);
  ComplexBall out = ComplexBall::from_rational(lre.to_rational(), lim.to_rational(), p);
  // Rounding of hypot, log and atan2: at most 2^(2-p) (1 + |re| + |im|).
  Float err = mag_add(mag_add(mag_abs_up(lre), mag_abs_up(lim)), Float(kMagPrec));
  mpfr_add_ui(err.get(), err.get(), 1, MPFR_RNDU);
  mpfr_mul_2si(err.get(), err.get(), 2 - p, MPFR_RNDU);
  out.add_error(err);
  if (!z.rad().is_zero()) out.add_error(mag_div(z.rad(), gap));
  return out;
}

}  // namespace halfturn
