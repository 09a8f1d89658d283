#pragma once

// Midpoint-radius ball arithmetic over MPFR.
//
// Every operation returns a ball that rigorously encloses the exact result
// for all inputs inside the operand balls. Midpoints are rounded to nearest;
// radii are 64-bit floats maintained with upward rounding, and each inexact
// midpoint operation adds its rounding error to the radius.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace halfturn {

using Integer = mpz_class;
using Rational = mpq_class;

// RAII owner of an mpfr_t.
class Float {
 public:
  explicit Float(long prec = 64);
  Float(const Float& other);
  Float(Float&& other) noexcept;
  Float& operator=(const Float& other);
  Float& operator=(Float&& other) noexcept;
  ~Float();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  // Exact conversion (the value must be finite).
  Rational to_rational() const;
  // Scientific notation with `digits` significant digits.
  std::string to_string(int digits = 20) const;

 private:
  mpfr_t value_;
};

class RealBall {
 public:
  RealBall() : RealBall(128L) {}
  explicit RealBall(long prec);

  static RealBall from_rational(const Rational& q, long prec);
  static RealBall from_int(long v, long prec);
  static RealBall from_double(double v, long prec);
  // Smallest representable ball containing [lo, hi].
  static RealBall from_interval(const Rational& lo, const Rational& hi,
                                long prec);

  const Float& mid() const { return mid_; }
  const Float& rad() const { return rad_; }
  long precision() const { return mid_.precision(); }

  // Certified endpoints: lower() <= x <= upper() for every x in the ball.
  Rational lower() const;
  Rational upper() const;
  double approx() const { return mid_.to_double(); }

  bool is_exact() const { return rad_.is_zero(); }
  bool certainly_positive() const;
  bool certainly_negative() const;
  bool certainly_nonzero() const {
    return certainly_positive() || certainly_negative();
  }
  bool contains(const Rational& q) const;
  bool contains_zero() const { return !certainly_nonzero(); }
  bool overlaps(const RealBall& other) const;

  RealBall operator-() const;
  friend RealBall operator+(const RealBall& a, const RealBall& b);
  friend RealBall operator-(const RealBall& a, const RealBall& b);
  friend RealBall operator*(const RealBall& a, const RealBall& b);
  friend RealBall operator/(const RealBall& a, const RealBall& b);

  // Replaces the radius by a larger value (used when a caller knows an
  // additional error term).
  void add_error(const Float& err);

 private:
  friend class ComplexBall;
  friend RealBall inverse(const RealBall& x);
  friend RealBall sqrt(const RealBall& x);
  friend RealBall abs(const RealBall& x);
  friend RealBall pi_ball(long prec);
  Float mid_;
  Float rad_;
};

bool certainly_less(const RealBall& a, const RealBall& b);
RealBall inverse(const RealBall& x);
RealBall sqrt(const RealBall& x);
RealBall abs(const RealBall& x);
RealBall pi_ball(long prec);

class ComplexBall {
 public:
  ComplexBall() : ComplexBall(128L) {}
  explicit ComplexBall(long prec);

  static ComplexBall from_rational(const Rational& re, const Rational& im,
                                   long prec);
  static ComplexBall from_int(long re, long im, long prec);
  static ComplexBall from_double(double re, double im, long prec);
  static ComplexBall from_real(const RealBall& re);
  static ComplexBall from_parts(const RealBall& re, const RealBall& im);
  static ComplexBall i(long prec) { return from_int(0, 1, prec); }

  const Float& mid_re() const { return re_; }
  const Float& mid_im() const { return im_; }
  const Float& rad() const { return rad_; }
  long precision() const { return re_.precision(); }

  RealBall real() const;
  RealBall imag() const;
  // Ball enclosing |z| for every z in this ball.
  RealBall abs() const;
  // Certified lower and upper bounds of |z| over the ball.
  Rational abs_lower() const;
  Rational abs_upper() const;

  bool is_exact_zero() const { return re_.is_zero() && im_.is_zero() && rad_.is_zero(); }
  bool certainly_nonzero() const;
  bool contains_zero() const { return !certainly_nonzero(); }
  bool contains(const Rational& re, const Rational& im) const;
  bool contains(const ComplexBall& other) const;
  bool overlaps(const ComplexBall& other) const;

  ComplexBall operator-() const;
  ComplexBall conj() const;
  friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b);
  // Multiplication by i.
  ComplexBall times_i() const;

  void add_error(const Float& err);
  // Same midpoint, radius zero. Used for approximate iterations (Newton,
  // Aberth) whose results are certified separately.
  ComplexBall midpoint() const;

  std::string to_string(int digits = 20) const;

 private:
  friend ComplexBall inverse(const ComplexBall& z);
  friend ComplexBall sqrt(const ComplexBall& z);
  friend ComplexBall log(const ComplexBall& z);
  Float re_;
  Float im_;
  Float rad_;
};

ComplexBall inverse(const ComplexBall& z);
// Encloses, for every z in the ball, the square root of z nearest to the
// square root of the midpoint (principal branch at the midpoint).
ComplexBall sqrt(const ComplexBall& z);
// Principal logarithm continued from the midpoint.
ComplexBall log(const ComplexBall& z);
ComplexBall square(const ComplexBall& z);

}  // namespace halfturn
