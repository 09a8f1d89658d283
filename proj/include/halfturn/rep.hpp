#pragma once

// SL(2,C) representation of a group generated by three half-turns a, b, c
// with rho0 = tr(AB), rho1 = tr(AC), rho2 = tr(BC).

#include <array>
#include <optional>
#include <string>

#include "halfturn/ball.hpp"
#include "halfturn/number_field.hpp"

namespace halfturn {

// The three parameters, either exact elements of one number field or
// complex balls.
class Params {
 public:
  static Params exact(FieldElement rho0, FieldElement rho1, FieldElement rho2);
  static Params numeric(ComplexBall rho0, ComplexBall rho1, ComplexBall rho2);
  static Params regular(const FieldElement& rho) { return exact(rho, rho, rho); }

  bool is_exact() const { return exact_; }
  const FieldPtr& field() const { return field_; }            // exact mode only
  const FieldElement& exact_rho(int k) const;                  // exact mode only
  // Ball around rho_k. Numeric parameters keep their own precision.
  ComplexBall rho(int k, long prec) const;
  bool is_regular() const;

  std::string to_string() const;

 private:
  bool exact_ = false;
  FieldPtr field_;
  std::array<FieldElement, 3> exact_rho_;
  std::array<ComplexBall, 3> numeric_rho_{ComplexBall(64), ComplexBall(64), ComplexBall(64)};
};

// 2x2 matrix of complex balls.
struct BallMatrix {
  ComplexBall m11, m12, m21, m22;

  static BallMatrix identity(long prec);
  long precision() const { return m11.precision(); }
  ComplexBall trace() const { return m11 + m22; }
  ComplexBall det() const { return m11 * m22 - m12 * m21; }
  BallMatrix operator-() const { return {-m11, -m12, -m21, -m22}; }
  friend BallMatrix operator*(const BallMatrix& a, const BallMatrix& b);
  // Entrywise: does every entry of `other` overlap the matching entry here?
  bool overlaps(const BallMatrix& other) const;
  // Is +I (sign = 1) or -I (sign = -1) inside the matrix ball?
  bool contains_scalar(int sign) const;
};

// Normalized line matrix of a half-turn: trace 0, determinant 1, M^2 = -I.
using LineMatrix = BallMatrix;

struct HalfTurnTriple {
  LineMatrix A, B, C;
  ComplexBall beta, c11, c12, c21;
  Params params;
  bool regular = false;
  long precision() const { return A.precision(); }
};

// A point of the boundary sphere: a complex number or infinity.
struct BoundaryPoint {
  bool infinite = false;
  ComplexBall z;
};

struct GeneralizedCircle {
  enum class Kind { circle, line };
  Kind kind = Kind::circle;
  ComplexBall center;   // circle
  RealBall radius;      // circle
  ComplexBall point;    // line
  ComplexBall direction;
};

// tr(M1 M2).
ComplexBall rho_of(const LineMatrix& m1, const LineMatrix& m2);

// mu = arccosh(-tr(M1 M2)/2) with Re mu >= 0 and Im mu in [0, 2 pi).
// With require_positive_real, a trace of +-2 raises DegenerateLines.
ComplexBall complex_distance(const LineMatrix& m1, const LineMatrix& m2,
                             bool require_positive_real = false);

HalfTurnTriple build_representation(const Params& p, long prec);
// Simplified formulas for rho0 = rho1 = rho2 = rho.
HalfTurnTriple build_regular(const Params& p, long prec);
HalfTurnTriple build_regular(const ComplexBall& rho);

std::array<BoundaryPoint, 2> fixed_points(const LineMatrix& m);
GeneralizedCircle diameter_circle(const LineMatrix& m);

// (rho0, rho1, rho2) = (t0, t1, -t01) from t0 = tr(ab), t1 = tr(ac),
// t01 = tr(ab (ac)^-1). Lifting a generator with the other sign negates two
// of the three parameters.
Params params_from_two_generator(const ComplexBall& t0, const ComplexBall& t1,
                                 const ComplexBall& t01);
Params params_from_two_generator(const FieldElement& t0, const FieldElement& t1,
                                 const FieldElement& t01);

// P M P^-1 for P = [[1, 0], [s, 1]].
BallMatrix conjugate_lower(const BallMatrix& m, const ComplexBall& s);
HalfTurnTriple conjugate_lower(const HalfTurnTriple& t, const ComplexBall& s);

// Checks tr = 0, det = 1 and M^2 = -I by ball containment.
bool is_line_matrix(const LineMatrix& m);

// Parses "a+bi", "-0.5+0.866i", "3", "i", "-2.5i" into exact rationals.
std::pair<Rational, Rational> parse_complex_literal(const std::string& text);

}  // namespace halfturn
