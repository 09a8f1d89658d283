#include "doctest.h"

#include <random>

#include "halfturn/errors.hpp"
#include "halfturn/rep.hpp"

using namespace halfturn;

namespace {

constexpr long kPrec = 256;

FieldPtr quad(long d) { return NumberField::create(IntPolynomial(std::vector<Integer>{d, 0, 1})); }

ComplexBall cb(const Rational& re, const Rational& im = 0) { return ComplexBall::from_rational(re, im, kPrec); }

BallMatrix diag_i() { return {cb(0, 1), cb(0), cb(0), cb(0, -1)}; }
BallMatrix anti_i() { return {cb(0), cb(0, 1), cb(0, 1), cb(0)}; }

void check_triple(const HalfTurnTriple& t, const ComplexBall& r0, const ComplexBall& r1, const ComplexBall& r2) {
  CHECK(rho_of(t.A, t.B).overlaps(r0));
  CHECK(rho_of(t.A, t.C).overlaps(r1));
  CHECK(rho_of(t.B, t.C).overlaps(r2));
  for (const auto* m : {&t.A, &t.B, &t.C}) CHECK(is_line_matrix(*m));
  CHECK(t.beta.abs_upper() >= 1);
}

}  // namespace

TEST_CASE("complex distance examples") {
  auto mu = complex_distance(diag_i(), anti_i());
  auto half_pi = pi_ball(kPrec) * RealBall::from_rational(Rational(1, 2), kPrec);
  CHECK(mu.real().contains(0));
  CHECK(mu.imag().overlaps(half_pi));
  auto zero = complex_distance(anti_i(), anti_i());
  CHECK(zero.abs_upper() < Rational(1, 1000000));
  CHECK_THROWS_AS(complex_distance(anti_i(), anti_i(), true), DegenerateLines);
}

TEST_CASE("(-1+t)/2 parameter round-trips") {
  auto K = quad(3);
  auto rho = FieldElement::parse(K, "(-1+t)/2");
  auto t = build_representation(Params::regular(rho), kPrec);
  auto r = rho.to_ball(kPrec);
  check_triple(t, r, r, r);
}

TEST_CASE("degenerate rho0") {
  auto Q = NumberField::rationals();
  auto two = FieldElement::from_rational(Q, Rational(2));
  CHECK_THROWS_AS(build_representation(Params::regular(two), kPrec), DegenerateParams);
  CHECK_THROWS_AS(build_representation(Params::regular(-two), kPrec), DegenerateParams);
}

TEST_CASE("real parameter -3") {
  auto Q = NumberField::rationals();
  auto m3 = FieldElement::from_rational(Q, Rational(-3));
  auto t = build_representation(Params::regular(m3), kPrec);
  check_triple(t, cb(-3), cb(-3), cb(-3));
  // Entries are real or purely imaginary.
  for (const auto* z : {&t.beta, &t.c11, &t.c12, &t.c21})
    CHECK((z->real().contains(0) || z->imag().contains(0)));
}

TEST_CASE("regular formulas agree with the general ones") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int it = 0; it < 20; ++it) {
    auto rho = ComplexBall::from_double(u(rng), u(rng), kPrec);
    auto g = build_representation(Params::numeric(rho, rho, rho), kPrec);
    auto r = build_regular(rho);
    CHECK(g.C.overlaps(r.C));
    CHECK(g.A.overlaps(r.A));
    CHECK(r.c12.overlaps(r.c21));
    check_triple(r, rho, rho, rho);
  }
  auto G = quad(1);
  auto rho = FieldElement::parse(G, "1 + t");
  auto g = build_representation(Params::regular(rho), kPrec);
  auto r = build_regular(Params::regular(rho), kPrec);
  CHECK(g.C.overlaps(r.C));
}

TEST_CASE("rho = -7 gives |beta|^2 + |beta|^-2 = 7") {
  auto t = build_regular(cb(-7));
  auto b2 = t.beta.abs() * t.beta.abs();
  CHECK((b2 + inverse(b2)).contains(Rational(7)));
}

TEST_CASE("sqrt(-2) regular") {
  auto L = quad(2);
  auto rho = FieldElement::generator(L);
  auto t = build_regular(Params::regular(rho), kPrec);
  CHECK(t.c12.overlaps(t.c21));
  CHECK(rho_of(t.B, t.C).overlaps(rho.to_ball(kPrec)));
}

TEST_CASE("fixed points and diameter circles") {
  auto t = build_regular(cb(Rational(1, 3), Rational(5, 2)));
  auto fa = fixed_points(t.A);
  auto ib = inverse(t.beta);
  CHECK(fa[0].z.overlaps(ib));
  CHECK(fa[1].z.overlaps(-ib));
  auto fb = fixed_points(t.B);
  CHECK((fb[0].z.overlaps(t.beta) || fb[0].z.overlaps(-t.beta)));
  auto fc = fixed_points(t.C);
  auto i = ComplexBall::i(kPrec);
  CHECK(fc[0].z.overlaps((t.c11 + i) * inverse(t.c21)));
  auto d = fixed_points(diag_i());
  CHECK(d[0].infinite);
  CHECK(d[1].z.contains(0, 0));
  auto c0 = diameter_circle(t.A);
  CHECK(c0.center.contains(0, 0));
  CHECK(c0.radius.overlaps(inverse(t.beta.abs())));
  auto c2 = diameter_circle(t.C);
  CHECK(c2.radius.overlaps(inverse(t.c21.abs())));
  CHECK(c2.center.overlaps(t.c11 * inverse(t.c21)));
  // radius = half the distance between the fixed points
  CHECK(c2.radius.overlaps((fc[0].z - fc[1].z).abs() * RealBall::from_rational(Rational(1, 2), kPrec)));
  CHECK_THROWS_AS(diameter_circle(diag_i()), DegenerateCircle);
}

TEST_CASE("two-generator parameters round-trip") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int it = 0; it < 10; ++it) {
    auto r0 = ComplexBall::from_double(u(rng), u(rng), kPrec);
    auto r1 = ComplexBall::from_double(u(rng), u(rng), kPrec);
    auto r2 = ComplexBall::from_double(u(rng), u(rng), kPrec);
    auto t = build_representation(Params::numeric(r0, r1, r2), kPrec);
    auto g0 = t.A * t.B, g1 = t.A * t.C;
    // (AC)^-1 = C^-1 A^-1 = (-C)(-A) = C A
    auto t01 = (g0 * (t.C * t.A)).trace();
    auto p = params_from_two_generator(g0.trace(), g1.trace(), t01);
    CHECK(p.rho(0, kPrec).overlaps(r0));
    CHECK(p.rho(1, kPrec).overlaps(r1));
    CHECK(p.rho(2, kPrec).overlaps(r2));
  }
  auto t = build_regular(cb(Rational(1, 2), Rational(3, 2)));
  auto g0 = t.A * t.B;
  auto t01 = (g0 * (t.C * t.A)).trace();
  CHECK(t01.overlaps(-cb(Rational(1, 2), Rational(3, 2))));
}

TEST_CASE("complex literals") {
  CHECK(parse_complex_literal("-0.5+0.25i") == std::pair<Rational, Rational>(Rational(-1, 2), Rational(1, 4)));
  CHECK(parse_complex_literal("3") == std::pair<Rational, Rational>(Rational(3), Rational(0)));
  CHECK(parse_complex_literal("-i") == std::pair<Rational, Rational>(Rational(0), Rational(-1)));
  CHECK(parse_complex_literal("1/2 - 3/2i") == std::pair<Rational, Rational>(Rational(1, 2), Rational(-3, 2)));
  CHECK_THROWS_AS(parse_complex_literal("1+ti"), ParseError);
}
