#include "doctest.h"

#include <random>

#include "halfturn/arith.hpp"
#include "halfturn/errors.hpp"

using namespace halfturn;

namespace {

FieldPtr quad(long d) { return NumberField::create(IntPolynomial(std::vector<Integer>{d, 0, 1})); }

FieldElement rational(const Rational& q) { return FieldElement::from_rational(NumberField::rationals(), q); }

}  // namespace

TEST_CASE("trace fields") {
  auto L = quad(2);
  auto s = FieldElement::generator(L);
  CHECK(trace_field(Params::regular(s)).label() == "Q(√-2)");
  CHECK(trace_field(Params::regular(rational(-3))).degree == 1);
  auto G = quad(1);
  CHECK(trace_field(Params::regular(FieldElement::parse(G, "1+t"))).label() == "Q(√-1)");
}

TEST_CASE("invariant trace fields") {
  auto F = quad(5);
  CHECK(invariant_trace_field(Params::regular(FieldElement::generator(F))).label() == "Q(√-5)");
  auto G = quad(1);
  auto k = invariant_trace_field(Params::regular(FieldElement::parse(G, "2t")));
  CHECK(k.label() == "Q(√-1)");
  CHECK(invariant_trace_field(Params::regular(rational(-3))).degree == 1);
}

TEST_CASE("invariant field can be smaller than the trace field") {
  // rho0 = rho1 = sqrt(-2)... with rho2 = -sqrt(-2): rho0 rho1 rho2 = 2 sqrt(-2)
  // stays quadratic; rho = (sqrt2, sqrt2, sqrt2) in Q(sqrt 2) gives k = Q(sqrt 2)
  // while rho = (sqrt2, sqrt2, 0)... use i in Q(i): k = Q(-1, -1, -i) = Q(i).
  auto R = NumberField::parse("t^2-2");
  auto r = FieldElement::generator(R);
  auto k = invariant_trace_field(Params::exact(r, r, FieldElement::from_rational(R, Rational(3))));
  CHECK(k.degree == 1);
  CHECK(trace_field(Params::exact(r, r, FieldElement::from_rational(R, Rational(3)))).degree == 2);
}

TEST_CASE("hilbert entries") {
  auto L = quad(2);
  auto s = FieldElement::generator(L);
  auto h = hilbert_entries(Params::regular(s), HilbertForm::displayed);
  CHECK(h.a == FieldElement::from_rational(L, Rational(12)));
  // 4 (-6 - (-2 sqrt(-2)) - 4) = 4(-10 + 2 sqrt(-2))
  CHECK(h.b == FieldElement(L, {Rational(-40), Rational(8)}));
  // Trace form: 4 (-6 + (-2 sqrt(-2)) - 4).
  auto ht = hilbert_entries(Params::regular(s));
  CHECK(ht.a == h.a);
  CHECK(ht.b == FieldElement(L, {Rational(-40), Rational(-8)}));
  CHECK_THROWS_AS(hilbert_entries(Params::regular(rational(2))), DegenerateSymbol);
  auto h3 = hilbert_entries(Params::regular(rational(-3)), HilbertForm::displayed);
  CHECK(h3.a.rational_value() == 45);
  CHECK(h3.b.rational_value() == 81 * 50);
  CHECK(hilbert_entries(Params::regular(rational(-3))).b.rational_value() == 81 * -4);
  // The displayed form is the trace form of (rho0, rho1, -rho2).
  auto G = quad(1);
  auto x = FieldElement::parse(G, "1+t"), y = FieldElement::parse(G, "2-t"), z = FieldElement::parse(G, "3t");
  CHECK(hilbert_entries(Params::exact(x, y, z), HilbertForm::displayed).b ==
        hilbert_entries(Params::exact(x, y, -z)).b);
}

TEST_CASE("symbolic entries agree with matrix traces") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> u(-6, 6);
  auto F = quad(7);
  for (int it = 0; it < 15; ++it) {
    auto el = [&] { return FieldElement(F, {Rational(u(rng), 2), Rational(u(rng), 2)}); };
    auto p = Params::exact(el(), el(), el());
    HilbertSymbolData h;
    try {
      h = hilbert_entries(p);
      auto t = build_representation(p, 256);
    } catch (const DomainError&) {
      continue;
    }
    auto t = build_representation(p, 256);
    auto g0 = t.A * t.B, g1 = t.A * t.C;
    auto g02 = g0 * g0, g12 = g1 * g1;
    auto four = ComplexBall::from_int(4, 0, 256), two = ComplexBall::from_int(2, 0, 256);
    auto tr = g02.trace();
    CHECK((tr * tr - four).overlaps(h.a.to_ball(256)));
    // [g0^2, g1^2] with inverses via the adjugate (det 1).
    auto inv = [](const BallMatrix& m) { return BallMatrix{m.m22, -m.m12, -m.m21, m.m11}; };
    auto comm = g02 * g12 * inv(g02) * inv(g12);
    CHECK((comm.trace() - two).overlaps(h.b.to_ball(256)));
  }
}

TEST_CASE("arithmeticity verdicts") {
  auto K = quad(3);
  auto w = FieldElement::parse(K, "(-1+t)/2");
  auto r5 = arithmeticity_test(Params::regular(w));
  CHECK(r5.condition1());
  CHECK(r5.invariant_field.label() == "Q(√-3)");
  CHECK(r5.signature == Signature{0, 1});
  CHECK(r5.real_place_signs.empty());
  CHECK(r5.free_product_status == FreeProductStatus::not_split_certified);
  CHECK(r5.verdict == Verdict::nearly_arithmetic_candidate);

  auto L = quad(2);
  auto r13 = arithmeticity_test(Params::regular(FieldElement::generator(L)));
  CHECK(r13.verdict == Verdict::nearly_arithmetic_candidate);
  CHECK(r13.invariant_field.label() == "Q(√-2)");
  CHECK(r13.signature == Signature{0, 1});

  auto m7 = arithmeticity_test(Params::regular(rational(-7)));
  CHECK(m7.verdict == Verdict::splits_free_product);
  CHECK(m7.free_product_evidence.rfind("annulus", 0) == 0);

  auto m3 = arithmeticity_test(Params::regular(rational(-3)));
  CHECK(m3.verdict == Verdict::fails_condition_2);
  CHECK(m3.signature == Signature{1, 0});
  CHECK(m3.real_place_signs.size() == 1);

  auto half = FieldElement::parse(L, "(1+t)/2");
  CHECK(arithmeticity_test(Params::regular(half)).verdict == Verdict::fails_condition_1);
}

TEST_CASE("real places and condition 3") {
  // rho = sqrt 3 in Q(sqrt 3): k = Q(3, 3 sqrt 3) = Q(sqrt 3), two real places,
  // no complex place.
  auto R = NumberField::parse("t^2-3");
  auto rep = arithmeticity_test(Params::regular(FieldElement::generator(R)));
  CHECK(rep.signature == Signature{2, 0});
  CHECK(rep.real_place_signs.size() == 2);
  CHECK(rep.verdict == Verdict::fails_condition_2);
  // a = 3 (3 - 4) = -3 < 0 at both places.
  for (const auto& s : rep.real_place_signs) CHECK(s.sign_a == -1);
}

TEST_CASE("verdict invariant under complex conjugation") {
  auto K = quad(3);
  for (const char* e : {"(-1+t)/2", "(1+t)/2", "(-3+t)/2", "t"}) {
    auto x = FieldElement::parse(K, e);
    auto xc = FieldElement(K, {x.coords()[0], -x.coords()[1]});
    CHECK(arithmeticity_test(Params::regular(x)).verdict == arithmeticity_test(Params::regular(xc)).verdict);
  }
}

TEST_CASE("report json") {
  auto L = quad(2);
  auto j = arithmeticity_test(Params::regular(FieldElement::generator(L))).to_json();
  CHECK(j["verdict"] == "nearly_arithmetic_candidate");
  CHECK(j["invariant_trace_field"]["label"] == "Q(√-2)");
  CHECK(nlohmann::ordered_json::parse(j.dump()) == j);
}
