// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "halfturn/arith.hpp"
#include "halfturn/enumerate.hpp"
#include "halfturn/klein.hpp"
#include "halfturn/relators.hpp"

using namespace halfturn;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fixed(double v, int digits = 6) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

// ------------------------------------------------------------- criteria

Outcome criterion_1() {
  const auto start = Clock::now();
  const SplitConstants c = compute_split_constants();
  const double secs = seconds_since(start);
  const bool beta_ok = c.beta_star.lower() >= Rational(24944, 10000) && c.beta_star.upper() <= Rational(24946, 10000);
  const bool rho_ok = c.rho_star_computed.lower() >= Rational(638, 100) && c.rho_star_computed.upper() <= Rational(640, 100);
  std::ostringstream d;
  d << "beta* in [" << fixed(c.beta_star.lower().get_d(), 10) << ", " << fixed(c.beta_star.upper().get_d(), 10)
    << "], rho* in [" << fixed(c.rho_star_computed.lower().get_d(), 10) << ", "
    << fixed(c.rho_star_computed.upper().get_d(), 10) << "], " << fixed(secs, 3) << " s";
  return {beta_ok && rho_ok && secs < 1.0, d.str()};
}

Outcome criterion_2() {
  const Rational K = k_constant(Rational(32, 5));
  return {K == Rational(7056) / 100, "K(6.4) = " + K.get_str()};
}

// Independent maximizer of prod (x_i - x_j)^2 over three points in [-1, 1]:
// a grid followed by coordinate refinement.
double max_three_point_product() {
  auto f = [](double a, double b, double c) {
    const double v = (a - b) * (a - c) * (b - c);
    return v * v;
  };
  double best = 0, ba = 0, bb = 0, bc = 0;
  const int n = 80;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      for (int k = 0; k <= n; ++k) {
        const double a = -1 + 2.0 * i / n, b = -1 + 2.0 * j / n, c = -1 + 2.0 * k / n;
        const double v = f(a, b, c);
        if (v > best) best = v, ba = a, bb = b, bc = c;
      }
  double step = 2.0 / n;
  while (step > 1e-12) {
    bool moved = false;
    for (int coord = 0; coord < 3; ++coord)
      for (double s : {step, -step}) {
        double a = ba, b = bb, c = bc;
        (coord == 0 ? a : coord == 1 ? b : c) += s;
        if (std::abs(a) > 1 || std::abs(b) > 1 || std::abs(c) > 1) continue;
        const double v = f(a, b, c);
        if (v > best) best = v, ba = a, bb = b, bc = c, moved = true;
      }
    if (!moved) step /= 2;
  }
  return best;
}

Outcome criterion_3() {
  const bool exact = m_r(3) == 4;
  const double numeric = max_three_point_product();
  const bool numeric_ok = std::abs(numeric - 4) < 1e-6;
  bool decreasing = true;
  RealBall prev = m_r_normalized(3);
  for (int r = 4; r <= 30; ++r) {
    const RealBall cur = m_r_normalized(r);
    decreasing = decreasing && certainly_less(cur, prev);
    prev = cur;
  }
  const double at30 = prev.approx();
  const bool limit_ok = std::abs(at30 - 0.25) <= 0.05;
  std::ostringstream d;
  d << "M_3 = " << m_r(3).get_str() << ", numeric max " << fixed(numeric, 9) << ", decreasing on 3..30: "
    << (decreasing ? "yes" : "no") << ", M_30^(1/870) = " << fixed(at30, 6) << " (needs |x - 0.25| <= 0.05)";
  return {exact && numeric_ok && decreasing && limit_ok, d.str()};
}

Outcome criterion_4() {
  const Rational rs(32, 5);
  const Rational K = k_constant(rs);
  try {
    const int n = n0(rs);
    bool below = true;
    for (int m = n; m <= n + 20; ++m) below = below && discriminant_bound(m, rs, K) < 1;
    return {n <= 30 && below, "n0 = " + std::to_string(n) + (below ? ", bound < 1 on [n0, n0+20]" : ", bound >= 1 somewhere in [n0, n0+20]")};
  } catch (const ScanExhausted&) {
    std::ostringstream d;
    d << "no n <= 200 with bound(n) < 1; log10 bound(30) = "
      << fixed(log10_rational(discriminant_bound(30, rs, K)), 2);
    return {false, d.str()};
  }
}

Outcome criterion_5() {
  const auto start = Clock::now();
  const auto cands = enumerate_quadratic_candidates(Rational(32, 5));
  FilterOptions opt;
  opt.policy = {256, 1024};
  const CandidateTable t = filter_nearly_arithmetic(cands, opt);
  const double secs = seconds_since(start);
  const auto& ref = reference_candidates();
  const TableDiff after_place = t.diff(Stage::complex_place, ref);
  const TableDiff after_annulus = t.diff(Stage::annulus, ref);
  const TableDiff after_circles = t.diff(Stage::circles, ref);
  std::ostringstream d;
  d << cands.size() << " candidates; after complex place " << t.survivors(Stage::complex_place).size()
    << " (missing " << after_place.missing.size() << "); after annulus " << t.survivors(Stage::annulus).size()
    << " (missing " << after_annulus.missing.size() << "); after circles " << t.survivors(Stage::circles).size()
    << " (missing " << after_circles.missing.size();
  for (const auto& m : after_circles.missing) d << ": row " << m.n << " " << m.rho;
  d << ", extra " << after_circles.extra.size() << "); " << fixed(secs, 1) << " s";
  const bool pass = after_place.missing.empty() && after_annulus.missing.empty() &&
                    after_circles.missing.empty() && secs < 300;
  return {pass, d.str()};
}

Outcome criterion_6() {
  std::mt19937_64 rng(20240601);
  const long prec = 256;
  int ok = 0, total = 0;
  auto check = [&](const Params& p) {
    ++total;
    const HalfTurnTriple t = build_representation(p, prec);
    bool good = true;
    const std::array<std::pair<const LineMatrix*, const LineMatrix*>, 3> pairs{
        std::pair{&t.A, &t.B}, std::pair{&t.A, &t.C}, std::pair{&t.B, &t.C}};
    for (int k = 0; k < 3; ++k) {
      const ComplexBall tr = rho_of(*pairs[static_cast<std::size_t>(k)].first, *pairs[static_cast<std::size_t>(k)].second);
      // exact inputs: a much tighter ball around the true value must lie inside
      const ComplexBall in = p.is_exact() ? p.rho(k, 4 * prec) : p.rho(k, prec);
      good = good && (p.is_exact() ? tr.contains(in) : tr.overlaps(in));
    }
    for (const LineMatrix* m : {&t.A, &t.B, &t.C})
      good = good && m->trace().contains(0, 0) && m->det().contains(1, 0);
    ok += good;
  };
  std::uniform_int_distribution<int> small(-12, 12), dist_d(1, 30);
  while (total < 50) {
    const long d = dist_d(rng);
    const FieldPtr f = NumberField::create(IntPolynomial({Integer(squarefree_part(Integer(d))), 0, 1}));
    auto rnd = [&] {
      return FieldElement(f, {Rational(small(rng)) / (1 + std::abs(small(rng)) % 3), Rational(small(rng)) / (1 + std::abs(small(rng)) % 2)});
    };
    const FieldElement r0 = rnd(), r1 = rnd(), r2 = rnd();
    if (r0.is_rational() && abs(r0.rational_value()) == 2) continue;
    check(Params::exact(r0, r1, r2));
  }
  std::uniform_real_distribution<double> u(-9, 9);
  while (total < 100) {
    const Params p = Params::numeric(ComplexBall::from_double(u(rng), u(rng), prec),
                                     ComplexBall::from_double(u(rng), u(rng), prec),
                                     ComplexBall::from_double(u(rng), u(rng), prec));
    check(p);
  }
  return {ok == 100, std::to_string(ok) + "/100 triples with traces, tr = 0 and det = 1 certified"};
}

Outcome criterion_7() {
  const FieldPtr q2 = NumberField::parse("t^2+2");
  const ArithmeticityReport s2 = arithmeticity_test(Params::regular(FieldElement::parse(q2, "t")));
  const bool a = s2.verdict == Verdict::nearly_arithmetic_candidate && s2.invariant_field.label() == "Q(√-2)" &&
                 s2.signature == Signature{0, 1};
  const ArithmeticityReport m3 = arithmeticity_test(Params::regular(FieldElement::from_rational(q2, Rational(-3))));
  const bool b = m3.verdict == Verdict::fails_condition_2;
  const ArithmeticityReport m7 = arithmeticity_test(Params::regular(FieldElement::from_rational(q2, Rational(-7))));
  const bool c = m7.verdict == Verdict::splits_free_product && m7.free_product_evidence.rfind("annulus", 0) == 0;
  std::ostringstream d;
  d << "sqrt(-2): " << to_string(s2.verdict) << " " << s2.invariant_field.label() << " (" << s2.signature.real_places
    << "," << s2.signature.complex_places << "); -3: " << to_string(m3.verdict) << "; -7: " << to_string(m7.verdict)
    << " [" << m7.free_product_evidence << "]";
  return {a && b && c, d.str()};
}

Outcome criterion_8() {
  std::ostringstream d;
  bool fig5 = false, fig6 = false;
  for (const auto& pres : figure_presentations()) {
    const PresentationReport rep = verify_presentation(pres);
    bool any = false;
    double worst = 0;
    for (const auto& v : rep.outcomes)
      if (v.power == rep.holding_power && v.check.status == RelatorStatus::holds) {
        any = true;
        worst = std::max(worst, v.check.max_radius);
      }
    const bool holds = rep.holding_power > 0 && any && worst < 1e-20;
    if (pres.name == "figure_5") fig5 = holds;
    if (pres.name == "figure_6") fig6 = holds;
    d << pres.name << ": ";
    if (rep.holding_power == 0) {
      d << "no tried power holds";
    } else {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.1e", worst);
      d << "w^" << rep.holding_power << " holds (radius " << buf << ")";
    }
    d << "; ";
  }
  std::string s = d.str();
  s.resize(s.size() - 2);
  return {fig5 && fig6, s};
}

Outcome criterion_9() {
  int intersecting = 0;
  std::string bad;
  for (long n = 0; n <= 10; ++n) {
    const DisjointnessResult r = circle_disjointness(exceptional_sequence_params(n), PrecisionPolicy{256, 1024});
    if (r.status == DisjointnessStatus::certified_intersecting) {
      ++intersecting;
    } else {
      bad += " n=" + std::to_string(n) + ":" + to_string(r.status);
    }
  }
  return {intersecting == 11, std::to_string(intersecting) + "/11 certified intersecting" + bad};
}

Outcome criterion_10() {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000);
  // ball containment fuzzing
  int fuzz_fail = 0;
  for (int k = 0; k < 10000; ++k) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    if (b == 0) b = 1;
    const long prec = 64 + 64 * (k % 4);
    const RealBall x = RealBall::from_rational(a, prec), y = RealBall::from_rational(b, prec);
    bool ok = (x + y).contains(a + b) && (x - y).contains(a - b) && (x * y).contains(a * b) &&
              (x / y).contains(a / b);
    if (a > 0) {
      const RealBall s = sqrt(x);
      ok = ok && (s * s).contains(a);
    }
    const ComplexBall z = ComplexBall::from_rational(a, b, prec), w = ComplexBall::from_rational(b, a, prec);
    // (a + bi)(b + ai) = (ab - ab) + (a^2 + b^2) i
    ok = ok && (z * w).contains(0, a * a + b * b);
    fuzz_fail += !ok;
  }
  // Sturm counts against numerical isolation
  std::uniform_int_distribution<int> coef(-20, 20), deg(1, 8);
  int sturm_fail = 0, polys = 0;
  while (polys < 1000) {
    const int n = deg(rng);
    std::vector<Rational> c;
    for (int k = 0; k < n; ++k) c.push_back(Rational(coef(rng)));
    c.push_back(Rational(1 + std::abs(coef(rng)) % 5));
    RatPolynomial p(c);
    if (p.degree() < 1) continue;
    p = divmod(p, gcd(p, p.derivative())).first;  // squarefree part
    ++polys;
    const int exact = SturmSequence(p).count_all();
    const auto roots = with_adaptive_precision(PrecisionPolicy{128, 4096}, [&](long bits) {
      auto r = isolate_complex_roots(p, bits);
      for (const auto& z : r)
        if (z.imag().contains_zero() && z.imag().rad().to_double() > 1e-30)
          throw PrecisionExhausted("imaginary part unresolved");
      return r;
    });
    int numeric = 0;
    for (const auto& z : roots) numeric += z.imag().contains_zero();
    sturm_fail += exact != numeric;
  }
  // subfield idempotence
  int sub_fail = 0;
  for (const char* poly : {"t^4-2*t^2+9", "t^4+1", "t^2+7", "t^3-2", "t^4-10*t^2+1", "t^6+3"}) {
    const FieldPtr f = NumberField::parse(poly);
    const FieldElement g = FieldElement::generator(f);
    for (const FieldElement& x : {g * g, g.pow(3), g * g + g, g.pow(2) + g.pow(3)}) {
      const Subfield s = subfield_generated(f, {x});
      const Subfield again = subfield_generated(f, s.basis);
      bool ok = again.degree == s.degree && s.contains(x);
      for (const auto& b : again.basis) ok = ok && s.contains(b);
      sub_fail += !ok;
    }
  }
  // disk-choice certificates survive precision doubling
  std::uniform_real_distribution<double> u(-10, 10);
  int stab_fail = 0, certified = 0;
  for (int k = 0; k < 200; ++k) {
    const Params p = Params::numeric(ComplexBall::from_double(u(rng), u(rng), 512),
                                     ComplexBall::from_double(u(rng), u(rng), 512),
                                     ComplexBall::from_double(u(rng), u(rng), 512));
    try {
      const DisjointnessResult lo = circle_disjointness(build_representation(p, 128));
      if (lo.status == DisjointnessStatus::undecided) continue;
      ++certified;
      const DisjointnessResult hi = circle_disjointness(build_representation(p, 256));
      stab_fail += hi.status != lo.status;
    } catch (const Error&) {
    }
  }
  std::ostringstream d;
  d << "ball fuzz " << 10000 - fuzz_fail << "/10000; Sturm vs isolation " << polys - sturm_fail << "/" << polys
    << "; subfield idempotence " << 24 - sub_fail << "/24; disk certificates stable " << certified - stab_fail << "/"
    << certified;
  return {fuzz_fail == 0 && sturm_fail == 0 && sub_fail == 0 && stab_fail == 0 && certified > 100, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {criterion_1, criterion_2, criterion_3, criterion_4,
                                                          criterion_5, criterion_6, criterion_7, criterion_8,
                                                          criterion_9, criterion_10};
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << k + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail << ")" << std::endl;
  }
  std::cout << 10 - failed << "/10 criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
