#include "halfturn/klein.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <thread>

#include "halfturn/errors.hpp"

namespace halfturn {

// ------------------------------------------------------------ annulus

AnnulusBounds annulus_bounds(const RealBall& x) {
  const long p = x.precision();
  const RealBall one = RealBall::from_int(1, p);
  if (!(x - one).certainly_positive()) throw DomainError("annulus bounds need x > 1");
  const RealBall x2 = x * x;
  const RealBall inv2 = inverse(x2);
  AnnulusBounds b;
  b.phi = (one + inv2) / (x * (one - inv2 * inv2));
  const RealBall phi2 = b.phi * b.phi;
  b.r1 = sqrt(abs(one - phi2)) - b.phi;
  b.r2 = sqrt(abs(one + phi2)) + b.phi;
  return b;
}

AnnulusBounds annulus_bounds(const Rational& x, long prec) {
  return annulus_bounds(RealBall::from_rational(x, prec));
}

Rational annulus_phi(const Rational& x) {
  if (x <= 1) throw DomainError("annulus bounds need x > 1");
  const Rational inv2 = 1 / (x * x);
  return (1 + inv2) / (x * (1 - inv2 * inv2));
}

namespace {

// Sign of f at a rational point, raising the precision as needed.
int sign_at(const std::function<RealBall(const RealBall&)>& f, const Rational& x, long prec) {
  for (long bits = prec; bits <= 4096; bits *= 2) {
    const RealBall v = f(RealBall::from_rational(x, bits));
    if (v.certainly_positive()) return 1;
    if (v.certainly_negative()) return -1;
  }
  throw PrecisionExhausted("sign at a bisection point is undecided");
}

// Bisection for a sign change of f on [lo, hi]; nullopt if the endpoint
// signs agree.
std::optional<std::pair<Rational, Rational>> bisect(const std::function<RealBall(const RealBall&)>& f,
                                                     Rational lo, Rational hi,
                                                     const Rational& tolerance, long prec) {
  int slo = sign_at(f, lo, prec);
  const int shi = sign_at(f, hi, prec);
  if (slo == shi) return std::nullopt;
  while (hi - lo > tolerance) {
    Rational mid = (lo + hi) / 2;
    const int s = sign_at(f, mid, prec);
    if (s == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::make_pair(lo, hi);
}

}  // namespace

bool check_annulus_monotonicity(const Rational& lo, const Rational& hi, int pieces, long prec) {
  const RealBall one = RealBall::from_int(1, prec);
  for (int k = 0; k < pieces; ++k) {
    const Rational a = lo + (hi - lo) * k / pieces;
    const Rational b = lo + (hi - lo) * (k + 1) / pieces;
    const RealBall x = RealBall::from_interval(a, b, prec);
    const RealBall x2m1 = x * x - one;
    if (!x2m1.certainly_positive()) return false;
    const RealBall phi = x / x2m1;
    const RealBall dphi = -(x * x + one) / (x2m1 * x2m1);
    const RealBall s1 = one - phi * phi;
    if (!s1.certainly_positive() || !dphi.certainly_negative()) return false;
    const RealBall d1 = -dphi * (one + phi / sqrt(s1));
    const RealBall d2 = dphi * (one + phi / sqrt(one + phi * phi));
    if (!d1.certainly_positive() || !d2.certainly_negative()) return false;
  }
  return true;
}

SplitConstants compute_split_constants(const Rational& tolerance, long prec) {
  if (tolerance <= 0) throw DomainError("tolerance must be positive");
  const Rational lo(2), hi(4);
  auto f1 = [](const RealBall& x) { return annulus_bounds(x).r1 - inverse(x); };
  auto f2 = [](const RealBall& x) { return annulus_bounds(x).r2 - x; };
  SplitConstants c;
  c.monotone = check_annulus_monotonicity(lo, hi, 64, prec);
  auto r1 = bisect(f1, lo, hi, tolerance, prec);
  if (!r1) throw DomainError("R1(x) = 1/x has no root on [2, 4]");
  c.r1_root = RealBall::from_interval(r1->first, r1->second, prec);
  if (auto r2 = bisect(f2, lo, hi, tolerance, prec)) {
    c.r2_root = RealBall::from_interval(r2->first, r2->second, prec);
  }
  // The larger root is the binding constraint.
  c.beta_star = c.r1_root;
  if (c.r2_root && certainly_less(c.r1_root, *c.r2_root)) c.beta_star = *c.r2_root;
  const RealBall b2 = c.beta_star * c.beta_star;
  c.rho_star_computed = inverse(b2) + b2;
  return c;
}

Rational rho_star_value(RhoStarChoice choice) {
  if (choice == RhoStarChoice::fixed) return Rational(32, 5);
  static const Rational computed = compute_split_constants().rho_star_computed.upper();
  return computed;
}

std::string to_string(RhoStarChoice choice) {
  return choice == RhoStarChoice::fixed ? "6.4" : "computed";
}

bool splits_by_annulus(const FieldElement& rho, RhoStarChoice choice) {
  return compare_modulus(rho, rho_star_value(choice)) >= 0;
}

bool splits_by_annulus(const ComplexBall& rho, RhoStarChoice choice) {
  const long p = rho.precision();
  const RealBall diff = rho.abs() - RealBall::from_rational(rho_star_value(choice), p);
  if (diff.certainly_positive()) return true;
  if (diff.certainly_negative()) return false;
  if (diff.is_exact()) return true;
  throw PrecisionExhausted("|rho| is too close to rho*");
}

// ---------------------------------------------------------- disjointness

std::string to_string(DisjointnessStatus s) {
  switch (s) {
    case DisjointnessStatus::certified_disjoint_disks: return "certified_disjoint_disks";
    case DisjointnessStatus::certified_intersecting: return "certified_intersecting";
    case DisjointnessStatus::undecided: return "undecided";
  }
  return "undecided";
}

std::string DisjointnessResult::witness() const {
  if (status == DisjointnessStatus::certified_disjoint_disks) {
    std::string out;
    for (int k = 0; k < 3; ++k) {
      if (k) out += ", ";
      out += std::string(inside[static_cast<std::size_t>(k)] ? "inside" : "outside") + " C" +
             std::to_string(k);
    }
    return out;
  }
  if (status == DisjointnessStatus::certified_intersecting)
    return "C" + std::to_string(pair_i) + " crosses C" + std::to_string(pair_j);
  return "";
}

namespace {

bool has_circle_through_infinity(const HalfTurnTriple& t) {
  return t.A.m21.contains_zero() || t.B.m21.contains_zero() || t.C.m21.contains_zero();
}

// Closed side `in_i` of circle i and closed side `in_j` of circle j are
// certainly disjoint. Two exteriors always share infinity.
bool sides_disjoint(const GeneralizedCircle& ci, bool in_i, const GeneralizedCircle& cj, bool in_j) {
  const RealBall d = (ci.center - cj.center).abs();
  if (in_i && in_j) return (d - ci.radius - cj.radius).certainly_positive();
  if (in_i && !in_j) return (cj.radius - d - ci.radius).certainly_positive();
  if (!in_i && in_j) return (ci.radius - d - cj.radius).certainly_positive();
  return false;
}

bool crosses(const GeneralizedCircle& ci, const GeneralizedCircle& cj) {
  const RealBall d = (ci.center - cj.center).abs();
  return (d - ci.radius - cj.radius).certainly_negative() &&
         (d - abs(ci.radius - cj.radius)).certainly_positive();
}

}  // namespace

DisjointnessResult circle_disjointness(const HalfTurnTriple& triple) {
  DisjointnessResult out;
  out.precision = triple.precision();
  HalfTurnTriple t = triple;
  if (has_circle_through_infinity(t)) {
    // A Moebius conjugation moves every circle off infinity; the
    // configuration of sides is preserved.
    bool found = false;
    for (const Rational& s : {Rational(1, 3), Rational(-2, 5), Rational(3, 7), Rational(-5, 11),
                              Rational(7, 13), Rational(11, 17)}) {
      HalfTurnTriple c = conjugate_lower(triple, ComplexBall::from_rational(s, Rational(1, 7), out.precision));
      if (!has_circle_through_infinity(c)) {
        t = std::move(c);
        found = true;
        break;
      }
    }
    if (!found) return out;
    out.conjugated = true;
  }
  out.circles = {diameter_circle(t.A), diameter_circle(t.B), diameter_circle(t.C)};
  const auto& c = out.circles;
  for (int mask = 0; mask < 8; ++mask) {
    std::array<bool, 3> in{(mask & 1) == 0, (mask & 2) == 0, (mask & 4) == 0};
    if (sides_disjoint(c[0], in[0], c[1], in[1]) && sides_disjoint(c[0], in[0], c[2], in[2]) &&
        sides_disjoint(c[1], in[1], c[2], in[2])) {
      out.status = DisjointnessStatus::certified_disjoint_disks;
      out.inside = in;
      return out;
    }
  }
  for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    if (crosses(c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(j)])) {
      out.status = DisjointnessStatus::certified_intersecting;
      out.pair_i = i;
      out.pair_j = j;
      return out;
    }
  }
  return out;
}

DisjointnessResult circle_disjointness(const Params& p, const PrecisionPolicy& policy) {
  DisjointnessResult last;
  for (long bits = policy.bits;; bits = std::min(bits * 2, policy.cap)) {
    try {
      HalfTurnTriple t = p.is_regular() ? build_regular(p, bits) : build_representation(p, bits);
      last = circle_disjointness(t);
      if (last.status != DisjointnessStatus::undecided) return last;
    } catch (const PrecisionExhausted&) {
      last = DisjointnessResult{};
      last.precision = bits;
    }
    if (bits >= policy.cap || !p.is_exact()) return last;
  }
}

Params exceptional_sequence_params(long n) {
  static const FieldPtr k = NumberField::parse("t^2+3");
  const FieldElement t = FieldElement::generator(k);
  const FieldElement half_t = Rational(1, 2) * t;
  return Params::exact(half_t + Rational(n, 2), half_t + Rational(1, 2), half_t + Rational(1, 2));
}

// ------------------------------------------------------------------ scan

ScanRegion ScanRegion::same_box(const Rational& re_lo, const Rational& re_hi, const Rational& im_lo,
                                const Rational& im_hi) {
  ScanRegion r;
  for (auto& b : r.box) b = {re_lo, re_hi, im_lo, im_hi};
  return r;
}

namespace {

using Sample = std::array<std::pair<Rational, Rational>, 3>;

// Grid points along one axis.
std::vector<Rational> axis_points(const Rational& lo, const Rational& hi, int count) {
  if (lo == hi || count == 1) return {lo};
  std::vector<Rational> out;
  for (int k = 0; k < count; ++k) out.push_back(lo + (hi - lo) * k / (count - 1));
  return out;
}

std::vector<Sample> make_samples(const ScanRegion& region, const ScanOptions& o) {
  std::vector<Sample> out;
  if (o.count <= 0) return out;
  if (o.sampler == Sampler::grid) {
    std::array<std::vector<Rational>, 6> axes;
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& b = region.box[k];
      axes[2 * k] = axis_points(b[0], b[1], o.count);
      axes[2 * k + 1] = axis_points(b[2], b[3], o.count);
    }
    std::array<std::size_t, 6> idx{};
    for (;;) {
      Sample s;
      for (std::size_t k = 0; k < 3; ++k) s[k] = {axes[2 * k][idx[2 * k]], axes[2 * k + 1][idx[2 * k + 1]]};
      out.push_back(s);
      std::size_t a = 6;
      while (a > 0) {
        --a;
        if (++idx[a] < axes[a].size()) break;
        idx[a] = 0;
        if (a == 0) return out;
      }
    }
  }
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<int> u(0, 1000);
  for (int n = 0; n < o.count; ++n) {
    Sample s;
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& b = region.box[k];
      Rational re = b[0] + (b[1] - b[0]) * u(rng) / 1000;
      Rational im = b[2] + (b[3] - b[2]) * u(rng) / 1000;
      s[k] = {re, im};
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace

ScanResult conjecture_scan(const ScanRegion& region, const ScanOptions& options) {
  if (options.threshold < 0) throw DomainError("threshold must be nonnegative");
  ScanResult result;
  const std::vector<Sample> samples = make_samples(region, options);
  if (samples.empty()) return result;
  const FieldPtr gauss = NumberField::parse("t^2+1");
  const Rational t2 = options.threshold * options.threshold;

  std::vector<int> state(samples.size(), 0);  // 0 skipped, 1 passed, 2 flagged
  std::vector<ScanSample> rows(samples.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t n = begin; n < end; ++n) {
      const Sample& s = samples[n];
      bool big = true;
      for (const auto& [re, im] : s) big = big && re * re + im * im >= t2;
      if (!big) continue;
      ScanSample row;
      row.rho = s;
      auto elem = [&](std::size_t k) { return FieldElement(gauss, {s[k].first, s[k].second}); };
      try {
        row.result = circle_disjointness(Params::exact(elem(0), elem(1), elem(2)), options.policy);
      } catch (const DomainError& e) {
        row.error = e.what();
      }
      const bool ok = row.error.empty() && row.result.status == DisjointnessStatus::certified_disjoint_disks;
      state[n] = ok ? 1 : 2;
      rows[n] = std::move(row);
    }
  };
  unsigned threads = options.threads > 0 ? static_cast<unsigned>(options.threads)
                                         : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(samples.size()));
  if (threads <= 1) {
    work(0, samples.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (samples.size() + threads - 1) / threads;
    for (unsigned k = 0; k < threads; ++k) {
      const std::size_t b = k * chunk, e = std::min(samples.size(), b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  for (std::size_t n = 0; n < samples.size(); ++n) {
    if (state[n] == 0) {
      ++result.skipped;
      continue;
    }
    ++result.tested;
    if (state[n] == 2) result.flagged.push_back(std::move(rows[n]));
  }
  return result;
}

}  // namespace halfturn
