#pragma once

// Free-product detection through the invariant circles of the three
// half-turns, the annulus bounds for regular groups, and a scanner for the
// conjecture that large parameters always split.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "halfturn/precision.hpp"
#include "halfturn/rep.hpp"

namespace halfturn {

// phi(x) = (1 + 1/x^2) / (x (1 - 1/x^4)) = x / (x^2 - 1),
// R1 = sqrt|1 - phi^2| - phi, R2 = sqrt|1 + phi^2| + phi.
struct AnnulusBounds {
  RealBall phi, r1, r2;
};

AnnulusBounds annulus_bounds(const RealBall& x);
AnnulusBounds annulus_bounds(const Rational& x, long prec);
// Exact phi(x) for rational x > 1.
Rational annulus_phi(const Rational& x);

enum class RhoStarChoice { fixed, computed };

struct SplitConstants {
  RealBall beta_star;                  // root of R1(x) = 1/x on [2, 4]
  RealBall rho_star_computed;          // 1/beta*^2 + beta*^2
  Rational rho_star_fixed{32, 5};      // 6.4
  RealBall r1_root;                    // same as beta_star
  std::optional<RealBall> r2_root;     // root of R2(x) = x on [2, 4], if any
  bool monotone = false;               // R1 increasing, R2 decreasing on [2, 4]
};

// Certified bisection on [2, 4] until the root intervals are narrower than
// `tolerance`.
SplitConstants compute_split_constants(const Rational& tolerance = Rational(1, 1000000000),
                                       long prec = 128);

// Certified check that R1 is increasing and R2 decreasing on [lo, hi],
// using interval enclosures of the derivatives on `pieces` subintervals.
bool check_annulus_monotonicity(const Rational& lo, const Rational& hi, int pieces = 64,
                                long prec = 128);

// The rational value used for rho*: 32/5, or the upper endpoint of the
// computed ball (so that |rho| >= value implies |rho| >= rho*).
Rational rho_star_value(RhoStarChoice choice);
std::string to_string(RhoStarChoice choice);

// Sufficient splitting test for regular groups: |rho| >= rho*.
bool splits_by_annulus(const FieldElement& rho, RhoStarChoice choice = RhoStarChoice::fixed);
// Ball version; PrecisionExhausted if |rho| - rho* is not resolved.
bool splits_by_annulus(const ComplexBall& rho, RhoStarChoice choice = RhoStarChoice::fixed);

enum class DisjointnessStatus { certified_disjoint_disks, certified_intersecting, undecided };
std::string to_string(DisjointnessStatus s);

struct DisjointnessResult {
  DisjointnessStatus status = DisjointnessStatus::undecided;
  // Disjoint: which closed side of each circle was used (true = inside).
  std::array<bool, 3> inside{};
  // Intersecting: a pair of circles that provably cross.
  int pair_i = -1, pair_j = -1;
  long precision = 0;
  bool conjugated = false;   // circles were computed after conjugation
  std::array<GeneralizedCircle, 3> circles{};

  std::string witness() const;
};

// Decides at the triple's precision. Conjugates the triple when some
// circle passes through infinity (or cannot be told apart from doing so).
DisjointnessResult circle_disjointness(const HalfTurnTriple& t);

// Builds the triple and escalates precision until the status is certified
// or the cap is reached (then undecided).
DisjointnessResult circle_disjointness(const Params& p, const PrecisionPolicy& policy = {});

// rho0 = n/2 + sqrt(-3)/2, rho1 = rho2 = 1/2 + sqrt(-3)/2 in Q(sqrt(-3)).
Params exceptional_sequence_params(long n);

// A box in C^3: per parameter, [re_lo, re_hi] x [im_lo, im_hi].
struct ScanRegion {
  std::array<std::array<Rational, 4>, 3> box{};  // re_lo, re_hi, im_lo, im_hi

  static ScanRegion same_box(const Rational& re_lo, const Rational& re_hi, const Rational& im_lo,
                             const Rational& im_hi);
};

enum class Sampler { grid, random };

struct ScanOptions {
  Sampler sampler = Sampler::grid;
  // Grid: points per nondegenerate axis. Random: number of samples.
  int count = 5;
  Rational threshold{32, 5};
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
  PrecisionPolicy policy{128, 1024};
};

struct ScanSample {
  std::array<std::pair<Rational, Rational>, 3> rho;
  DisjointnessResult result;
  std::string error;  // nonempty when the parameters were degenerate
};

struct ScanResult {
  long tested = 0;         // samples meeting the threshold
  long skipped = 0;        // below the threshold
  std::vector<ScanSample> flagged;  // status other than certified disjoint
};

ScanResult conjecture_scan(const ScanRegion& region, const ScanOptions& options);

}  // namespace halfturn
