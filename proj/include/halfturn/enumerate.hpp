#pragma once

// Regular parameters rho = k/2 + sqrt(-d)/2 over imaginary quadratic
// fields, the staged filter that reproduces the candidate table, the
// finiteness bound for the degree of rho, and enumeration of algebraic
// integers with bounded conjugates.

#include <optional>
#include <string>
#include <vector>

#include "halfturn/klein.hpp"
#include "halfturn/number_field.hpp"

namespace halfturn {

struct QuadraticCandidate {
  long k = 0;
  long d = 0;       // rho = k/2 + sqrt(-d)/2
  long d_sf = 0;    // squarefree part of d
  FieldElement rho; // in Q(sqrt(-d_sf)) presented by t^2 + d_sf
  std::string field_label;  // Q(sqrt(-d_sf))

  // "-1/2 + √-27/2", "-3 + √-1", "√-4", ...
  std::string display() const;
};

// All (k, d) with d >= 1, 4 | k^2 + d and (k^2 + d)/4 <= bound^2, ordered by
// (d_sf, d, k).
std::vector<QuadraticCandidate> enumerate_quadratic_candidates(const Rational& bound);

struct ReferenceRow {
  int n = 0;
  long k = 0;
  long d = 0;
  std::string rho;
  std::string field;
};

// The 48-row reference list, embedded.
const std::vector<ReferenceRow>& reference_candidates();
// Reads the same list from a CSV file with header N,rho,field,k,d.
std::vector<ReferenceRow> load_reference_csv(const std::string& path);

enum class Stage { integrality = 0, complex_place = 1, annulus = 2, circles = 3 };
constexpr int kStages = 4;
std::string to_string(Stage s);

struct CandidateRow {
  int index = 0;
  QuadraticCandidate candidate;
  std::string invariant_field;   // label of Q(rho^2, rho^3)
  std::array<bool, kStages> survives{};  // after each stage (monotone)
  std::string circle_status;     // empty if the stage was not reached
  std::string circle_witness;
  std::optional<int> reference_row;
};

struct TableDiff {
  std::vector<ReferenceRow> missing;         // reference rows not surviving
  std::vector<const CandidateRow*> extra;    // survivors not in the reference
};

struct CandidateTable {
  std::vector<CandidateRow> rows;
  RhoStarChoice rho_star = RhoStarChoice::fixed;

  std::vector<const CandidateRow*> survivors(Stage s) const;
  TableDiff diff(Stage s, const std::vector<ReferenceRow>& reference = reference_candidates()) const;
};

struct FilterOptions {
  RhoStarChoice rho_star = RhoStarChoice::fixed;
  PrecisionPolicy policy{256, 1024};
  int threads = 0;
};

CandidateTable filter_nearly_arithmetic(const std::vector<QuadraticCandidate>& candidates,
                                        const FilterOptions& options = {});

// M_r = prod_{j=2..r} j^j * prod_{j=2..r-2} j^j / prod_{odd j=3..2r-3} j^j.
Rational m_r(int r);
// M_r^(1/(r(r-1))) as a certified ball.
RealBall m_r_normalized(int r, long prec = 128);

// K = rho*^2 + 4 rho* + 4.
Rational k_constant(const Rational& rho_star);
// 4 rho*^2 K^(2n) 2^(n(n-1)) M_n, exactly.
Rational discriminant_bound(int n, const Rational& rho_star, const Rational& K);
// Smallest n >= 3 with bound(n) < 1 (scan up to 200); ScanExhausted if none.
int n0(const Rational& rho_star);

struct BoundReport {
  Rational rho_star_used;
  std::string rho_star_choice;
  Rational K;
  std::vector<std::pair<int, Rational>> m_values;     // r = 3..last listed n
  std::optional<int> n0;             // empty when the scan to 200 fails
  std::vector<std::pair<int, Rational>> bound_values; // n = 3..n0 + extra, or 3..listed
  bool below_one_after_n0 = false;   // bound(n) < 1 on [n0, n0 + extra]
  bool decreasing_after_n0 = false;  // bound(n+1) < bound(n) there
};

// Never throws ScanExhausted; without n0 the first `listed` values are kept.
BoundReport bound_report(RhoStarChoice choice, int extra = 20, int listed = 40);
BoundReport bound_report(const Rational& rho_star, const std::string& label, int extra = 20,
                         int listed = 40);

// log10 of a positive rational, for display.
double log10_rational(const Rational& q);

// Monic irreducible integer polynomials of degree <= max_degree whose roots
// are one non-real conjugate pair with |z| <= complex_bound and otherwise
// real with |x| <= real_bound (degree 1: one root with |x| <= complex_bound).
std::vector<IntPolynomial> enumerate_bounded_algebraic_integers(int max_degree,
                                                                const Rational& complex_bound,
                                                                const Rational& real_bound,
                                                                int degree_guard = 4);
// Root-location test used above, exposed for verification.
bool has_bounded_conjugates(const IntPolynomial& p, const Rational& complex_bound,
                            const Rational& real_bound, long prec = 128);
// Coefficient box |e_k| <= bound used as the pre-filter, e_k the k-th
// elementary symmetric function of the roots.
std::vector<Integer> coefficient_bounds(int degree, const Rational& complex_bound,
                                        const Rational& real_bound);

}  // namespace halfturn
