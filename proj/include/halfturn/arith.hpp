#pragma once

// Exact arithmeticity test for three-half-turn groups: integrality of the
// parameters, the invariant trace field and its complex places, and the
// ramification of the invariant quaternion algebra at real places.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "halfturn/klein.hpp"
#include "halfturn/number_field.hpp"
#include "halfturn/rep.hpp"

namespace halfturn {

// Q(rho0, rho1, rho2).
Subfield trace_field(const Params& p);
// k = Q(rho0^2, rho1^2, rho0 rho1 rho2).
Subfield invariant_trace_field(const Params& p);

struct HilbertSymbolData {
  Subfield field;      // the invariant trace field
  FieldElement a, b;   // in the ambient field
  FieldElement a_k, b_k;  // the same elements in field.as_field coordinates
};

// a = tr(g0^2)^2 - 4 = rho0^2 (rho0^2 - 4) and b = tr[g0^2, g1^2] - 2 for
// g0 = ab, g1 = ac. With rho2 = tr(BC) one has tr(g0 g1) = rho0 rho1 + rho2,
// so b = rho0^2 rho1^2 (rho0^2 + rho1^2 + rho2^2 + rho0 rho1 rho2 - 4).
// The `displayed` form uses - rho0 rho1 rho2 instead, which is the trace
// form for the triple (rho0, rho1, -rho2).
enum class HilbertForm { traces, displayed };

HilbertSymbolData hilbert_entries(const Params& p, HilbertForm form = HilbertForm::traces);

enum class FreeProductStatus { splits, not_split_certified, unknown };
enum class Verdict {
  nearly_arithmetic_candidate,
  fails_condition_1,
  fails_condition_2,
  fails_condition_3,
  splits_free_product
};

std::string to_string(FreeProductStatus s);
std::string to_string(Verdict v);

struct PlaceSigns {
  RealRootInterval embedding;  // real root of the invariant field's polynomial
  int sign_a = 0;
  int sign_b = 0;
};

struct ArithmeticityOptions {
  RhoStarChoice rho_star = RhoStarChoice::fixed;
  HilbertForm hilbert_form = HilbertForm::traces;
  PrecisionPolicy policy{128, 1024};
};

struct ArithmeticityReport {
  std::array<bool, 3> integers_ok{};
  std::array<MinimalPolynomial, 3> minimal_polynomials;
  Subfield trace_field;
  Subfield invariant_field;
  Signature signature;
  HilbertSymbolData hilbert;
  std::vector<PlaceSigns> real_place_signs;
  bool ramified_all_real = false;
  FreeProductStatus free_product_status = FreeProductStatus::unknown;
  std::string free_product_evidence;
  RhoStarChoice rho_star = RhoStarChoice::fixed;
  HilbertForm hilbert_form = HilbertForm::traces;
  Verdict verdict = Verdict::fails_condition_1;
  std::string note;

  bool condition1() const { return integers_ok[0] && integers_ok[1] && integers_ok[2]; }
  bool condition2() const { return signature.complex_places == 1; }
  bool condition3() const { return ramified_all_real; }

  nlohmann::ordered_json to_json() const;
};

// Conditions (1)-(3) exactly; the free-product condition through the
// annulus bound (regular parameters) and the circle test. A certified split
// takes precedence in the verdict.
ArithmeticityReport arithmeticity_test(const Params& p, const ArithmeticityOptions& options = {});

}  // namespace halfturn
