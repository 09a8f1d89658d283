#include "halfturn/arith.hpp"

#include "halfturn/errors.hpp"

namespace halfturn {

namespace {

void require_exact(const Params& p) {
  if (!p.is_exact()) throw DomainError("the arithmeticity test needs exact parameters");
}

std::string interval_string(const RealRootInterval& iv) {
  const double lo = iv.lo.get_d(), hi = iv.hi.get_d();
  char buf[96];
  std::snprintf(buf, sizeof buf, "[%.12g, %.12g]", lo, hi);
  return buf;
}

nlohmann::ordered_json subfield_json(const Subfield& s) {
  nlohmann::ordered_json j;
  j["label"] = s.label();
  j["degree"] = s.degree;
  std::vector<std::string> basis;
  for (const auto& b : s.basis) basis.push_back(b.to_string());
  j["basis"] = basis;
  j["primitive_element"] = s.primitive.to_string();
  j["defining_polynomial"] = to_string(s.defining.primitive);
  return j;
}

}  // namespace

Subfield trace_field(const Params& p) {
  require_exact(p);
  return subfield_generated(p.field(), {p.exact_rho(0), p.exact_rho(1), p.exact_rho(2)});
}

Subfield invariant_trace_field(const Params& p) {
  require_exact(p);
  const auto& r0 = p.exact_rho(0);
  const auto& r1 = p.exact_rho(1);
  const auto& r2 = p.exact_rho(2);
  return subfield_generated(p.field(), {r0 * r0, r1 * r1, r0 * r1 * r2});
}

HilbertSymbolData hilbert_entries(const Params& p, HilbertForm form) {
  require_exact(p);
  const auto& r0 = p.exact_rho(0);
  const auto& r1 = p.exact_rho(1);
  const auto& r2 = p.exact_rho(2);
  const FieldElement s0 = r0 * r0, s1 = r1 * r1, s2 = r2 * r2;
  HilbertSymbolData h;
  h.field = invariant_trace_field(p);
  h.a = s0 * (s0 + Rational(-4));
  const FieldElement triple = r0 * r1 * r2;
  const FieldElement cross = form == HilbertForm::traces ? triple : -triple;
  h.b = s0 * s1 * (s0 + s1 + s2 + cross + Rational(-4));
  if (h.a.is_zero()) throw DegenerateSymbol("first entry rho0^2 (rho0^2 - 4) vanishes");
  if (h.b.is_zero()) throw DegenerateSymbol("second entry vanishes");
  h.a_k = h.field.to_subfield(h.a);
  h.b_k = h.field.to_subfield(h.b);
  return h;
}

std::string to_string(FreeProductStatus s) {
  switch (s) {
    case FreeProductStatus::splits: return "splits";
    case FreeProductStatus::not_split_certified: return "not_split_certified";
    case FreeProductStatus::unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::nearly_arithmetic_candidate: return "nearly_arithmetic_candidate";
    case Verdict::fails_condition_1: return "fails_condition_1";
    case Verdict::fails_condition_2: return "fails_condition_2";
    case Verdict::fails_condition_3: return "fails_condition_3";
    case Verdict::splits_free_product: return "splits_free_product";
  }
  return "";
}

ArithmeticityReport arithmeticity_test(const Params& p, const ArithmeticityOptions& options) {
  require_exact(p);
  ArithmeticityReport r;
  r.rho_star = options.rho_star;
  for (int k = 0; k < 3; ++k) {
    r.minimal_polynomials[static_cast<std::size_t>(k)] = minimal_polynomial(p.exact_rho(k));
    r.integers_ok[static_cast<std::size_t>(k)] = is_algebraic_integer(p.exact_rho(k));
  }
  r.trace_field = trace_field(p);
  r.hilbert_form = options.hilbert_form;
  r.hilbert = hilbert_entries(p, options.hilbert_form);
  r.invariant_field = r.hilbert.field;
  r.signature = r.invariant_field.as_field->signature();

  r.ramified_all_real = true;
  for (const auto& emb : real_embeddings(r.invariant_field.as_field)) {
    PlaceSigns s{emb.root, real_embedding_sign(r.hilbert.a_k, emb, options.policy.cap),
                 real_embedding_sign(r.hilbert.b_k, emb, options.policy.cap)};
    if (s.sign_a == 0 || s.sign_b == 0) throw DegenerateSymbol("an entry vanishes at a real place");
    if (s.sign_a > 0 || s.sign_b > 0) r.ramified_all_real = false;
    r.real_place_signs.push_back(s);
  }

  if (p.is_regular() && splits_by_annulus(p.exact_rho(0), options.rho_star)) {
    r.free_product_status = FreeProductStatus::splits;
    r.free_product_evidence = "annulus: |rho| >= " + to_string(options.rho_star);
  } else {
    const DisjointnessResult d = circle_disjointness(p, options.policy);
    switch (d.status) {
      case DisjointnessStatus::certified_disjoint_disks:
        r.free_product_status = FreeProductStatus::splits;
        break;
      case DisjointnessStatus::certified_intersecting:
        r.free_product_status = FreeProductStatus::not_split_certified;
        break;
      case DisjointnessStatus::undecided:
        r.free_product_status = FreeProductStatus::unknown;
        break;
    }
    r.free_product_evidence = "circles: " + to_string(d.status);
    if (!d.witness().empty()) r.free_product_evidence += " (" + d.witness() + ")";
  }

  if (r.free_product_status == FreeProductStatus::splits) {
    r.verdict = Verdict::splits_free_product;
  } else if (!r.condition1()) {
    r.verdict = Verdict::fails_condition_1;
  } else if (!r.condition2()) {
    r.verdict = Verdict::fails_condition_2;
  } else if (!r.condition3()) {
    r.verdict = Verdict::fails_condition_3;
  } else {
    r.verdict = Verdict::nearly_arithmetic_candidate;
  }
  r.note =
      "nearly arithmetic only: arithmeticity also requires finite covolume, which is not decided here";
  return r;
}

nlohmann::ordered_json ArithmeticityReport::to_json() const {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(verdict);
  nlohmann::ordered_json c1 = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < 3; ++k) {
    nlohmann::ordered_json e;
    e["rho"] = "rho" + std::to_string(k);
    e["minimal_polynomial"] = to_string(minimal_polynomials[k].monic);
    e["algebraic_integer"] = integers_ok[k];
    c1.push_back(e);
  }
  j["condition_1"] = {{"passed", condition1()}, {"parameters", c1}};
  j["trace_field"] = subfield_json(trace_field);
  j["invariant_trace_field"] = subfield_json(invariant_field);
  j["condition_2"] = {{"passed", condition2()},
                      {"signature", {signature.real_places, signature.complex_places}}};
  nlohmann::ordered_json places = nlohmann::ordered_json::array();
  for (const auto& s : real_place_signs)
    places.push_back({{"embedding", interval_string(s.embedding)}, {"sign_a", s.sign_a}, {"sign_b", s.sign_b}});
  j["condition_3"] = {{"passed", condition3()},
                      {"hilbert_a", hilbert.a.to_string()},
                      {"hilbert_b", hilbert.b.to_string()},
                      {"hilbert_form", hilbert_form == HilbertForm::traces ? "traces" : "displayed"},
                      {"real_places", places}};
  j["condition_4"] = {{"free_product_status", to_string(free_product_status)},
                      {"evidence", free_product_evidence},
                      {"rho_star", to_string(rho_star)}};
  j["note"] = note;
  return j;
}

}  // namespace halfturn
