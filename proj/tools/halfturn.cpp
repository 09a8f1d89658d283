// Command line front end: every subcommand builds a Report from public
// library calls and writes it in the requested format.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "halfturn/arith.hpp"
#include "halfturn/enumerate.hpp"
#include "halfturn/errors.hpp"
#include "halfturn/klein.hpp"
#include "halfturn/relators.hpp"
#include "halfturn/rep.hpp"
#include "halfturn/report.hpp"

using namespace halfturn;

namespace {

struct RunConfig {
  long precision_bits = 128;
  long precision_cap = 1024;
  std::string rho_star = "6.4";
  std::string format = "text";
  std::string out;

  RhoStarChoice choice() const {
    return rho_star == "computed" ? RhoStarChoice::computed : RhoStarChoice::fixed;
  }
  PrecisionPolicy policy() const { return {precision_bits, precision_cap}; }
  Json to_json() const {
    return Json{{"precision_bits", precision_bits},
                {"precision_cap", precision_cap},
                {"rho_star", rho_star},
                {"format", format}};
  }
};

struct ParamInput {
  std::string field;
  std::string rho, rho0, rho1, rho2;
};

// Exact decimal when the denominator is 2^a 5^b, else the fraction.
std::string exact_text(const Rational& q) {
  Integer den = q.get_den();
  int twos = 0, fives = 0;
  while (den % 2 == 0) den /= 2, ++twos;
  while (den % 5 == 0) den /= 5, ++fives;
  if (den != 1) return q.get_str();
  const int digits = std::max(twos, fives);
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const Integer scaled = q.get_num() * ten_pow / q.get_den();
  const bool neg = scaled < 0;
  std::string s = Integer(neg ? -scaled : scaled).get_str();
  if (digits == 0) return (neg ? "-" : "") + s;
  while (static_cast<int>(s.size()) <= digits) s = "0" + s;
  return (neg ? "-" : "") + s.substr(0, s.size() - static_cast<std::size_t>(digits)) + "." +
         s.substr(s.size() - static_cast<std::size_t>(digits));
}

std::string sci(double log10v) {
  const double e = std::floor(log10v);
  std::ostringstream s;
  s << std::setprecision(6) << std::pow(10.0, log10v - e) << "e" << static_cast<long>(e);
  return s.str();
}

Params read_params(const ParamInput& in) {
  std::string r0 = in.rho0, r1 = in.rho1, r2 = in.rho2;
  if (!in.rho.empty()) {
    if (r0.empty()) r0 = in.rho;
    if (r1.empty()) r1 = in.rho;
    if (r2.empty()) r2 = in.rho;
  }
  if (r0.empty() || r1.empty() || r2.empty())
    throw CLI::ValidationError("parameters", "give --rho or all of --rho0 --rho1 --rho2");
  if (!in.field.empty()) {
    const FieldPtr f = NumberField::parse(in.field);
    return Params::exact(FieldElement::parse(f, r0), FieldElement::parse(f, r1), FieldElement::parse(f, r2));
  }
  // decimal or a+bi literals: exact elements of Q(i)
  static const FieldPtr qi = NumberField::parse("t^2+1");
  auto lift = [](const std::string& s) {
    const auto [re, im] = parse_complex_literal(s);
    return FieldElement(qi, {re, im});
  };
  return Params::exact(lift(r0), lift(r1), lift(r2));
}

Json params_json(const Params& p) {
  Json j;
  j["field"] = p.field()->to_string();
  for (int k = 0; k < 3; ++k) j["rho" + std::to_string(k)] = p.exact_rho(k).to_string();
  return j;
}

Json ball_json(const ComplexBall& z) { return z.to_string(20); }

void add_param_options(CLI::App* app, ParamInput& in) {
  app->add_option("--field", in.field, "defining polynomial in t, e.g. \"t^2+3\"");
  app->add_option("--rho", in.rho, "regular parameter (sets rho0 = rho1 = rho2)");
  app->add_option("--rho0", in.rho0, "tr(AB)");
  app->add_option("--rho1", in.rho1, "tr(AC)");
  app->add_option("--rho2", in.rho2, "tr(BC)");
}

HalfTurnTriple build_triple(const Params& p, long prec) {
  return p.is_regular() ? build_regular(p, prec) : build_representation(p, prec);
}

// ------------------------------------------------------------ commands

Report cmd_rep_build(const RunConfig& cfg, const ParamInput& in) {
  const Params p = read_params(in);
  Report r;
  r.summary["params"] = params_json(p);
  const HalfTurnTriple t = with_adaptive_precision(cfg.policy(), [&](long bits) {
    HalfTurnTriple tt = build_triple(p, bits);
    if (!is_line_matrix(tt.A) || !is_line_matrix(tt.B) || !is_line_matrix(tt.C))
      throw PrecisionExhausted("line matrix checks not certified");
    return tt;
  });
  r.summary["precision"] = t.precision();
  r.summary["regular_formulas"] = t.regular;
  r.summary["beta"] = ball_json(t.beta);
  const std::array<std::pair<const char*, const LineMatrix*>, 3> mats{
      std::pair{"A", &t.A}, std::pair{"B", &t.B}, std::pair{"C", &t.C}};
  for (const auto& [name, m] : mats) {
    r.results.push_back(Json{{"matrix", name},
                             {"m11", ball_json(m->m11)},
                             {"m12", ball_json(m->m12)},
                             {"m21", ball_json(m->m21)},
                             {"m22", ball_json(m->m22)},
                             {"line_matrix_certified", is_line_matrix(*m)}});
  }
  const std::array<std::tuple<const char*, const LineMatrix*, const LineMatrix*, int>, 3> pairs{
      std::tuple{"tr(AB)", &t.A, &t.B, 0}, std::tuple{"tr(AC)", &t.A, &t.C, 1},
      std::tuple{"tr(BC)", &t.B, &t.C, 2}};
  Json traces = Json::object();
  for (const auto& [name, m1, m2, k] : pairs) {
    const ComplexBall tr = rho_of(*m1, *m2);
    traces[name] = Json{{"value", ball_json(tr)}, {"contains_input", tr.overlaps(p.rho(k, t.precision()))}};
  }
  r.summary["traces"] = traces;
  Json mu = Json::object();
  for (const auto& [name, m1, m2, k] : pairs) {
    (void)k;
    try {
      mu[name] = ball_json(complex_distance(*m1, *m2));
    } catch (const DomainError& e) {
      mu[name] = e.what();
    }
  }
  r.summary["complex_distances"] = mu;
  return r;
}

Report cmd_arith_test(const RunConfig& cfg, const ParamInput& in, const std::string& hilbert) {
  const Params p = read_params(in);
  ArithmeticityOptions opt;
  opt.rho_star = cfg.choice();
  opt.policy = cfg.policy();
  opt.hilbert_form = hilbert == "displayed" ? HilbertForm::displayed : HilbertForm::traces;
  const ArithmeticityReport rep = arithmeticity_test(p, opt);
  Report r;
  r.summary["params"] = params_json(p);
  const Json j = rep.to_json();
  for (auto it = j.begin(); it != j.end(); ++it) r.summary[it.key()] = it.value();
  r.summary["signature"] = Json::array({rep.signature.real_places, rep.signature.complex_places});
  for (const auto& s : rep.real_place_signs)
    r.results.push_back(Json{{"embedding_interval", "(" + s.embedding.lo.get_str() + ", " + s.embedding.hi.get_str() + ")"},
                             {"sign_a", s.sign_a},
                             {"sign_b", s.sign_b}});
  return r;
}

Report cmd_klein_check(const RunConfig& cfg, const ParamInput& in) {
  const Params p = read_params(in);
  Report r;
  r.summary["params"] = params_json(p);
  if (p.is_regular()) {
    r.summary["annulus_threshold"] = exact_text(rho_star_value(cfg.choice()));
    r.summary["splits_by_annulus"] = splits_by_annulus(p.exact_rho(0), cfg.choice());
  }
  const DisjointnessResult d = circle_disjointness(p, cfg.policy());
  r.summary["circle_status"] = to_string(d.status);
  r.summary["witness"] = d.witness();
  r.summary["conjugated"] = d.conjugated;
  r.summary["precision"] = d.precision;
  if (d.status != DisjointnessStatus::undecided) {
    for (std::size_t k = 0; k < 3; ++k)
      r.results.push_back(Json{{"circle", "C" + std::to_string(k)},
                               {"center", ball_json(d.circles[k].center)},
                               {"radius", d.circles[k].radius.approx()}});
  }
  return r;
}

Report cmd_klein_constants(const RunConfig& cfg) {
  (void)cfg;
  const auto start = std::chrono::steady_clock::now();
  const SplitConstants c = compute_split_constants();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Report r;
  r.summary["beta_star_lower"] = c.beta_star.lower().get_d();
  r.summary["beta_star_upper"] = c.beta_star.upper().get_d();
  r.summary["rho_star_computed_lower"] = c.rho_star_computed.lower().get_d();
  r.summary["rho_star_computed_upper"] = c.rho_star_computed.upper().get_d();
  r.summary["rho_star_fixed"] = exact_text(c.rho_star_fixed);
  r.summary["r2_equation_root"] = c.r2_root ? Json(c.r2_root->approx()) : Json("none on [2, 4]");
  r.summary["monotone_on_2_4"] = c.monotone;
  r.summary["seconds"] = secs;
  return r;
}

Report cmd_klein_scan(const RunConfig& cfg, const std::string& box, int count, const std::string& sampler,
                      std::uint64_t seed, const std::string& threshold, int threads) {
  std::vector<Rational> v;
  std::stringstream ss(box);
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(parse_complex_literal(part).first);
  if (v.size() != 4) throw CLI::ValidationError("--box", "expected re_lo,re_hi,im_lo,im_hi");
  ScanOptions opt;
  opt.sampler = sampler == "random" ? Sampler::random : Sampler::grid;
  opt.count = count;
  opt.seed = seed;
  opt.threads = threads;
  opt.policy = cfg.policy();
  opt.threshold = threshold.empty() ? rho_star_value(cfg.choice()) : parse_complex_literal(threshold).first;
  const ScanResult res = conjecture_scan(ScanRegion::same_box(v[0], v[1], v[2], v[3]), opt);
  Report r;
  r.summary["tested"] = res.tested;
  r.summary["skipped_below_threshold"] = res.skipped;
  r.summary["flagged"] = res.flagged.size();
  r.summary["threshold"] = exact_text(opt.threshold);
  for (const auto& s : res.flagged) {
    Json row;
    for (int k = 0; k < 3; ++k)
      row["rho" + std::to_string(k)] = exact_text(s.rho[static_cast<std::size_t>(k)].first) + "+" +
                                       exact_text(s.rho[static_cast<std::size_t>(k)].second) + "i";
    row["status"] = s.error.empty() ? to_string(s.result.status) : "error";
    row["detail"] = s.error.empty() ? s.result.witness() : s.error;
    r.results.push_back(row);
  }
  return r;
}

Report cmd_enumerate(const RunConfig& cfg, const std::string& bound, bool all, int threads,
                     const std::string& reference_csv) {
  const Rational b = parse_complex_literal(bound).first;
  const auto cands = enumerate_quadratic_candidates(b);
  FilterOptions opt;
  opt.rho_star = cfg.choice();
  opt.policy = {std::max(cfg.precision_bits, 256L), std::max(cfg.precision_cap, 256L)};
  opt.threads = threads;
  const CandidateTable t = filter_nearly_arithmetic(cands, opt);
  const auto reference = reference_csv.empty() ? reference_candidates() : load_reference_csv(reference_csv);
  Report r;
  r.summary["bound"] = exact_text(b);
  r.summary["candidates"] = cands.size();
  for (int s = 0; s < kStages; ++s) {
    const Stage st = static_cast<Stage>(s);
    const TableDiff d = t.diff(st, reference);
    Json missing = Json::array();
    for (const auto& m : d.missing) missing.push_back(std::to_string(m.n) + ": " + m.rho);
    r.summary["after_" + to_string(st)] =
        Json{{"survivors", t.survivors(st).size()}, {"missing_reference_rows", missing}, {"extra", d.extra.size()}};
  }
  int n = 0;
  for (const auto& row : t.rows) {
    if (!all && !row.survives[3]) continue;
    Json j;
    j["N"] = ++n;
    j["rho"] = row.candidate.display();
    j["field"] = row.invariant_field.empty() ? row.candidate.field_label : row.invariant_field;
    j["k"] = row.candidate.k;
    j["d"] = row.candidate.d;
    j["reference_row"] = row.reference_row ? Json(*row.reference_row) : Json();
    j["integral"] = row.survives[0];
    j["complex_place"] = row.survives[1];
    j["annulus_survives"] = row.survives[2];
    j["circle_status"] = row.circle_status;
    j["circle_witness"] = row.circle_witness;
    r.results.push_back(j);
  }
  r.columns = {{"N", "N"}, {"rho", "ρ"}, {"field", "Field"}};
  return r;
}

Report cmd_bounds(const RunConfig& cfg, int extra, int listed) {
  const BoundReport b = bound_report(cfg.choice(), extra, listed);
  Report r;
  r.summary["rho_star_used"] = exact_text(b.rho_star_used);
  r.summary["rho_star_choice"] = b.rho_star_choice;
  r.summary["K"] = exact_text(b.K);
  r.summary["n0"] = b.n0 ? Json(*b.n0) : Json("none: bound(n) >= 1 for every n <= 200");
  r.summary["below_one_after_n0"] = b.below_one_after_n0;
  r.summary["decreasing_after_n0"] = b.decreasing_after_n0;
  std::map<int, Rational> m(b.m_values.begin(), b.m_values.end());
  for (const auto& [n, v] : b.bound_values) {
    Json row;
    row["n"] = n;
    if (m.count(n)) {
      row["M_n"] = m[n].get_str();
      row["M_n_normalized"] = m_r_normalized(n).approx();
    }
    const double lg = log10_rational(v);
    row["log10_bound"] = lg;
    row["bound"] = sci(lg);
    row["below_one"] = v < 1;
    r.results.push_back(row);
  }
  return r;
}

Report cmd_relators_verify(const RunConfig& cfg, const std::string& figure, const std::string& word,
                           const ParamInput& in, const std::vector<int>& powers) {
  Report r;
  if (!word.empty()) {
    const Params p = read_params(in);
    const GroupWord w = GroupWord::parse(word);
    r.summary["params"] = params_json(p);
    for (int n : powers) {
      const RelatorCheck c = is_relator(w.power(n), p, {std::max(cfg.precision_bits, 256L), std::max(cfg.precision_cap, 256L)});
      r.results.push_back(Json{{"word", w.to_string()},
                               {"power", n},
                               {"status", to_string(c.status)},
                               {"sign", c.sign},
                               {"max_radius", c.max_radius},
                               {"precision", c.precision}});
    }
    return r;
  }
  for (const auto& pres : figure_presentations()) {
    if (figure != "all" && pres.name.rfind("figure_" + figure, 0) != 0) continue;
    const PresentationReport rep =
        verify_presentation(pres, powers, {std::max(cfg.precision_bits, 256L), std::max(cfg.precision_cap, 256L)});
    r.summary[pres.name] = Json{{"template", pres.word_template.to_string()},
                                {"rho", pres.rho + " in Q(t), t^2 + 3 = 0"},
                                {"holding_power", rep.holding_power}};
    for (const auto& v : rep.outcomes)
      r.results.push_back(Json{{"presentation", pres.name},
                               {"substitution", v.substitution},
                               {"power", v.power},
                               {"c11_branch", v.c11_branch},
                               {"word", v.word.to_string()},
                               {"status", to_string(v.check.status)},
                               {"max_radius", v.check.max_radius}});
  }
  if (r.summary.empty()) throw CLI::ValidationError("--figure", "expected 4, 5, 6 or all");
  return r;
}

Report cmd_relators_search(const RunConfig& cfg, const ParamInput& in, int max_length) {
  const Params p = read_params(in);
  const HalfTurnTriple t = build_triple(p, std::max(cfg.precision_bits, 256L));
  const auto found = search_short_relators(t, max_length);
  Report r;
  r.summary["params"] = params_json(p);
  r.summary["max_length"] = max_length;
  r.summary["found"] = found.size();
  for (const auto& w : found) r.results.push_back(Json{{"word", w.to_string()}, {"length", w.length()}});
  return r;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-half-turn groups: representation, arithmeticity and free-product tests"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  RunConfig cfg;
  if (const char* env = std::getenv("HALFTURN_PRECISION")) {
    try {
      cfg.precision_bits = std::stol(env);
    } catch (const std::exception&) {
      std::cerr << "error: HALFTURN_PRECISION must be an integer\n";
      return 2;
    }
  }
  app.add_option("--precision", cfg.precision_bits, "working precision in bits (env HALFTURN_PRECISION)");
  app.add_option("--precision-cap", cfg.precision_cap, "largest precision tried before giving up");
  app.add_option("--rho-star", cfg.rho_star, "split threshold: 6.4 or computed")
      ->check(CLI::IsMember({"6.4", "computed"}));
  app.add_option("--format", cfg.format, "json, csv, markdown or text")
      ->check(CLI::IsMember({"json", "csv", "markdown", "md", "text"}));
  app.add_option("--out", cfg.out, "output file (default: stdout)");

  ParamInput params;
  std::string hilbert = "traces", box, sampler = "grid", threshold, bound = "6.4", figure = "all", word,
              reference_csv;
  int count = 5, threads = 0, max_length = 8, extra = 20, listed = 40, max_degree = 2;
  std::uint64_t seed = 1;
  std::vector<int> powers{1, 2, 3, 4, 6};
  bool all_rows = false;
  std::string real_bound = "2";

  auto* rep = app.add_subcommand("rep", "representation");
  rep->require_subcommand(1);
  auto* rep_build = rep->add_subcommand("build", "line matrices A, B, C for the parameters");
  add_param_options(rep_build, params);

  auto* arith = app.add_subcommand("arith", "arithmeticity");
  arith->require_subcommand(1);
  auto* arith_test = arith->add_subcommand("test", "run the arithmeticity test");
  add_param_options(arith_test, params);
  arith_test->add_option("--hilbert-form", hilbert, "traces or displayed")
      ->check(CLI::IsMember({"traces", "displayed"}));

  auto* klein = app.add_subcommand("klein", "free-product detection");
  klein->require_subcommand(1);
  auto* klein_check = klein->add_subcommand("check", "invariant circle test");
  add_param_options(klein_check, params);
  auto* klein_constants = klein->add_subcommand("constants", "beta* and rho*");
  auto* klein_scan = klein->add_subcommand("scan", "look for non-split parameters beyond the threshold");
  klein_scan->add_option("--box", box, "re_lo,re_hi,im_lo,im_hi for each parameter")->required();
  klein_scan->add_option("--count", count, "grid points per axis or random samples");
  klein_scan->add_option("--sampler", sampler)->check(CLI::IsMember({"grid", "random"}));
  klein_scan->add_option("--seed", seed);
  klein_scan->add_option("--threshold", threshold, "minimum |rho_k| (default: rho*)");
  klein_scan->add_option("--threads", threads);

  auto* enumerate = app.add_subcommand("enumerate", "candidate enumeration");
  enumerate->require_subcommand(1);
  auto* enum_regular = enumerate->add_subcommand("regular", "imaginary quadratic regular parameters");
  enum_regular->add_option("--bound", bound, "|rho| bound");
  enum_regular->add_option("--max-degree", max_degree, "2: quadratic parameters; 3-4: bounded algebraic integers");
  enum_regular->add_option("--real-bound", real_bound, "bound on real conjugates for --max-degree > 2");
  enum_regular->add_flag("--all", all_rows, "list every candidate, not only survivors");
  enum_regular->add_option("--threads", threads);
  enum_regular->add_option("--reference", reference_csv, "reference list CSV (default: built in)");

  auto* bounds = app.add_subcommand("bounds", "degree bound constants");
  bounds->add_option("--extra", extra, "values listed past n0");
  bounds->add_option("--listed", listed, "values listed when no n0 exists");

  auto* relators = app.add_subcommand("relators", "words in a, b, c");
  relators->require_subcommand(1);
  auto* rel_verify = relators->add_subcommand("verify", "check presentation words");
  rel_verify->add_option("--figure", figure, "4, 5, 6 or all");
  rel_verify->add_option("--word", word, "custom word, e.g. \"a b c b\"");
  rel_verify->add_option("--powers", powers, "exponents tried")->delimiter(',');
  add_param_options(rel_verify, params);
  auto* rel_search = relators->add_subcommand("search", "short relators");
  add_param_options(rel_search, params);
  rel_search->add_option("--max-length", max_length)->check(CLI::Range(1, 12));

  auto* plot = app.add_subcommand("plot", "pictures");
  plot->require_subcommand(1);
  auto* plot_c = plot->add_subcommand("circles", "SVG of the invariant circles");
  add_param_options(plot_c, params);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (cfg.precision_bits < 64 || cfg.precision_bits > cfg.precision_cap)
      throw CLI::ValidationError("--precision", "need 64 <= precision <= precision cap");
    const OutputFormat format = parse_output_format(cfg.format);
    Report report;
    std::string command;
    if (rep_build->parsed()) {
      command = "rep build";
      report = cmd_rep_build(cfg, params);
    } else if (arith_test->parsed()) {
      command = "arith test";
      report = cmd_arith_test(cfg, params, hilbert);
    } else if (klein_check->parsed()) {
      command = "klein check";
      report = cmd_klein_check(cfg, params);
    } else if (klein_constants->parsed()) {
      command = "klein constants";
      report = cmd_klein_constants(cfg);
    } else if (klein_scan->parsed()) {
      command = "klein scan";
      report = cmd_klein_scan(cfg, box, count, sampler, seed, threshold, threads);
    } else if (enum_regular->parsed()) {
      command = "enumerate regular";
      if (max_degree <= 2) {
        report = cmd_enumerate(cfg, bound, all_rows, threads, reference_csv);
      } else {
        const auto polys = enumerate_bounded_algebraic_integers(
            max_degree, parse_complex_literal(bound).first, parse_complex_literal(real_bound).first);
        report.summary["count"] = polys.size();
        for (const auto& p : polys) report.results.push_back(Json{{"degree", p.degree()}, {"polynomial", to_string(p)}});
      }
    } else if (bounds->parsed()) {
      command = "bounds";
      report = cmd_bounds(cfg, extra, listed);
    } else if (rel_verify->parsed()) {
      command = "relators verify";
      report = cmd_relators_verify(cfg, figure, word, params, powers);
    } else if (rel_search->parsed()) {
      command = "relators search";
      report = cmd_relators_search(cfg, params, max_length);
    } else if (plot_c->parsed()) {
      const Params p = read_params(params);
      const HalfTurnTriple t = build_triple(p, cfg.precision_bits);
      write_output(cfg.out, plot_circles(t));
      return 0;
    }
    report.command = command;
    report.config = cfg.to_json();
    report.timestamp = utc_timestamp();
    write_output(cfg.out, emit_report(report, format));
    return 0;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
