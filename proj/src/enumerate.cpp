#include "halfturn/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <fstream>
#include <map>
#include <mpfr.h>
#include <sstream>
#include <thread>

#include "halfturn/arith.hpp"
#include "halfturn/errors.hpp"

namespace halfturn {

// ------------------------------------------------------------ candidates

std::string QuadraticCandidate::display() const {
  if (k % 2 != 0) {
    return std::to_string(k) + "/2 + √-" + std::to_string(d) + "/2";
  }
  const std::string root = "√-" + std::to_string(d / 4);
  if (k == 0) return root;
  return std::to_string(k / 2) + " + " + root;
}

namespace {

long squarefree_long(long n) { return squarefree_part(Integer(n)).get_si(); }

Integer isqrt_floor(const Rational& q) {
  // floor(sqrt(q)) for q >= 0
  Integer f = q.get_num() / q.get_den();
  Integer r;
  mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
  return r;
}

}  // namespace

std::vector<QuadraticCandidate> enumerate_quadratic_candidates(const Rational& bound) {
  if (bound < 0) throw DomainError("bound must be nonnegative");
  // k^2 + d <= 4 bound^2
  const Rational lim = 4 * bound * bound;
  const Integer lim_floor = lim.get_num() / lim.get_den();
  const long L = lim_floor.get_si();
  const long kmax = isqrt_floor(lim).get_si();

  struct Key {
    long k, d;
  };
  std::vector<Key> keys;
  for (long k = -kmax; k <= kmax; ++k) {
    for (long d = 1; k * k + d <= L; ++d) {
      if ((k * k + d) % 4 == 0) keys.push_back({k, d});
    }
  }
  std::map<long, FieldPtr> fields;
  std::vector<QuadraticCandidate> out;
  out.reserve(keys.size());
  for (const auto& key : keys) {
    QuadraticCandidate c;
    c.k = key.k;
    c.d = key.d;
    c.d_sf = squarefree_long(key.d);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const QuadraticCandidate& a, const QuadraticCandidate& b) {
    return std::tie(a.d_sf, a.d, a.k) < std::tie(b.d_sf, b.d, b.k);
  });
  for (auto& c : out) {
    auto& f = fields[c.d_sf];
    if (!f) f = NumberField::create(IntPolynomial({Integer(c.d_sf), Integer(0), Integer(1)}));
    // d = s^2 d_sf, sqrt(-d) = s t
    Integer s2 = Integer(c.d / c.d_sf), s;
    mpz_sqrt(s.get_mpz_t(), s2.get_mpz_t());
    c.rho = FieldElement(f, {Rational(c.k, 2), Rational(s, 2)});
    c.field_label = "Q(√-" + std::to_string(c.d_sf) + ")";
  }
  return out;
}

// --------------------------------------------------------------- reference list

const std::vector<ReferenceRow>& reference_candidates() {
  static const std::vector<ReferenceRow> rows = [] {
    // (k, d) for rho = k/2 + sqrt(-d)/2, in table order
    const std::vector<std::pair<long, long>> kd = {
        {-6, 4},  {-4, 4},  {-2, 4},  {0, 4},   {2, 4},   {4, 4},             // Q(√-1)
        {-4, 16}, {-2, 16}, {0, 16},  {4, 16},                                // Q(√-1)
        {-4, 8},  {-2, 8},  {0, 8},   {4, 8},                                 // Q(√-2)
        {-5, 3},  {-3, 3},  {-1, 3},  {1, 3},   {3, 3},                       // Q(√-3)
        {-4, 12}, {-2, 12}, {0, 12},  {2, 12},  {-1, 27},                     // Q(√-3)
        {-2, 20}, {0, 20},                                                    // Q(√-5)
        {-2, 24}, {0, 24},                                                    // Q(√-6)
        {-5, 7},  {-3, 7},  {-1, 7},  {1, 7},   {3, 7},   {-2, 28},           // Q(√-7)
        {-5, 11}, {-3, 11}, {-1, 11}, {1, 11},  {3, 11},                      // Q(√-11)
        {-3, 15}, {-1, 15}, {1, 15},                                          // Q(√-15)
        {-3, 19}, {-1, 19}, {1, 19},                                          // Q(√-19)
        {-3, 23}, {-1, 23}, {1, 23},                                          // Q(√-23)
    };
    std::vector<ReferenceRow> out;
    int n = 1;
    for (auto [k, d] : kd) {
      QuadraticCandidate c;
      c.k = k;
      c.d = d;
      ReferenceRow r;
      r.n = n++;
      r.k = k;
      r.d = d;
      r.rho = c.display();
      r.field = "Q(√-" + std::to_string(squarefree_long(d)) + ")";
      out.push_back(std::move(r));
    }
    return out;
  }();
  return rows;
}

std::vector<ReferenceRow> load_reference_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  std::string line;
  std::getline(in, line);
  if (line.rfind("N,rho,field,k,d", 0) != 0) throw ParseError("unexpected header in " + path);
  std::vector<ReferenceRow> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5) throw ParseError("bad row: " + line);
    ReferenceRow r;
    try {
      r.n = std::stoi(cells[0]);
      r.k = std::stol(cells[3]);
      r.d = std::stol(cells[4]);
    } catch (const std::exception&) {
      throw ParseError("bad row: " + line);
    }
    r.rho = cells[1];
    r.field = cells[2];
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------- filter

std::string to_string(Stage s) {
  switch (s) {
    case Stage::integrality: return "integrality";
    case Stage::complex_place: return "complex_place";
    case Stage::annulus: return "annulus";
    case Stage::circles: return "circles";
  }
  return "circles";
}

std::vector<const CandidateRow*> CandidateTable::survivors(Stage s) const {
  std::vector<const CandidateRow*> out;
  for (const auto& r : rows)
    if (r.survives[static_cast<std::size_t>(s)]) out.push_back(&r);
  return out;
}

TableDiff CandidateTable::diff(Stage s, const std::vector<ReferenceRow>& reference) const {
  TableDiff out;
  std::map<std::pair<long, long>, const CandidateRow*> alive;
  for (const CandidateRow* r : survivors(s)) alive[{r->candidate.k, r->candidate.d}] = r;
  std::map<std::pair<long, long>, bool> listed;
  for (const auto& ref : reference) {
    listed[{ref.k, ref.d}] = true;
    if (!alive.count({ref.k, ref.d})) out.missing.push_back(ref);
  }
  for (const CandidateRow* r : survivors(s))
    if (!listed.count({r->candidate.k, r->candidate.d})) out.extra.push_back(r);
  return out;
}

CandidateTable filter_nearly_arithmetic(const std::vector<QuadraticCandidate>& candidates,
                                        const FilterOptions& options) {
  CandidateTable table;
  table.rho_star = options.rho_star;
  std::map<std::pair<long, long>, int> ref_index;
  for (const auto& ref : reference_candidates()) ref_index[{ref.k, ref.d}] = ref.n;

  table.rows.resize(candidates.size());
  for (std::size_t n = 0; n < candidates.size(); ++n) {
    CandidateRow& row = table.rows[n];
    row.index = static_cast<int>(n) + 1;
    row.candidate = candidates[n];
    if (auto it = ref_index.find({row.candidate.k, row.candidate.d}); it != ref_index.end())
      row.reference_row = it->second;
    const FieldElement& rho = row.candidate.rho;
    const bool integral = is_algebraic_integer(rho);
    row.survives[0] = integral;
    if (!integral) continue;
    const Subfield k = invariant_trace_field(Params::regular(rho));
    row.invariant_field = k.label();
    row.survives[1] = k.as_field->signature().complex_places == 1;
    if (!row.survives[1]) continue;
    row.survives[2] = !splits_by_annulus(rho, options.rho_star);
  }

  // The circle stage is the expensive one.
  std::vector<std::size_t> todo;
  for (std::size_t n = 0; n < table.rows.size(); ++n)
    if (table.rows[n].survives[2]) todo.push_back(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= todo.size()) return;
      CandidateRow& row = table.rows[todo[j]];
      std::string status, witness;
      bool survives = true;
      try {
        const DisjointnessResult r =
            circle_disjointness(Params::regular(row.candidate.rho), options.policy);
        status = to_string(r.status);
        witness = r.witness();
        survives = r.status != DisjointnessStatus::certified_disjoint_disks;
      } catch (const DomainError& e) {
        status = "error";
        witness = e.what();
      }
      row.circle_status = status;
      row.circle_witness = witness;
      row.survives[3] = survives;
    }
  };
  unsigned threads = options.threads > 0 ? static_cast<unsigned>(options.threads)
                                         : std::max(1U, std::thread::hardware_concurrency());
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(todo.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return table;
}

// ---------------------------------------------------------------- bounds

namespace {

Integer self_power(long j) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(j), static_cast<unsigned long>(j));
  return out;
}

Rational pow_rational(const Rational& q, unsigned long e) {
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), q.get_den_mpz_t(), e);
  Rational out(n, d);
  out.canonicalize();
  return out;
}

// Certified enclosure of log(q) for q > 0.
std::pair<Rational, Rational> log_interval(const Rational& q, long prec) {
  mpfr_t lo, hi;
  mpfr_inits2(prec, lo, hi, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(lo, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi, q.get_mpq_t(), MPFR_RNDU);
  mpfr_log(lo, lo, MPFR_RNDD);
  mpfr_log(hi, hi, MPFR_RNDU);
  Rational a, b;
  mpfr_get_q(a.get_mpq_t(), lo);
  mpfr_get_q(b.get_mpq_t(), hi);
  mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr));
  return {a, b};
}

}  // namespace

Rational m_r(int r) {
  if (r < 2) throw DomainError("m_r needs r >= 2");
  Integer num(1), den(1);
  for (long j = 2; j <= r; ++j) num *= self_power(j);
  for (long j = 2; j <= r - 2; ++j) num *= self_power(j);
  for (long j = 3; j <= 2L * r - 3; j += 2) den *= self_power(j);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

RealBall m_r_normalized(int r, long prec) {
  const auto [lo, hi] = log_interval(m_r(r), prec + 32);
  const long e = static_cast<long>(r) * (r - 1);
  // exp is monotone: enclose exp(lo/e) and exp(hi/e)
  mpfr_t a, b;
  mpfr_inits2(prec + 32, a, b, static_cast<mpfr_ptr>(nullptr));
  const Rational qa = lo / e, qb = hi / e;
  mpfr_set_q(a, qa.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(b, qb.get_mpq_t(), MPFR_RNDU);
  mpfr_exp(a, a, MPFR_RNDD);
  mpfr_exp(b, b, MPFR_RNDU);
  Rational ra, rb;
  mpfr_get_q(ra.get_mpq_t(), a);
  mpfr_get_q(rb.get_mpq_t(), b);
  mpfr_clears(a, b, static_cast<mpfr_ptr>(nullptr));
  return RealBall::from_interval(ra, rb, prec);
}

double log10_rational(const Rational& q) {
  if (q <= 0) throw DomainError("log10 of a nonpositive number");
  const auto [lo, hi] = log_interval(q, 64);
  return Rational((lo + hi) / 2).get_d() / std::log(10.0);
}

Rational k_constant(const Rational& rho_star) { return rho_star * rho_star + 4 * rho_star + 4; }

Rational discriminant_bound(int n, const Rational& rho_star, const Rational& K) {
  if (n < 2) throw DomainError("degree must be >= 2");
  Rational out = 4 * rho_star * rho_star * pow_rational(K, 2UL * static_cast<unsigned long>(n));
  out *= Rational(Integer(1) << static_cast<unsigned long>(n) * static_cast<unsigned long>(n - 1));
  out *= m_r(n);
  return out;
}

int n0(const Rational& rho_star) {
  const Rational K = k_constant(rho_star);
  for (int n = 3; n <= 200; ++n)
    if (discriminant_bound(n, rho_star, K) < 1) return n;
  throw ScanExhausted("no n <= 200 with bound(n) < 1");
}

BoundReport bound_report(const Rational& rho_star, const std::string& label, int extra,
                         int listed) {
  BoundReport rep;
  rep.rho_star_used = rho_star;
  rep.rho_star_choice = label;
  rep.K = k_constant(rho_star);
  try {
    rep.n0 = n0(rho_star);
  } catch (const ScanExhausted&) {
  }
  const int last = rep.n0 ? *rep.n0 + extra : listed;
  for (int r = 3; r <= last; ++r) rep.m_values.emplace_back(r, m_r(r));
  for (int n = 3; n <= last; ++n)
    rep.bound_values.emplace_back(n, discriminant_bound(n, rho_star, rep.K));
  if (!rep.n0) return rep;
  rep.below_one_after_n0 = true;
  rep.decreasing_after_n0 = true;
  for (std::size_t j = 0; j < rep.bound_values.size(); ++j) {
    const auto& [n, b] = rep.bound_values[j];
    if (n < *rep.n0) continue;
    if (b >= 1) rep.below_one_after_n0 = false;
    if (j + 1 < rep.bound_values.size() && !(rep.bound_values[j + 1].second < b))
      rep.decreasing_after_n0 = false;
  }
  return rep;
}

BoundReport bound_report(RhoStarChoice choice, int extra, int listed) {
  return bound_report(rho_star_value(choice), to_string(choice), extra, listed);
}

// ------------------------------------------------- bounded algebraic integers

std::vector<Integer> coefficient_bounds(int degree, const Rational& complex_bound,
                                        const Rational& real_bound) {
  // coefficients of (1 + Bc x)^2 (1 + Br x)^(n-2), degree 1: (1 + Bc x)
  std::vector<Rational> poly{Rational(1)};
  auto mul = [&](const Rational& b) {
    std::vector<Rational> next(poly.size() + 1, Rational(0));
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j] += poly[j];
      next[j + 1] += poly[j] * b;
    }
    poly = std::move(next);
  };
  if (degree == 1) {
    mul(complex_bound);
  } else {
    mul(complex_bound);
    mul(complex_bound);
    for (int j = 2; j < degree; ++j) mul(real_bound);
  }
  std::vector<Integer> out;
  for (const auto& q : poly) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    out.push_back(f);
  }
  return out;
}

namespace {

// Resultant of p and p' by fraction-free elimination on the Sylvester
// matrix; the sign of the discriminant of a monic p of degree n is
// (-1)^(n(n-1)/2) sign(res).
int discriminant_sign(const IntPolynomial& p) {
  const IntPolynomial q = p.derivative();
  const int n = p.degree(), m = q.degree();
  const int size = n + m;
  std::vector<std::vector<Integer>> a(static_cast<std::size_t>(size),
                                      std::vector<Integer>(static_cast<std::size_t>(size), 0));
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) a[r][static_cast<std::size_t>(r + j)] = p.coeff(n - j);
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) a[static_cast<std::size_t>(m + r)][static_cast<std::size_t>(r + j)] = q.coeff(m - j);
  int sign = 1;
  Integer prev(1);
  for (int k = 0; k < size - 1; ++k) {
    if (a[k][k] == 0) {
      int swap = -1;
      for (int r = k + 1; r < size; ++r)
        if (a[r][k] != 0) swap = r;
      if (swap < 0) return 0;
      std::swap(a[k], a[static_cast<std::size_t>(swap)]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  const int det = sgn(a[size - 1][size - 1]) * sign;
  const long half = static_cast<long>(n) * (n - 1) / 2;
  return half % 2 == 0 ? det : -det;
}

// Exact comparison |z| <= B for the non-real pair of a monic quadratic.
bool quadratic_pair_bounded(const IntPolynomial& p, const Rational& bound) {
  return Rational(p.coeff(0)) <= bound * bound;
}

}  // namespace

bool has_bounded_conjugates(const IntPolynomial& p, const Rational& complex_bound,
                            const Rational& real_bound, long prec) {
  const int n = p.degree();
  if (n < 1 || p.leading() != 1) throw DomainError("expected a monic polynomial");
  if (n == 1) return abs(Rational(p.coeff(0))) <= complex_bound;
  if (discriminant_sign(p) >= 0) return false;  // one pair means disc < 0
  const RatPolynomial rp = to_rational(p);
  if (n == 2) return quadratic_pair_bounded(p, complex_bound);
  SturmSequence sturm(rp);
  if (sturm.count_all() != n - 2) return false;
  int inside = sturm.count(-real_bound, real_bound);
  if (evaluate(rp, -real_bound) == 0) ++inside;
  if (inside != n - 2) return false;
  // The pair itself.
  return with_adaptive_precision(PrecisionPolicy{prec, 1024}, [&](long bits) {
    const auto roots = isolate_complex_roots(rp, bits);
    for (const auto& z : roots) {
      if (!z.imag().certainly_positive()) continue;
      if (z.abs_upper() <= complex_bound) return true;
      if (z.abs_lower() > complex_bound) return false;
      throw PrecisionExhausted("|z| against the bound");
    }
    throw PrecisionExhausted("non-real root not separated from the real axis");
  });
}

std::vector<IntPolynomial> enumerate_bounded_algebraic_integers(int max_degree,
                                                                const Rational& complex_bound,
                                                                const Rational& real_bound,
                                                                int degree_guard) {
  if (max_degree < 1) throw DomainError("max_degree must be >= 1");
  if (max_degree > degree_guard)
    throw DomainError("max_degree " + std::to_string(max_degree) + " exceeds the guard " +
                      std::to_string(degree_guard));
  if (complex_bound < 0 || real_bound < 0) throw DomainError("bounds must be nonnegative");
  std::vector<IntPolynomial> out;
  for (int n = 1; n <= max_degree; ++n) {
    const std::vector<Integer> box = coefficient_bounds(n, complex_bound, real_bound);
    // p(t) = sum_j (-1)^j e_j t^(n-j); iterate e_1..e_n in their boxes
    std::vector<Integer> e(static_cast<std::size_t>(n) + 1, 0);
    for (int j = 1; j <= n; ++j) e[static_cast<std::size_t>(j)] = -box[static_cast<std::size_t>(j)];
    for (;;) {
      std::vector<Integer> c(static_cast<std::size_t>(n) + 1);
      for (int j = 0; j <= n; ++j)
        c[static_cast<std::size_t>(n - j)] = (j % 2 == 0) ? e[static_cast<std::size_t>(j)]
                                                           : Integer(-e[static_cast<std::size_t>(j)]);
      c[static_cast<std::size_t>(n)] = 1;
      IntPolynomial p(c);
      bool keep = false;
      try {
        keep = has_bounded_conjugates(p, complex_bound, real_bound) && is_irreducible(p);
      } catch (const PrecisionExhausted&) {
        // |z| equal to the bound forces a rational factor for small degree;
        // anything irreducible left undecided is reported
        if (is_irreducible(p)) throw;
      }
      if (keep) out.push_back(p);
      int j = n;
      while (j >= 1 && e[static_cast<std::size_t>(j)] == box[static_cast<std::size_t>(j)]) {
        e[static_cast<std::size_t>(j)] = -box[static_cast<std::size_t>(j)];
        --j;
      }
      if (j < 1) break;
      ++e[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

}  // namespace halfturn
