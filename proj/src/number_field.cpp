#include "halfturn/number_field.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "halfturn/errors.hpp"

namespace halfturn {

namespace {

// ------------------------------------------------------------ linear algebra

// Incremental row echelon form over Q that remembers how each stored row was
// combined from the vectors inserted so far.
class Echelon {
 public:
  explicit Echelon(std::size_t dim) : dim_(dim) {}

  // Reduces v against the stored rows. Returns the combination
  // (over inserted vectors, with the new vector last) that produced the
  // residual, and the residual itself.
  std::pair<std::vector<Rational>, std::vector<Rational>> reduce(std::vector<Rational> v) const {
    std::vector<Rational> combo(count_ + 1, Rational(0));
    combo[count_] = 1;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = v[pivots_[r]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) v[j] -= f * rows_[r][j];
      for (std::size_t j = 0; j < combos_[r].size(); ++j) combo[j] -= f * combos_[r][j];
    }
    return {combo, v};
  }

  // Inserts v; returns false (and stores nothing) if v is dependent.
  bool insert(const std::vector<Rational>& v) {
    auto [combo, res] = reduce(v);
    std::size_t piv = dim_;
    for (std::size_t j = 0; j < dim_; ++j)
      if (res[j] != 0) {
        piv = j;
        break;
      }
    if (piv == dim_) return false;
    const Rational inv = 1 / res[piv];
    for (auto& x : res) x *= inv;
    for (auto& x : combo) x *= inv;
    // Keep rows fully reduced at the new pivot.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = rows_[r][piv];
      if (f == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) rows_[r][j] -= f * res[j];
      combos_[r].resize(count_ + 1, Rational(0));
      for (std::size_t j = 0; j <= count_; ++j) combos_[r][j] -= f * combo[j];
    }
    rows_.push_back(res);
    combos_.push_back(combo);
    pivots_.push_back(piv);
    ++count_;
    return true;
  }

  bool in_span(const std::vector<Rational>& v) const {
    auto res = reduce(v).second;
    return std::all_of(res.begin(), res.end(), [](const Rational& x) { return x == 0; });
  }

  // Coefficients c with v = sum c_i inserted_i (v must lie in the span).
  std::vector<Rational> express(const std::vector<Rational>& v) const {
    auto [combo, res] = reduce(v);
    for (const auto& x : res)
      if (x != 0) throw DomainError("vector not in span");
    // combo * [inserted..., v] = 0 with coefficient 1 on v.
    std::vector<Rational> c(count_);
    for (std::size_t i = 0; i < count_; ++i) c[i] = -combo[i];
    return c;
  }

  std::size_t rank() const { return count_; }

 private:
  std::size_t dim_;
  std::size_t count_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::vector<Rational>> combos_;
  std::vector<std::size_t> pivots_;
};

// ----------------------------------------------------------------- parsing

class PolyParser {
 public:
  PolyParser(const std::string& text, char var) : s_(text), var_(var) {}

  RatPolynomial parse() {
    RatPolynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  RatPolynomial expr() {
    RatPolynomial acc = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc = acc + term();
      } else if (peek('-')) {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  RatPolynomial term() {
    RatPolynomial acc = unary();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = acc * unary();
      } else if (peek('/')) {
        ++pos_;
        RatPolynomial d = unary();
        if (d.degree() != 0) fail("division by a non-constant");
        acc = Rational(1 / d.leading()) * acc;
      } else if (peek(var_) || peek('(')) {
        acc = acc * unary();  // implicit multiplication, e.g. 2t
      } else {
        return acc;
      }
    }
  }

  RatPolynomial unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    RatPolynomial base = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long e = std::stoul(s_.substr(start, pos_ - start));
      RatPolynomial r = RatPolynomial::constant(Rational(1));
      for (unsigned long i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  RatPolynomial primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatPolynomial p = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return p;
    }
    if (c == var_) {
      ++pos_;
      return RatPolynomial::monomial(1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
        ++pos_;
      return RatPolynomial::constant(decimal(s_.substr(start, pos_ - start)));
    }
    fail("unexpected character");
  }

  Rational decimal(const std::string& tok) {
    auto dot = tok.find('.');
    if (dot == std::string::npos) return Rational(Integer(tok, 10));
    std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
    if (digits.empty() || tok.find('.', dot + 1) != std::string::npos) fail("bad number");
    Integer num(digits, 10);
    Integer den = 1;
    for (std::size_t i = dot + 1; i < tok.size(); ++i) den *= 10;
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  std::string s_;
  char var_;
  std::size_t pos_ = 0;
};

std::vector<Rational> reduce_mod(const RatPolynomial& p, const RatPolynomial& f, int n) {
  RatPolynomial r = divmod(p, f).second;
  std::vector<Rational> c(static_cast<std::size_t>(n), Rational(0));
  for (int i = 0; i <= r.degree(); ++i) c[static_cast<std::size_t>(i)] = r.coeff(i);
  return c;
}

RatPolynomial as_poly(const std::vector<Rational>& c) { return RatPolynomial(c); }

void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field()) throw DomainError("field elements from different fields");
}

}  // namespace

RatPolynomial parse_polynomial(const std::string& text, char var) {
  return PolyParser(text, var).parse();
}

Integer squarefree_part(const Integer& n) {
  Integer m = abs(n), out = 1;
  for (Integer p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e % 2 == 1) out *= p;
  }
  return out * m;
}

// ----------------------------------------------------------- irreducibility

bool is_irreducible(const IntPolynomial& poly) {
  const int n = poly.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  RatPolynomial rp = to_rational(poly);
  if (!is_squarefree(rp)) return false;
  // A monic integral factor has integral coefficients whose balls, built
  // from any choice of root subset, must contain an integer; candidates are
  // then confirmed by exact division.
  const Integer& lead = poly.leading();
  std::vector<ComplexBall> roots =
      with_adaptive_precision(PrecisionPolicy{128, 8192},
                              [&](long bits) { return isolate_complex_roots(rp, bits); });
  const long prec = roots.front().precision();
  std::vector<int> idx;
  for (int k = 1; k <= n / 2; ++k) {
    std::vector<bool> mask(static_cast<std::size_t>(n), false);
    std::fill(mask.begin(), mask.begin() + k, true);
    do {
      std::vector<ComplexBall> f{ComplexBall::from_int(1, 0, prec)};
      for (int i = 0; i < n; ++i) {
        if (!mask[static_cast<std::size_t>(i)]) continue;
        std::vector<ComplexBall> g(f.size() + 1, ComplexBall(prec));
        for (std::size_t j = 0; j < f.size(); ++j) {
          g[j + 1] = g[j + 1] + f[j];
          g[j] = g[j] - f[j] * roots[static_cast<std::size_t>(i)];
        }
        f = std::move(g);
      }
      // Scale by the leading coefficient's divisors is unnecessary for monic
      // input; for non-monic input test lead * factor.
      std::vector<Rational> cand;
      bool ok = true;
      for (auto& c : f) {
        ComplexBall s = c * ComplexBall::from_rational(Rational(lead), Rational(0), prec);
        Integer nearest;
        Rational re = s.mid_re().to_rational();
        mpz_fdiv_q(nearest.get_mpz_t(), Rational(re + Rational(1, 2)).get_num_mpz_t(),
                   Rational(re + Rational(1, 2)).get_den_mpz_t());
        if (!s.contains(Rational(nearest), Rational(0))) {
          ok = false;
          break;
        }
        cand.emplace_back(nearest);
      }
      if (!ok) continue;
      RatPolynomial g(cand);
      if (g.degree() >= 1 && divmod(rp, g).second.is_zero()) return false;
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return true;
}

// ------------------------------------------------------------- NumberField

NumberField::NumberField(IntPolynomial poly, RatPolynomial rpoly)
    : poly_(std::move(poly)), rpoly_(std::move(rpoly)) {}

FieldPtr NumberField::create(const IntPolynomial& poly) {
  if (poly.degree() < 1 || poly.leading() != 1)
    throw DomainError("defining polynomial must be monic of positive degree");
  if (!is_irreducible(poly)) throw DomainError("defining polynomial " + halfturn::to_string(poly) + " is reducible");
  std::shared_ptr<NumberField> f(new NumberField(poly, to_rational(poly)));
  f->signature_ = halfturn::signature(poly);
  f->choose_root(nullptr);
  return f;
}

FieldPtr NumberField::create(const IntPolynomial& poly, const ComplexBall& near) {
  if (poly.degree() < 1 || poly.leading() != 1)
    throw DomainError("defining polynomial must be monic of positive degree");
  if (!is_irreducible(poly)) throw DomainError("defining polynomial " + halfturn::to_string(poly) + " is reducible");
  std::shared_ptr<NumberField> f(new NumberField(poly, to_rational(poly)));
  f->signature_ = halfturn::signature(poly);
  f->choose_root(&near);
  return f;
}

FieldPtr NumberField::parse(const std::string& text) {
  RatPolynomial p = parse_polynomial(text, 't');
  IntPolynomial ip = primitive_part(p);
  if (p.is_zero() || p.leading() != 1 || to_rational(ip) != p)
    throw ParseError("field polynomial must be monic with integer coefficients: '" + text + "'");
  return create(ip);
}

FieldPtr NumberField::rationals() {
  return create(IntPolynomial(std::vector<Integer>{0, 1}));
}

void NumberField::choose_root(const ComplexBall* near) {
  PrecisionPolicy policy{128, 8192};
  isolating_ = with_adaptive_precision(policy, [&](long bits) -> ComplexBall {
    std::vector<ComplexBall> roots = isolate_complex_roots(rpoly_, bits);
    if (near != nullptr) {
      std::vector<std::size_t> hits;
      for (std::size_t i = 0; i < roots.size(); ++i)
        if (roots[i].overlaps(*near)) hits.push_back(i);
      if (hits.size() != 1) throw PrecisionExhausted("cannot identify the embedding root");
      return roots[hits.front()];
    }
    // Largest imaginary part, ties broken by largest real part. Real roots
    // are the ones whose balls meet the real axis; their count must match
    // the Sturm count before imaginary parts are compared.
    std::vector<std::size_t> possibly_real;
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (roots[i].imag().contains_zero()) possibly_real.push_back(i);
    if (static_cast<int>(possibly_real.size()) != signature_.real_places)
      throw PrecisionExhausted("cannot separate real roots");
    std::size_t best = roots.size();
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (best == roots.size()) {
        best = i;
        continue;
      }
      const RealBall bi = roots[best].imag(), ci = roots[i].imag();
      const bool both_real = bi.contains_zero() && ci.contains_zero();
      if (!both_real && certainly_less(bi, ci)) {
        best = i;
        continue;
      }
      if (!both_real && certainly_less(ci, bi)) continue;
      // Imaginary parts tie (or both roots are real): larger real part wins.
      const RealBall br = roots[best].real(), cr = roots[i].real();
      if (certainly_less(br, cr)) {
        best = i;
      } else if (!certainly_less(cr, br)) {
        throw PrecisionExhausted("cannot order roots");
      }
    }
    return roots[best];
  });
}

ComplexBall NumberField::root(long prec) const {
  if (prec <= isolating_.precision()) return isolating_;
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = cache_.find(prec);
  if (it != cache_.end()) return it->second;
  ComplexBall r = certified_root_near(rpoly_, isolating_, prec);
  if (!isolating_.contains(r)) {
    if (!isolating_.overlaps(r)) throw PrecisionExhausted("root refinement left its isolating ball");
    r = isolating_;
  }
  cache_.emplace(prec, r);
  return r;
}

std::vector<ComplexBall> NumberField::conjugate_roots(long prec) const {
  std::vector<ComplexBall> roots = isolate_complex_roots(rpoly_, prec);
  std::vector<ComplexBall> out;
  for (const auto& r : roots)
    if (r.overlaps(isolating_)) out.insert(out.begin(), r);
    else out.push_back(r);
  return out;
}

std::string NumberField::to_string() const { return "Q[t]/(" + halfturn::to_string(poly_) + ")"; }

// ------------------------------------------------------------ FieldElement

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  for (auto& c : coords_) c.canonicalize();
  const auto n = static_cast<std::size_t>(field_->degree());
  if (coords_.size() > n) {
    coords_ = reduce_mod(RatPolynomial(coords_), field_->rational_polynomial(), field_->degree());
  }
  coords_.resize(n, Rational(0));
}

FieldElement FieldElement::from_rational(FieldPtr field, const Rational& q) {
  return FieldElement(std::move(field), {q});
}

FieldElement FieldElement::generator(FieldPtr field) {
  if (field->degree() == 1) {
    Rational r = -Rational(field->polynomial().coeff(0));
    return from_rational(std::move(field), r);
  }
  return FieldElement(std::move(field), {Rational(0), Rational(1)});
}

FieldElement FieldElement::parse(FieldPtr field, const std::string& text) {
  RatPolynomial p = parse_polynomial(text, 't');
  const int n = field->degree();
  return FieldElement(field, reduce_mod(p, field->rational_polynomial(), n));
}

bool FieldElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& x) { return x == 0; });
}

bool FieldElement::is_rational() const {
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& x) { return x == 0; });
}

Rational FieldElement::rational_value() const {
  if (!is_rational()) throw DomainError("element is not rational");
  return coords_.front();
}

FieldElement FieldElement::operator-() const {
  std::vector<Rational> c(coords_);
  for (auto& x : c) x = -x;
  return FieldElement(field_, std::move(c));
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  std::vector<Rational> c(a.coords_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
  return FieldElement(a.field_, std::move(c));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  RatPolynomial prod = as_poly(a.coords_) * as_poly(b.coords_);
  return FieldElement(a.field_, reduce_mod(prod, a.field_->rational_polynomial(), a.field_->degree()));
}

FieldElement operator*(const Rational& s, const FieldElement& a) {
  std::vector<Rational> c(a.coords_);
  for (auto& x : c) x *= s;
  return FieldElement(a.field_, std::move(c));
}

FieldElement operator+(const FieldElement& a, const Rational& q) {
  return a + FieldElement::from_rational(a.field(), q);
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.field_ == b.field_ && a.coords_ == b.coords_;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  // Extended Euclid: u a + v f = 1.
  const RatPolynomial& f = field_->rational_polynomial();
  RatPolynomial r0 = f, r1 = as_poly(coords_);
  RatPolynomial s0, s1 = RatPolynomial::constant(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    RatPolynomial s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant because f is irreducible.
  RatPolynomial u = Rational(1 / r0.leading()) * s0;
  return FieldElement(field_, reduce_mod(u, f, field_->degree()));
}

FieldElement FieldElement::pow(unsigned n) const {
  FieldElement result = from_rational(field_, Rational(1));
  FieldElement base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    base = base * base;
    n >>= 1U;
  }
  return result;
}

ComplexBall FieldElement::evaluate_at(const ComplexBall& root) const {
  return evaluate(as_poly(coords_), root);
}

ComplexBall FieldElement::to_ball(long prec) const {
  if (is_rational()) return ComplexBall::from_rational(coords_.front(), Rational(0), prec);
  return evaluate_at(field_->root(prec));
}

std::string FieldElement::to_string() const { return halfturn::to_string(as_poly(coords_), "t"); }

// ------------------------------------------------------- minimal polynomial

MinimalPolynomial minimal_polynomial(const FieldElement& x) {
  const auto n = static_cast<std::size_t>(x.field()->degree());
  Echelon ech(n);
  FieldElement power = FieldElement::from_rational(x.field(), Rational(1));
  for (std::size_t k = 0; k <= n; ++k) {
    if (!ech.in_span(power.coords())) {
      ech.insert(power.coords());
      power = power * x;
      continue;
    }
    std::vector<Rational> c = ech.express(power.coords());
    std::vector<Rational> coeffs(k + 1);
    for (std::size_t i = 0; i < k; ++i) coeffs[i] = -c[i];
    coeffs[k] = 1;
    MinimalPolynomial mp;
    mp.monic = RatPolynomial(coeffs);
    mp.primitive = primitive_part(mp.monic);
    mp.content = Rational(1) / Rational(mp.primitive.leading());
    return mp;
  }
  throw DomainError("no linear dependence found among powers (invalid field)");
}

bool is_algebraic_integer(const FieldElement& x) {
  const RatPolynomial m = minimal_polynomial(x).monic;
  return std::all_of(m.coeffs().begin(), m.coeffs().end(),
                     [](const Rational& c) { return c.get_den() == 1; });
}

// ------------------------------------------------------------------ subfield

bool Subfield::contains(const FieldElement& x) const {
  Echelon ech(static_cast<std::size_t>(ambient->degree()));
  for (const auto& b : basis) ech.insert(b.coords());
  return ech.in_span(x.coords());
}

FieldElement Subfield::to_subfield(const FieldElement& x) const {
  Echelon ech(static_cast<std::size_t>(ambient->degree()));
  FieldElement power = FieldElement::from_rational(ambient, Rational(1));
  for (int k = 0; k < degree; ++k) {
    ech.insert(power.coords());
    power = power * primitive;
  }
  return FieldElement(as_field, ech.express(x.coords()));
}

std::string Subfield::label() const {
  if (degree == 1) return "Q";
  if (degree == 2) {
    const RatPolynomial& m = defining.monic;
    Rational disc = m.coeff(1) * m.coeff(1) - 4 * m.coeff(0);
    if (disc < 0) {
      Rational d = -disc;
      Integer sf = squarefree_part(Integer(d.get_num() * d.get_den()));
      return "Q(√-" + sf.get_str() + ")";
    }
    Integer sf = squarefree_part(Integer(disc.get_num() * disc.get_den()));
    return "Q(√" + sf.get_str() + ")";
  }
  return "Q[t]/(" + to_string(defining.primitive) + ")";
}

Subfield subfield_generated(const FieldPtr& ambient, const std::vector<FieldElement>& gens) {
  const auto n = static_cast<std::size_t>(ambient->degree());
  Subfield sf;
  sf.ambient = ambient;
  Echelon ech(n);
  auto add = [&](const FieldElement& e) {
    if (ech.insert(e.coords())) {
      sf.basis.push_back(e);
      return true;
    }
    return false;
  };
  add(FieldElement::from_rational(ambient, Rational(1)));
  for (const auto& g : gens) {
    if (g.field() != ambient) throw DomainError("generator outside the ambient field");
    add(g);
  }
  // Saturate under multiplication.
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t m = sf.basis.size();
    for (std::size_t i = 1; i < m && sf.basis.size() < n; ++i)
      for (std::size_t j = i; j < m && sf.basis.size() < n; ++j)
        if (add(sf.basis[i] * sf.basis[j])) grew = true;
  }
  sf.degree = static_cast<int>(sf.basis.size());

  // Primitive element b1 + m b2 + m^2 b3 + ... for m = 1, 2, ...
  FieldElement gamma;
  MinimalPolynomial mp;
  for (long m = 1;; ++m) {
    gamma = FieldElement::from_rational(ambient, Rational(0));
    Rational w = 1;
    for (const auto& b : sf.basis) {
      gamma = gamma + w * b;
      w *= m;
    }
    mp = minimal_polynomial(gamma);
    if (mp.monic.degree() == sf.degree) break;
  }
  // Make the primitive element integral by scaling with the lcm of the
  // minimal polynomial's denominators.
  Integer scale = 1;
  for (const auto& c : mp.monic.coeffs()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
  if (scale != 1) {
    gamma = Rational(scale) * gamma;
    mp = minimal_polynomial(gamma);
  }
  sf.primitive = gamma;
  sf.defining = mp;
  IntPolynomial ip = primitive_part(mp.monic);
  sf.as_field = NumberField::create(ip, gamma.to_ball(ambient->root(128).precision()));
  return sf;
}

// ---------------------------------------------------------------- signature

Signature signature(const RatPolynomial& poly) {
  if (poly.degree() < 1) throw DomainError("signature of a constant polynomial");
  if (!is_squarefree(poly)) throw NonSquarefree("polynomial " + to_string(poly) + " has repeated roots");
  SturmSequence s(poly);
  Signature sig;
  sig.real_places = s.count_all();
  sig.complex_places = (poly.degree() - sig.real_places) / 2;
  return sig;
}

Signature signature(const IntPolynomial& poly) { return signature(to_rational(poly)); }

std::vector<RealEmbedding> real_embeddings(const FieldPtr& field) {
  std::vector<RealEmbedding> out;
  for (const auto& iv : isolate_real_roots(field->rational_polynomial())) out.push_back({field, iv});
  return out;
}

namespace {

struct Interval {
  Rational lo, hi;
};

Interval mul(const Interval& a, const Interval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval horner(const std::vector<Rational>& c, const Interval& x) {
  Interval acc{0, 0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = mul(acc, x);
    acc.lo += *it;
    acc.hi += *it;
  }
  return acc;
}

}  // namespace

int real_embedding_sign(const FieldElement& x, const RealEmbedding& emb, long max_bits) {
  if (x.field() != emb.field) throw DomainError("element and embedding belong to different fields");
  if (x.is_zero()) return 0;
  RealRootInterval iv = emb.root;
  const RatPolynomial& f = emb.field->rational_polynomial();
  for (long step = 0; step <= max_bits; ++step) {
    if (iv.is_exact()) return sgn(evaluate(RatPolynomial(x.coords()), iv.lo));
    Interval v = horner(x.coords(), {iv.lo, iv.hi});
    if (v.lo > 0) return 1;
    if (v.hi < 0) return -1;
    iv = refine(f, iv);
  }
  throw PrecisionExhausted("sign under real embedding not certified");
}

// --------------------------------------------------------- modulus compare

int compare_modulus(const FieldElement& x, const Rational& c, const PrecisionPolicy& policy) {
  if (c < 0) throw DomainError("compare_modulus needs c >= 0");
  if (x.is_rational()) {
    Rational a = abs(x.rational_value());
    return a < c ? -1 : (a > c ? 1 : 0);
  }
  // x is irrational here, hence nonzero.
  if (c == 0) return 1;
  // |x| = c iff conj(x) = c^2 / x. If y = c^2/x is not even a conjugate of x
  // the moduli differ and refinement must terminate.
  const FieldElement y = (c * c) * x.inverse();
  const MinimalPolynomial mp = minimal_polynomial(x);
  FieldElement py = FieldElement::from_rational(x.field(), Rational(0));
  for (auto it = mp.monic.coeffs().rbegin(); it != mp.monic.coeffs().rend(); ++it)
    py = py * y + *it;
  const bool y_is_conjugate = py.is_zero();

  long bits = policy.bits;
  for (;;) {
    const ComplexBall xb = x.to_ball(bits);
    const RealBall diff = xb.abs() - RealBall::from_rational(c, bits);
    if (diff.certainly_positive()) return 1;
    if (diff.certainly_negative()) return -1;
    if (y_is_conjugate) {
      try {
        std::vector<ComplexBall> roots = isolate_complex_roots(mp.monic, bits);
        const ComplexBall xc = xb.conj();
        const ComplexBall yb = y.to_ball(bits);
        int ix = -1, iy = -1, hx = 0, hy = 0;
        for (std::size_t i = 0; i < roots.size(); ++i) {
          if (roots[i].overlaps(xc)) ix = static_cast<int>(i), ++hx;
          if (roots[i].overlaps(yb)) iy = static_cast<int>(i), ++hy;
        }
        if (hx == 1 && hy == 1) {
          if (ix == iy) return 0;
        }
      } catch (const PrecisionExhausted&) {
      }
    }
    if (bits >= policy.cap) throw PrecisionExhausted("modulus comparison undecided");
    bits = std::min(bits * 2, policy.cap);
  }
}

}  // namespace halfturn
