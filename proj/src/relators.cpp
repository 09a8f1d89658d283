#include "halfturn/relators.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "halfturn/errors.hpp"

namespace halfturn {

namespace {

const char kNames[] = {'a', 'b', 'c', 'x', 'y', 'z'};

}  // namespace

GroupWord GroupWord::parse(const std::string& text, bool allow_template) {
  std::istringstream in(text);
  std::string tok;
  std::vector<Letter> out;
  while (in >> tok) {
    Letter l;
    const char ch = tok[0];
    const char* pos = std::find(std::begin(kNames), std::end(kNames), ch);
    if (pos == std::end(kNames) || (!allow_template && pos - kNames >= 3))
      throw ParseError("unknown letter in word: '" + tok + "'");
    l.symbol = static_cast<int>(pos - kNames);
    const std::string rest = tok.substr(1);
    if (rest == "^-1") {
      l.inverse = true;
    } else if (!rest.empty()) {
      throw ParseError("bad token in word: '" + tok + "'");
    }
    out.push_back(l);
  }
  if (out.empty()) throw ParseError("empty word");
  return GroupWord(std::move(out));
}

bool GroupWord::is_template() const {
  return std::any_of(letters_.begin(), letters_.end(), [](const Letter& l) { return l.symbol >= 3; });
}

GroupWord GroupWord::substitute(const std::array<int, 3>& images) const {
  std::vector<Letter> out = letters_;
  for (auto& l : out)
    if (l.symbol >= 3) l.symbol = images[static_cast<std::size_t>(l.symbol - 3)];
  return GroupWord(std::move(out));
}

GroupWord GroupWord::rotate(std::size_t k) const {
  if (letters_.empty()) return *this;
  std::vector<Letter> out = letters_;
  std::rotate(out.begin(), out.begin() + static_cast<long>(k % out.size()), out.end());
  return GroupWord(std::move(out));
}

GroupWord GroupWord::power(int n) const {
  if (n < 1) throw DomainError("word power must be positive");
  std::vector<Letter> out;
  for (int k = 0; k < n; ++k) out.insert(out.end(), letters_.begin(), letters_.end());
  return GroupWord(std::move(out));
}

GroupWord GroupWord::psl_reduced() const {
  std::vector<Letter> out;
  for (Letter l : letters_) {
    l.inverse = false;
    if (!out.empty() && out.back().symbol == l.symbol) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return GroupWord(std::move(out));
}

std::string GroupWord::to_string() const {
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += ' ';
    out += kNames[l.symbol];
    if (l.inverse) out += "^-1";
  }
  return out;
}

GroupWord operator+(const GroupWord& u, const GroupWord& v) {
  std::vector<Letter> out = u.letters_;
  out.insert(out.end(), v.letters_.begin(), v.letters_.end());
  return GroupWord(std::move(out));
}

// ------------------------------------------------------------ evaluation

BallMatrix evaluate_word(const GroupWord& word, const HalfTurnTriple& t) {
  BallMatrix m = BallMatrix::identity(t.precision());
  for (const auto& l : word.letters()) {
    const BallMatrix* g = nullptr;
    switch (l.symbol) {
      case 0: g = &t.A; break;
      case 1: g = &t.B; break;
      case 2: g = &t.C; break;
      default: throw DomainError("template letters must be substituted before evaluation");
    }
    m = l.inverse ? m * (-*g) : m * *g;
  }
  return m;
}

std::string to_string(RelatorStatus s) {
  switch (s) {
    case RelatorStatus::holds: return "holds";
    case RelatorStatus::fails: return "fails";
    case RelatorStatus::undecided: return "undecided";
  }
  return "undecided";
}

RelatorCheck is_relator(const GroupWord& word, const HalfTurnTriple& t, double threshold) {
  const BallMatrix m = evaluate_word(word, t);
  RelatorCheck out;
  out.precision = t.precision();
  for (const ComplexBall* e : {&m.m11, &m.m12, &m.m21, &m.m22})
    out.max_radius = std::max(out.max_radius, e->rad().to_double() * (1 + 1e-12));
  const bool plus = m.contains_scalar(1), minus = m.contains_scalar(-1);
  if (!plus && !minus) {
    out.status = RelatorStatus::fails;
  } else if (out.max_radius < threshold && plus != minus) {
    out.status = RelatorStatus::holds;
    out.sign = plus ? 1 : -1;
  } else {
    out.status = RelatorStatus::undecided;
    out.sign = plus ? 1 : -1;
  }
  return out;
}

RelatorCheck is_relator(const GroupWord& word, const Params& p, const PrecisionPolicy& policy,
                        double threshold) {
  return with_adaptive_precision(policy, [&](long bits) {
    const HalfTurnTriple t = p.is_regular() ? build_regular(p, bits) : build_representation(p, bits);
    RelatorCheck r = is_relator(word, t, threshold);
    if (r.status == RelatorStatus::undecided)
      throw PrecisionExhausted("relator check undecided at " + std::to_string(bits) + " bits");
    return r;
  });
}

HalfTurnTriple flip_c11(const HalfTurnTriple& t) {
  HalfTurnTriple out = t;
  out.c11 = -t.c11;
  out.C = {out.c11, t.c12, t.c21, t.c11};
  return out;
}

std::vector<GroupWord> search_short_relators(const HalfTurnTriple& t, int max_length,
                                             double threshold) {
  if (max_length < 1 || max_length > 12) throw DomainError("max_length must be in 1..12");
  std::vector<GroupWord> found;
  const std::array<const BallMatrix*, 3> gens{&t.A, &t.B, &t.C};
  auto holds = [&](const BallMatrix& m) {
    double r = 0;
    for (const ComplexBall* e : {&m.m11, &m.m12, &m.m21, &m.m22}) r = std::max(r, e->rad().to_double());
    const bool plus = m.contains_scalar(1), minus = m.contains_scalar(-1);
    return (plus != minus) && r < threshold;
  };
  if (max_length >= 2) {
    for (int g = 0; g < 3; ++g) {
      const BallMatrix& m = *gens[static_cast<std::size_t>(g)];
      if (holds(m * m)) found.push_back(GroupWord({{g, false}, {g, false}}));
    }
  }
  struct Node {
    std::vector<Letter> letters;
    BallMatrix m;
  };
  std::vector<Node> level;
  for (int g = 0; g < 3; ++g) level.push_back({{{g, false}}, *gens[static_cast<std::size_t>(g)]});
  for (int len = 1; len <= max_length; ++len) {
    for (const auto& n : level)
      if (holds(n.m)) found.push_back(GroupWord(n.letters));
    if (len == max_length) break;
    std::vector<Node> next;
    next.reserve(level.size() * 2);
    for (const auto& n : level) {
      for (int g = 0; g < 3; ++g) {
        if (n.letters.back().symbol == g) continue;
        Node c{n.letters, n.m * *gens[static_cast<std::size_t>(g)]};
        c.letters.push_back({g, false});
        next.push_back(std::move(c));
      }
    }
    level = std::move(next);
  }
  return found;
}

// ------------------------------------------------------------ presentations

const std::vector<Presentation>& figure_presentations() {
  static const std::vector<Presentation> p = {
      {"figure_4_literal", GroupWord::parse("z^-1 y^-1 x^-1 y z a", true), "(-3+t)/2", "Q(√-3)"},
      {"figure_4_corrected", GroupWord::parse("z^-1 y^-1 x^-1 y z x", true), "(-3+t)/2", "Q(√-3)"},
      {"figure_5", GroupWord::parse("x^-1 y^-1 z y", true), "(-1+t)/2", "Q(√-3)"},
      {"figure_6", GroupWord::parse("y^-1 x^-1 y z^-1 y^-1 z x^-1 z^-1 x", true), "(1+t)/2",
       "Q(√-3)"},
  };
  return p;
}

PresentationReport verify_presentation(const Presentation& pres, const std::vector<int>& powers,
                                       const PrecisionPolicy& policy, double threshold) {
  static const FieldPtr field = NumberField::parse("t^2+3");
  PresentationReport rep;
  rep.presentation = pres;
  const Params params = Params::regular(FieldElement::parse(field, pres.rho));
  const std::array<std::pair<std::string, std::array<int, 3>>, 3> subs = {
      std::pair{std::string("w(a,b,c)"), std::array<int, 3>{0, 1, 2}},
      std::pair{std::string("w(b,c,a)"), std::array<int, 3>{1, 2, 0}},
      std::pair{std::string("w(c,a,b)"), std::array<int, 3>{2, 0, 1}}};
  for (int power : powers) {
    bool all_hold_any_branch = false;
    for (int branch : {1, -1}) {
      bool all_hold = true;
      for (const auto& [label, images] : subs) {
        VariantOutcome v;
        v.substitution = label;
        v.word = pres.word_template.substitute(images).power(power);
        v.power = power;
        v.c11_branch = branch;
        v.check = with_adaptive_precision(policy, [&](long bits) {
          HalfTurnTriple t = build_regular(params, bits);
          if (branch < 0) t = flip_c11(t);
          RelatorCheck r = is_relator(v.word, t, threshold);
          if (r.status == RelatorStatus::undecided)
            throw PrecisionExhausted("relator check undecided");
          return r;
        });
        all_hold = all_hold && v.check.status == RelatorStatus::holds;
        rep.outcomes.push_back(std::move(v));
      }
      all_hold_any_branch = all_hold_any_branch || all_hold;
    }
    if (all_hold_any_branch && rep.holding_power == 0) rep.holding_power = power;
  }
  return rep;
}

}  // namespace halfturn
