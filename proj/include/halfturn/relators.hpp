#pragma once

// Words in the half-turns a, b, c, their evaluation on a triple, and
// certified numerical checks that a word is trivial in PSL(2,C).

#include <string>
#include <vector>

#include "halfturn/precision.hpp"
#include "halfturn/rep.hpp"

namespace halfturn {

struct Letter {
  // 0, 1, 2 for a, b, c; in templates 3, 4, 5 stand for x, y, z
  int symbol = 0;
  bool inverse = false;
  friend bool operator==(const Letter&, const Letter&) = default;
};

class GroupWord {
 public:
  GroupWord() = default;
  explicit GroupWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  // Whitespace-separated letters with optional ^-1: "c^-1 b^-1 a^-1 b c a".
  // With allow_template, x y z are accepted too.
  static GroupWord parse(const std::string& text, bool allow_template = false);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  bool is_template() const;

  // x -> images[0], y -> images[1], z -> images[2] (each one of 0, 1, 2).
  GroupWord substitute(const std::array<int, 3>& images) const;
  GroupWord rotate(std::size_t k) const;
  GroupWord power(int n) const;
  // Drops inverse marks and cancels adjacent equal letters (x x = 1 for
  // half-turns in PSL).
  GroupWord psl_reduced() const;

  std::string to_string() const;
  friend bool operator==(const GroupWord&, const GroupWord&) = default;
  friend GroupWord operator+(const GroupWord& u, const GroupWord& v);

 private:
  std::vector<Letter> letters_;
};

// Product of the generator matrices; the inverse of a line matrix is -M.
BallMatrix evaluate_word(const GroupWord& word, const HalfTurnTriple& t);

enum class RelatorStatus { holds, fails, undecided };
std::string to_string(RelatorStatus s);

struct RelatorCheck {
  RelatorStatus status = RelatorStatus::undecided;
  int sign = 0;          // +1 or -1 when the ball contains +I or -I
  double max_radius = 0; // largest entry radius (upper bound)
  long precision = 0;
};

// holds: +I or -I lies in the ball and every radius is below `threshold`;
// fails: the ball excludes both +I and -I; otherwise undecided.
RelatorCheck is_relator(const GroupWord& word, const HalfTurnTriple& t, double threshold = 1e-30);
// Builds the triple from the parameters, doubling precision while undecided.
// PrecisionExhausted if still undecided at the cap.
RelatorCheck is_relator(const GroupWord& word, const Params& p,
                        const PrecisionPolicy& policy = {256, 1024}, double threshold = 1e-30);

// The same group with c11 replaced by -c11 (the other square root).
HalfTurnTriple flip_c11(const HalfTurnTriple& t);

// Breadth-first over PSL-reduced words in a, b, c of length <= max_length
// (at most 12), plus a a, b b, c c.
std::vector<GroupWord> search_short_relators(const HalfTurnTriple& t, int max_length,
                                             double threshold = 1e-30);

struct Presentation {
  std::string name;
  GroupWord word_template;   // in x, y, z (a literal a, b or c is kept)
  std::string rho;           // element of Q(sqrt(-3)) in t with t^2 + 3
  std::string expected_field;
};

// figure_4_literal, figure_4_corrected, figure_5, figure_6.
const std::vector<Presentation>& figure_presentations();

struct VariantOutcome {
  std::string substitution;  // "w(a,b,c)", ...
  GroupWord word;
  int power = 1;
  int c11_branch = 1;
  RelatorCheck check;
};

struct PresentationReport {
  Presentation presentation;
  std::vector<VariantOutcome> outcomes;
  // Smallest power (over branches) at which all three substitutions hold;
  // 0 if none of the tried powers works.
  int holding_power = 0;
};

PresentationReport verify_presentation(const Presentation& pres,
                                       const std::vector<int>& powers = {1, 2, 3, 4, 6},
                                       const PrecisionPolicy& policy = {256, 1024},
                                       double threshold = 1e-30);

}  // namespace halfturn
