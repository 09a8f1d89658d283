#pragma once

// Exact arithmetic in a number field Q(theta) in the power basis of theta,
// together with the embedding-dependent queries the arithmeticity test
// needs: minimal polynomials, generated subfields, signatures, and signs
// under real embeddings.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "halfturn/ball.hpp"
#include "halfturn/polynomial.hpp"
#include "halfturn/precision.hpp"

namespace halfturn {

struct Signature {
  int real_places = 0;
  int complex_places = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  // `poly` must be monic, integral and irreducible. The embedding sends
  // theta to the root with the largest imaginary part (ties: largest real
  // part) unless `near` selects the root whose isolating ball contains it.
  static FieldPtr create(const IntPolynomial& poly);
  static FieldPtr create(const IntPolynomial& poly, const ComplexBall& near);
  // Parses a monic polynomial in `t`, e.g. "t^2+3".
  static FieldPtr parse(const std::string& text);
  // The field of rationals, presented as Q(theta) with theta = 0.
  static FieldPtr rationals();

  const IntPolynomial& polynomial() const { return poly_; }
  const RatPolynomial& rational_polynomial() const { return rpoly_; }
  int degree() const { return poly_.degree(); }
  Signature signature() const { return signature_; }

  // Certified ball around the chosen root of the defining polynomial.
  ComplexBall root(long prec) const;
  // Balls around all roots, the chosen one first.
  std::vector<ComplexBall> conjugate_roots(long prec) const;

  std::string to_string() const;

 private:
  NumberField(IntPolynomial poly, RatPolynomial rpoly);
  void choose_root(const ComplexBall* near);

  IntPolynomial poly_;
  RatPolynomial rpoly_;
  Signature signature_;
  ComplexBall isolating_;  // isolating ball of the chosen root
  mutable std::mutex cache_mutex_;
  mutable std::map<long, ComplexBall> cache_;
};

// Element sum_i coords[i] theta^i.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, std::vector<Rational> coords);
  static FieldElement from_rational(FieldPtr field, const Rational& q);
  static FieldElement generator(FieldPtr field);
  // Parses a polynomial in `t` with rational coefficients, e.g. "(-1+t)/2".
  static FieldElement parse(FieldPtr field, const std::string& text);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_zero() const;
  bool is_rational() const;
  Rational rational_value() const;  // requires is_rational()

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const Rational& s, const FieldElement& a);
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  FieldElement inverse() const;
  FieldElement pow(unsigned n) const;

  // Image under the field's chosen complex embedding.
  ComplexBall to_ball(long prec) const;
  // Image under an arbitrary embedding theta -> root.
  ComplexBall evaluate_at(const ComplexBall& root) const;

  std::string to_string() const;

 private:
  FieldPtr field_;
  std::vector<Rational> coords_;
};

FieldElement operator+(const FieldElement& a, const Rational& q);

struct MinimalPolynomial {
  RatPolynomial monic;       // monic minimal polynomial over Q
  IntPolynomial primitive;   // integral primitive part
  Rational content;          // monic == content * primitive
};

MinimalPolynomial minimal_polynomial(const FieldElement& x);
bool is_algebraic_integer(const FieldElement& x);

// A subfield of an ambient number field.
struct Subfield {
  FieldPtr ambient;
  std::vector<FieldElement> basis;   // Q-basis, 1 first
  int degree = 0;
  FieldElement primitive;            // generates the subfield, integral
  MinimalPolynomial defining;        // minimal polynomial of `primitive`
  FieldPtr as_field;                 // Q(primitive) as a standalone field,
                                     // embedded compatibly with the ambient

  bool contains(const FieldElement& x) const;
  // Coordinates of x in the power basis of `primitive` (x must lie in the
  // subfield); these are the coordinates of x as an element of as_field.
  FieldElement to_subfield(const FieldElement& x) const;
  // "Q", "Q(sqrt(-d))" for imaginary quadratic fields, else the polynomial.
  std::string label() const;
};

Subfield subfield_generated(const FieldPtr& ambient, const std::vector<FieldElement>& gens);

// Number of real and complex places of the field defined by `poly`.
Signature signature(const IntPolynomial& poly);
Signature signature(const RatPolynomial& poly);

// A real embedding of a field: an isolated real root of its defining
// polynomial.
struct RealEmbedding {
  FieldPtr field;
  RealRootInterval root;
};

std::vector<RealEmbedding> real_embeddings(const FieldPtr& field);

// Exact sign of the image of x under a real embedding. `max_bits` caps the
// number of bisection steps; PrecisionExhausted if the sign is still open.
int real_embedding_sign(const FieldElement& x, const RealEmbedding& emb,
                        long max_bits = 8192);

// Exact sign of |x| - c for a rational c >= 0 (c is compared against the
// modulus under the chosen complex embedding). Equality is decided exactly.
int compare_modulus(const FieldElement& x, const Rational& c,
                    const PrecisionPolicy& policy = {});

// Squarefree part of a positive integer.
Integer squarefree_part(const Integer& n);

// Parses a polynomial expression in `var` with rational coefficients.
RatPolynomial parse_polynomial(const std::string& text, char var = 't');

bool is_irreducible(const IntPolynomial& poly);

}  // namespace halfturn
