#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "taumod/field.hpp"

namespace taumod {

/// Univariate polynomial over a GaloisField, coefficients low-to-high with no
/// trailing zeros (the zero polynomial has an empty list).
class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr field) : field_(std::move(field)) {}
  Poly(FieldPtr field, std::vector<Elem> coeffs);

  static Poly constant(FieldPtr field, Elem c) { return Poly(std::move(field), {c}); }
  static Poly x(FieldPtr field) { return Poly(std::move(field), {0, 1}); }
  static Poly monomial(FieldPtr field, Elem c, std::size_t degree);

  const FieldPtr& field() const { return field_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  Elem lead() const { return c_.empty() ? Elem{0} : c_.back(); }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Elem{0}; }

  Poly monic() const;
  Poly derivative() const;
  Elem eval(Elem x) const;
  std::string format(char var = 'X') const;

  friend Poly operator+(const Poly& f, const Poly& g);
  friend Poly operator-(const Poly& f, const Poly& g);
  friend Poly operator*(const Poly& f, const Poly& g);
  friend Poly operator/(const Poly& f, const Poly& g);
  friend Poly operator%(const Poly& f, const Poly& g);
  friend bool operator==(const Poly& f, const Poly& g) { return f.c_ == g.c_; }
  friend bool operator<(const Poly& f, const Poly& g);

 private:
  void trim();
  FieldPtr field_;
  std::vector<Elem> c_;
};

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g);
/// Monic gcd (zero if both inputs are zero).
Poly gcd(Poly f, Poly g);
Poly mulmod(const Poly& f, const Poly& g, const Poly& m);
Poly powmod(Poly base, std::uint64_t e, const Poly& m);
/// b^q mod m where q is the size of the coefficient field.
Poly frobenius_mod(const Poly& b, const Poly& m);

/// Rabin's test over F_q.
bool is_irreducible(const Poly& f);
/// Smallest monic irreducible of the given degree, ordering candidates by the
/// base-q integer formed from their lower coefficients.
Poly smallest_irreducible(const FieldPtr& field, unsigned degree);

struct Factor {
  Poly poly;
  unsigned multiplicity;
};

/// Complete factorization into monic irreducibles, sorted by (degree,
/// coefficients). Squarefree, distinct-degree and equal-degree stages; the
/// last is randomized by `seed`, but the returned list does not depend on it.
/// Throws Error on the zero polynomial.
std::vector<Factor> factor_poly(const Poly& f, std::uint64_t seed = 0);

}  // namespace taumod
