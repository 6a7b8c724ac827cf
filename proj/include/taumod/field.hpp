#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace taumod {

/// Element of a finite field, encoded as sum c_i p^i of its coefficients over
/// the prime field (low-to-high). The encoding is canonical: 0 is zero and 1
/// is one for every field.
using Elem = std::uint16_t;
using Vec = std::vector<Elem>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GaloisField;
using FieldPtr = std::shared_ptr<const GaloisField>;

/// The finite field F_p[u]/(g) with deg g = a. Fields are immutable after
/// construction and safe to share across threads.
class GaloisField {
 public:
  std::uint32_t p() const { return p_; }
  unsigned a() const { return a_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  bool is_prime_field() const { return a_ == 1; }

  Elem add(Elem x, Elem y) const {
    if (p_ == 2) return static_cast<Elem>(x ^ y);
    if (!add_table_.empty()) return add_table_[std::size_t{x} * q_ + y];
    return add_digits(x, y);
  }
  Elem neg(Elem x) const { return neg_[x]; }
  Elem sub(Elem x, Elem y) const { return add(x, neg_[y]); }
  Elem mul(Elem x, Elem y) const {
    if (!mul_table_.empty()) return mul_table_[std::size_t{x} * q_ + y];
    if (x == 0 || y == 0) return 0;
    return exp_[log_[x] + log_[y]];
  }
  Elem inv(Elem x) const;
  Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
  Elem pow(Elem x, std::uint64_t e) const;

  /// Image of an integer in the prime subfield.
  Elem from_int(std::int64_t v) const;
  Elem from_coeffs(const std::vector<std::uint32_t>& c) const;
  std::vector<std::uint32_t> coeffs(Elem x) const;

  /// x^(p^n).
  Elem frobenius(Elem x, unsigned n = 1) const;
  /// A generator of the multiplicative group (smallest code).
  Elem generator() const { return generator_; }

  /// dst[k] += c * src[k] for k < n.
  void axpy(Elem* dst, const Elem* src, Elem c, std::size_t n) const;
  void scale(Elem* row, Elem c, std::size_t n) const;

  std::string format(Elem x) const;
  bool same_as(const GaloisField& other) const {
    return p_ == other.p_ && modulus_ == other.modulus_;
  }

 private:
  friend FieldPtr make_field(std::uint32_t, unsigned,
                             std::optional<std::vector<std::uint32_t>>);
  GaloisField(std::uint32_t p, unsigned a, std::vector<std::uint32_t> modulus);

  Elem add_digits(Elem x, Elem y) const;
  Elem mul_slow(Elem x, Elem y) const;

  std::uint32_t p_;
  unsigned a_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  Elem generator_ = 1;
  std::vector<Elem> add_table_;
  std::vector<Elem> mul_table_;
  std::vector<Elem> neg_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
};

bool is_prime(std::uint64_t n);

/// Builds F_{p^a}. Without a modulus the lexicographically smallest monic
/// irreducible of degree a is used, so the same (p, a) always yields the
/// same element encoding. Throws Error for composite p, reducible or
/// malformed moduli, and fields beyond 2^16 elements.
FieldPtr make_field(std::uint32_t p, unsigned a,
                    std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

inline bool same_field(const FieldPtr& f, const FieldPtr& g) {
  return f == g || (f && g && f->same_as(*g));
}

/// Value-semantic handle on a field element.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem code) : field_(std::move(field)), code_(code) {}

  const FieldPtr& field() const { return field_; }
  Elem code() const { return code_; }
  std::vector<std::uint32_t> coeffs() const { return field_->coeffs(code_); }

  FieldElement operator+(const FieldElement& o) const { return {field_, field_->add(code_, o.code_)}; }
  FieldElement operator-(const FieldElement& o) const { return {field_, field_->sub(code_, o.code_)}; }
  FieldElement operator-() const { return {field_, field_->neg(code_)}; }
  FieldElement operator*(const FieldElement& o) const { return {field_, field_->mul(code_, o.code_)}; }
  FieldElement operator/(const FieldElement& o) const { return {field_, field_->div(code_, o.code_)}; }
  FieldElement inverse() const { return {field_, field_->inv(code_)}; }
  FieldElement pow(std::uint64_t e) const { return {field_, field_->pow(code_, e)}; }
  bool operator==(const FieldElement& o) const { return code_ == o.code_ && same_field(field_, o.field_); }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }
  std::string str() const { return field_->format(code_); }

 private:
  FieldPtr field_;
  Elem code_;
};

/// x^(r^n) with r = p^base_degree, i.e. the n-th iterate of the Frobenius
/// of the subfield F_r. The default base is the prime field.
FieldElement frobenius_power(const FieldElement& x, unsigned n, unsigned base_degree = 1);

}  // namespace taumod
