#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "taumod/field.hpp"
#include "taumod/matrix.hpp"
#include "taumod/poly.hpp"

namespace taumod {

/// Value computed once on first use and then shared by every copy.
template <class T>
class Lazy {
 public:
  template <class Fn>
  const T& get(Fn&& fn) const {
    std::call_once(state_->flag, [&] { state_->value = std::make_unique<T>(fn()); });
    return *state_->value;
  }

 private:
  struct State {
    std::once_flag flag;
    std::unique_ptr<T> value;
  };
  std::shared_ptr<State> state_ = std::make_shared<State>();
};

class FiniteAlgebra;
using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

/// One local factor e*A of a finite commutative algebra.
struct LocalFactor {
  Vec idempotent;
  Subspace component;         ///< e*A
  Subspace maximal;           ///< maximal ideal of e*A (its nilradical)
  unsigned nil_exponent = 1;  ///< least n with maximal^n = 0
  unsigned residue_degree = 1;
  /// Least N, a multiple of residue_degree, with q^N >= nil_exponent.
  unsigned splitting_power = 0;
  AlgebraPtr residue;  ///< residue field as an F_q-algebra
  Matrix section;      ///< A.dim x f, ring section s(c) = lift(c)^(q^N)
  Matrix residue_map;  ///< f x A.dim, A -> e*A -> k
};

struct LocalData {
  std::vector<LocalFactor> factors;
};

class AxiomError : public Error {
 public:
  using Error::Error;
};

/// Commutative unital F_q-algebra of finite dimension given by structure
/// constants on a fixed basis e_0..e_{d-1}.
class FiniteAlgebra {
 public:
  /// Validates commutativity, associativity and the unit on all basis
  /// triples; throws AxiomError naming the first failing triple.
  /// `products[i*dim + j]` is e_i*e_j.
  static AlgebraPtr make(FieldPtr field, std::size_t dim, const std::vector<Vec>& products, Vec one,
                         std::string label);
  static AlgebraPtr make_unchecked(FieldPtr field, std::size_t dim, const std::vector<Vec>& products, Vec one,
                                   std::string label, std::optional<Matrix> frobenius = std::nullopt);
  /// The zero ring (dim 0). Only used to exercise hypothesis checks.
  static AlgebraPtr zero(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Vec& one() const { return one_; }
  const std::string& label() const { return label_; }
  const Elem* basis_product(std::size_t i, std::size_t j) const { return &mul_[(i * dim_ + j) * dim_]; }

  Vec zero_vec() const { return Vec(dim_, 0); }
  Vec basis_vec(std::size_t i) const { return unit_vec(dim_, i); }
  Vec scalar(Elem c) const { return vec_scale(field_, one_, c); }
  Vec add(const Vec& x, const Vec& y) const { return vec_add(field_, x, y); }
  Vec sub(const Vec& x, const Vec& y) const { return vec_sub(field_, x, y); }
  Vec mul(const Vec& x, const Vec& y) const;
  Vec pow(Vec x, std::uint64_t e) const;
  /// x^q, q = |F_q|.
  Vec frobenius(const Vec& x) const;
  const Matrix& frobenius_matrix() const;
  /// Columns are e_j * x.
  Matrix mult_matrix(const Vec& x) const;
  std::optional<Vec> inverse(const Vec& x) const;
  bool is_unit(const Vec& x) const { return inverse(x).has_value(); }
  /// Minimal polynomial of x inside the algebra whose unit is `unit`
  /// (an idempotent), i.e. of x in unit*A.
  Poly minimal_polynomial(const Vec& x, const Vec& unit) const;
  Poly minimal_polynomial(const Vec& x) const { return minimal_polynomial(x, one_); }

  /// Basis elements that generate the algebra (greedy in index order).
  const std::vector<Vec>& generators() const { return generators_; }
  const LocalData& local_data() const;
  bool is_connected() const { return local_data().factors.size() == 1; }
  bool is_reduced() const;
  bool is_field() const { return is_connected() && is_reduced(); }

  bool same_as(const FiniteAlgebra& o) const;
  /// Structure constants as nested [i][j][k].
  std::vector<std::vector<Vec>> structure_constants() const;

 private:
  FiniteAlgebra() = default;
  void compute_generators();

  FieldPtr field_;
  std::size_t dim_ = 0;
  Vec mul_;  // (i*d + j)*d + k
  Vec one_;
  std::string label_;
  std::vector<Vec> generators_;
  std::optional<Matrix> given_frobenius_;
  Lazy<Matrix> frobenius_;
  Lazy<LocalData> local_;
};

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

/// Computes orthogonal primitive idempotents and per-factor local data.
const LocalData& primitive_idempotents(const FiniteAlgebra& a);
bool is_connected(const FiniteAlgebra& a);

// Builders ------------------------------------------------------------------

AlgebraPtr prime_algebra(FieldPtr field);
/// F_q[x]/(f) on the basis 1, x, ..., x^(deg f - 1).
AlgebraPtr poly_quotient_algebra(const Poly& f, std::string label = {});
/// F_{q^d} as F_q[y]/(h) with h the smallest irreducible of degree d.
AlgebraPtr field_extension_algebra(FieldPtr field, unsigned degree);
/// F_q[x_1..x_n] modulo all monomials of total degree >= bound.
AlgebraPtr truncated_polynomial_algebra(FieldPtr field, unsigned nvars, unsigned bound);
AlgebraPtr product_algebra(const AlgebraPtr& a, const AlgebraPtr& b);
/// a (x) b on the basis pairs (i, j) -> i*dim(b) + j.
AlgebraPtr tensor_product_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

class Ideal;
AlgebraPtr quotient_algebra(const Ideal& ideal, std::string label = {});

/// Validated F_q-algebra homomorphism source -> target.
class AlgebraMap {
 public:
  /// Throws Error unless mat is unital and multiplicative on basis pairs.
  static AlgebraMap make(AlgebraPtr source, AlgebraPtr target, Matrix mat);
  static AlgebraMap identity(AlgebraPtr a);

  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }
  const Matrix& matrix() const { return mat_; }
  Vec apply(const Vec& v) const { return mat_.apply(v); }
  /// g after this.
  AlgebraMap then(const AlgebraMap& g) const;

 private:
  AlgebraMap(AlgebraPtr s, AlgebraPtr t, Matrix m) : source_(std::move(s)), target_(std::move(t)), mat_(std::move(m)) {}
  AlgebraPtr source_, target_;
  Matrix mat_;
};

/// Ideal of a FiniteAlgebra as a canonical subspace.
class Ideal {
 public:
  Ideal(AlgebraPtr parent, Subspace space) : parent_(std::move(parent)), space_(std::move(space)) {}

  static Ideal generated_by(const AlgebraPtr& a, const std::vector<Vec>& gens);
  /// nullopt unless the subspace is closed under multiplication by A.
  static std::optional<Ideal> from_subspace(const AlgebraPtr& a, const Subspace& s);
  static Ideal zero(const AlgebraPtr& a) { return Ideal(a, Subspace(a->field(), a->dim())); }
  static Ideal whole(const AlgebraPtr& a) { return Ideal(a, Subspace::whole(a->field(), a->dim())); }

  const AlgebraPtr& parent() const { return parent_; }
  const Subspace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  bool is_zero() const { return space_.dim() == 0; }
  bool is_whole() const { return space_.dim() == parent_->dim(); }
  bool contains(const Vec& v) const { return space_.contains(v); }
  Ideal operator+(const Ideal& o) const { return Ideal(parent_, space_ + o.space_); }
  Ideal product(const Ideal& o) const;
  bool operator==(const Ideal& o) const { return space_ == o.space_; }
  bool operator!=(const Ideal& o) const { return !(*this == o); }

 private:
  AlgebraPtr parent_;
  Subspace space_;
};

/// Every subspace of F_q^n (exponential; meant for n <= 4 or so).
std::vector<Subspace> enumerate_subspaces(const FieldPtr& field, std::size_t n);
std::vector<Ideal> enumerate_ideals(const AlgebraPtr& a);

class TensorAlgebra;
using TensorPtr = std::shared_ptr<const TensorAlgebra>;

/// S = Lambda (x) R with the partial Frobenius F = id (x) (q-power).
class TensorAlgebra {
 public:
  /// Throws Error if the base fields differ.
  static TensorPtr make(AlgebraPtr lambda, AlgebraPtr r);

  const AlgebraPtr& lambda() const { return lambda_; }
  const AlgebraPtr& r() const { return r_; }
  const AlgebraPtr& s() const { return s_; }
  const FieldPtr& field() const { return s_->field(); }
  std::size_t dim() const { return s_->dim(); }
  std::size_t index(std::size_t i, std::size_t j) const { return i * r_->dim() + j; }
  /// dim S x dim Lambda, lambda -> lambda (x) 1.
  const Matrix& copro_lambda() const { return copro_lambda_; }
  /// dim S x dim R, r -> 1 (x) r.
  const Matrix& copro_r() const { return copro_r_; }
  /// Matrix of F on S.
  const Matrix& frobenius() const { return frob_; }
  Vec F(const Vec& s) const { return frob_.apply(s); }
  Vec from_lambda(const Vec& l) const { return copro_lambda_.apply(l); }
  Vec from_r(const Vec& r) const { return copro_r_.apply(r); }

  /// id (x) g for a linear map g out of R.
  Matrix induced_on_r(const Matrix& g) const;
  /// g (x) id for a linear map g out of Lambda.
  Matrix induced_on_lambda(const Matrix& g) const;

  bool same_as(const TensorAlgebra& o) const;

 private:
  TensorAlgebra() = default;
  AlgebraPtr lambda_, r_, s_;
  Matrix copro_lambda_, copro_r_, frob_;
};

bool same_tensor(const TensorPtr& a, const TensorPtr& b);

/// {l in Lambda : l (x) 1 in I}.
Ideal ideal_contract(const TensorAlgebra& s, const Ideal& i);
/// J*S for an ideal J of Lambda.
Ideal ideal_extend(const TensorAlgebra& s, const Ideal& j);
/// Ideal of S generated by F(I).
Ideal frobenius_generated(const TensorAlgebra& s, const Ideal& i);
/// I is generated by F(I).
bool is_F_invariant(const TensorAlgebra& s, const Ideal& i);

}  // namespace taumod
