#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "taumod/algebra.hpp"

namespace taumod {

class ModuleError : public Error {
 public:
  using Error::Error;
};

class TauModule;
using ModulePtr = std::shared_ptr<const TauModule>;

/// Finite S-module M (S = Lambda (x) R) with an F_q-linear tau satisfying
/// tau(s m) = F(s) tau(m). Stored as one action matrix per S basis element
/// plus the matrix of tau, all on a fixed F_q-basis of M.
class TauModule : public std::enable_shared_from_this<TauModule> {
 public:
  /// Validates the module axioms and semilinearity on every basis element
  /// of S; throws ModuleError naming the failing element.
  static ModulePtr make(TensorPtr s, std::size_t dim, std::vector<Matrix> act, Matrix tau);
  static ModulePtr make_unchecked(TensorPtr s, std::size_t dim, std::vector<Matrix> act, Matrix tau);

  const TensorPtr& s() const { return s_; }
  const FieldPtr& field() const { return s_->field(); }
  std::size_t dim() const { return dim_; }
  const Matrix& act(std::size_t k) const { return act_[k]; }
  const std::vector<Matrix>& acts() const { return act_; }
  const Matrix& tau() const { return tau_; }
  /// Action of an arbitrary element of S.
  Matrix action(const Vec& s) const;
  Matrix lambda_action(const Vec& l) const { return action(s_->from_lambda(l)); }
  Matrix r_action(const Vec& r) const { return action(s_->from_r(r)); }

  /// phi: F*M -> M is bijective.
  bool is_unit() const;
  /// tau^(dim M) = 0.
  bool is_nilpotent() const;

  bool same_as(const TauModule& o) const;

 private:
  TauModule() = default;
  TensorPtr s_;
  std::size_t dim_ = 0;
  std::vector<Matrix> act_;
  Matrix tau_;
  Lazy<bool> unit_, nilpotent_;
};

bool same_module(const ModulePtr& a, const ModulePtr& b);

/// S-linear tau-equivariant map, mat is target.dim x source.dim.
class ModuleMorphism {
 public:
  /// Throws ModuleError unless mat commutes with the S-action and tau.
  static ModuleMorphism make(ModulePtr source, ModulePtr target, Matrix mat);
  static ModuleMorphism make_unchecked(ModulePtr source, ModulePtr target, Matrix mat);
  static ModuleMorphism identity(const ModulePtr& m);
  static ModuleMorphism zero(const ModulePtr& source, const ModulePtr& target);

  const ModulePtr& source() const { return source_; }
  const ModulePtr& target() const { return target_; }
  const Matrix& matrix() const { return mat_; }
  bool is_zero() const { return mat_.is_zero(); }
  bool is_isomorphism() const;
  /// g after this; the middle objects must agree structurally.
  ModuleMorphism then(const ModuleMorphism& g) const;
  ModuleMorphism operator+(const ModuleMorphism& o) const;

 private:
  ModuleMorphism(ModulePtr s, ModulePtr t, Matrix m) : source_(std::move(s)), target_(std::move(t)), mat_(std::move(m)) {}
  ModulePtr source_, target_;
  Matrix mat_;
};

/// Free module S^r with tau(v) = U F(v); u[i][j] is an element of S.
/// Coordinates are ordered (k, a) -> k*dim(S) + a.
ModulePtr free_module(const TensorPtr& s, const std::vector<std::vector<Vec>>& u);
/// S/I with tau induced by F; requires F(I) inside I.
ModulePtr cyclic_module(const TensorPtr& s, const Ideal& i);
ModulePtr zero_module(const TensorPtr& s);
ModulePtr direct_sum(const ModulePtr& m, const ModulePtr& n);

// Scalar extension ---------------------------------------------------------

/// M (x)_S S' for a ring map h: S -> S' with h F = F' h. The ambient space
/// is S' (x)_{F_q} M indexed a*dim(M) + j.
struct Extension {
  ModulePtr module;
  Quotient quotient;
};

Extension extend_scalars(const ModulePtr& m, const TensorPtr& target, const Matrix& h);
/// (h (x) alpha) on extensions built with the same h.
ModuleMorphism extend_morphism(const ModuleMorphism& alpha, const Extension& src, const Extension& tgt,
                               const TensorPtr& target);

struct TwistData {
  ModulePtr module;                   ///< F*M
  Extension extension;                ///< F*M as a scalar extension along F
  Matrix phi_lin;                     ///< dim M x dim F*M
  std::optional<Matrix> unit_section; ///< phi_lin^-1 when it exists
};

TwistData frobenius_twist(const ModulePtr& m);
/// F*alpha : F*M -> F*N.
ModuleMorphism twist_morphism(const ModuleMorphism& alpha, const TwistData& src, const TwistData& tgt);
/// phi: F*M -> M as a morphism of tau-modules.
ModuleMorphism phi_morphism(const ModulePtr& m, const TwistData& twist);

enum class Side { R, Lambda };

/// Base change along an algebra map out of R (side R) or out of Lambda.
Extension base_change(const ModulePtr& m, const AlgebraMap& g, Side side);
TensorPtr base_change_target(const TensorPtr& s, const AlgebraMap& g, Side side);
Matrix base_change_ring_map(const TensorPtr& s, const AlgebraMap& g, Side side);
ModuleMorphism base_change_morphism(const ModuleMorphism& alpha, const AlgebraMap& g, Side side);

// Predicates and abelian structure ----------------------------------------

bool is_unit(const ModulePtr& m);
bool is_nilpotent(const ModulePtr& m);
bool is_nil_isomorphism(const ModuleMorphism& alpha);

/// F_q-basis of Hom(M, N) in the tau-module category.
std::vector<ModuleMorphism> hom_space(const ModulePtr& m, const ModulePtr& n);
/// An isomorphism M -> N if one exists among elements of Hom(M, N); the
/// search is exhaustive when |Hom| <= 4096, otherwise basis elements and
/// `tries` seeded random combinations are tested.
std::optional<ModuleMorphism> find_isomorphism(const ModulePtr& m, const ModulePtr& n, std::uint64_t seed = 0,
                                               std::size_t tries = 256);

struct KernelData {
  ModulePtr module;
  ModuleMorphism inclusion;
};
struct CokernelData {
  ModulePtr module;
  ModuleMorphism projection;
};
KernelData kernel(const ModuleMorphism& alpha);
CokernelData cokernel(const ModuleMorphism& alpha);
/// The tau-stable S-submodule spanned by `sub` and the quotient by it.
KernelData submodule(const ModulePtr& m, const Subspace& sub);
CokernelData quotient_module(const ModulePtr& m, const Subspace& sub);
/// Smallest S-submodule stable under tau containing the vectors.
Subspace generated_submodule(const ModulePtr& m, const std::vector<Vec>& vectors, bool tau_stable);

// Monoidal structure -------------------------------------------------------

struct TensorProduct {
  ModulePtr left, right, module;
  Quotient quotient;  ///< of left (x)_{F_q} right, indexed i*dim(right) + j
};

TensorProduct tensor_product(const ModulePtr& m, const ModulePtr& n);
inline ModulePtr tensor(const ModulePtr& m, const ModulePtr& n) { return tensor_product(m, n).module; }
ModuleMorphism tensor_morphism(const ModuleMorphism& a, const ModuleMorphism& b, const TensorProduct& src,
                               const TensorProduct& tgt);
ModuleMorphism tensor_morphism(const ModuleMorphism& a, const ModuleMorphism& b);
/// 1 (x) M -> M and M (x) 1 -> M (the first argument must be the unit object).
ModuleMorphism left_unitor(const TensorProduct& one_m);
ModuleMorphism right_unitor(const TensorProduct& m_one);
/// (M (x) N) (x) P -> M (x) (N (x) P).
ModuleMorphism associator(const TensorProduct& mn, const TensorProduct& mn_p, const TensorProduct& np,
                          const TensorProduct& m_np);
/// M (x) N -> N (x) M.
ModuleMorphism braiding(const TensorProduct& mn, const TensorProduct& nm);

/// An S-basis of M when M is free over S.
std::optional<std::vector<Vec>> free_basis(const ModulePtr& m);

struct DualData {
  ModulePtr unit;
  ModulePtr dual;
  std::vector<Vec> basis;  ///< S-basis of M used to identify M^v with S^r
  TensorProduct m_dual;    ///< M (x) M^v
  TensorProduct dual_m;    ///< M^v (x) M
  ModuleMorphism ev;       ///< M (x) M^v -> 1
  ModuleMorphism coev;     ///< 1 -> M^v (x) M
};

/// Requires M free over S and unit; throws ModuleError otherwise.
DualData dual(const ModulePtr& m);
/// (S, F).
ModulePtr unit_module(const TensorPtr& s);

// Presentations -----------------------------------------------------------

/// S^g -> M with kernel generated by the columns of `relations`
/// (vectors in S^g, ordered (k, a) -> k*dim(S) + a).
struct PresentationData {
  std::size_t gens = 0;
  std::vector<Vec> generators;  ///< images of the free basis in M
  Matrix surjection;            ///< dim M x g*dim(S)
  Matrix relations;             ///< g*dim(S) x k
  /// Entry (i, j) of the relation matrix as an element of S.
  Vec entry(std::size_t i, std::size_t j, std::size_t ds) const;
  std::size_t relation_count() const { return relations.cols(); }
};

/// Greedy generators in basis order; a nonzero seed permutes the candidate
/// order for both generators and relations.
PresentationData presentation(const ModulePtr& m, std::uint64_t seed = 0);
/// S-module action matrices of coker(rel: S^k -> S^g), on the quotient basis.
std::vector<Matrix> cokernel_actions(const TensorPtr& s, std::size_t gens, const Matrix& relations, Quotient* out = nullptr);
/// The isomorphism coker(rel) -> M induced by the surjection, if bijective.
std::optional<Matrix> presentation_isomorphism(const ModulePtr& m, const PresentationData& p);
/// Ideal of S generated by the (g - n)-minors of the relation matrix.
Ideal fitting_ideal(const ModulePtr& m, std::size_t n, std::uint64_t seed = 0);
Ideal fitting_ideal(const TensorPtr& s, const PresentationData& p, std::size_t n);

// Local freeness ----------------------------------------------------------

struct FactorFreeness {
  std::size_t factor = 0;
  std::size_t rank = 0;           ///< dim of M_i / m_i M_i over the residue field
  std::size_t module_dim = 0;     ///< dim over F_q of e_i M
  std::size_t free_dim = 0;       ///< rank * dim e_i T
  bool free = false;
  std::vector<Vec> basis;         ///< lifts of a residue basis
};

/// Freeness of e_i M over each local factor e_i T of a ring T acting on M
/// through into_s (dim S x dim T).
std::vector<FactorFreeness> local_freeness(const ModulePtr& m, const AlgebraPtr& t, const Matrix& into_s);
/// Same, for any T-module structure on F_q^n given by its action.
std::vector<FactorFreeness> local_freeness(std::size_t n, const std::function<Matrix(const Vec&)>& action,
                                           const AlgebraPtr& t);

}  // namespace taumod
