#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "taumod/module.hpp"

namespace taumod {

enum class Verdict { Pass, Fail, Vacuous };
const char* to_string(Verdict v);

struct VerifyReport {
  VerifyReport() = default;
  explicit VerifyReport(std::string name) : check(std::move(name)) {}

  std::string check;
  Verdict verdict = Verdict::Pass;
  std::string detail;
  nlohmann::json witness;  ///< always set when verdict is Fail
  double seconds = 0;

  bool failed() const { return verdict == Verdict::Fail; }
  void fail(std::string why, nlohmann::json w);
  nlohmann::json to_json(bool timings = false) const;
};

/// Free over every local factor of R (flat = free for finite modules over
/// artinian local rings).
VerifyReport check_flat(const ModulePtr& m);
/// Free over every local factor of S; constant rank when Lambda is a field
/// and R is connected.
VerifyReport check_projective_over_S(const ModulePtr& m);
/// F-invariant ideals of S are extended from Lambda (needs R connected).
VerifyReport check_invariant_ideal(const TensorPtr& s, const Ideal& i);

/// Lambda (x) k for the residue field k of local R.
TensorPtr residue_tensor(const TensorPtr& s);
/// Ring map Lambda (x) k -> Lambda (x) R through the coefficient field.
Matrix section_map(const TensorPtr& s);
/// M0 (x)_k R for a module over Lambda (x) k.
Extension extend_from_residue(const ModulePtr& m0, const TensorPtr& s);

struct DescentResult {
  ModulePtr descended;   ///< M/mM over Lambda (x) k
  Extension extended;    ///< (M/mM) (x)_k R
  ModuleMorphism iso;    ///< M -> (M/mM) (x)_k R
  PresentationData presentation;
  Matrix frobenius_relations;  ///< F^N applied entrywise to the relation matrix
  unsigned power = 0;          ///< N with q^N >= nilpotency exponent
  bool relations_over_section = false;
};

/// Requires M unit and R local; throws ModuleError otherwise and when no
/// isomorphism is found (which would contradict the descent lemma).
DescentResult artinian_descend(const ModulePtr& m, std::uint64_t seed = 0);

struct EndOfUnit {
  std::size_t dim = 0;
  Subspace fixed;          ///< ker(F - 1) on S
  bool connected = false;  ///< R connected
  bool equals_lambda = false;
};
EndOfUnit end_of_unit(const TensorPtr& s);

/// ker(tau - 1) after base change to a connected component of R (x) F_{q^n}.
struct SolutionSpace {
  unsigned extension_degree = 1;
  AlgebraPtr cover;              ///< R (x) F_{q^n}
  Vec component;                 ///< primitive idempotent of the cover used
  unsigned orbit = 1;            ///< j with sigma = (1 (x) Frob)^j
  Matrix basis;                  ///< (dim M * n) x dim Sol, columns in M (x) F_{q^n}
  Subspace space;
  std::vector<Matrix> lambda_action;  ///< per Lambda basis element, on Sol
  Matrix sigma;
  std::optional<std::size_t> free_rank;

  std::size_t dim() const { return basis.cols(); }
};

SolutionSpace solutions(const ModulePtr& m, unsigned n);
/// The map Sol(M) -> Sol(N) induced by alpha.
Matrix solutions_map(const ModuleMorphism& alpha, const SolutionSpace& src, const SolutionSpace& tgt);

struct GaloisCharpoly {
  SolutionSpace sol;
  std::size_t rank = 0;
  std::vector<Vec> coeffs;  ///< over Lambda, low degree first, monic
  Matrix sigma_lambda;      ///< rank x rank over Lambda, entries as flattened vectors
};

/// Charpoly of sigma once Sol has full Lambda-rank; n runs over multiples of
/// deg R up to max_multiple * deg R and exceeding that throws.
GaloisCharpoly galois_charpoly(const ModulePtr& m, unsigned max_multiple = 64);
/// Berkowitz characteristic polynomial det(X - A) over a commutative algebra.
std::vector<Vec> charpoly_over(const FiniteAlgebra& a, const std::vector<std::vector<Vec>>& m);
std::string format_poly_over(const FiniteAlgebra& a, const std::vector<Vec>& coeffs);

/// Exactness, conservativity and faithfulness of base change along f: R -> R'.
VerifyReport check_pullback(const AlgebraMap& f, const std::vector<ModulePtr>& modules,
                            const std::vector<ModuleMorphism>& morphisms);

/// Ring map R -> k_i onto the residue field of the i-th local factor.
AlgebraMap residue_point(const AlgebraPtr& r, std::size_t factor);

/// Fiber functor M -> M (x)_R k along a point R -> k: exact on the kernel and
/// cokernel sequences of the morphisms, monoidal on the pairs.
VerifyReport check_fiber_functor(const AlgebraMap& point, const std::vector<ModulePtr>& modules,
                                 const std::vector<ModuleMorphism>& morphisms,
                                 const std::vector<std::pair<ModulePtr, ModulePtr>>& pairs);

nlohmann::json matrix_json(const Matrix& m);

}  // namespace taumod
