#pragma once

#include <random>
#include <string>
#include <vector>

#include "taumod/verify.hpp"

namespace taumod {

using Rng = std::mt19937_64;

Vec random_element(const FiniteAlgebra& a, Rng& rng);

/// (S, F).
ModulePtr unit_object(const TensorPtr& s);
/// Rank one with tau(v) = c F(v); c must be a unit of S.
ModulePtr artin_schreier(const TensorPtr& s, const Vec& c);

struct CarlitzCrystal {
  TensorPtr s;  ///< F_q[t]/(f) (x) F_{q^d}
  ModulePtr module;
  Vec theta;  ///< in F_{q^d}
};

/// tau(v) = (t - theta) F(v) over F_q[t]/(f) (x) F_{q^d}; rejects f(theta) = 0.
CarlitzCrystal carlitz_crystal(const Poly& f, unsigned d, const Vec& theta);
/// Smallest generator of the unit group of a field algebra, by coordinate code.
Vec primitive_element(const FiniteAlgebra& field);

/// Free of rank r with tau(v) = U F(v), U seeded-random and invertible.
ModulePtr random_unit(const TensorPtr& s, std::size_t r, std::uint64_t seed);
/// Direct sum of e_i S^{r_i} over the primitive idempotents e_i of Lambda.
ModulePtr random_split_unit(const TensorPtr& s, const std::vector<std::size_t>& ranks, std::uint64_t seed);
/// Free of rank r with U having entries in Lambda (x) rad(R).
ModulePtr random_nilpotent(const TensorPtr& s, std::size_t r, std::uint64_t seed);
/// R with tau(v) = x F(v) for the first basis vector x of the maximal ideal.
ModulePtr nilpotent_example(const TensorPtr& s);
/// A random element of Hom(M, N).
ModuleMorphism random_morphism(const ModulePtr& m, const ModulePtr& n, Rng& rng);

/// 0 -> m -> R -> k -> 0 after Frobenius twist: reports the twist dimensions
/// and the kernel of F*(m) -> F*(R). Vacuous for fields.
VerifyReport frobenius_nonexact_demo(const AlgebraPtr& r);

struct CorpusRing {
  std::string name;
  TensorPtr s;
};

/// The fixed (Lambda, R) pairs of the default corpus.
std::vector<CorpusRing> corpus_rings();

struct CorpusModule {
  std::string name;
  ModulePtr module;
};

/// Seeded unit modules: free, split-projective, kernels and cokernels of
/// random morphisms, cycling through the rings.
std::vector<CorpusModule> unit_corpus(const std::vector<CorpusRing>& rings, std::size_t count, std::uint64_t seed);

}  // namespace taumod
