#include <gtest/gtest.h>

#include "taumod/zoo.hpp"

using namespace taumod;

namespace {

FieldPtr F2() { return make_field(2, 1); }

AlgebraPtr trunc(const FieldPtr& f, unsigned e) {
  std::vector<Elem> c(e + 1, 0);
  c[e] = 1;
  return poly_quotient_algebra(Poly(f, c));
}

TensorPtr over_r(const AlgebraPtr& r) { return TensorAlgebra::make(prime_algebra(r->field()), r); }

}  // namespace

TEST(Zoo, UnitObject) {
  for (auto& ring : corpus_rings()) {
    auto one = unit_object(ring.s);
    EXPECT_TRUE(one->is_unit()) << ring.name;
    EXPECT_TRUE(find_isomorphism(tensor(one, one), one).has_value()) << ring.name;
  }
  auto s = over_r(field_extension_algebra(F2(), 2));
  EXPECT_EQ(solutions(unit_object(s), 2).free_rank, std::optional<std::size_t>(1));
}

TEST(Zoo, ArtinSchreier) {
  auto s = over_r(trunc(make_field(3, 1), 2));
  EXPECT_TRUE(same_module(artin_schreier(s, s->s()->one()), unit_object(s)));
  EXPECT_THROW(artin_schreier(s, s->s()->basis_vec(1)), ModuleError);
  Rng rng(1);
  for (int it = 0; it < 10; ++it) {
    Vec c = random_element(*s->s(), rng);
    auto inv = s->s()->inverse(c);
    if (!inv) continue;
    auto prod = tensor(artin_schreier(s, c), artin_schreier(s, *inv));
    EXPECT_TRUE(find_isomorphism(prod, unit_object(s)).has_value());
  }
}

TEST(Zoo, Carlitz) {
  auto f2 = F2();
  auto c = carlitz_crystal(Poly(f2, {0, 1}), 1, Vec{1});
  EXPECT_TRUE(same_module(c.module, unit_object(c.s)));
  EXPECT_THROW(carlitz_crystal(Poly(f2, {0, 1}), 1, Vec{0}), ModuleError);

  auto f3 = make_field(3, 1);
  auto r = field_extension_algebra(f3, 2);
  auto q3 = carlitz_crystal(Poly(f3, {0, 1}), 2, primitive_element(*r));
  EXPECT_TRUE(q3.module->is_unit());
  // unit exactly when f(theta) != 0: f = t^2 - 1 over F3, theta in F3
  for (Elem th = 0; th < 3; ++th) {
    const Poly f(f3, {2, 0, 1});
    const bool root = f3->add(f3->mul(th, th), 2) == 0;
    if (root) {
      EXPECT_THROW(carlitz_crystal(f, 1, Vec{th}), ModuleError);
    } else {
      EXPECT_TRUE(carlitz_crystal(f, 1, Vec{th}).module->is_unit());
    }
  }
}

TEST(Zoo, RandomUnits) {
  auto rings = corpus_rings();
  EXPECT_GE(rings.size(), 10u);
  EXPECT_EQ(random_unit(rings[0].s, 0, 1)->dim(), 0u);
  EXPECT_TRUE(random_unit(rings[0].s, 0, 1)->is_unit());
  auto corpus = unit_corpus(rings, 60, 42);
  for (auto& c : corpus) {
    EXPECT_TRUE(c.module->is_unit()) << c.name;
    EXPECT_LE(c.module->dim(), 24u) << c.name;
  }
  auto again = unit_corpus(rings, 60, 42);
  for (std::size_t i = 0; i < corpus.size(); ++i) EXPECT_TRUE(same_module(corpus[i].module, again[i].module));
}

TEST(Zoo, SplitFitting) {
  auto f = F2();
  auto lam = poly_quotient_algebra(Poly(f, {0, 1, 1}));
  auto s = TensorAlgebra::make(lam, trunc(f, 2));
  auto m = random_split_unit(s, {2, 1}, 7);
  ASSERT_TRUE(m->is_unit());
  const Vec e2 = lam->local_data().factors[1].idempotent;
  auto e2_ext = ideal_extend(*s, Ideal::generated_by(lam, {e2}));
  EXPECT_TRUE(fitting_ideal(m, 1) == e2_ext);
  EXPECT_TRUE(fitting_ideal(m, 0).is_zero());
  EXPECT_TRUE(fitting_ideal(m, 2).is_whole());
  EXPECT_FALSE(free_basis(m).has_value());
  EXPECT_EQ(check_projective_over_S(m).verdict, Verdict::Pass);
}

TEST(Zoo, Nilpotent) {
  auto s = over_r(trunc(F2(), 2));
  auto n = nilpotent_example(s);
  EXPECT_TRUE((n->tau() * n->tau()).is_zero());
  EXPECT_TRUE(n->is_nilpotent());
  EXPECT_EQ(solutions(n, 1).dim(), 0u);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EXPECT_TRUE(hom_space(random_unit(s, 1, seed), n).empty());
    EXPECT_TRUE(random_nilpotent(s, 2, seed)->is_nilpotent());
  }
  EXPECT_THROW(nilpotent_example(over_r(field_extension_algebra(F2(), 2))), ModuleError);
}

TEST(Zoo, KunzDemo) {
  auto f = F2();
  auto a = frobenius_nonexact_demo(trunc(f, 2));
  EXPECT_EQ(a.verdict, Verdict::Pass);
  EXPECT_EQ(a.witness["twist_dims"], nlohmann::json({2, 2, 2}));
  EXPECT_GT(a.witness["twisted_inclusion_kernel_dim"].get<int>(), 0);
  auto b = frobenius_nonexact_demo(truncated_polynomial_algebra(f, 2, 2));
  EXPECT_EQ(b.verdict, Verdict::Pass);
  EXPECT_EQ(b.witness["twist_dims"][2], 3);
  EXPECT_EQ(frobenius_nonexact_demo(field_extension_algebra(f, 2)).verdict, Verdict::Vacuous);
}
