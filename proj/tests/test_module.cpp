#include <gtest/gtest.h>

#include <random>

#include "taumod/module.hpp"

using namespace taumod;

namespace {

FieldPtr F2() { return make_field(2, 1); }

AlgebraPtr dual_numbers(const FieldPtr& f) { return poly_quotient_algebra(Poly(f, {0, 0, 1}), "F[x]/(x^2)"); }

TensorPtr over_r(const AlgebraPtr& r) { return TensorAlgebra::make(prime_algebra(r->field()), r); }

Vec random_elem(const FiniteAlgebra& a, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, a.field()->q() - 1);
  Vec v(a.dim());
  for (auto& c : v) c = static_cast<Elem>(d(rng));
  return v;
}

// Block multiplication matrix of U over S, invertible iff U is.
Matrix block_matrix(const FiniteAlgebra& s, const std::vector<std::vector<Vec>>& u) {
  const std::size_t r = u.size(), ds = s.dim();
  Matrix out(s.field(), r * ds, r * ds);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) out.set_block(i * ds, j * ds, s.mult_matrix(u[i][j]));
  return out;
}

std::vector<std::vector<Vec>> random_u(const FiniteAlgebra& s, std::size_t r, bool invertible, std::mt19937_64& rng) {
  while (true) {
    std::vector<std::vector<Vec>> u(r, std::vector<Vec>(r));
    for (auto& row : u)
      for (auto& x : row) x = random_elem(s, rng);
    if (!invertible || rank(block_matrix(s, u)) == r * s.dim()) return u;
  }
}

ModulePtr random_unit(const TensorPtr& s, std::size_t r, std::mt19937_64& rng) {
  return free_module(s, random_u(*s->s(), r, true, rng));
}

Matrix random_combo(const std::vector<ModuleMorphism>& hom, const ModulePtr& m, const ModulePtr& n,
                    std::mt19937_64& rng) {
  Matrix x(m->field(), n->dim(), m->dim());
  std::uniform_int_distribution<std::uint32_t> d(0, m->field()->q() - 1);
  for (auto& h : hom) x = x + h.matrix().scaled(static_cast<Elem>(d(rng)));
  return x;
}

// Artin-Schreier object: rank one, tau(v) = c F(v).
ModulePtr artin_schreier(const TensorPtr& s, Elem c) { return free_module(s, {{s->s()->scalar(c)}}); }

Matrix inv(const Matrix& m) {
  auto i = inverse(m);
  EXPECT_TRUE(i.has_value());
  return i ? *i : m;
}

}  // namespace

TEST(TauModule, Construction) {
  auto s = over_r(dual_numbers(F2()));
  auto one = unit_module(s);
  EXPECT_EQ(one->dim(), 2u);
  EXPECT_EQ(one->tau(), s->frobenius());
  // tau = 0 is always allowed
  auto zero_tau = TauModule::make(s, 2, one->acts(), Matrix(s->field(), 2, 2));
  EXPECT_TRUE(zero_tau->is_nilpotent());
  EXPECT_FALSE(zero_tau->is_unit());

  // tau = identity on R = F2[x]/(x^2): tau act(x) = act(x) but act(F x) = act(x^2) = 0
  try {
    TauModule::make(s, 2, one->acts(), Matrix::identity(s->field(), 2));
    FAIL() << "semilinearity violation accepted";
  } catch (const ModuleError& e) {
    EXPECT_NE(std::string(e.what()).find("e_1"), std::string::npos) << e.what();
  }
  // act(x) replaced by identity breaks act(x)act(x) = act(x^2)
  auto bad = one->acts();
  bad[1] = Matrix::identity(s->field(), 2);
  EXPECT_THROW(TauModule::make(s, 2, bad, Matrix(s->field(), 2, 2)), ModuleError);
}

TEST(TauModule, TwistExamples) {
  auto r = dual_numbers(F2());
  auto s = over_r(r);
  auto tw = frobenius_twist(unit_module(s));
  EXPECT_EQ(tw.module->dim(), 2u);
  ASSERT_TRUE(tw.unit_section.has_value());

  auto rx = cyclic_module(s, Ideal::generated_by(s->s(), {s->s()->basis_vec(1)}));
  EXPECT_EQ(rx->dim(), 1u);
  auto twx = frobenius_twist(rx);
  EXPECT_EQ(twx.module->dim(), 2u);
  EXPECT_FALSE(twx.unit_section.has_value());
  EXPECT_FALSE(rx->is_unit());

  std::mt19937_64 rng(5);
  auto t = over_r(truncated_polynomial_algebra(F2(), 2, 2));
  for (std::size_t rk = 1; rk <= 3; ++rk) {
    auto m = free_module(t, random_u(*t->s(), rk, false, rng));
    EXPECT_EQ(frobenius_twist(m).module->dim(), rk * t->dim());
  }
}

TEST(TauModule, PhiIsAMorphism) {
  std::mt19937_64 rng(17);
  auto s = over_r(dual_numbers(F2()));
  for (int it = 0; it < 20; ++it) {
    auto m = free_module(s, random_u(*s->s(), 2, false, rng));
    auto tw = frobenius_twist(m);
    EXPECT_NO_THROW(ModuleMorphism::make(tw.module, m, tw.phi_lin));
  }
}

TEST(TauModule, NilpotentExamples) {
  auto r = dual_numbers(F2());
  auto s = over_r(r);
  auto m = free_module(s, {{r->basis_vec(1)}});
  EXPECT_FALSE(m->tau().is_zero());
  EXPECT_TRUE((m->tau() * m->tau()).is_zero());
  EXPECT_TRUE(m->is_nilpotent());
  EXPECT_FALSE(unit_module(s)->is_nilpotent());
  EXPECT_TRUE(unit_module(s)->is_unit());

  // x M inside M
  auto sub = generated_submodule(m, {m->act(1).col(0)}, true);
  auto inc = submodule(m, sub).inclusion;
  EXPECT_NO_THROW(ModuleMorphism::make(inc.source(), inc.target(), inc.matrix()));
  EXPECT_TRUE(is_nil_isomorphism(inc));
  EXPECT_TRUE(is_nil_isomorphism(ModuleMorphism::identity(unit_module(s))));
  EXPECT_FALSE(is_nil_isomorphism(ModuleMorphism::zero(unit_module(s), unit_module(s))));
}

// Composition phi o F*phi o ... o F^{*k}phi vanishes for some k iff tau^dim = 0.
TEST(TauModule, NilpotentMatchesComposedTwists) {
  std::mt19937_64 rng(2024);
  std::vector<TensorPtr> rings = {over_r(dual_numbers(F2())), over_r(truncated_polynomial_algebra(F2(), 2, 2)),
                                  over_r(prime_algebra(make_field(3, 1)))};
  int nilpotent = 0;
  for (int it = 0; it < 50; ++it) {
    auto s = rings[it % rings.size()];
    ModulePtr m = free_module(s, random_u(*s->s(), 1 + it % 2, false, rng));
    if (it % 3 == 2) {
      Vec v(m->dim());
      std::uniform_int_distribution<int> d(0, 1);
      for (auto& c : v) c = static_cast<Elem>(d(rng));
      m = quotient_module(m, generated_submodule(m, {v}, true)).module;
    }
    std::vector<TwistData> tw = {frobenius_twist(m)};
    ModuleMorphism phi = phi_morphism(m, tw[0]);
    Matrix comp = phi.matrix();
    bool vanished = comp.is_zero();
    for (std::size_t k = 1; k <= m->dim() + 1 && !vanished; ++k) {
      tw.push_back(frobenius_twist(tw.back().module));
      phi = twist_morphism(phi, tw[k], tw[k - 1]);
      EXPECT_NO_THROW(ModuleMorphism::make(phi.source(), phi.target(), phi.matrix()));
      comp = comp * phi.matrix();
      vanished = comp.is_zero();
    }
    EXPECT_EQ(vanished, m->is_nilpotent()) << "iteration " << it;
    nilpotent += vanished;
  }
  EXPECT_GT(nilpotent, 0);
}

TEST(TauModule, HomExamples) {
  // Lambda = F4, R = F2: End(1) = Lambda
  auto f = F2();
  auto s = TensorAlgebra::make(field_extension_algebra(f, 2), prime_algebra(f));
  EXPECT_EQ(hom_space(unit_module(s), unit_module(s)).size(), 2u);

  auto sn = over_r(dual_numbers(f));
  auto nil = free_module(sn, {{sn->s()->basis_vec(1)}});
  EXPECT_TRUE(hom_space(unit_module(sn), nil).empty());

  // AS(c) over F_q: u c = c u^q has q-1 nonzero solutions plus 0, so dim 1
  for (auto fq : {make_field(2, 2), make_field(3, 2), make_field(5, 1)}) {
    auto t = over_r(prime_algebra(fq));
    for (Elem c = 1; c < std::min<std::uint32_t>(fq->q(), 6); ++c) {
      std::size_t solutions = 0;
      for (std::uint32_t u = 0; u < fq->q(); ++u)
        if (fq->mul(static_cast<Elem>(u), c) == fq->mul(c, fq->pow(static_cast<Elem>(u), fq->q()))) ++solutions;
      const auto hom = hom_space(artin_schreier(t, c), artin_schreier(t, c));
      std::size_t size = 1;
      for (std::size_t i = 0; i < hom.size(); ++i) size *= fq->q();
      EXPECT_EQ(size, solutions);
      EXPECT_EQ(hom.size(), 1u);
    }
  }
}

TEST(TauModule, HomBasisIsValid) {
  std::mt19937_64 rng(9);
  auto s = over_r(truncated_polynomial_algebra(F2(), 2, 2));
  for (int it = 0; it < 10; ++it) {
    auto a = random_unit(s, 1, rng), b = random_unit(s, 1, rng);
    auto m = direct_sum(a, b), n = direct_sum(b, a);
    const auto hom = hom_space(m, n);
    EXPECT_GE(hom.size(), 2u);
    for (auto& h : hom) EXPECT_NO_THROW(ModuleMorphism::make(m, n, h.matrix()));
    EXPECT_TRUE(find_isomorphism(m, n).has_value());
  }
}

TEST(TauModule, KernelCokernel) {
  auto s = over_r(dual_numbers(F2()));
  auto one = unit_module(s);
  EXPECT_EQ(kernel(ModuleMorphism::identity(one)).module->dim(), 0u);
  EXPECT_EQ(cokernel(ModuleMorphism::identity(one)).module->dim(), 0u);
  auto k = kernel(ModuleMorphism::zero(one, one));
  EXPECT_EQ(k.module->dim(), 2u);
  EXPECT_TRUE(k.inclusion.is_isomorphism());
}

TEST(TauModule, KernelCokernelOfUnitsAreUnit) {
  std::mt19937_64 rng(100);
  auto s = over_r(truncated_polynomial_algebra(F2(), 2, 2));
  std::size_t nontrivial = 0;
  for (int it = 0; it < 100; ++it) {
    auto a = random_unit(s, 1, rng), b = random_unit(s, 1 + it % 2, rng), c = random_unit(s, 1, rng);
    auto m = direct_sum(a, b), n = direct_sum(b, c);
    const auto hom = hom_space(m, n);
    auto alpha = ModuleMorphism::make(m, n, random_combo(hom, m, n, rng));
    auto k = kernel(alpha);
    auto q = cokernel(alpha);
    EXPECT_NO_THROW(ModuleMorphism::make(k.module, m, k.inclusion.matrix()));
    EXPECT_NO_THROW(ModuleMorphism::make(n, q.module, q.projection.matrix()));
    EXPECT_TRUE(k.module->is_unit()) << it;
    EXPECT_TRUE(q.module->is_unit()) << it;
    if (k.module->dim() && q.module->dim()) ++nontrivial;
  }
  EXPECT_GT(nontrivial, 10u);
}

TEST(TauModule, TensorExamples) {
  std::mt19937_64 rng(4);
  auto s = over_r(truncated_polynomial_algebra(F2(), 2, 2));
  auto one = unit_module(s);
  for (int it = 0; it < 5; ++it) {
    auto m = random_unit(s, 1 + it % 2, rng);
    auto one_m = tensor_product(one, m);
    auto lu = left_unitor(one_m);
    EXPECT_NO_THROW(ModuleMorphism::make(lu.source(), lu.target(), lu.matrix()));
    EXPECT_TRUE(lu.is_isomorphism());
    auto ru = right_unitor(tensor_product(m, one));
    EXPECT_NO_THROW(ModuleMorphism::make(ru.source(), ru.target(), ru.matrix()));
    EXPECT_TRUE(ru.is_isomorphism());
    auto n = random_unit(s, 2, rng);
    auto mn = tensor(m, n);
    EXPECT_EQ(mn->dim(), (1 + it % 2) * 2 * s->dim());
    EXPECT_TRUE(mn->is_unit());
  }
  for (auto fq : {make_field(2, 2), make_field(3, 1), make_field(5, 1)}) {
    auto t = over_r(prime_algebra(fq));
    for (Elem c = 1; c < fq->q(); ++c)
      for (Elem d = 1; d < fq->q(); ++d) {
        auto prod = tensor(artin_schreier(t, c), artin_schreier(t, d));
        EXPECT_TRUE(find_isomorphism(prod, artin_schreier(t, fq->mul(c, d))).has_value());
      }
  }
}

TEST(TauModule, MonoidalCoherence) {
  std::mt19937_64 rng(8);
  auto s = over_r(dual_numbers(F2()));
  auto m = random_unit(s, 1, rng), n = random_unit(s, 2, rng), p = random_unit(s, 1, rng);
  auto mn = tensor_product(m, n), np = tensor_product(n, p);
  auto mn_p = tensor_product(mn.module, p), m_np = tensor_product(m, np.module);
  auto a = associator(mn, mn_p, np, m_np);
  EXPECT_NO_THROW(ModuleMorphism::make(a.source(), a.target(), a.matrix()));
  EXPECT_TRUE(a.is_isomorphism());
  auto nm = tensor_product(n, m);
  auto b = braiding(mn, nm), b2 = braiding(nm, mn);
  EXPECT_NO_THROW(ModuleMorphism::make(b.source(), b.target(), b.matrix()));
  EXPECT_TRUE(b.then(b2).matrix().is_identity());
}

TEST(TauModule, DualAndRigidity) {
  std::mt19937_64 rng(12);
  auto s = over_r(dual_numbers(F2()));
  auto one = unit_module(s);
  auto d1 = dual(one);
  EXPECT_TRUE(same_module(d1.dual, one));

  for (std::size_t r : {1u, 2u}) {
    auto m = random_unit(s, r, rng);
    auto d = dual(m);
    EXPECT_TRUE(d.dual->is_unit());
    const auto& mv = d.dual;
    // M -> M(x)1 -> M(x)(Mv(x)M) -> (M(x)Mv)(x)M -> 1(x)M -> M
    auto m_one = tensor_product(m, one);
    auto m_mvm = tensor_product(m, d.dual_m.module);
    auto mmv_m = tensor_product(d.m_dual.module, m);
    auto one_m = tensor_product(one, m);
    auto id_coev = tensor_morphism(ModuleMorphism::identity(m), d.coev, m_one, m_mvm);
    auto ev_id = tensor_morphism(d.ev, ModuleMorphism::identity(m), mmv_m, one_m);
    auto assoc = associator(d.m_dual, mmv_m, d.dual_m, m_mvm);
    Matrix first = left_unitor(one_m).matrix() * ev_id.matrix() * inv(assoc.matrix()) * id_coev.matrix() *
                   inv(right_unitor(m_one).matrix());
    EXPECT_TRUE(first.is_identity());

    // Mv -> 1(x)Mv -> (Mv(x)M)(x)Mv -> Mv(x)(M(x)Mv) -> Mv(x)1 -> Mv
    auto one_mv = tensor_product(one, mv);
    auto mvm_mv = tensor_product(d.dual_m.module, mv);
    auto mv_mmv = tensor_product(mv, d.m_dual.module);
    auto mv_one = tensor_product(mv, one);
    auto coev_id = tensor_morphism(d.coev, ModuleMorphism::identity(mv), one_mv, mvm_mv);
    auto id_ev = tensor_morphism(ModuleMorphism::identity(mv), d.ev, mv_mmv, mv_one);
    auto assoc2 = associator(d.dual_m, mvm_mv, d.m_dual, mv_mmv);
    Matrix second = right_unitor(mv_one).matrix() * id_ev.matrix() * assoc2.matrix() * coev_id.matrix() *
                    inv(left_unitor(one_mv).matrix());
    EXPECT_TRUE(second.is_identity());

    auto dd = dual(mv).dual;
    EXPECT_TRUE(find_isomorphism(dd, m).has_value());
  }
  EXPECT_THROW(dual(free_module(s, {{s->s()->basis_vec(1)}})), ModuleError);
}

TEST(TauModule, PresentationRoundtrip) {
  std::mt19937_64 rng(31);
  auto s = over_r(truncated_polynomial_algebra(F2(), 2, 2));
  auto free2 = free_module(s, random_u(*s->s(), 2, false, rng));
  auto pf = presentation(free2);
  EXPECT_EQ(pf.gens, 2u);
  EXPECT_EQ(pf.relation_count(), 0u);

  auto ideal = Ideal::generated_by(s->s(), {s->s()->basis_vec(1)});
  auto cyc = cyclic_module(s, ideal);
  auto pc = presentation(cyc);
  EXPECT_EQ(pc.gens, 1u);
  std::vector<Vec> entries;
  for (std::size_t j = 0; j < pc.relation_count(); ++j) entries.push_back(pc.entry(0, j, s->dim()));
  EXPECT_TRUE(Ideal::generated_by(s->s(), entries) == ideal);

  for (int it = 0; it < 100; ++it) {
    ModulePtr m = free_module(s, random_u(*s->s(), 1 + it % 2, false, rng));
    Vec v(m->dim());
    std::uniform_int_distribution<int> d(0, 1);
    for (auto& c : v) c = static_cast<Elem>(d(rng));
    m = quotient_module(m, generated_submodule(m, {v}, true)).module;
    auto p = presentation(m, it);
    auto iso = presentation_isomorphism(m, p);
    ASSERT_TRUE(iso.has_value()) << it;
    // independent rebuild of the S-module from the relation columns
    Quotient q;
    auto act = cokernel_actions(s, p.gens, p.relations, &q);
    EXPECT_EQ(q.dim(), m->dim());
  }
}

TEST(TauModule, FittingIdeals) {
  std::mt19937_64 rng(77);
  auto s = over_r(truncated_polynomial_algebra(F2(), 2, 2));
  for (std::size_t r = 1; r <= 2; ++r) {
    auto m = free_module(s, random_u(*s->s(), r, false, rng));
    for (std::size_t n = 0; n <= 3; ++n) {
      auto fit = fitting_ideal(m, n);
      if (n < r) {
        EXPECT_TRUE(fit.is_zero());
      } else {
        EXPECT_TRUE(fit.is_whole());
      }
    }
  }
  for (auto& j : enumerate_ideals(s->s())) {
    if (!is_F_invariant(*s, j)) continue;
    auto m = cyclic_module(s, j);
    EXPECT_TRUE(fitting_ideal(m, 0) == j);
  }

  // Lambda = F2[t]/(t^2), R = F4, M = (Lambda/(t)) (x) R
  auto f = F2();
  auto lam = dual_numbers(f);
  auto t = TensorAlgebra::make(lam, field_extension_algebra(f, 2));
  auto tl = Ideal::generated_by(lam, {lam->basis_vec(1)});
  auto ext = ideal_extend(*t, tl);
  auto m = cyclic_module(t, ext);
  EXPECT_EQ(m->dim(), 2u);
  EXPECT_TRUE(m->is_unit());
  EXPECT_TRUE(fitting_ideal(m, 0) == ext);
  EXPECT_TRUE(fitting_ideal(m, 0) == ideal_extend(*t, ideal_contract(*t, fitting_ideal(m, 0))));
}

TEST(TauModule, FittingPresentationIndependent) {
  std::mt19937_64 rng(55);
  auto s = over_r(truncated_polynomial_algebra(F2(), 2, 2));
  for (int it = 0; it < 30; ++it) {
    ModulePtr m = free_module(s, random_u(*s->s(), 2, false, rng));
    Vec v(m->dim());
    std::uniform_int_distribution<int> d(0, 1);
    for (auto& c : v) c = static_cast<Elem>(d(rng));
    m = quotient_module(m, generated_submodule(m, {v}, true)).module;
    for (std::size_t n = 0; n <= 2; ++n) {
      auto a = fitting_ideal(m, n, 0), b = fitting_ideal(m, n, 1 + it);
      EXPECT_EQ(a.space().basis(), b.space().basis()) << it << " " << n;
    }
  }
}

TEST(TauModule, FittingOfUnitIsExtended) {
  std::mt19937_64 rng(66);
  auto f = F2();
  auto t = TensorAlgebra::make(dual_numbers(f), dual_numbers(f));
  for (int it = 0; it < 20; ++it) {
    auto a = random_unit(t, 1, rng), b = random_unit(t, 1, rng);
    auto m = direct_sum(a, b);
    auto hom = hom_space(a, m);
    auto alpha = ModuleMorphism::make(a, m, random_combo(hom, a, m, rng));
    auto c = cokernel(alpha).module;
    ASSERT_TRUE(c->is_unit());
    for (std::size_t n = 0; n <= 2; ++n) {
      auto fit = fitting_ideal(c, n);
      EXPECT_TRUE(fit == ideal_extend(*t, ideal_contract(*t, fit))) << it << " " << n;
    }
  }
}

TEST(TauModule, BaseChange) {
  std::mt19937_64 rng(3);
  auto f = F2();
  auto r = prime_algebra(f);
  auto s = over_r(r);
  auto f4 = field_extension_algebra(f, 2);
  Matrix inc(f, 2, 1);
  inc.set_col(0, f4->one());
  auto g = AlgebraMap::make(r, f4, inc);
  auto m = free_module(s, random_u(*s->s(), 2, true, rng));
  auto bc = base_change(m, g, Side::R);
  EXPECT_EQ(bc.module->dim(), 2 * m->dim());
  EXPECT_TRUE(bc.module->is_unit());

  auto id = base_change(m, AlgebraMap::identity(r), Side::R);
  EXPECT_TRUE(find_isomorphism(id.module, m).has_value());

  // R = F2[x,y]/(x,y)^2 -> F2[x]/(x^2) killing y, then -> F2 killing x
  auto big = truncated_polynomial_algebra(f, 2, 2);
  auto dn = dual_numbers(f);
  Matrix h1(f, 2, 3);
  h1(0, 0) = 1;
  h1(1, 1) = 1;
  auto g1 = AlgebraMap::make(big, dn, h1);
  Matrix h2(f, 1, 2);
  h2(0, 0) = 1;
  auto g2 = AlgebraMap::make(dn, r, h2);
  auto sb = over_r(big);
  for (int it = 0; it < 100; ++it) {
    auto mu = random_unit(sb, 1 + it % 2, rng);
    auto e1 = base_change(mu, g1, Side::R);
    EXPECT_TRUE(e1.module->is_unit());
    if (it % 10) continue;
    auto e12 = base_change(e1.module, g2, Side::R);
    auto e = base_change(mu, g1.then(g2), Side::R);
    EXPECT_TRUE(find_isomorphism(e12.module, e.module).has_value());
  }
  // functoriality on morphisms
  auto a = random_unit(sb, 1, rng), b = random_unit(sb, 1, rng);
  auto src = direct_sum(a, b), tgt = direct_sum(b, a);
  auto alpha = ModuleMorphism::make(src, tgt, random_combo(hom_space(src, tgt), src, tgt, rng));
  auto ba = base_change_morphism(alpha, g1, Side::R);
  EXPECT_NO_THROW(ModuleMorphism::make(ba.source(), ba.target(), ba.matrix()));

  // Lambda side
  auto sl = TensorAlgebra::make(dn, r);
  auto ml = random_unit(sl, 1, rng);
  auto bl = base_change(ml, g2, Side::Lambda);
  EXPECT_EQ(bl.module->dim(), 1u);
  EXPECT_TRUE(bl.module->is_unit());
}

TEST(TauModule, LocalFreeness) {
  std::mt19937_64 rng(1);
  auto s = over_r(product_algebra(dual_numbers(F2()), prime_algebra(F2())));
  auto m = random_unit(s, 2, rng);
  auto basis = free_basis(m);
  ASSERT_TRUE(basis.has_value());
  EXPECT_EQ(basis->size(), 2u);
  auto c = cyclic_module(s, Ideal::generated_by(s->s(), {s->s()->basis_vec(1)}));
  EXPECT_FALSE(free_basis(c).has_value());
}
