#include <gtest/gtest.h>

#include <random>
#include <set>

#include "taumod/algebra.hpp"

using namespace taumod;

namespace {

FieldPtr F2() { return make_field(2, 1); }

AlgebraPtr dual_numbers(const FieldPtr& f) { return poly_quotient_algebra(Poly(f, {0, 0, 1}), "F[x]/(x^2)"); }

// Every element of a small algebra, by counting in base q.
std::vector<Vec> all_elements(const FiniteAlgebra& a) {
  const std::uint32_t q = a.field()->q();
  std::size_t count = 1;
  for (std::size_t i = 0; i < a.dim(); ++i) count *= q;
  std::vector<Vec> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Vec v(a.dim());
    std::size_t r = k;
    for (auto& c : v) {
      c = static_cast<Elem>(r % q);
      r /= q;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::size_t count_idempotents(const FiniteAlgebra& a) {
  std::size_t n = 0;
  for (auto& x : all_elements(a))
    if (a.mul(x, x) == x) ++n;
  return n;
}

void check_local_data(const FiniteAlgebra& a) {
  const auto& ld = a.local_data();
  const auto& F = a.field();
  Vec sum = a.zero_vec();
  for (std::size_t i = 0; i < ld.factors.size(); ++i) {
    const auto& ei = ld.factors[i].idempotent;
    sum = a.add(sum, ei);
    for (std::size_t j = 0; j < ld.factors.size(); ++j) {
      const Vec prod = a.mul(ei, ld.factors[j].idempotent);
      EXPECT_EQ(prod, i == j ? ei : a.zero_vec());
    }
  }
  EXPECT_EQ(sum, a.one());
  // primitivity: 2^(#factors) idempotents in total
  if (a.dim() <= 8 && F->q() <= 4) EXPECT_EQ(count_idempotents(a), std::size_t{1} << ld.factors.size());

  for (const auto& lf : ld.factors) {
    const auto& k = *lf.residue;
    const std::size_t f = k.dim();
    EXPECT_EQ(f, lf.residue_degree);
    // nil exponent: m^e = 0 and m^(e-1) != 0
    auto m = Ideal(std::shared_ptr<const FiniteAlgebra>(&a, [](const FiniteAlgebra*) {}), lf.maximal);
    Ideal pw = m;
    for (unsigned t = 1; t + 1 < lf.nil_exponent; ++t) pw = pw.product(m);
    if (lf.nil_exponent > 1) EXPECT_FALSE(pw.is_zero());
    if (lf.nil_exponent > 1) EXPECT_TRUE(pw.product(m).is_zero());
    else EXPECT_TRUE(m.is_zero());
    // N
    std::uint64_t qn = 1;
    for (unsigned t = 0; t < lf.splitting_power; ++t) qn *= F->q();
    EXPECT_EQ(lf.splitting_power % f, 0u);
    EXPECT_GE(qn, lf.nil_exponent);
    if (lf.splitting_power >= f) {
      std::uint64_t smaller = qn;
      for (std::size_t t = 0; t < f; ++t) smaller /= F->q();
      EXPECT_LT(smaller, lf.nil_exponent);
    }
    // section is a unital ring map and a section of the residue map,
    // exhaustively over k
    if (std::pow(double(F->q()), double(f)) > 64) continue;
    const auto ks = all_elements(k);
    EXPECT_EQ(lf.section.apply(k.one()), lf.idempotent);
    for (auto& c : ks) {
      const Vec sc = lf.section.apply(c);
      EXPECT_EQ(lf.residue_map.apply(sc), c);
      for (auto& d : ks) {
        EXPECT_EQ(lf.section.apply(k.mul(c, d)), a.mul(sc, lf.section.apply(d)));
        EXPECT_EQ(lf.section.apply(k.add(c, d)), a.add(sc, lf.section.apply(d)));
      }
      // s(c) = lift^(q^N) for every lift of c in e*A
      for (std::size_t t = 0; t < lf.maximal.dim() + 1; ++t) {
        Vec lift = sc;
        if (t > 0) lift = a.add(lift, lf.maximal.vector(t - 1));
        EXPECT_EQ(a.pow(lift, qn), sc);
      }
    }
  }
}

std::vector<AlgebraPtr> corpus() {
  auto f2 = F2(), f3 = make_field(3, 1), f4 = make_field(2, 2);
  return {
      prime_algebra(f2),
      dual_numbers(f2),
      poly_quotient_algebra(Poly(f2, {0, 0, 0, 1})),
      poly_quotient_algebra(Poly(f2, {0, 1, 1})),
      truncated_polynomial_algebra(f2, 2, 2),
      field_extension_algebra(f2, 2),
      field_extension_algebra(f2, 3),
      product_algebra(prime_algebra(f2), dual_numbers(f2)),
      tensor_product_algebra(field_extension_algebra(f2, 2), poly_quotient_algebra(Poly(f2, {0, 0, 0, 1}))),
      tensor_product_algebra(field_extension_algebra(f2, 2), field_extension_algebra(f2, 2)),
      dual_numbers(f3),
      poly_quotient_algebra(Poly(f3, {2, 0, 1})),
      tensor_product_algebra(field_extension_algebra(f3, 2), dual_numbers(f3)),
      dual_numbers(f4),
      field_extension_algebra(f4, 2),
  };
}

}  // namespace

TEST(MakeAlgebra, DualNumbers) {
  auto f = F2();
  // basis 1, x
  std::vector<Vec> prods{{1, 0}, {0, 1}, {0, 1}, {0, 0}};
  auto a = FiniteAlgebra::make(f, 2, prods, {1, 0}, "F2[x]/(x^2)");
  EXPECT_EQ(a->dim(), 2u);
  EXPECT_TRUE(a->is_connected());
  EXPECT_FALSE(a->is_reduced());
}

TEST(MakeAlgebra, ProductOfTwoFields) {
  auto f = F2();
  std::vector<Vec> prods{{1, 0}, {0, 0}, {0, 0}, {0, 1}};
  auto a = FiniteAlgebra::make(f, 2, prods, {1, 1}, "F2xF2");
  EXPECT_EQ(a->local_data().factors.size(), 2u);
  EXPECT_EQ(count_idempotents(*a), 4u);
}

TEST(MakeAlgebra, RejectsPerturbedAssociativity) {
  auto f = F2();
  // F2[x]/(x^3) with x*x^2 perturbed to x
  auto good = poly_quotient_algebra(Poly(f, {0, 0, 0, 1}));
  auto sc = good->structure_constants();
  std::vector<Vec> prods;
  for (auto& row : sc)
    for (auto& v : row) prods.push_back(v);
  prods[1 * 3 + 2] = {0, 1, 0};
  prods[2 * 3 + 1] = {0, 1, 0};
  // oracle: first failing triple by direct scan
  auto prod = [&](const Vec& x, const Vec& y) {
    Vec out(3, 0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (x[i] && y[j])
          for (int k = 0; k < 3; ++k) out[k] ^= prods[i * 3 + j][k];
    return out;
  };
  std::string expected;
  for (int i = 0; i < 3 && expected.empty(); ++i)
    for (int j = 0; j < 3 && expected.empty(); ++j)
      for (int k = 0; k < 3 && expected.empty(); ++k)
        if (prod(prods[i * 3 + j], unit_vec(3, k)) != prod(unit_vec(3, i), prods[j * 3 + k]))
          expected = "(" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) + ")";
  ASSERT_FALSE(expected.empty());
  try {
    FiniteAlgebra::make(f, 3, prods, {1, 0, 0}, "bad");
    FAIL() << "accepted a non-associative table";
  } catch (const AxiomError& e) {
    EXPECT_NE(std::string(e.what()).find(expected), std::string::npos) << e.what();
  }
}

TEST(MakeAlgebra, RejectsNonCommutativeAndNonUnital) {
  auto f = F2();
  std::vector<Vec> prods{{1, 0}, {0, 1}, {0, 0}, {0, 0}};
  EXPECT_THROW(FiniteAlgebra::make(f, 2, prods, {1, 0}, "nc"), AxiomError);
  std::vector<Vec> ok{{1, 0}, {0, 1}, {0, 1}, {0, 0}};
  EXPECT_THROW(FiniteAlgebra::make(f, 2, ok, {0, 1}, "nu"), AxiomError);
  EXPECT_THROW(FiniteAlgebra::make(f, 0, {}, {}, "zero"), AxiomError);
}

TEST(MakeAlgebra, BuildersSatisfyAxioms) {
  for (auto& a : corpus()) {
    std::vector<Vec> prods;
    for (auto& row : a->structure_constants())
      for (auto& v : row) prods.push_back(v);
    EXPECT_NO_THROW(FiniteAlgebra::make(a->field(), a->dim(), prods, a->one(), a->label())) << a->label();
  }
}

TEST(TensorAlgebra, Examples) {
  auto f = F2();
  auto s1 = TensorAlgebra::make(prime_algebra(f), dual_numbers(f));
  EXPECT_EQ(s1->dim(), 2u);
  EXPECT_EQ(s1->F({0, 1}), (Vec{0, 0}));

  auto lam = dual_numbers(f);
  auto r = field_extension_algebra(f, 2);
  auto s2 = TensorAlgebra::make(lam, r);
  EXPECT_EQ(s2->dim(), 4u);
  // t (x) g -> t (x) g^2
  const Vec g{0, 1};
  const Vec g2 = r->mul(g, g);
  Vec tg(4, 0), tg2(4, 0);
  tg[s2->index(1, 1)] = 1;
  for (std::size_t j = 0; j < 2; ++j) tg2[s2->index(1, j)] = g2[j];
  EXPECT_EQ(s2->F(tg), tg2);

  EXPECT_THROW(TensorAlgebra::make(prime_algebra(f), prime_algebra(make_field(3, 1))), Error);
}

TEST(TensorAlgebra, IdempotentCountOfF2xF2TimesF4) {
  auto f = F2();
  auto lam = product_algebra(prime_algebra(f), prime_algebra(f));
  auto s = TensorAlgebra::make(lam, field_extension_algebra(f, 2));
  ASSERT_EQ(s->dim(), 4u);
  // oracle: 2^k idempotents in the whole algebra
  EXPECT_EQ(count_idempotents(*s->s()), 4u);
  EXPECT_EQ(primitive_idempotents(*s->s()).factors.size(), 2u);
}

TEST(TensorAlgebra, FrobeniusIsRingEndomorphism) {
  auto f2 = F2(), f3 = make_field(3, 1);
  std::vector<TensorPtr> ss{
      TensorAlgebra::make(dual_numbers(f2), field_extension_algebra(f2, 2)),
      TensorAlgebra::make(field_extension_algebra(f2, 2), poly_quotient_algebra(Poly(f2, {0, 0, 0, 1}))),
      TensorAlgebra::make(dual_numbers(f3), field_extension_algebra(f3, 2)),
      TensorAlgebra::make(product_algebra(prime_algebra(f2), prime_algebra(f2)), truncated_polynomial_algebra(f2, 2, 2)),
  };
  for (auto& s : ss) {
    const auto& S = *s->s();
    const std::size_t d = S.dim();
    EXPECT_EQ(s->F(S.one()), S.one());
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        EXPECT_EQ(s->F(S.mul(S.basis_vec(i), S.basis_vec(j))), S.mul(s->F(S.basis_vec(i)), s->F(S.basis_vec(j))));
    // F fixes Lambda, is the q-power on R
    for (std::size_t i = 0; i < s->lambda()->dim(); ++i) {
      const Vec l = s->from_lambda(s->lambda()->basis_vec(i));
      EXPECT_EQ(s->F(l), l);
    }
    const std::uint64_t q = S.field()->q();
    const Matrix f2m = s->frobenius() * s->frobenius();
    for (std::size_t j = 0; j < s->r()->dim(); ++j) {
      const Vec r = s->from_r(s->r()->basis_vec(j));
      EXPECT_EQ(s->F(r), S.pow(r, q));
      EXPECT_EQ(f2m.apply(r), S.pow(r, q * q));
    }
  }
}

TEST(LocalData, Examples) {
  auto f = F2();
  auto f4 = field_extension_algebra(f, 2);
  {
    const auto& ld = f4->local_data();
    ASSERT_EQ(ld.factors.size(), 1u);
    EXPECT_EQ(ld.factors[0].maximal.dim(), 0u);
    EXPECT_EQ(ld.factors[0].residue->dim(), 2u);
    EXPECT_EQ(rank(ld.factors[0].section), 2u);
    EXPECT_TRUE((ld.factors[0].section * ld.factors[0].residue_map).is_identity());
  }
  {
    auto a = dual_numbers(f);
    const auto& lf = a->local_data().factors.at(0);
    EXPECT_EQ(lf.nil_exponent, 2u);
    EXPECT_EQ(lf.residue_degree, 1u);
    EXPECT_EQ(lf.section.col(0), (Vec{1, 0}));
  }
  {
    // F4[x]/(x^3) over F2
    auto a = tensor_product_algebra(f4, poly_quotient_algebra(Poly(f, {0, 0, 0, 1})));
    const auto& ld = a->local_data();
    ASSERT_EQ(ld.factors.size(), 1u);
    const auto& lf = ld.factors[0];
    EXPECT_EQ(lf.maximal.dim(), 4u);
    EXPECT_EQ(lf.nil_exponent, 3u);
    EXPECT_EQ(lf.residue_degree, 2u);
    EXPECT_EQ(lf.splitting_power, 2u);
    check_local_data(*a);
  }
}

TEST(LocalData, CorpusInvariants) {
  for (auto& a : corpus()) {
    SCOPED_TRACE(a->label());
    check_local_data(*a);
  }
}

TEST(LocalData, Connectedness) {
  auto f = F2();
  EXPECT_TRUE(is_connected(*field_extension_algebra(f, 2)));
  EXPECT_FALSE(is_connected(*product_algebra(prime_algebra(f), prime_algebra(f))));
  auto split = poly_quotient_algebra(Poly(f, {0, 1, 1}));  // x^2 - x
  EXPECT_FALSE(is_connected(*split));
  EXPECT_EQ(count_idempotents(*split), 4u);
}

TEST(LocalData, F4xF4NeedsMoreThanBasisMinpolys) {
  // F4 (x) F4 over F2 splits although its basis elements 1(x)g and g(x)1
  // have irreducible minimal polynomials
  auto f = F2();
  auto a = tensor_product_algebra(field_extension_algebra(f, 2), field_extension_algebra(f, 2));
  EXPECT_EQ(a->local_data().factors.size(), 2u);
  EXPECT_EQ(count_idempotents(*a), 4u);
  check_local_data(*a);
}

TEST(Ideals, ContractExtendExamples) {
  auto f = F2();
  auto lam = dual_numbers(f);
  auto r = dual_numbers(f);
  auto s = TensorAlgebra::make(lam, r);
  auto S = s->s();
  EXPECT_TRUE(ideal_contract(*s, Ideal::zero(S)).is_zero());
  EXPECT_TRUE(ideal_contract(*s, Ideal::whole(S)).is_whole());

  const Ideal tS = Ideal::generated_by(S, {s->from_lambda({0, 1})});
  const Ideal c = ideal_contract(*s, tS);
  // oracle: lambda in Lambda with lambda (x) 1 in tS, by exhaustion
  std::vector<Vec> members;
  for (auto& l : all_elements(*lam))
    if (tS.contains(s->from_lambda(l))) members.push_back(l);
  EXPECT_EQ(c.space(), Subspace::span(f, 2, members));
  EXPECT_EQ(c, Ideal::generated_by(lam, {{0, 1}}));

  EXPECT_EQ(ideal_extend(*s, c), tS);
  EXPECT_TRUE(ideal_extend(*s, Ideal::zero(lam)).is_zero());
  EXPECT_EQ(ideal_extend(*s, c).dim(), c.dim() * r->dim());
}

TEST(Ideals, FInvarianceExamples) {
  auto f = F2();
  auto s = TensorAlgebra::make(prime_algebra(f), dual_numbers(f));
  EXPECT_FALSE(is_F_invariant(*s, Ideal::generated_by(s->s(), {{0, 1}})));
  auto s2 = TensorAlgebra::make(dual_numbers(f), dual_numbers(f));
  EXPECT_TRUE(is_F_invariant(*s2, Ideal::generated_by(s2->s(), {s2->from_lambda({0, 1})})));
}

TEST(Ideals, EnumerationMatchesBruteForce) {
  auto f = F2();
  auto a = truncated_polynomial_algebra(f, 2, 2);  // F2[x,y]/(x,y)^2
  auto ideals = enumerate_ideals(a);
  // oracle: a subset closed under + and multiplication by all elements
  auto elems = all_elements(*a);
  std::size_t count = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << elems.size()); ++mask) {
    if (!(mask & 1)) continue;  // must contain 0
    bool ok = true;
    for (std::size_t i = 0; i < elems.size() && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      for (std::size_t j = 0; j < elems.size() && ok; ++j) {
        const Vec sum = a->add(elems[i], elems[j]);
        const Vec prod = a->mul(elems[i], elems[j]);
        std::size_t si = 0, pi = 0;
        for (std::size_t k = 0; k < elems.size(); ++k) {
          if (elems[k] == sum) si = k;
          if (elems[k] == prod) pi = k;
        }
        if ((mask >> j & 1) && !(mask >> si & 1)) ok = false;
        if (!(mask >> pi & 1)) ok = false;
      }
    }
    if (ok) ++count;
  }
  EXPECT_EQ(ideals.size(), count);
  // (x,y)^2 = 0 so every subspace of m together with 0 and the whole ring
  EXPECT_EQ(count, 1u + 3u + 1u + 1u);
}

TEST(Ideals, InvariantIdealsComeFromLambda) {
  auto f = F2(), f3 = make_field(3, 1);
  std::vector<TensorPtr> ss{
      TensorAlgebra::make(dual_numbers(f), dual_numbers(f)),
      TensorAlgebra::make(product_algebra(prime_algebra(f), prime_algebra(f)), dual_numbers(f)),
      TensorAlgebra::make(poly_quotient_algebra(Poly(f, {0, 0, 0, 1})), dual_numbers(f)),
      TensorAlgebra::make(dual_numbers(f), field_extension_algebra(f, 2)),
      TensorAlgebra::make(dual_numbers(f3), dual_numbers(f3)),
  };
  std::mt19937_64 rng(2024);
  int invariant = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto& s = ss[trial % ss.size()];
    const auto& S = s->s();
    std::vector<Vec> gens(1 + rng() % 2);
    for (auto& g : gens) {
      g.resize(S->dim());
      for (auto& c : g) c = static_cast<Elem>(rng() % S->field()->q());
    }
    // half the time start from an extended ideal so invariant cases occur
    Ideal I = Ideal::generated_by(S, gens);
    if (trial % 2) {
      std::vector<Vec> lg;
      for (auto& g : gens) lg.push_back(s->from_lambda(Vec(g.begin(), g.begin() + s->lambda()->dim())));
      I = Ideal::generated_by(S, lg);
    }
    if (is_F_invariant(*s, I)) {
      ++invariant;
      EXPECT_EQ(ideal_extend(*s, ideal_contract(*s, I)), I);
    }
  }
  EXPECT_GT(invariant, 50);
}

TEST(Ideals, ExhaustiveInvariantIdeals) {
  auto f = F2();
  auto s = TensorAlgebra::make(dual_numbers(f), dual_numbers(f));
  int invariant = 0;
  for (auto& I : enumerate_ideals(s->s())) {
    if (!is_F_invariant(*s, I)) continue;
    ++invariant;
    EXPECT_EQ(ideal_extend(*s, ideal_contract(*s, I)), I);
  }
  // oracle: the extended ideals 0, (t), (1)
  EXPECT_EQ(invariant, 3);
}

TEST(Quotients, QuotientAlgebraAndMaps) {
  auto f = F2();
  auto a = poly_quotient_algebra(Poly(f, {0, 0, 0, 1}));
  auto q = quotient_algebra(Ideal::generated_by(a, {{0, 0, 1}}));
  EXPECT_EQ(q->dim(), 2u);
  Matrix proj(f, 2, 3);
  proj(0, 0) = 1;
  proj(1, 1) = 1;
  EXPECT_NO_THROW(AlgebraMap::make(a, q, proj));
  Matrix bad(f, 2, 3);
  bad(0, 0) = 1;
  bad(1, 2) = 1;
  EXPECT_THROW(AlgebraMap::make(a, q, bad), Error);
}

TEST(Generators, GenerateTheAlgebra) {
  for (auto& a : corpus()) {
    SpanBuilder span(a->field(), a->dim());
    std::vector<Vec> queue{a->one()};
    span.add(a->one());
    while (!queue.empty()) {
      Vec v = queue.back();
      queue.pop_back();
      for (auto& g : a->generators()) {
        Vec w = a->mul(v, g);
        if (span.add(w)) queue.push_back(w);
      }
    }
    EXPECT_TRUE(span.full()) << a->label();
  }
}
