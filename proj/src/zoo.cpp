#include "taumod/zoo.hpp"

#include <algorithm>
#include <functional>

namespace taumod {

Vec random_element(const FiniteAlgebra& a, Rng& rng) {
  Vec v(a.dim());
  for (auto& c : v) c = static_cast<Elem>(rng() % a.field()->q());
  return v;
}

ModulePtr unit_object(const TensorPtr& s) { return unit_module(s); }

ModulePtr artin_schreier(const TensorPtr& s, const Vec& c) {
  if (!s->s()->is_unit(c)) throw ModuleError("Artin-Schreier parameter is not a unit of S");
  return free_module(s, {{c}});
}

CarlitzCrystal carlitz_crystal(const Poly& f, unsigned d, const Vec& theta) {
  const auto& F = f.field();
  if (f.degree() < 1 || f.lead() != 1) throw ModuleError("f must be monic of positive degree");
  auto lam = poly_quotient_algebra(f);
  auto r = field_extension_algebra(F, d);
  if (theta.size() != r->dim()) throw ModuleError("theta has the wrong size");
  Vec value = r->zero_vec();
  for (std::size_t k = f.coeffs().size(); k-- > 0;) value = r->add(r->mul(value, theta), r->scalar(f.coeff(k)));
  if (is_zero_vec(value)) throw ModuleError("f(theta) = 0: theta lies on the characteristic locus, t - theta is not invertible");
  auto s = TensorAlgebra::make(lam, r);
  const Vec t = f.degree() >= 2 ? lam->basis_vec(1) : lam->scalar(F->neg(f.coeff(0)));
  const Vec u = s->s()->sub(s->from_lambda(t), s->from_r(theta));
  return {s, artin_schreier(s, u), theta};
}

Vec primitive_element(const FiniteAlgebra& field) {
  if (!field.is_field()) throw ModuleError("not a field");
  const std::uint32_t q = field.field()->q();
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < field.dim(); ++i) order *= q;
  --order;
  std::vector<std::uint64_t> primes;
  std::uint64_t rest = order;
  for (std::uint64_t p = 2; p * p <= rest; ++p)
    if (rest % p == 0) {
      primes.push_back(p);
      while (rest % p == 0) rest /= p;
    }
  if (rest > 1) primes.push_back(rest);
  for (std::uint64_t code = 1; code <= order; ++code) {
    Vec x(field.dim());
    std::uint64_t c = code;
    for (auto& v : x) {
      v = static_cast<Elem>(c % q);
      c /= q;
    }
    bool gen = true;
    for (auto p : primes) gen = gen && field.pow(x, order / p) != field.one();
    if (gen) return x;
  }
  return field.one();
}

namespace {

std::vector<std::vector<Vec>> random_matrix(std::size_t r, Rng& rng, const std::function<Vec(Rng&)>& entry) {
  std::vector<std::vector<Vec>> u(r, std::vector<Vec>(r));
  for (auto& row : u)
    for (auto& x : row) x = entry(rng);
  return u;
}

bool invertible(const FiniteAlgebra& s, const std::vector<std::vector<Vec>>& u) {
  const std::size_t r = u.size(), ds = s.dim();
  Matrix b(s.field(), r * ds, r * ds);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) b.set_block(i * ds, j * ds, s.mult_matrix(u[i][j]));
  return rank(b) == r * ds;
}

}  // namespace

ModulePtr random_unit(const TensorPtr& s, std::size_t r, std::uint64_t seed) {
  if (r == 0) return zero_module(s);
  Rng rng(seed);
  const auto& S = *s->s();
  while (true) {
    auto u = random_matrix(r, rng, [&](Rng& g) { return random_element(S, g); });
    if (!invertible(S, u)) continue;
    auto m = free_module(s, u);
    if (!m->is_unit()) throw ModuleError("random unit module failed re-verification");
    return m;
  }
}

ModulePtr random_split_unit(const TensorPtr& s, const std::vector<std::size_t>& ranks, std::uint64_t seed) {
  const auto& ld = s->lambda()->local_data();
  if (ranks.size() != ld.factors.size()) throw ModuleError("need one rank per local factor of Lambda");
  Rng rng(seed);
  ModulePtr out = zero_module(s);
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] == 0) {
      rng();
      continue;
    }
    auto m = random_unit(s, ranks[i], rng());
    auto part = submodule(m, column_space(m->lambda_action(ld.factors[i].idempotent))).module;
    out = out->dim() ? direct_sum(out, part) : part;
  }
  return out;
}

ModulePtr random_nilpotent(const TensorPtr& s, std::size_t r, std::uint64_t seed) {
  if (r == 0) return zero_module(s);
  Rng rng(seed);
  const auto& S = *s->s();
  const auto& lam = *s->lambda();
  std::vector<Vec> rad;
  for (auto& lf : s->r()->local_data().factors)
    for (std::size_t k = 0; k < lf.maximal.dim(); ++k) rad.push_back(lf.maximal.vector(k));
  auto u = random_matrix(r, rng, [&](Rng& g) {
    Vec x = S.zero_vec();
    for (auto& m : rad) {
      const Vec l = random_element(lam, g);
      x = S.add(x, S.mul(s->from_lambda(l), s->from_r(m)));
    }
    return x;
  });
  return free_module(s, u);
}

ModulePtr nilpotent_example(const TensorPtr& s) {
  const auto& ld = s->r()->local_data();
  if (ld.factors.size() != 1) throw ModuleError("R is not local");
  if (ld.factors[0].maximal.dim() == 0) throw ModuleError("the maximal ideal of R is zero");
  return free_module(s, {{s->from_r(ld.factors[0].maximal.vector(0))}});
}

ModuleMorphism random_morphism(const ModulePtr& m, const ModulePtr& n, Rng& rng) {
  Matrix x(m->field(), n->dim(), m->dim());
  for (auto& h : hom_space(m, n)) x = x + h.matrix().scaled(static_cast<Elem>(rng() % m->field()->q()));
  return ModuleMorphism::make_unchecked(m, n, std::move(x));
}

VerifyReport frobenius_nonexact_demo(const AlgebraPtr& r) {
  VerifyReport rep{"kunz"};
  const auto& ld = r->local_data();
  if (ld.factors.size() != 1) throw ModuleError("R is not local");
  if (r->is_field()) {
    rep.verdict = Verdict::Vacuous;
    rep.detail = "R is regular (a field), Frobenius twist is exact";
    return rep;
  }
  auto s = TensorAlgebra::make(prime_algebra(r->field()), r);
  auto one = unit_module(s);
  std::vector<Vec> mvecs;
  for (std::size_t k = 0; k < ld.factors[0].maximal.dim(); ++k) mvecs.push_back(s->from_r(ld.factors[0].maximal.vector(k)));
  const Subspace mspace = Subspace::span(s->field(), s->dim(), mvecs);
  auto inc = submodule(one, mspace);
  auto proj = quotient_module(one, mspace);
  auto tm = frobenius_twist(inc.module), tr = frobenius_twist(one), tk = frobenius_twist(proj.module);
  auto fi = twist_morphism(inc.inclusion, tm, tr);
  auto fp = twist_morphism(proj.projection, tr, tk);
  const std::size_t ker = tm.module->dim() - rank(fi.matrix());
  nlohmann::json w = {{"dims", {inc.module->dim(), one->dim(), proj.module->dim()}},
                      {"twist_dims", {tm.module->dim(), tr.module->dim(), tk.module->dim()}},
                      {"twisted_inclusion_kernel_dim", ker},
                      {"twisted_sequence_composite_zero", (fp.matrix() * fi.matrix()).is_zero()}};
  if (ker == 0) {
    rep.fail("twisted inclusion F*(m) -> F*(R) is injective, no failure of exactness witnessed", w);
    return rep;
  }
  rep.witness = w;
  rep.detail = "F*(m) -> F*(R) has kernel of dimension " + std::to_string(ker) + "; twist dims " +
               std::to_string(tm.module->dim()) + ", " + std::to_string(tr.module->dim()) + ", " +
               std::to_string(tk.module->dim());
  return rep;
}

std::vector<CorpusRing> corpus_rings() {
  const auto f2 = make_field(2, 1), f3 = make_field(3, 1), f4 = make_field(2, 2);
  auto trunc = [](const FieldPtr& f, unsigned e) {
    std::vector<Elem> c(e + 1, 0);
    c[e] = 1;
    return poly_quotient_algebra(Poly(f, c));
  };
  auto quo = [](const FieldPtr& f, std::vector<Elem> c) { return poly_quotient_algebra(Poly(f, std::move(c))); };
  auto plane = [](const FieldPtr& f) { return truncated_polynomial_algebra(f, 2, 2); };
  auto field = [](const FieldPtr& f, unsigned d) { return field_extension_algebra(f, d); };
  auto pt = [](const FieldPtr& f) { return prime_algebra(f); };
  auto t = [](const AlgebraPtr& l, const AlgebraPtr& r) { return TensorAlgebra::make(l, r); };
  return {
      {"F2 | F2[x]/(x^3)", t(pt(f2), trunc(f2, 3))},
      {"F2 | F2[x,y]/(x,y)^2", t(pt(f2), plane(f2))},
      {"F3 | F3[x]/(x^2)", t(pt(f3), trunc(f3, 2))},
      {"F4/F2 | F2[x]/(x^2)", t(field(f2, 2), trunc(f2, 2))},
      {"F2[t]/(t^2) | F2[x]/(x^2)", t(trunc(f2, 2), trunc(f2, 2))},
      {"F2[t]/(t^2+t) | F4/F2", t(quo(f2, {0, 1, 1}), field(f2, 2))},
      {"F2 | F2[x]/(x^2) x F2", t(pt(f2), product_algebra(trunc(f2, 2), pt(f2)))},
      {"F2 | F8/F2", t(pt(f2), field(f2, 3))},
      {"F4 | F4[x]/(x^2)", t(pt(f4), trunc(f4, 2))},
      {"F3[t]/(t^2+1) | F3[x]/(x^2)", t(quo(f3, {1, 0, 1}), trunc(f3, 2))},
      {"F2[t]/(t^3+t+1) | F2[x]/(x^2)", t(quo(f2, {1, 1, 0, 1}), trunc(f2, 2))},
      {"F2[t]/(t^3) | F4/F2", t(trunc(f2, 3), field(f2, 2))},
      {"F3 | F9/F3", t(pt(f3), field(f3, 2))},
      {"F2[t]/(t^2) | F2[x,y]/(x,y)^2", t(trunc(f2, 2), plane(f2))},
      {"F4[t]/(t^2) | F16/F4", t(trunc(f4, 2), field(f4, 2))},
  };
}

std::vector<CorpusModule> unit_corpus(const std::vector<CorpusRing>& rings, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CorpusModule> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& ring = rings[i % rings.size()];
    const auto& s = ring.s;
    const std::size_t kind = (i / rings.size()) % 4;
    const std::uint64_t sub = rng();
    Rng local(sub);
    ModulePtr m;
    std::string name;
    const std::size_t factors = s->lambda()->local_data().factors.size();
    if (kind == 1 && factors > 1) {
      std::vector<std::size_t> ranks(factors);
      for (auto& r : ranks) r = local() % 3;
      if (std::all_of(ranks.begin(), ranks.end(), [](std::size_t r) { return r == 0; })) ranks[0] = 1;
      m = random_split_unit(s, ranks, local());
      name = "split";
    } else if (kind == 2) {
      auto a = random_unit(s, 1, local()), b = random_unit(s, 1, local());
      auto ab = direct_sum(a, b);
      m = cokernel(random_morphism(a, ab, local)).module;
      name = "cokernel";
    } else if (kind == 3) {
      auto a = random_unit(s, 1, local()), b = random_unit(s, 1, local());
      auto ab = direct_sum(a, b);
      m = kernel(random_morphism(ab, b, local)).module;
      name = "kernel";
    } else {
      m = random_unit(s, 1 + local() % 2, local());
      name = "free";
    }
    out.push_back({ring.name + " #" + std::to_string(i) + " " + name, m});
  }
  return out;
}

}  // namespace taumod
