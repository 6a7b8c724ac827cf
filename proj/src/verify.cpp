#include "taumod/verify.hpp"

#include <sstream>

namespace taumod {

using nlohmann::json;

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Vacuous: return "vacuous";
  }
  return "?";
}

void VerifyReport::fail(std::string why, json w) {
  if (verdict != Verdict::Fail) {
    verdict = Verdict::Fail;
    detail = std::move(why);
    witness = std::move(w);
  }
}

json VerifyReport::to_json(bool timings) const {
  json j = {{"check", check}, {"verdict", to_string(verdict)}, {"detail", detail}};
  if (!witness.is_null()) j["witness"] = witness;
  if (timings) j["seconds"] = seconds;
  return j;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

json vec_json(const Vec& v) { return json(std::vector<unsigned>(v.begin(), v.end())); }

json freeness_json(const FactorFreeness& f) {
  json lifts = json::array();
  for (auto& b : f.basis) lifts.push_back(vec_json(b));
  return {{"factor", f.factor}, {"module_dim", f.module_dim}, {"rank", f.rank}, {"free_dim", f.free_dim},
          {"lifts", lifts}};
}

std::string ranks_text(const std::vector<FactorFreeness>& parts) {
  std::string out = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + std::to_string(parts[i].rank);
  return out + "]";
}

}  // namespace

VerifyReport check_flat(const ModulePtr& m) {
  VerifyReport rep{"flat"};
  const auto& s = m->s();
  const auto parts = local_freeness(m, s->r(), s->copro_r());
  for (auto& p : parts)
    if (!p.free)
      rep.fail("not free over local factor " + std::to_string(p.factor) + " of R: lifted basis spans " +
                   std::to_string(p.free_dim) + " of " + std::to_string(p.module_dim) + " dimensions",
               freeness_json(p));
  if (!rep.failed()) rep.detail = "free over each local factor of R, ranks " + ranks_text(parts);
  return rep;
}

VerifyReport check_projective_over_S(const ModulePtr& m) {
  VerifyReport rep{"projective"};
  const auto& s = m->s();
  const auto parts = local_freeness(m, s->s(), Matrix::identity(s->field(), s->dim()));
  for (auto& p : parts)
    if (!p.free)
      rep.fail("not free over local factor " + std::to_string(p.factor) + " of S", freeness_json(p));
  if (rep.failed()) return rep;
  if (s->lambda()->is_field() && s->r()->is_connected())
    for (auto& p : parts)
      if (p.rank != parts[0].rank) {
        rep.fail("rank over S is not constant: " + ranks_text(parts), {{"ranks", ranks_text(parts)}});
        return rep;
      }
  rep.detail = "locally free over S, ranks " + ranks_text(parts);
  return rep;
}

VerifyReport check_invariant_ideal(const TensorPtr& s, const Ideal& i) {
  VerifyReport rep{"invariant-ideal"};
  if (!s->r()->is_connected()) {
    rep.verdict = Verdict::Vacuous;
    rep.detail = "hypothesis violation: R is not connected";
    return rep;
  }
  if (!is_F_invariant(*s, i)) {
    rep.verdict = Verdict::Vacuous;
    rep.detail = "ideal is not F-invariant";
    return rep;
  }
  const Ideal ext = ideal_extend(*s, ideal_contract(*s, i));
  if (ext == i) {
    rep.detail = "F-invariant ideal of dimension " + std::to_string(i.dim()) + " is extended from Lambda";
  } else {
    rep.fail("F-invariant ideal is not extended from Lambda",
             {{"ideal", matrix_json(i.space().basis())}, {"extension", matrix_json(ext.space().basis())}});
  }
  return rep;
}

// Descent -------------------------------------------------------------------

namespace {

const LocalFactor& local_factor(const TensorPtr& s) {
  const auto& ld = s->r()->local_data();
  if (ld.factors.size() != 1) throw ModuleError("R is not local");
  return ld.factors[0];
}

}  // namespace

TensorPtr residue_tensor(const TensorPtr& s) { return TensorAlgebra::make(s->lambda(), local_factor(s).residue); }

Matrix section_map(const TensorPtr& s) {
  return kron(Matrix::identity(s->field(), s->lambda()->dim()), local_factor(s).section);
}

Extension extend_from_residue(const ModulePtr& m0, const TensorPtr& s) {
  return extend_scalars(m0, s, section_map(s));
}

DescentResult artinian_descend(const ModulePtr& m, std::uint64_t seed) {
  const auto& s = m->s();
  const auto& lf = local_factor(s);
  if (!m->is_unit()) throw ModuleError("descent needs a unit module");
  const auto& F = m->field();
  const auto s0 = residue_tensor(s);
  const Matrix sec = section_map(s);

  SpanBuilder mm(F, m->dim());
  for (std::size_t k = 0; k < lf.maximal.dim(); ++k) {
    const Matrix a = m->r_action(lf.maximal.vector(k));
    for (std::size_t j = 0; j < m->dim(); ++j) mm.add(a.col(j));
  }
  const Quotient q(mm.finish());
  std::vector<Matrix> act;
  for (std::size_t b = 0; b < s0->dim(); ++b) act.push_back(induced_map(m->action(sec.col(b)), q, q));
  auto m0 = TauModule::make(s0, q.dim(), std::move(act), induced_map(m->tau(), q, q));

  auto ext = extend_from_residue(m0, s);
  auto iso = find_isomorphism(m, ext.module, seed);
  if (!iso) throw ModuleError("no isomorphism M -> (M/mM) (x)_k R found");

  DescentResult out{m0, ext, *iso, presentation(m, seed), Matrix(), lf.splitting_power, true};
  Matrix fr = Matrix::identity(F, s->dim());
  const Matrix frob = s->frobenius();
  for (unsigned k = 0; k < out.power; ++k) fr = frob * fr;
  const std::size_t ds = s->dim(), g = out.presentation.gens;
  out.frobenius_relations = Matrix(F, g * ds, out.presentation.relation_count());
  const Subspace over_k = column_space(sec);
  for (std::size_t j = 0; j < out.presentation.relation_count(); ++j)
    for (std::size_t i = 0; i < g; ++i) {
      const Vec e = fr.apply(out.presentation.entry(i, j, ds));
      for (std::size_t a = 0; a < ds; ++a) out.frobenius_relations(i * ds + a, j) = e[a];
      if (!over_k.contains(e)) out.relations_over_section = false;
    }
  return out;
}

EndOfUnit end_of_unit(const TensorPtr& s) {
  EndOfUnit out;
  out.fixed = nullspace(s->frobenius() - Matrix::identity(s->field(), s->dim()));
  out.dim = out.fixed.dim();
  out.connected = s->r()->is_connected();
  out.equals_lambda = out.fixed == column_space(s->copro_lambda());
  return out;
}

// Solutions -----------------------------------------------------------------

SolutionSpace solutions(const ModulePtr& m, unsigned n) {
  if (n == 0) throw ModuleError("extension degree must be positive");
  const auto& s = m->s();
  const auto& R = *s->r();
  const auto& F = m->field();
  SolutionSpace out;
  out.extension_degree = n;
  auto e = field_extension_algebra(F, n);
  out.cover = tensor_product_algebra(s->r(), e);
  out.component = out.cover->local_data().factors[0].idempotent;

  const Matrix frob_e = e->frobenius_matrix();
  const Matrix partial = kron(Matrix::identity(F, R.dim()), frob_e);
  Vec moved = partial.apply(out.component);
  while (moved != out.component) {
    moved = partial.apply(moved);
    ++out.orbit;
  }

  const std::size_t big = m->dim() * n;
  Matrix proj(F, big, big);
  for (std::size_t a = 0; a < R.dim(); ++a) {
    bool any = false;
    for (std::size_t b = 0; b < n; ++b) any = any || out.component[a * n + b];
    if (!any) continue;
    const Matrix ra = m->r_action(R.basis_vec(a));
    for (std::size_t b = 0; b < n; ++b)
      if (Elem c = out.component[a * n + b]) proj = proj + kron(ra, e->mult_matrix(e->basis_vec(b))).scaled(c);
  }
  const Matrix id = Matrix::identity(F, big);
  const Matrix tau = kron(m->tau(), frob_e);
  out.space = nullspace(vstack(tau - id, proj - id));
  out.basis = out.space.basis().transpose();

  const Matrix id_e = Matrix::identity(F, n);
  for (std::size_t a = 0; a < s->lambda()->dim(); ++a)
    out.lambda_action.push_back(
        restricted_map(kron(m->lambda_action(s->lambda()->basis_vec(a)), id_e), out.space, out.space));
  out.sigma = restricted_map(kron(Matrix::identity(F, m->dim()), frob_e).power(out.orbit), out.space, out.space);

  const auto& lam = s->lambda();
  if (lam->is_field()) {
    out.free_rank = out.dim() / lam->dim();
  } else {
    auto action = [&](const Vec& l) {
      Matrix x(F, out.dim(), out.dim());
      for (std::size_t a = 0; a < l.size(); ++a)
        if (l[a]) x = x + out.lambda_action[a].scaled(l[a]);
      return x;
    };
    const auto parts = local_freeness(out.dim(), action, lam);
    bool free = true;
    for (auto& p : parts) free = free && p.free && p.rank == parts[0].rank;
    if (free) out.free_rank = parts.empty() ? 0 : parts[0].rank;
  }
  return out;
}

Matrix solutions_map(const ModuleMorphism& alpha, const SolutionSpace& src, const SolutionSpace& tgt) {
  if (src.extension_degree != tgt.extension_degree || src.component != tgt.component)
    throw ModuleError("solution spaces over different covers");
  const Matrix op = kron(alpha.matrix(), Matrix::identity(alpha.source()->field(), src.extension_degree));
  return restricted_map(op, src.space, tgt.space);
}

std::vector<Vec> charpoly_over(const FiniteAlgebra& a, const std::vector<std::vector<Vec>>& m) {
  const std::size_t n = m.size();
  std::vector<Vec> p = {a.one()};  // highest degree first
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Vec> t = {a.one(), a.sub(a.zero_vec(), m[k][k])};
    // column k above the diagonal, repeatedly multiplied by the leading block
    std::vector<Vec> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = m[i][k];
    for (std::size_t power = 0; power < k; ++power) {
      Vec rc = a.zero_vec();
      for (std::size_t i = 0; i < k; ++i) rc = a.add(rc, a.mul(m[k][i], c[i]));
      t.push_back(a.sub(a.zero_vec(), rc));
      std::vector<Vec> next(k, a.zero_vec());
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) next[i] = a.add(next[i], a.mul(m[i][j], c[j]));
      c = std::move(next);
    }
    std::vector<Vec> np(k + 2, a.zero_vec());
    for (std::size_t i = 0; i < k + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, k); ++j) np[i] = a.add(np[i], a.mul(t[i - j], p[j]));
    p = std::move(np);
  }
  return std::vector<Vec>(p.rbegin(), p.rend());
}

std::string format_poly_over(const FiniteAlgebra& a, const std::vector<Vec>& coeffs) {
  const auto& F = *a.field();
  auto elem = [&](const Vec& v) {
    if (a.dim() == 1) return F.format(v[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + F.format(v[i]);
    return s + ")";
  };
  std::string out;
  for (std::size_t d = coeffs.size(); d-- > 0;) {
    const Vec& c = coeffs[d];
    if (is_zero_vec(c)) continue;
    std::string mono = d == 0 ? "" : d == 1 ? "X" : "X^" + std::to_string(d);
    std::string term;
    if (c == a.one() && d > 0) term = mono;
    else if (d == 0) term = elem(c);
    else term = elem(c) + "*" + mono;
    out += (out.empty() ? "" : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

GaloisCharpoly galois_charpoly(const ModulePtr& m, unsigned max_multiple) {
  const auto& s = m->s();
  const auto& lam = s->lambda();
  if (!lam->is_field()) throw ModuleError("charpoly needs Lambda to be a field");
  if (!s->r()->is_field()) throw ModuleError("charpoly needs R to be a field");
  if (!m->is_unit()) throw ModuleError("charpoly needs a unit module");
  const std::size_t d = s->r()->dim(), dl = lam->dim();
  const std::size_t rank = m->dim() / s->dim();
  const auto& F = m->field();
  std::string partial;
  for (std::size_t n = d; n <= max_multiple * d; n += d) {
    auto sol = solutions(m, static_cast<unsigned>(n));
    partial += (partial.empty() ? "" : ", ") + std::to_string(n) + ":" + std::to_string(sol.dim());
    if (sol.dim() != rank * dl) continue;
    GaloisCharpoly out;
    out.rank = rank;
    auto action = [&](const Vec& l) {
      Matrix x(F, sol.dim(), sol.dim());
      for (std::size_t a = 0; a < l.size(); ++a)
        if (l[a]) x = x + sol.lambda_action[a].scaled(l[a]);
      return x;
    };
    const auto basis = local_freeness(sol.dim(), action, lam)[0].basis;
    Matrix b(F, sol.dim(), rank * dl);
    for (std::size_t j = 0; j < rank; ++j)
      for (std::size_t a = 0; a < dl; ++a) b.set_col(j * dl + a, sol.lambda_action[a].apply(basis[j]));
    const auto binv = inverse(b);
    if (!binv) throw ModuleError("solution space is not free over Lambda");
    std::vector<std::vector<Vec>> entries(rank, std::vector<Vec>(rank));
    out.sigma_lambda = Matrix(F, rank, rank * dl);
    for (std::size_t j = 0; j < rank; ++j) {
      const Vec c = binv->apply(sol.sigma.apply(basis[j]));
      for (std::size_t i = 0; i < rank; ++i) {
        entries[i][j] = Vec(c.begin() + i * dl, c.begin() + (i + 1) * dl);
        for (std::size_t a = 0; a < dl; ++a) out.sigma_lambda(i, j * dl + a) = entries[i][j][a];
      }
    }
    out.coeffs = charpoly_over(*lam, entries);
    out.sol = std::move(sol);
    return out;
  }
  throw ModuleError("Lang trivialization not reached for n <= " + std::to_string(max_multiple) + " deg R; dim Sol by n: " + partial);
}

// Pullback and fiber functors ---------------------------------------------

namespace {

// 0 -> A -i-> B -p-> C -> 0 stays exact after base change along f.
bool exact_after(const AlgebraMap& f, const ModuleMorphism& i, const ModuleMorphism& p, json& w) {
  const Matrix bi = base_change_morphism(i, f, Side::R).matrix();
  const Matrix bp = base_change_morphism(p, f, Side::R).matrix();
  const std::size_t a = bi.cols(), b = bi.rows(), c = bp.rows();
  const bool ok = rank(bi) == a && rank(bp) == c && (bp * bi).is_zero() && a + c == b;
  if (!ok) w = {{"dims", {a, b, c}}, {"rank_i", rank(bi)}, {"rank_p", rank(bp)}};
  return ok;
}

bool sequences_exact(const AlgebraMap& f, const ModuleMorphism& alpha, json& w) {
  const auto k = kernel(alpha);
  const auto image = cokernel(k.inclusion);
  if (!exact_after(f, k.inclusion, image.projection, w)) return false;
  const auto c = cokernel(alpha);
  const auto i = kernel(c.projection);
  return exact_after(f, i.inclusion, c.projection, w);
}

}  // namespace

VerifyReport check_pullback(const AlgebraMap& f, const std::vector<ModulePtr>& modules,
                            const std::vector<ModuleMorphism>& morphisms) {
  VerifyReport rep{"pullback"};
  if (f.target()->dim() == 0) {
    rep.verdict = Verdict::Vacuous;
    rep.detail = "hypothesis violation: R' is the zero ring";
    return rep;
  }
  if (!f.source()->is_connected()) {
    rep.verdict = Verdict::Vacuous;
    rep.detail = "hypothesis violation: R is not connected";
    return rep;
  }
  for (std::size_t k = 0; k < modules.size() && !rep.failed(); ++k) {
    const auto bc = base_change(modules[k], f, Side::R);
    if (bc.module->dim() == 0 && modules[k]->dim() != 0)
      rep.fail("not conservative: nonzero module with zero base change", {{"module", k}});
  }
  for (std::size_t k = 0; k < morphisms.size() && !rep.failed(); ++k) {
    const auto& a = morphisms[k];
    if (base_change_morphism(a, f, Side::R).is_zero() && !a.is_zero())
      rep.fail("not faithful: nonzero morphism with zero base change", {{"morphism", k}});
    json w;
    if (!rep.failed() && !sequences_exact(f, a, w)) {
      w["morphism"] = k;
      rep.fail("not exact on the kernel/cokernel sequences of a morphism", w);
    }
  }
  if (!rep.failed())
    rep.detail = "exact, faithful and conservative on " + std::to_string(modules.size()) + " modules and " +
                 std::to_string(morphisms.size()) + " morphisms";
  return rep;
}

AlgebraMap residue_point(const AlgebraPtr& r, std::size_t factor) {
  const auto& lf = r->local_data().factors.at(factor);
  return AlgebraMap::make(r, lf.residue, lf.residue_map);
}

VerifyReport check_fiber_functor(const AlgebraMap& point, const std::vector<ModulePtr>& modules,
                                 const std::vector<ModuleMorphism>& morphisms,
                                 const std::vector<std::pair<ModulePtr, ModulePtr>>& pairs) {
  VerifyReport rep{"fiber-functor"};
  const std::size_t k = point.target()->dim();
  if (!modules.empty()) {
    const auto one = unit_module(modules[0]->s());
    const auto fib = base_change(one, point, Side::R).module;
    if (fib->dim() != one->s()->lambda()->dim() * k)
      rep.fail("fiber of the unit object is not of rank one", {{"fiber_dim", fib->dim()}});
  }
  for (std::size_t i = 0; i < morphisms.size() && !rep.failed(); ++i) {
    json w;
    if (!sequences_exact(point, morphisms[i], w)) {
      w["morphism"] = i;
      rep.fail("fiber functor not exact", w);
    }
  }
  for (std::size_t i = 0; i < pairs.size() && !rep.failed(); ++i) {
    const auto& [m, n] = pairs[i];
    const auto lhs = base_change(tensor(m, n), point, Side::R).module;
    const auto fm = base_change(m, point, Side::R).module;
    const auto fn = base_change(n, point, Side::R).module;
    const auto rhs = tensor(fm, fn);
    if (!find_isomorphism(lhs, rhs, i).has_value())
      rep.fail("fiber of a tensor product differs from the tensor product of fibers",
               {{"pair", i}, {"dims", {lhs->dim(), rhs->dim()}}});
  }
  if (!rep.failed())
    rep.detail = "exact on " + std::to_string(morphisms.size()) + " morphisms, monoidal on " +
                 std::to_string(pairs.size()) + " pairs";
  return rep;
}

}  // namespace taumod
