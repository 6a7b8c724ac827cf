#include "taumod/module.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

namespace taumod {

namespace {

Vec kron_vec(const FieldPtr& f, const Vec& x, const Vec& y) {
  Vec out(x.size() * y.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) f->axpy(out.data() + i * y.size(), y.data(), x[i], y.size());
  return out;
}

// Matrix of an ambient operator, given column by column, on quotients.
Matrix induced_cols(const FieldPtr& f, const std::function<Vec(std::size_t)>& col, const Quotient& src,
                    const Quotient& tgt) {
  Matrix out(f, tgt.dim(), src.dim());
  for (std::size_t i = 0; i < src.dim(); ++i) out.set_col(i, tgt.project(col(src.free_columns()[i])));
  return out;
}

// Operator A (x) B applied to the ambient unit vector at index i*nb + j.
std::function<Vec(std::size_t)> kron_cols(const FieldPtr& f, const Matrix& a, const Matrix& b) {
  return [f, &a, &b](std::size_t idx) {
    const std::size_t nb = b.cols();
    return kron_vec(f, a.col(idx / nb), b.col(idx % nb));
  };
}

std::string pair_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

}  // namespace

// TauModule -----------------------------------------------------------------

ModulePtr TauModule::make_unchecked(TensorPtr s, std::size_t dim, std::vector<Matrix> act, Matrix tau) {
  if (act.size() != s->dim()) throw ModuleError("need one action matrix per basis element of S");
  for (auto& a : act)
    if (a.rows() != dim || a.cols() != dim) throw ModuleError("action matrix has the wrong shape");
  if (tau.rows() != dim || tau.cols() != dim) throw ModuleError("tau matrix has the wrong shape");
  auto m = std::shared_ptr<TauModule>(new TauModule());
  m->s_ = std::move(s);
  m->dim_ = dim;
  m->act_ = std::move(act);
  m->tau_ = std::move(tau);
  return m;
}

ModulePtr TauModule::make(TensorPtr s, std::size_t dim, std::vector<Matrix> act, Matrix tau) {
  auto m = make_unchecked(std::move(s), dim, std::move(act), std::move(tau));
  const auto& S = *m->s_->s();
  const std::size_t ds = S.dim();
  for (auto& a : m->act_)
    for (auto c : a.data())
      if (c >= S.field()->q()) throw ModuleError("matrix entry outside the base field");
  for (auto c : m->tau_.data())
    if (c >= S.field()->q()) throw ModuleError("matrix entry outside the base field");
  if (!m->action(S.one()).is_identity()) throw ModuleError("the unit of S does not act as the identity");
  for (std::size_t i = 0; i < ds; ++i)
    for (std::size_t j = 0; j < ds; ++j) {
      const Vec prod(S.basis_product(i, j), S.basis_product(i, j) + ds);
      if (m->act_[i] * m->act_[j] != m->action(prod))
        throw ModuleError("module axiom act(e_i)act(e_j) = act(e_i e_j) fails on basis pair " + pair_name(i, j));
    }
  for (std::size_t k = 0; k < ds; ++k)
    if (m->tau_ * m->act_[k] != m->action(m->s_->F(S.basis_vec(k))) * m->tau_)
      throw ModuleError("semilinearity tau act(s) = act(F s) tau fails on basis element e_" + std::to_string(k));
  return m;
}

Matrix TauModule::action(const Vec& s) const {
  Matrix out(field(), dim_, dim_);
  const auto& F = field();
  for (std::size_t k = 0; k < act_.size(); ++k) {
    if (!s[k]) continue;
    for (std::size_t r = 0; r < dim_; ++r) F->axpy(out.row_ptr(r), act_[k].row_ptr(r), s[k], dim_);
  }
  return out;
}

bool TauModule::is_unit() const {
  return unit_.get([this] {
    const auto tw = frobenius_twist(shared_from_this());
    return tw.unit_section.has_value();
  });
}

bool TauModule::is_nilpotent() const {
  return nilpotent_.get([this] { return dim_ == 0 || tau_.power(dim_).is_zero(); });
}

bool TauModule::same_as(const TauModule& o) const {
  return same_tensor(s_, o.s_) && dim_ == o.dim_ && tau_ == o.tau_ && act_ == o.act_;
}

bool same_module(const ModulePtr& a, const ModulePtr& b) { return a == b || (a && b && a->same_as(*b)); }

// Morphisms -----------------------------------------------------------------

ModuleMorphism ModuleMorphism::make_unchecked(ModulePtr source, ModulePtr target, Matrix mat) {
  if (mat.rows() != target->dim() || mat.cols() != source->dim()) throw ModuleError("morphism matrix has the wrong shape");
  return ModuleMorphism(std::move(source), std::move(target), std::move(mat));
}

ModuleMorphism ModuleMorphism::make(ModulePtr source, ModulePtr target, Matrix mat) {
  if (!same_tensor(source->s(), target->s())) throw ModuleError("morphism between modules over different rings");
  auto out = make_unchecked(std::move(source), std::move(target), std::move(mat));
  const auto& M = *out.source_;
  const auto& N = *out.target_;
  for (auto c : out.mat_.data())
    if (c >= M.field()->q()) throw ModuleError("matrix entry outside the base field");
  for (auto& g : M.s()->s()->generators())
    if (out.mat_ * M.action(g) != N.action(g) * out.mat_) throw ModuleError("morphism is not S-linear");
  if (out.mat_ * M.tau() != N.tau() * out.mat_) throw ModuleError("morphism does not commute with tau");
  return out;
}

ModuleMorphism ModuleMorphism::identity(const ModulePtr& m) {
  return ModuleMorphism(m, m, Matrix::identity(m->field(), m->dim()));
}

ModuleMorphism ModuleMorphism::zero(const ModulePtr& source, const ModulePtr& target) {
  return ModuleMorphism(source, target, Matrix(source->field(), target->dim(), source->dim()));
}

bool ModuleMorphism::is_isomorphism() const {
  if (mat_.rows() != mat_.cols()) return false;
  return rank(mat_) == mat_.rows();
}

ModuleMorphism ModuleMorphism::then(const ModuleMorphism& g) const {
  if (!same_module(target_, g.source_)) throw ModuleError("cannot compose morphisms with mismatched ends");
  return ModuleMorphism(source_, g.target_, g.mat_ * mat_);
}

ModuleMorphism ModuleMorphism::operator+(const ModuleMorphism& o) const {
  if (!same_module(source_, o.source_) || !same_module(target_, o.target_))
    throw ModuleError("cannot add morphisms between different modules");
  return ModuleMorphism(source_, target_, mat_ + o.mat_);
}

// Constructions -------------------------------------------------------------

ModulePtr free_module(const TensorPtr& s, const std::vector<std::vector<Vec>>& u) {
  const auto& S = *s->s();
  const auto& F = S.field();
  const std::size_t r = u.size(), ds = S.dim(), n = r * ds;
  std::vector<Matrix> act;
  act.reserve(ds);
  for (std::size_t b = 0; b < ds; ++b) act.push_back(kron(Matrix::identity(F, r), S.mult_matrix(S.basis_vec(b))));
  Matrix tau(F, n, n);
  const Matrix& frob = s->frobenius();
  for (std::size_t i = 0; i < r; ++i) {
    if (u[i].size() != r) throw ModuleError("matrix U must be square");
    for (std::size_t j = 0; j < r; ++j) tau.set_block(i * ds, j * ds, S.mult_matrix(u[i][j]) * frob);
  }
  return TauModule::make(s, n, std::move(act), std::move(tau));
}

ModulePtr unit_module(const TensorPtr& s) { return free_module(s, {{s->s()->one()}}); }

ModulePtr cyclic_module(const TensorPtr& s, const Ideal& i) {
  const auto& S = *s->s();
  for (std::size_t k = 0; k < i.dim(); ++k)
    if (!i.contains(s->F(i.space().vector(k)))) throw ModuleError("F does not preserve the ideal, so tau is not induced");
  const Quotient q(i.space());
  std::vector<Matrix> act;
  for (std::size_t b = 0; b < S.dim(); ++b) act.push_back(induced_map(S.mult_matrix(S.basis_vec(b)), q, q));
  return TauModule::make(s, q.dim(), std::move(act), induced_map(s->frobenius(), q, q));
}

ModulePtr zero_module(const TensorPtr& s) {
  const auto& F = s->field();
  return TauModule::make_unchecked(s, 0, std::vector<Matrix>(s->dim(), Matrix(F, 0, 0)), Matrix(F, 0, 0));
}

ModulePtr direct_sum(const ModulePtr& m, const ModulePtr& n) {
  if (!same_tensor(m->s(), n->s())) throw ModuleError("direct sum of modules over different rings");
  const auto& F = m->field();
  const std::size_t a = m->dim(), b = n->dim();
  auto blockdiag = [&](const Matrix& x, const Matrix& y) {
    Matrix out(F, a + b, a + b);
    out.set_block(0, 0, x);
    out.set_block(a, a, y);
    return out;
  };
  std::vector<Matrix> act;
  for (std::size_t k = 0; k < m->s()->dim(); ++k) act.push_back(blockdiag(m->act(k), n->act(k)));
  return TauModule::make_unchecked(m->s(), a + b, std::move(act), blockdiag(m->tau(), n->tau()));
}

// Scalar extension ---------------------------------------------------------

Extension extend_scalars(const ModulePtr& m, const TensorPtr& target, const Matrix& h) {
  const auto& S = *m->s()->s();
  const auto& T = *target->s();
  const auto& F = T.field();
  if (h.rows() != T.dim() || h.cols() != S.dim()) throw ModuleError("ring map has the wrong shape");
  const std::size_t n = m->dim(), dt = T.dim(), amb = dt * n;
  SpanBuilder rel(F, amb);
  for (auto& g : S.generators()) {
    const Matrix lhg = T.mult_matrix(h.apply(g));
    const Matrix ag = m->action(g);
    for (std::size_t a = 0; a < dt && !rel.full(); ++a) {
      const Vec eah = lhg.col(a);
      for (std::size_t j = 0; j < n; ++j) {
        Vec v = kron_vec(F, eah, unit_vec(n, j));
        const Vec w = ag.col(j);
        for (std::size_t i = 0; i < n; ++i) v[a * n + i] = F->sub(v[a * n + i], w[i]);
        rel.add(std::move(v));
      }
    }
  }
  Extension out;
  out.quotient = Quotient(rel.finish());
  const Quotient& q = out.quotient;
  std::vector<Matrix> act;
  act.reserve(dt);
  const Matrix id = Matrix::identity(F, n);
  for (std::size_t b = 0; b < dt; ++b) {
    const Matrix lb = T.mult_matrix(T.basis_vec(b));
    act.push_back(induced_cols(F, kron_cols(F, lb, id), q, q));
  }
  Matrix tau = induced_cols(F, kron_cols(F, target->frobenius(), m->tau()), q, q);
  out.module = TauModule::make_unchecked(target, q.dim(), std::move(act), std::move(tau));
  return out;
}

ModuleMorphism extend_morphism(const ModuleMorphism& alpha, const Extension& src, const Extension& tgt,
                               const TensorPtr& target) {
  const auto& F = target->field();
  const Matrix id = Matrix::identity(F, target->dim());
  Matrix mat = induced_cols(F, kron_cols(F, id, alpha.matrix()), src.quotient, tgt.quotient);
  return ModuleMorphism::make_unchecked(src.module, tgt.module, std::move(mat));
}

TwistData frobenius_twist(const ModulePtr& m) {
  TwistData out;
  const auto& s = m->s();
  out.extension = extend_scalars(m, s, s->frobenius());
  out.module = out.extension.module;
  const auto& F = m->field();
  const std::size_t n = m->dim();
  const Quotient& q = out.extension.quotient;
  const Matrix tau = m->tau();
  out.phi_lin = Matrix(F, n, q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) {
    const std::size_t idx = q.free_columns()[i];
    out.phi_lin.set_col(i, m->act(idx / n).apply(tau.col(idx % n)));
  }
  if (q.dim() == n) out.unit_section = inverse(out.phi_lin);
  return out;
}

ModuleMorphism twist_morphism(const ModuleMorphism& alpha, const TwistData& src, const TwistData& tgt) {
  return extend_morphism(alpha, src.extension, tgt.extension, alpha.source()->s());
}

ModuleMorphism phi_morphism(const ModulePtr& m, const TwistData& twist) {
  return ModuleMorphism::make_unchecked(twist.module, m, twist.phi_lin);
}

TensorPtr base_change_target(const TensorPtr& s, const AlgebraMap& g, Side side) {
  if (side == Side::R) {
    if (!same_algebra(g.source(), s->r())) throw ModuleError("base change map does not start at R");
    return TensorAlgebra::make(s->lambda(), g.target());
  }
  if (!same_algebra(g.source(), s->lambda())) throw ModuleError("base change map does not start at Lambda");
  return TensorAlgebra::make(g.target(), s->r());
}

Matrix base_change_ring_map(const TensorPtr& s, const AlgebraMap& g, Side side) {
  return side == Side::R ? s->induced_on_r(g.matrix()) : s->induced_on_lambda(g.matrix());
}

Extension base_change(const ModulePtr& m, const AlgebraMap& g, Side side) {
  return extend_scalars(m, base_change_target(m->s(), g, side), base_change_ring_map(m->s(), g, side));
}

ModuleMorphism base_change_morphism(const ModuleMorphism& alpha, const AlgebraMap& g, Side side) {
  const auto target = base_change_target(alpha.source()->s(), g, side);
  const Matrix h = base_change_ring_map(alpha.source()->s(), g, side);
  const Extension src = extend_scalars(alpha.source(), target, h);
  const Extension tgt = extend_scalars(alpha.target(), target, h);
  return extend_morphism(alpha, src, tgt, target);
}

// Predicates ----------------------------------------------------------------

bool is_unit(const ModulePtr& m) { return m->is_unit(); }
bool is_nilpotent(const ModulePtr& m) { return m->is_nilpotent(); }

bool is_nil_isomorphism(const ModuleMorphism& alpha) {
  return kernel(alpha).module->is_nilpotent() && cokernel(alpha).module->is_nilpotent();
}

std::vector<ModuleMorphism> hom_space(const ModulePtr& m, const ModulePtr& n) {
  if (!same_tensor(m->s(), n->s())) throw ModuleError("Hom between modules over different rings");
  const auto& F = m->field();
  const std::size_t nm = m->dim(), nn = n->dim(), unknowns = nm * nn;
  std::vector<ModuleMorphism> out;
  if (unknowns == 0) return out;
  std::vector<std::pair<Matrix, Matrix>> ops;
  for (auto& g : m->s()->s()->generators()) ops.emplace_back(m->action(g), n->action(g));
  ops.emplace_back(m->tau(), n->tau());
  // X A - B X = 0 with X[i][k] at index i*nm + k
  Matrix eq(F, ops.size() * unknowns, unknowns);
  std::size_t row = 0;
  for (auto& [a, b] : ops) {
    for (std::size_t i = 0; i < nn; ++i)
      for (std::size_t j = 0; j < nm; ++j, ++row) {
        Elem* r = eq.row_ptr(row);
        for (std::size_t k = 0; k < nm; ++k) r[i * nm + k] = F->add(r[i * nm + k], a(k, j));
        for (std::size_t k = 0; k < nn; ++k) r[k * nm + j] = F->sub(r[k * nm + j], b(i, k));
      }
  }
  const Subspace sol = nullspace(eq);
  for (std::size_t t = 0; t < sol.dim(); ++t) {
    const Vec v = sol.vector(t);
    Matrix x(F, nn, nm);
    std::copy(v.begin(), v.end(), x.row_ptr(0));
    out.push_back(ModuleMorphism::make_unchecked(m, n, std::move(x)));
  }
  return out;
}

std::optional<ModuleMorphism> find_isomorphism(const ModulePtr& m, const ModulePtr& n, std::uint64_t seed,
                                               std::size_t tries) {
  if (m->dim() != n->dim()) return std::nullopt;
  if (m->dim() == 0) return ModuleMorphism::zero(m, n);
  const auto hom = hom_space(m, n);
  if (hom.empty()) return std::nullopt;
  const auto& F = m->field();
  const std::uint32_t q = F->q();
  auto combo = [&](const std::vector<Elem>& c) {
    Matrix x(F, n->dim(), m->dim());
    for (std::size_t t = 0; t < hom.size(); ++t)
      if (c[t]) x = x + hom[t].matrix().scaled(c[t]);
    return x;
  };
  auto accept = [&](const Matrix& x) { return rank(x) == x.rows(); };
  double total = 1;
  for (std::size_t t = 0; t < hom.size(); ++t) total *= q;
  if (total <= 4096) {
    std::vector<Elem> c(hom.size(), 0);
    while (true) {
      std::size_t t = 0;
      while (t < c.size() && ++c[t] == q) c[t++] = 0;
      if (t == c.size()) break;
      Matrix x = combo(c);
      if (accept(x)) return ModuleMorphism::make_unchecked(m, n, std::move(x));
    }
    return std::nullopt;
  }
  for (auto& h : hom)
    if (accept(h.matrix())) return h;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> dist(0, q - 1);
  for (std::size_t k = 0; k < tries; ++k) {
    std::vector<Elem> c(hom.size());
    for (auto& v : c) v = static_cast<Elem>(dist(rng));
    Matrix x = combo(c);
    if (accept(x)) return ModuleMorphism::make_unchecked(m, n, std::move(x));
  }
  return std::nullopt;
}

KernelData submodule(const ModulePtr& m, const Subspace& sub) {
  std::vector<Matrix> act;
  for (auto& a : m->acts()) act.push_back(restricted_map(a, sub, sub));
  Matrix tau = restricted_map(m->tau(), sub, sub);
  auto k = TauModule::make_unchecked(m->s(), sub.dim(), std::move(act), std::move(tau));
  return {k, ModuleMorphism::make_unchecked(k, m, sub.basis().transpose())};
}

CokernelData quotient_module(const ModulePtr& m, const Subspace& sub) {
  for (std::size_t i = 0; i < sub.dim(); ++i) {
    const Vec v = sub.vector(i);
    if (!sub.contains(m->tau().apply(v))) throw ModuleError("subspace is not tau-stable");
    for (auto& a : m->acts())
      if (!sub.contains(a.apply(v))) throw ModuleError("subspace is not an S-submodule");
  }
  const Quotient q(sub);
  std::vector<Matrix> act;
  for (auto& a : m->acts()) act.push_back(induced_map(a, q, q));
  auto c = TauModule::make_unchecked(m->s(), q.dim(), std::move(act), induced_map(m->tau(), q, q));
  return {c, ModuleMorphism::make_unchecked(m, c, q.projection_matrix())};
}

KernelData kernel(const ModuleMorphism& alpha) { return submodule(alpha.source(), nullspace(alpha.matrix())); }

CokernelData cokernel(const ModuleMorphism& alpha) {
  return quotient_module(alpha.target(), column_space(alpha.matrix()));
}

Subspace generated_submodule(const ModulePtr& m, const std::vector<Vec>& vectors, bool tau_stable) {
  SpanBuilder span(m->field(), m->dim());
  std::vector<Matrix> ops;
  for (auto& g : m->s()->s()->generators()) ops.push_back(m->action(g));
  if (tau_stable) ops.push_back(m->tau());
  std::vector<Vec> queue;
  for (auto& v : vectors)
    if (span.add(v)) queue.push_back(v);
  while (!queue.empty()) {
    Vec v = std::move(queue.back());
    queue.pop_back();
    for (auto& op : ops) {
      Vec w = op.apply(v);
      if (span.add(w)) queue.push_back(std::move(w));
    }
  }
  return span.finish();
}

// Monoidal structure --------------------------------------------------------

TensorProduct tensor_product(const ModulePtr& m, const ModulePtr& n) {
  if (!same_tensor(m->s(), n->s())) throw ModuleError("tensor product of modules over different rings");
  const auto& F = m->field();
  const std::size_t nm = m->dim(), nn = n->dim(), amb = nm * nn;
  SpanBuilder rel(F, amb);
  for (auto& g : m->s()->s()->generators()) {
    const Matrix am = m->action(g), an = n->action(g);
    for (std::size_t i = 0; i < nm && !rel.full(); ++i) {
      const Vec ami = am.col(i);
      for (std::size_t j = 0; j < nn; ++j) {
        Vec v = kron_vec(F, ami, unit_vec(nn, j));
        const Vec w = an.col(j);
        for (std::size_t k = 0; k < nn; ++k) v[i * nn + k] = F->sub(v[i * nn + k], w[k]);
        rel.add(std::move(v));
      }
    }
  }
  TensorProduct out;
  out.left = m;
  out.right = n;
  out.quotient = Quotient(rel.finish());
  const Quotient& q = out.quotient;
  std::vector<Matrix> act;
  const Matrix id = Matrix::identity(F, nn);
  for (auto& a : m->acts()) act.push_back(induced_cols(F, kron_cols(F, a, id), q, q));
  Matrix tau = induced_cols(F, kron_cols(F, m->tau(), n->tau()), q, q);
  out.module = TauModule::make_unchecked(m->s(), q.dim(), std::move(act), std::move(tau));
  return out;
}

ModuleMorphism tensor_morphism(const ModuleMorphism& a, const ModuleMorphism& b, const TensorProduct& src,
                               const TensorProduct& tgt) {
  const auto& F = a.source()->field();
  Matrix mat = induced_cols(F, kron_cols(F, a.matrix(), b.matrix()), src.quotient, tgt.quotient);
  return ModuleMorphism::make_unchecked(src.module, tgt.module, std::move(mat));
}

ModuleMorphism tensor_morphism(const ModuleMorphism& a, const ModuleMorphism& b) {
  return tensor_morphism(a, b, tensor_product(a.source(), b.source()), tensor_product(a.target(), b.target()));
}

ModuleMorphism left_unitor(const TensorProduct& one_m) {
  const auto& m = one_m.right;
  const std::size_t nm = m->dim();
  const Quotient& q = one_m.quotient;
  Matrix mat(m->field(), nm, q.dim());
  for (std::size_t c = 0; c < q.dim(); ++c) {
    const std::size_t idx = q.free_columns()[c];
    mat.set_col(c, m->act(idx / nm).col(idx % nm));
  }
  return ModuleMorphism::make_unchecked(one_m.module, m, std::move(mat));
}

ModuleMorphism right_unitor(const TensorProduct& m_one) {
  const auto& m = m_one.left;
  const std::size_t ds = m->s()->dim();
  const Quotient& q = m_one.quotient;
  Matrix mat(m->field(), m->dim(), q.dim());
  for (std::size_t c = 0; c < q.dim(); ++c) {
    const std::size_t idx = q.free_columns()[c];
    mat.set_col(c, m->act(idx % ds).col(idx / ds));
  }
  return ModuleMorphism::make_unchecked(m_one.module, m, std::move(mat));
}

ModuleMorphism associator(const TensorProduct& mn, const TensorProduct& mn_p, const TensorProduct& np,
                          const TensorProduct& m_np) {
  const auto& F = mn.left->field();
  const std::size_t nn = mn.right->dim(), np_dim = np.right->dim();
  const std::size_t npq = np.module->dim();
  const Quotient& src = mn_p.quotient;
  Matrix mat(F, m_np.module->dim(), src.dim());
  for (std::size_t c = 0; c < src.dim(); ++c) {
    const std::size_t idx = src.free_columns()[c];
    const std::size_t u = idx / np_dim, k = idx % np_dim;
    const std::size_t ij = mn.quotient.free_columns()[u];
    const std::size_t i = ij / nn, j = ij % nn;
    const Vec w = np.quotient.project(unit_vec(nn * np_dim, j * np_dim + k));
    Vec amb(mn.left->dim() * npq, 0);
    std::copy(w.begin(), w.end(), amb.begin() + i * npq);
    mat.set_col(c, m_np.quotient.project(amb));
  }
  return ModuleMorphism::make_unchecked(mn_p.module, m_np.module, std::move(mat));
}

ModuleMorphism braiding(const TensorProduct& mn, const TensorProduct& nm) {
  const std::size_t a = mn.left->dim(), b = mn.right->dim();
  const Quotient& src = mn.quotient;
  Matrix mat(mn.left->field(), nm.module->dim(), src.dim());
  for (std::size_t c = 0; c < src.dim(); ++c) {
    const std::size_t idx = src.free_columns()[c];
    mat.set_col(c, nm.quotient.project(unit_vec(a * b, (idx % b) * a + idx / b)));
  }
  return ModuleMorphism::make_unchecked(mn.module, nm.module, std::move(mat));
}

// Local freeness ------------------------------------------------------------

std::vector<FactorFreeness> local_freeness(std::size_t n, const std::function<Matrix(const Vec&)>& action,
                                           const AlgebraPtr& t) {
  std::vector<FactorFreeness> out;
  const auto& F = t->field();
  const auto& ld = t->local_data();
  for (std::size_t i = 0; i < ld.factors.size(); ++i) {
    const auto& lf = ld.factors[i];
    FactorFreeness ff;
    ff.factor = i;
    const Subspace v = column_space(action(lf.idempotent));
    ff.module_dim = v.dim();
    std::vector<Matrix> mm;
    for (std::size_t k = 0; k < lf.maximal.dim(); ++k) mm.push_back(action(lf.maximal.vector(k)));
    SpanBuilder span(F, n);
    for (std::size_t k = 0; k < v.dim(); ++k)
      for (auto& x : mm) span.add(x.apply(v.vector(k)));
    std::vector<Matrix> comp;
    for (std::size_t k = 0; k < lf.component.dim(); ++k) comp.push_back(action(lf.component.vector(k)));
    for (std::size_t k = 0; k < v.dim() && span.rank() < v.dim(); ++k) {
      const Vec c = v.vector(k);
      if (span.contains(c)) continue;
      ff.basis.push_back(c);
      for (auto& x : comp) span.add(x.apply(c));
    }
    ff.rank = ff.basis.size();
    ff.free_dim = ff.rank * lf.component.dim();
    ff.free = ff.free_dim == ff.module_dim;
    out.push_back(std::move(ff));
  }
  return out;
}

std::vector<FactorFreeness> local_freeness(const ModulePtr& m, const AlgebraPtr& t, const Matrix& into_s) {
  return local_freeness(m->dim(), [&](const Vec& x) { return m->action(into_s.apply(x)); }, t);
}

std::optional<std::vector<Vec>> free_basis(const ModulePtr& m) {
  const auto& s = m->s();
  const auto& F = m->field();
  const auto parts = local_freeness(m, s->s(), Matrix::identity(F, s->dim()));
  if (parts.empty()) return std::vector<Vec>{};
  const std::size_t r = parts[0].rank;
  for (auto& p : parts)
    if (!p.free || p.rank != r) return std::nullopt;
  std::vector<Vec> basis(r, Vec(m->dim(), 0));
  for (auto& p : parts)
    for (std::size_t k = 0; k < r; ++k) basis[k] = vec_add(F, basis[k], p.basis[k]);
  // the S-span of the basis must be everything
  const std::size_t ds = s->dim();
  Matrix b(F, m->dim(), r * ds);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t a = 0; a < ds; ++a) b.set_col(k * ds + a, m->act(a).apply(basis[k]));
  if (m->dim() != r * ds || rank(b) != m->dim()) return std::nullopt;
  return basis;
}

// Duals ---------------------------------------------------------------------

DualData dual(const ModulePtr& m) {
  if (!m->is_unit()) throw ModuleError("dual requires a unit module");
  auto basis = free_basis(m);
  if (!basis) throw ModuleError("dual requires a module that is free over S");
  const auto& s = m->s();
  const auto& S = *s->s();
  const auto& F = m->field();
  const std::size_t r = basis->size(), ds = S.dim(), n = m->dim();
  Matrix b(F, n, r * ds);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t a = 0; a < ds; ++a) b.set_col(k * ds + a, m->act(a).apply((*basis)[k]));
  const auto binv = inverse(b);
  if (!binv) throw ModuleError("S-basis is not a basis");
  // U[i][j]: coordinate i of tau(b_j)
  std::vector<std::vector<Vec>> u(r, std::vector<Vec>(r));
  Matrix lu(F, r * ds, r * ds);
  for (std::size_t j = 0; j < r; ++j) {
    const Vec c = binv->apply(m->tau().apply((*basis)[j]));
    for (std::size_t i = 0; i < r; ++i) {
      u[i][j] = Vec(c.begin() + i * ds, c.begin() + (i + 1) * ds);
      lu.set_block(i * ds, j * ds, S.mult_matrix(u[i][j]));
    }
  }
  const auto luinv = inverse(lu);
  if (!luinv) throw ModuleError("matrix of tau on the S-basis is not invertible");
  // V = (U^T)^{-1} = (U^{-1})^T
  std::vector<std::vector<Vec>> v(r, std::vector<Vec>(r));
  for (std::size_t j = 0; j < r; ++j) {
    Vec ej(r * ds, 0);
    std::copy(S.one().begin(), S.one().end(), ej.begin() + j * ds);
    const Vec col = luinv->apply(ej);
    for (std::size_t i = 0; i < r; ++i) v[j][i] = Vec(col.begin() + i * ds, col.begin() + (i + 1) * ds);
  }
  DualData out{unit_module(s), free_module(s, v), *basis, {}, {}, ModuleMorphism::identity(m), ModuleMorphism::identity(m)};
  out.m_dual = tensor_product(m, out.dual);
  out.dual_m = tensor_product(out.dual, m);
  const std::size_t nd = r * ds;
  {
    const Quotient& q = out.m_dual.quotient;
    Matrix ev(F, ds, q.dim());
    for (std::size_t c = 0; c < q.dim(); ++c) {
      const std::size_t idx = q.free_columns()[c];
      const std::size_t i = idx / nd, k = (idx % nd) / ds, a = idx % ds;
      const Vec coords = binv->col(i);
      const Vec ck(coords.begin() + k * ds, coords.begin() + (k + 1) * ds);
      ev.set_col(c, S.mul(ck, S.basis_vec(a)));
    }
    out.ev = ModuleMorphism::make(out.m_dual.module, out.unit, std::move(ev));
  }
  {
    Matrix coev(F, out.dual_m.module->dim(), ds);
    for (std::size_t a = 0; a < ds; ++a) {
      Vec amb(nd * n, 0);
      for (std::size_t k = 0; k < r; ++k) {
        const Vec& bk = (*basis)[k];
        std::copy(bk.begin(), bk.end(), amb.begin() + (k * ds + a) * n);
      }
      coev.set_col(a, out.dual_m.quotient.project(amb));
    }
    out.coev = ModuleMorphism::make(out.unit, out.dual_m.module, std::move(coev));
  }
  return out;
}

// Presentations -------------------------------------------------------------

Vec PresentationData::entry(std::size_t i, std::size_t j, std::size_t ds) const {
  Vec out(ds);
  for (std::size_t a = 0; a < ds; ++a) out[a] = relations(i * ds + a, j);
  return out;
}

PresentationData presentation(const ModulePtr& m, std::uint64_t seed) {
  const auto& S = *m->s()->s();
  const auto& F = m->field();
  const std::size_t n = m->dim(), ds = S.dim();
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (seed) std::shuffle(order.begin(), order.end(), rng);

  // Nakayama: lift a residue basis of e_i M / m_i M for each local factor of
  // S and add the lifts across factors, giving a minimal generating set
  PresentationData p;
  for (auto& lf : S.local_data().factors) {
    const Matrix e = m->action(lf.idempotent);
    SpanBuilder sub(F, n);
    for (std::size_t k = 0; k < lf.maximal.dim(); ++k) {
      const Matrix x = m->action(lf.maximal.vector(k));
      for (std::size_t j = 0; j < n; ++j) sub.add(x.col(j));
    }
    const std::size_t target = rank(e);
    std::size_t next = 0;
    for (auto c : order) {
      if (sub.rank() == target) break;
      const Vec v = e.col(c);
      if (sub.contains(v)) continue;
      for (std::size_t a = 0; a < ds; ++a) sub.add(m->act(a).apply(v));
      if (next == p.generators.size()) p.generators.push_back(Vec(n, 0));
      p.generators[next] = vec_add(F, p.generators[next], v);
      ++next;
    }
  }
  p.gens = p.generators.size();
  const std::size_t g = p.gens, amb = g * ds;
  p.surjection = Matrix(F, n, amb);
  for (std::size_t k = 0; k < g; ++k)
    for (std::size_t a = 0; a < ds; ++a) p.surjection.set_col(k * ds + a, m->act(a).apply(p.generators[k]));

  const Subspace ker = nullspace(p.surjection);
  std::vector<Matrix> ls;
  for (std::size_t a = 0; a < ds; ++a) ls.push_back(S.mult_matrix(S.basis_vec(a)));
  auto s_times = [&](std::size_t a, const Vec& w) {
    Vec out(amb, 0);
    for (std::size_t k = 0; k < g; ++k) {
      const Vec blk(w.begin() + k * ds, w.begin() + (k + 1) * ds);
      const Vec img = ls[a].apply(blk);
      std::copy(img.begin(), img.end(), out.begin() + k * ds);
    }
    return out;
  };
  std::vector<std::size_t> korder(ker.dim());
  std::iota(korder.begin(), korder.end(), 0);
  if (seed) std::shuffle(korder.begin(), korder.end(), rng);
  SpanBuilder relspan(F, amb);
  std::vector<Vec> rels;
  for (auto idx : korder) {
    if (relspan.rank() == ker.dim()) break;
    const Vec c = ker.vector(idx);
    if (relspan.contains(c)) continue;
    rels.push_back(c);
    for (std::size_t a = 0; a < ds; ++a) relspan.add(s_times(a, c));
  }
  p.relations = Matrix::from_columns(F, rels, amb);
  return p;
}

std::vector<Matrix> cokernel_actions(const TensorPtr& s, std::size_t gens, const Matrix& relations, Quotient* out) {
  const auto& S = *s->s();
  const auto& F = S.field();
  const std::size_t ds = S.dim(), amb = gens * ds;
  std::vector<Matrix> ops;
  for (std::size_t a = 0; a < ds; ++a) ops.push_back(kron(Matrix::identity(F, gens), S.mult_matrix(S.basis_vec(a))));
  SpanBuilder span(F, amb);
  for (std::size_t j = 0; j < relations.cols(); ++j)
    for (auto& op : ops) span.add(op.apply(relations.col(j)));
  const Quotient q(span.finish());
  std::vector<Matrix> act;
  for (auto& op : ops) act.push_back(induced_map(op, q, q));
  if (out) *out = q;
  return act;
}

std::optional<Matrix> presentation_isomorphism(const ModulePtr& m, const PresentationData& p) {
  Quotient q;
  const auto act = cokernel_actions(m->s(), p.gens, p.relations, &q);
  if (q.dim() != m->dim()) return std::nullopt;
  Matrix iso = p.surjection * q.lift_matrix();
  if (rank(iso) != m->dim()) return std::nullopt;
  for (std::size_t a = 0; a < act.size(); ++a)
    if (iso * act[a] != m->act(a) * iso) return std::nullopt;
  return iso;
}

namespace {

Vec ring_det(const FiniteAlgebra& S, const std::vector<std::vector<Vec>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  if (n == 2) return S.sub(S.mul(a[0][0], a[1][1]), S.mul(a[0][1], a[1][0]));
  Vec acc = S.zero_vec();
  for (std::size_t c = 0; c < n; ++c) {
    if (is_zero_vec(a[0][c])) continue;
    std::vector<std::vector<Vec>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Vec> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(std::move(row));
    }
    const Vec term = S.mul(a[0][c], ring_det(S, minor));
    acc = (c % 2 == 0) ? S.add(acc, term) : S.sub(acc, term);
  }
  return acc;
}

// Calls fn on each size-k subset of {0..n-1}; stops when fn returns false.
bool for_subsets(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return true;
  while (true) {
    if (!fn(idx)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Ideal fitting_ideal(const TensorPtr& s, const PresentationData& p, std::size_t n) {
  const auto& S = s->s();
  const std::size_t g = p.gens, k = p.relation_count(), ds = S->dim();
  if (n >= g) return Ideal::whole(S);
  const std::size_t size = g - n;
  if (size > k) return Ideal::zero(S);
  SpanBuilder span(S->field(), ds);
  for_subsets(g, size, [&](const std::vector<std::size_t>& rows) {
    return for_subsets(k, size, [&](const std::vector<std::size_t>& cols) {
      std::vector<std::vector<Vec>> a(size, std::vector<Vec>(size));
      for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c) a[r][c] = p.entry(rows[r], cols[c], ds);
      span.add(ring_det(*S, a));
      return !span.full();
    });
  });
  const Subspace minors = span.finish();
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < minors.dim(); ++i) gens.push_back(minors.vector(i));
  return Ideal::generated_by(S, gens);
}

Ideal fitting_ideal(const ModulePtr& m, std::size_t n, std::uint64_t seed) {
  return fitting_ideal(m->s(), presentation(m, seed), n);
}

}  // namespace taumod
