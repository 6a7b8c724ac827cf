#include "taumod/algebra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

namespace taumod {

namespace {

std::string triple(std::size_t i, std::size_t j, std::size_t k) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) + ")";
}

std::uint64_t checked_pow(std::uint64_t q, unsigned n) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < n; ++i) {
    out *= q;
    if (out > (std::uint64_t{1} << 40)) return out;
  }
  return out;
}

}  // namespace

AlgebraPtr FiniteAlgebra::make_unchecked(FieldPtr field, std::size_t dim, const std::vector<Vec>& products, Vec one,
                                         std::string label, std::optional<Matrix> frobenius) {
  if (products.size() != dim * dim) throw Error("structure constants must list dim^2 products");
  if (one.size() != dim) throw Error("unit vector has the wrong length");
  auto a = std::shared_ptr<FiniteAlgebra>(new FiniteAlgebra());
  a->field_ = std::move(field);
  a->dim_ = dim;
  a->mul_.assign(dim * dim * dim, 0);
  for (std::size_t ij = 0; ij < products.size(); ++ij) {
    if (products[ij].size() != dim) throw Error("product vector has the wrong length");
    std::copy(products[ij].begin(), products[ij].end(), a->mul_.begin() + ij * dim);
  }
  a->one_ = std::move(one);
  a->label_ = std::move(label);
  a->given_frobenius_ = std::move(frobenius);
  a->compute_generators();
  return a;
}

AlgebraPtr FiniteAlgebra::make(FieldPtr field, std::size_t dim, const std::vector<Vec>& products, Vec one,
                               std::string label) {
  if (dim == 0) throw AxiomError("algebra dimension must be at least 1");
  if (products.size() != dim * dim) throw AxiomError("structure constants must list dim^2 products");
  if (one.size() != dim) throw AxiomError("unit vector has the wrong length");
  for (auto& v : products) {
    if (v.size() != dim) throw AxiomError("product vector has the wrong length");
    for (auto c : v)
      if (c >= field->q()) throw AxiomError("structure constant outside the base field");
  }
  for (auto c : one)
    if (c >= field->q()) throw AxiomError("unit coordinate outside the base field");
  auto a = make_unchecked(field, dim, products, one, std::move(label));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      if (!std::equal(a->basis_product(i, j), a->basis_product(i, j) + dim, a->basis_product(j, i)))
        throw AxiomError("commutativity fails on basis pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  for (std::size_t j = 0; j < dim; ++j)
    if (a->mul(a->one_, a->basis_vec(j)) != a->basis_vec(j))
      throw AxiomError("unit fails on basis element " + std::to_string(j));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const Vec eij(a->basis_product(i, j), a->basis_product(i, j) + dim);
      for (std::size_t k = 0; k < dim; ++k) {
        const Vec ejk(a->basis_product(j, k), a->basis_product(j, k) + dim);
        if (a->mul(eij, a->basis_vec(k)) != a->mul(a->basis_vec(i), ejk))
          throw AxiomError("associativity fails on basis triple " + triple(i, j, k));
      }
    }
  return a;
}

AlgebraPtr FiniteAlgebra::zero(FieldPtr field) { return make_unchecked(std::move(field), 0, {}, {}, "0"); }

Vec FiniteAlgebra::mul(const Vec& x, const Vec& y) const {
  Vec out(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (!y[j]) continue;
      field_->axpy(out.data(), basis_product(i, j), field_->mul(x[i], y[j]), dim_);
    }
  }
  return out;
}

Vec FiniteAlgebra::pow(Vec x, std::uint64_t e) const {
  Vec acc = one_;
  while (e) {
    if (e & 1) acc = mul(acc, x);
    e >>= 1;
    if (e) x = mul(x, x);
  }
  return acc;
}

const Matrix& FiniteAlgebra::frobenius_matrix() const {
  return frobenius_.get([this] {
    if (given_frobenius_) return *given_frobenius_;
    Matrix m(field_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) m.set_col(j, pow(basis_vec(j), field_->q()));
    return m;
  });
}

Vec FiniteAlgebra::frobenius(const Vec& x) const { return frobenius_matrix().apply(x); }

Matrix FiniteAlgebra::mult_matrix(const Vec& x) const {
  // row j of t is x * e_j
  Matrix t(field_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < dim_; ++j) field_->axpy(t.row_ptr(j), basis_product(i, j), x[i], dim_);
  }
  return t.transpose();
}

std::optional<Vec> FiniteAlgebra::inverse(const Vec& x) const {
  if (dim_ == 0) return Vec{};
  auto y = solve(mult_matrix(x), one_);
  if (!y) return std::nullopt;
  return y;
}

Poly FiniteAlgebra::minimal_polynomial(const Vec& x, const Vec& unit) const {
  const Matrix lx = mult_matrix(x);
  struct Row {
    Vec r, combo;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  Vec v = unit;
  for (std::size_t k = 0;; ++k) {
    Vec r = v, combo(k + 1, 0);
    combo[k] = 1;
    for (auto& row : rows) {
      const Elem c = r[row.pivot];
      if (!c) continue;
      const Elem f = field_->neg(field_->div(c, row.r[row.pivot]));
      field_->axpy(r.data(), row.r.data(), f, dim_);
      field_->axpy(combo.data(), row.combo.data(), f, row.combo.size());
    }
    auto it = std::find_if(r.begin(), r.end(), [](Elem e) { return e != 0; });
    if (it == r.end()) return Poly(field_, combo);
    const auto pivot = static_cast<std::size_t>(it - r.begin());
    rows.push_back({std::move(r), std::move(combo), pivot});
    v = lx.apply(v);
  }
}

void FiniteAlgebra::compute_generators() {
  generators_.clear();
  if (dim_ == 0) return;
  std::vector<Matrix> mats;
  auto closure = [&] {
    SpanBuilder span(field_, dim_);
    std::vector<Vec> queue{one_};
    span.add(one_);
    while (!queue.empty()) {
      Vec v = std::move(queue.back());
      queue.pop_back();
      for (auto& m : mats) {
        Vec w = m.apply(v);
        if (span.add(w)) queue.push_back(std::move(w));
      }
    }
    return span;
  };
  SpanBuilder current = closure();
  for (std::size_t i = 0; i < dim_ && !current.full(); ++i) {
    if (current.contains(basis_vec(i))) continue;
    generators_.push_back(basis_vec(i));
    mats.push_back(mult_matrix(basis_vec(i)));
    current = closure();
  }
}

namespace {

LocalData compute_local_data(const FiniteAlgebra& a) {
  LocalData out;
  const std::size_t d = a.dim();
  if (d == 0) return out;
  const auto& F = a.field();
  const std::uint64_t q = F->q();
  const Matrix& fr = a.frobenius_matrix();

  // Split the unit along the F_q-rational idempotent subalgebra ker(Frob - 1).
  const Subspace fixed = nullspace(fr - Matrix::identity(F, d));
  std::vector<Vec> idems{a.one()};
  for (std::size_t b = 0; b < fixed.dim() && idems.size() < fixed.dim(); ++b) {
    const Vec bv = fixed.vector(b);
    std::vector<Vec> next;
    for (const auto& e : idems) {
      const Vec x = a.mul(e, bv);
      const Poly mu = a.minimal_polynomial(x, e);
      const auto facs = factor_poly(mu);
      if (facs.size() == 1) {
        next.push_back(e);
        continue;
      }
      std::vector<Elem> roots;
      for (auto& f : facs) roots.push_back(F->neg(f.poly.coeff(0)));
      for (std::size_t i = 0; i < roots.size(); ++i) {
        Vec ei = e;
        for (std::size_t j = 0; j < roots.size(); ++j) {
          if (j == i) continue;
          const Vec lin = a.sub(x, vec_scale(F, e, roots[j]));
          ei = vec_scale(F, a.mul(ei, lin), F->inv(F->sub(roots[i], roots[j])));
        }
        next.push_back(std::move(ei));
      }
    }
    idems = std::move(next);
  }
  if (idems.size() != fixed.dim()) throw Error("idempotent splitting did not terminate");
  std::sort(idems.begin(), idems.end());

  unsigned kpow = 0;
  while (checked_pow(q, kpow) < d) ++kpow;
  const Subspace nil = nullspace(fr.power(kpow));

  for (auto& e : idems) {
    LocalFactor lf;
    lf.idempotent = e;
    const Matrix le = a.mult_matrix(e);
    lf.component = column_space(le);
    {
      std::vector<Vec> mv;
      for (std::size_t i = 0; i < nil.dim(); ++i) mv.push_back(le.apply(nil.vector(i)));
      lf.maximal = Subspace::span(F, d, mv);
    }
    std::vector<Matrix> mmats;
    for (std::size_t i = 0; i < lf.maximal.dim(); ++i) mmats.push_back(a.mult_matrix(lf.maximal.vector(i)));
    Subspace power = lf.maximal;
    unsigned exp = 1;
    while (power.dim() > 0) {
      SpanBuilder next(F, d);
      for (std::size_t i = 0; i < power.dim(); ++i)
        for (auto& m : mmats) next.add(m.apply(power.vector(i)));
      power = next.finish();
      ++exp;
    }
    lf.nil_exponent = exp;
    const unsigned f = static_cast<unsigned>(lf.component.dim() - lf.maximal.dim());
    lf.residue_degree = f;
    unsigned n = 0;
    while (checked_pow(q, n) < exp) n += f;
    lf.splitting_power = n;

    // The image of x -> (e x)^(q^N) is the coefficient field inside e*A,
    // presented on the power basis of a generator g.
    const Matrix proj = fr.power(n) * le;
    const Subspace image = column_space(proj);
    if (image.dim() != f) throw Error("coefficient field has unexpected dimension");
    std::mt19937_64 rng(f);
    Vec g = e;
    Poly mu = a.minimal_polynomial(g, e);
    for (std::size_t tries = 0; mu.degree() != static_cast<int>(f); ++tries) {
      if (tries > 1000) throw Error("no generator of the residue field found");
      g = Vec(d, 0);
      if (tries < f) {
        g = image.vector(tries);
      } else {
        for (std::size_t i = 0; i < f; ++i) g = vec_add(F, g, vec_scale(F, image.vector(i), static_cast<Elem>(rng() % q)));
      }
      mu = a.minimal_polynomial(g, e);
    }
    const Matrix lg = a.mult_matrix(g);
    Matrix pw(F, d, f);
    Vec cur = e;
    for (unsigned k = 0; k < f; ++k) {
      pw.set_col(k, cur);
      cur = lg.apply(cur);
    }
    Matrix t(F, f, f), c(F, f, d);
    for (unsigned k = 0; k < f; ++k) t.set_col(k, image.coords(pw.col(k)));
    for (std::size_t j = 0; j < d; ++j) c.set_col(j, image.coords(proj.col(j)));
    lf.residue = poly_quotient_algebra(mu, "k");
    lf.section = pw;
    lf.residue_map = *inverse(t) * c;
    out.factors.push_back(std::move(lf));
  }
  return out;
}

}  // namespace

const LocalData& FiniteAlgebra::local_data() const {
  return local_.get([this] { return compute_local_data(*this); });
}

bool FiniteAlgebra::is_reduced() const {
  for (auto& f : local_data().factors)
    if (f.maximal.dim() > 0) return false;
  return true;
}

bool FiniteAlgebra::same_as(const FiniteAlgebra& o) const {
  return same_field(field_, o.field_) && dim_ == o.dim_ && mul_ == o.mul_ && one_ == o.one_;
}

std::vector<std::vector<Vec>> FiniteAlgebra::structure_constants() const {
  std::vector<std::vector<Vec>> out(dim_, std::vector<Vec>(dim_));
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out[i][j] = Vec(basis_product(i, j), basis_product(i, j) + dim_);
  return out;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) { return a == b || (a && b && a->same_as(*b)); }

const LocalData& primitive_idempotents(const FiniteAlgebra& a) { return a.local_data(); }
bool is_connected(const FiniteAlgebra& a) { return a.is_connected(); }

// Builders ------------------------------------------------------------------

namespace {

std::string field_name(const FieldPtr& f) { return "F" + std::to_string(f->q()); }

}  // namespace

AlgebraPtr prime_algebra(FieldPtr field) {
  auto name = field_name(field);
  return FiniteAlgebra::make_unchecked(std::move(field), 1, {Vec{1}}, Vec{1}, std::move(name));
}

AlgebraPtr poly_quotient_algebra(const Poly& f0, std::string label) {
  if (f0.degree() < 1) throw Error("quotient polynomial must have positive degree");
  const Poly f = f0.monic();
  const auto& F = f.field();
  const std::size_t n = static_cast<std::size_t>(f.degree());
  std::vector<Vec> prods(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Poly r = Poly::monomial(F, 1, i + j) % f;
      Vec v(n, 0);
      for (std::size_t k = 0; k < n; ++k) v[k] = r.coeff(k);
      prods[i * n + j] = std::move(v);
    }
  if (label.empty()) label = field_name(F) + "[x]/(" + f.format('x') + ")";
  return FiniteAlgebra::make_unchecked(F, n, prods, unit_vec(n, 0), std::move(label));
}

AlgebraPtr field_extension_algebra(FieldPtr field, unsigned degree) {
  if (degree == 1) return prime_algebra(std::move(field));
  const std::uint64_t q = field->q();
  std::uint64_t size = 1;
  for (unsigned i = 0; i < degree; ++i) size *= q;
  return poly_quotient_algebra(smallest_irreducible(field, degree), "F" + std::to_string(size) + "/" + field_name(field));
}

AlgebraPtr truncated_polynomial_algebra(FieldPtr field, unsigned nvars, unsigned bound) {
  if (bound == 0) throw Error("degree bound must be positive");
  std::vector<std::vector<unsigned>> monos;
  for (unsigned deg = 0; deg < bound; ++deg) {
    std::vector<unsigned> cur(nvars, 0);
    std::function<void(unsigned, unsigned)> rec = [&](unsigned var, unsigned left) {
      if (var + 1 == nvars || nvars == 0) {
        if (nvars == 0) {
          if (left == 0) monos.push_back(cur);
          return;
        }
        cur[var] = left;
        monos.push_back(cur);
        return;
      }
      for (unsigned e = left + 1; e-- > 0;) {
        cur[var] = e;
        rec(var + 1, left - e);
      }
    };
    rec(0, deg);
  }
  std::map<std::vector<unsigned>, std::size_t> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
  const std::size_t n = monos.size();
  std::vector<Vec> prods(n * n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<unsigned> m(nvars);
      for (unsigned v = 0; v < nvars; ++v) m[v] = monos[i][v] + monos[j][v];
      auto it = index.find(m);
      if (it != index.end()) prods[i * n + j][it->second] = 1;
    }
  std::string label = field_name(field) + "[";
  const char* names = "xyzw";
  for (unsigned v = 0; v < nvars; ++v) {
    if (v) label += ",";
    label += v < 4 ? std::string(1, names[v]) : "x" + std::to_string(v);
  }
  label += "]/deg>=" + std::to_string(bound);
  return FiniteAlgebra::make_unchecked(std::move(field), n, prods, unit_vec(n, 0), std::move(label));
}

AlgebraPtr product_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!same_field(a->field(), b->field())) throw Error("product of algebras over different fields");
  const std::size_t da = a->dim(), db = b->dim(), n = da + db;
  std::vector<Vec> prods(n * n, Vec(n, 0));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) std::copy(a->basis_product(i, j), a->basis_product(i, j) + da, prods[i * n + j].begin());
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      std::copy(b->basis_product(i, j), b->basis_product(i, j) + db, prods[(da + i) * n + da + j].begin() + da);
  Vec one = a->one();
  one.insert(one.end(), b->one().begin(), b->one().end());
  return FiniteAlgebra::make_unchecked(a->field(), n, prods, one, a->label() + " x " + b->label());
}

AlgebraPtr tensor_product_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!same_field(a->field(), b->field())) throw Error("tensor product of algebras over different fields");
  const auto& F = a->field();
  const std::size_t da = a->dim(), db = b->dim(), n = da * db;
  std::vector<Vec> prods(n * n, Vec(n, 0));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t k = 0; k < da; ++k) {
      const Elem* pa = a->basis_product(i, k);
      for (std::size_t j = 0; j < db; ++j)
        for (std::size_t l = 0; l < db; ++l) {
          const Elem* pb = b->basis_product(j, l);
          Vec& out = prods[(i * db + j) * n + k * db + l];
          for (std::size_t u = 0; u < da; ++u)
            if (pa[u]) F->axpy(out.data() + u * db, pb, pa[u], db);
        }
    }
  Vec one(n, 0);
  for (std::size_t u = 0; u < da; ++u)
    if (a->one()[u]) F->axpy(one.data() + u * db, b->one().data(), a->one()[u], db);
  Matrix frob = kron(a->frobenius_matrix(), b->frobenius_matrix());
  return FiniteAlgebra::make_unchecked(F, n, prods, one, a->label() + " (x) " + b->label(), std::move(frob));
}

AlgebraPtr quotient_algebra(const Ideal& ideal, std::string label) {
  const auto& a = ideal.parent();
  const Quotient qt(ideal.space());
  const std::size_t n = qt.dim();
  std::vector<Vec> prods(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prods[i * n + j] = qt.project(a->mul(qt.lift(i), qt.lift(j)));
  if (label.empty()) label = a->label() + "/I";
  if (n == 0) return FiniteAlgebra::zero(a->field());
  return FiniteAlgebra::make_unchecked(a->field(), n, prods, qt.project(a->one()), std::move(label));
}

// Maps ----------------------------------------------------------------------

AlgebraMap AlgebraMap::make(AlgebraPtr source, AlgebraPtr target, Matrix mat) {
  if (!same_field(source->field(), target->field())) throw Error("algebra map between different base fields");
  if (mat.rows() != target->dim() || mat.cols() != source->dim()) throw Error("algebra map matrix has the wrong shape");
  if (mat.apply(source->one()) != target->one()) throw Error("algebra map is not unital");
  const std::size_t d = source->dim();
  std::vector<Vec> images(d);
  for (std::size_t i = 0; i < d; ++i) images[i] = mat.col(i);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const Vec prod(source->basis_product(i, j), source->basis_product(i, j) + d);
      if (mat.apply(prod) != target->mul(images[i], images[j]))
        throw Error("algebra map is not multiplicative on basis pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
  return AlgebraMap(std::move(source), std::move(target), std::move(mat));
}

AlgebraMap AlgebraMap::identity(AlgebraPtr a) {
  Matrix id = Matrix::identity(a->field(), a->dim());
  return AlgebraMap(a, a, std::move(id));
}

AlgebraMap AlgebraMap::then(const AlgebraMap& g) const {
  if (!same_algebra(target_, g.source_)) throw Error("cannot compose algebra maps with mismatched ends");
  return AlgebraMap(source_, g.target_, g.mat_ * mat_);
}

// Ideals --------------------------------------------------------------------

Ideal Ideal::generated_by(const AlgebraPtr& a, const std::vector<Vec>& gens) {
  SpanBuilder span(a->field(), a->dim());
  for (auto& g : gens) {
    const Matrix lg = a->mult_matrix(g);
    for (std::size_t j = 0; j < a->dim() && !span.full(); ++j) span.add(lg.col(j));
  }
  return Ideal(a, span.finish());
}

std::optional<Ideal> Ideal::from_subspace(const AlgebraPtr& a, const Subspace& s) {
  for (auto& g : a->generators()) {
    const Matrix lg = a->mult_matrix(g);
    for (std::size_t i = 0; i < s.dim(); ++i)
      if (!s.contains(lg.apply(s.vector(i)))) return std::nullopt;
  }
  return Ideal(a, s);
}

Ideal Ideal::product(const Ideal& o) const {
  SpanBuilder span(parent_->field(), parent_->dim());
  for (std::size_t i = 0; i < space_.dim(); ++i)
    for (std::size_t j = 0; j < o.space_.dim(); ++j) span.add(parent_->mul(space_.vector(i), o.space_.vector(j)));
  return Ideal(parent_, span.finish());
}

std::vector<Subspace> enumerate_subspaces(const FieldPtr& field, std::size_t n) {
  std::vector<Subspace> out;
  const std::uint32_t q = field->q();
  for (std::size_t k = 0; k <= n; ++k) {
    // pivot sets of size k, lexicographic
    std::vector<std::size_t> piv(k);
    for (std::size_t i = 0; i < k; ++i) piv[i] = i;
    while (true) {
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = piv[r] + 1; c < n; ++c)
          if (!std::binary_search(piv.begin(), piv.end(), c)) free.emplace_back(r, c);
      std::vector<std::uint32_t> digits(free.size(), 0);
      while (true) {
        Matrix m(field, k, n);
        for (std::size_t r = 0; r < k; ++r) m(r, piv[r]) = 1;
        for (std::size_t t = 0; t < free.size(); ++t) m(free[t].first, free[t].second) = static_cast<Elem>(digits[t]);
        out.push_back(Subspace::span(m));
        std::size_t t = 0;
        while (t < digits.size() && ++digits[t] == q) digits[t++] = 0;
        if (t == digits.size()) break;
      }
      // next combination
      std::size_t i = k;
      while (i > 0 && piv[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++piv[i - 1];
      for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
  return out;
}

std::vector<Ideal> enumerate_ideals(const AlgebraPtr& a) {
  std::vector<Ideal> out;
  for (auto& s : enumerate_subspaces(a->field(), a->dim()))
    if (auto i = Ideal::from_subspace(a, s)) out.push_back(std::move(*i));
  return out;
}

// Tensor algebras -----------------------------------------------------------

TensorPtr TensorAlgebra::make(AlgebraPtr lambda, AlgebraPtr r) {
  if (!same_field(lambda->field(), r->field())) throw Error("Lambda and R have different base fields");
  auto t = std::shared_ptr<TensorAlgebra>(new TensorAlgebra());
  const auto& F = lambda->field();
  t->s_ = tensor_product_algebra(lambda, r);
  const std::size_t dl = lambda->dim(), dr = r->dim();
  t->copro_lambda_ = kron(Matrix::identity(F, dl), Matrix::from_columns(F, {r->one()}, dr));
  t->copro_r_ = kron(Matrix::from_columns(F, {lambda->one()}, dl), Matrix::identity(F, dr));
  t->frob_ = kron(Matrix::identity(F, dl), r->frobenius_matrix());
  t->lambda_ = std::move(lambda);
  t->r_ = std::move(r);
  return t;
}

Matrix TensorAlgebra::induced_on_r(const Matrix& g) const { return kron(Matrix::identity(field(), lambda_->dim()), g); }

Matrix TensorAlgebra::induced_on_lambda(const Matrix& g) const { return kron(g, Matrix::identity(field(), r_->dim())); }

bool TensorAlgebra::same_as(const TensorAlgebra& o) const {
  return same_algebra(lambda_, o.lambda_) && same_algebra(r_, o.r_);
}

bool same_tensor(const TensorPtr& a, const TensorPtr& b) { return a == b || (a && b && a->same_as(*b)); }

Ideal ideal_contract(const TensorAlgebra& s, const Ideal& i) {
  const Matrix ann = i.space().annihilator();
  const auto& lam = s.lambda();
  if (ann.rows() == 0) return Ideal::whole(lam);
  return Ideal(lam, nullspace(ann * s.copro_lambda()));
}

Ideal ideal_extend(const TensorAlgebra& s, const Ideal& j) {
  std::vector<Vec> gens;
  for (std::size_t k = 0; k < j.dim(); ++k) gens.push_back(s.from_lambda(j.space().vector(k)));
  return Ideal::generated_by(s.s(), gens);
}

Ideal frobenius_generated(const TensorAlgebra& s, const Ideal& i) {
  std::vector<Vec> gens;
  for (std::size_t k = 0; k < i.dim(); ++k) gens.push_back(s.F(i.space().vector(k)));
  return Ideal::generated_by(s.s(), gens);
}

bool is_F_invariant(const TensorAlgebra& s, const Ideal& i) { return frobenius_generated(s, i) == i; }

}  // namespace taumod
