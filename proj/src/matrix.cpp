#include "taumod/matrix.hpp"

#include <algorithm>
#include <numeric>

namespace taumod {

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(FieldPtr field, const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(std::move(field), rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error("row length mismatch");
    std::copy(rows[i].begin(), rows[i].end(), m.row_ptr(i));
  }
  return m;
}

Matrix Matrix::from_columns(FieldPtr field, const std::vector<Vec>& cols, std::size_t rows) {
  Matrix m(std::move(field), rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
  return m;
}

Vec Matrix::col(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_col(std::size_t j, const Vec& v) {
  if (v.size() != rows_) throw Error("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error("matrix product shape mismatch");
  Matrix out(field_ ? field_ : o.field_, rows_, o.cols_);
  if (!out.field_) return out;
  for (std::size_t i = 0; i < rows_; ++i) {
    Elem* dst = out.row_ptr(i);
    const Elem* a = row_ptr(i);
    for (std::size_t k = 0; k < cols_; ++k)
      if (a[k]) out.field_->axpy(dst, o.row_ptr(k), a[k], o.cols_);
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix sum shape mismatch");
  Matrix out = *this;
  if (!data_.empty()) field_->axpy(out.data_.data(), o.data_.data(), 1, data_.size());
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix difference shape mismatch");
  Matrix out = *this;
  if (!data_.empty()) field_->axpy(out.data_.data(), o.data_.data(), field_->neg(1), data_.size());
  return out;
}

Matrix Matrix::scaled(Elem c) const {
  Matrix out = *this;
  if (!data_.empty()) field_->scale(out.data_.data(), c, data_.size());
  return out;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw Error("matrix-vector shape mismatch");
  Vec out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const Elem* a = row_ptr(i);
    Elem acc = 0;
    for (std::size_t k = 0; k < cols_; ++k)
      if (a[k] && v[k]) acc = field_->add(acc, field_->mul(a[k], v[k]));
    out[i] = acc;
  }
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
  Matrix out(field_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = (*this)(i, idx[j]);
  return out;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix out(field_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) std::copy(row_ptr(idx[i]), row_ptr(idx[i]) + cols_, out.row_ptr(i));
  return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Matrix out(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Matrix Matrix::power(std::uint64_t e) const {
  Matrix acc = identity(field_, rows_), base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  const auto& f = *a.field();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Elem c = a(i, j);
      if (!c) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        Elem* dst = out.row_ptr(i * b.rows() + k) + j * b.cols();
        f.axpy(dst, b.row_ptr(k), c, b.cols());
      }
    }
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error("hstack row mismatch");
  Matrix out(a.field() ? a.field() : b.field(), a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw Error("vstack column mismatch");
  Matrix out(a.field() ? a.field() : b.field(), a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

Vec vec_add(const FieldPtr& f, const Vec& x, const Vec& y) {
  Vec out = x;
  f->axpy(out.data(), y.data(), 1, out.size());
  return out;
}

Vec vec_sub(const FieldPtr& f, const Vec& x, const Vec& y) {
  Vec out = x;
  f->axpy(out.data(), y.data(), f->neg(1), out.size());
  return out;
}

Vec vec_scale(const FieldPtr& f, const Vec& x, Elem c) {
  Vec out = x;
  f->scale(out.data(), c, out.size());
  return out;
}

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

// ---------------------------------------------------------------- SpanBuilder

Vec SpanBuilder::reduce(Vec v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Elem c = v[pivots_[r]];
    if (c) field_->axpy(v.data(), rows_[r].data(), field_->neg(c), ambient_);
  }
  return v;
}

bool SpanBuilder::add(Vec v) {
  if (v.size() != ambient_) throw Error("vector length mismatch in span");
  if (full()) return false;
  v = reduce(std::move(v));
  std::size_t piv = 0;
  while (piv < ambient_ && v[piv] == 0) ++piv;
  if (piv == ambient_) return false;
  field_->scale(v.data(), field_->inv(v[piv]), ambient_);
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

Subspace SpanBuilder::finish() const {
  Subspace out(field_, ambient_);
  std::vector<std::size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return pivots_[x] < pivots_[y]; });
  std::vector<Vec> rows;
  rows.reserve(rows_.size());
  for (auto i : order) rows.push_back(rows_[i]);
  std::vector<std::size_t> piv;
  for (auto i : order) piv.push_back(pivots_[i]);
  // back-substitute: clear each pivot column from every other row
  for (std::size_t r = rows.size(); r-- > 0;)
    for (std::size_t s = 0; s < rows.size(); ++s) {
      if (s == r) continue;
      const Elem c = rows[s][piv[r]];
      if (c) field_->axpy(rows[s].data(), rows[r].data(), field_->neg(c), ambient_);
    }
  out.basis_ = Matrix::from_rows(field_, rows, ambient_);
  out.pivots_ = std::move(piv);
  return out;
}

// ------------------------------------------------------------------- Subspace

Subspace Subspace::span(const Matrix& rows) {
  SpanBuilder b(rows.field(), rows.cols());
  for (std::size_t i = 0; i < rows.rows() && !b.full(); ++i) b.add(rows.row_ptr(i));
  return b.finish();
}

Subspace Subspace::span(FieldPtr field, std::size_t ambient, const std::vector<Vec>& vectors) {
  SpanBuilder b(std::move(field), ambient);
  for (const auto& v : vectors) {
    if (b.full()) break;
    b.add(v);
  }
  return b.finish();
}

Subspace Subspace::whole(FieldPtr field, std::size_t ambient) {
  return span(Matrix::identity(std::move(field), ambient));
}

Vec Subspace::reduce(Vec v) const {
  if (v.size() != ambient_) throw Error("vector length mismatch in subspace");
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    const Elem c = v[pivots_[r]];
    if (c) field_->axpy(v.data(), basis_.row_ptr(r), field_->neg(c), ambient_);
  }
  return v;
}

bool Subspace::contains(const Subspace& other) const {
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.vector(i))) return false;
  return true;
}

Vec Subspace::coords(const Vec& v) const {
  Vec c(pivots_.size());
  for (std::size_t r = 0; r < pivots_.size(); ++r) c[r] = v[pivots_[r]];
  return c;
}

Subspace Subspace::operator+(const Subspace& o) const {
  SpanBuilder b(field_, ambient_);
  for (std::size_t i = 0; i < dim(); ++i) b.add(basis_.row_ptr(i));
  for (std::size_t i = 0; i < o.dim() && !b.full(); ++i) b.add(o.basis_.row_ptr(i));
  return b.finish();
}

Matrix Subspace::annihilator() const {
  // functionals y with B y = 0
  const Subspace ker = nullspace(basis_);
  return ker.basis();
}

Subspace Subspace::intersect(const Subspace& o) const {
  // x in both iff both annihilators kill x
  if (dim() == 0 || o.dim() == 0) return Subspace(field_, ambient_);
  return nullspace(vstack(annihilator(), o.annihilator()));
}

// ------------------------------------------------------------------- Quotient

Quotient::Quotient(Subspace w) : w_(std::move(w)) {
  std::vector<bool> is_pivot(w_.ambient(), false);
  for (auto p : w_.pivots()) is_pivot[p] = true;
  for (std::size_t c = 0; c < w_.ambient(); ++c)
    if (!is_pivot[c]) free_.push_back(c);
}

Vec Quotient::project(const Vec& v) const {
  const Vec r = w_.reduce(v);
  Vec out(free_.size());
  for (std::size_t i = 0; i < free_.size(); ++i) out[i] = r[free_[i]];
  return out;
}

Matrix Quotient::lift_matrix() const {
  Matrix m(w_.field(), w_.ambient(), free_.size());
  for (std::size_t i = 0; i < free_.size(); ++i) m(free_[i], i) = 1;
  return m;
}

Matrix Quotient::projection_matrix() const {
  Matrix m(w_.field(), free_.size(), w_.ambient());
  for (std::size_t c = 0; c < w_.ambient(); ++c) m.set_col(c, project(unit_vec(w_.ambient(), c)));
  return m;
}

// ------------------------------------------------------------------ solvers

Subspace row_space(const Matrix& a) { return Subspace::span(a); }

Subspace column_space(const Matrix& a) { return Subspace::span(a.transpose()); }

std::size_t rank(const Matrix& a) {
  SpanBuilder b(a.field(), a.cols());
  for (std::size_t i = 0; i < a.rows() && !b.full(); ++i) b.add(a.row_ptr(i));
  return b.rank();
}

Subspace nullspace(const Matrix& a) {
  const FieldPtr& f = a.field();
  const std::size_t n = a.cols();
  const Subspace rs = Subspace::span(a);
  std::vector<bool> is_pivot(n, false);
  for (auto p : rs.pivots()) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    Vec v(n, 0);
    v[c] = 1;
    for (std::size_t r = 0; r < rs.dim(); ++r) v[rs.pivots()[r]] = f->neg(rs.basis()(r, c));
    basis.push_back(std::move(v));
  }
  return Subspace::span(f, n, basis);
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const std::size_t n = a.rows();
  const FieldPtr& f = a.field();
  Matrix aug = hstack(a, Matrix::identity(f, n));
  const std::size_t w = 2 * n;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && aug(piv, c) == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != c)
      for (std::size_t k = 0; k < w; ++k) std::swap(aug(piv, k), aug(c, k));
    f->scale(aug.row_ptr(c), f->inv(aug(c, c)), w);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const Elem x = aug(r, c);
      if (x) f->axpy(aug.row_ptr(r), aug.row_ptr(c), f->neg(x), w);
    }
  }
  return aug.block(0, n, n, n);
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  // reduce [A | b] and read off a particular solution
  const FieldPtr& f = a.field();
  const std::size_t n = a.cols();
  Matrix aug = hstack(a, Matrix::from_columns(f, {b}, a.rows()));
  const Subspace rs = Subspace::span(aug);
  Vec x(n, 0);
  for (std::size_t r = 0; r < rs.dim(); ++r) {
    const std::size_t p = rs.pivots()[r];
    if (p == n) return std::nullopt;
    x[p] = rs.basis()(r, n);
  }
  return x;
}

Matrix induced_map(const Matrix& op, const Quotient& src, const Quotient& tgt) {
  Matrix out(op.field(), tgt.dim(), src.dim());
  for (std::size_t i = 0; i < src.dim(); ++i) out.set_col(i, tgt.project(op.col(src.free_columns()[i])));
  return out;
}

Matrix restricted_map(const Matrix& op, const Subspace& src, const Subspace& tgt) {
  Matrix out(op.field(), tgt.dim(), src.dim());
  for (std::size_t i = 0; i < src.dim(); ++i) {
    const Vec img = op.apply(src.vector(i));
    if (!tgt.contains(img)) throw Error("restricted map leaves the target subspace");
    out.set_col(i, tgt.coords(img));
  }
  return out;
}

}  // namespace taumod
