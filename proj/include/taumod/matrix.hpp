#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "taumod/field.hpp"

namespace taumod {

/// Dense row-major matrix over a GaloisField. Linear maps act on column
/// vectors throughout the library.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(FieldPtr field, std::size_t n);
  static Matrix from_rows(FieldPtr field, const std::vector<Vec>& rows, std::size_t cols);
  static Matrix from_columns(FieldPtr field, const std::vector<Vec>& cols, std::size_t rows);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Elem* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
  const Elem* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }
  const Vec& data() const { return data_; }

  Vec row(std::size_t i) const { return Vec(row_ptr(i), row_ptr(i) + cols_); }
  Vec col(std::size_t j) const;
  void set_col(std::size_t j, const Vec& v);

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(Elem c) const;
  Vec apply(const Vec& v) const;
  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix select_columns(const std::vector<std::size_t>& idx) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix power(std::uint64_t e) const;

 private:
  FieldPtr field_;
  std::size_t rows_ = 0, cols_ = 0;
  Vec data_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

bool is_zero_vec(const Vec& v);
Vec vec_add(const FieldPtr& f, const Vec& x, const Vec& y);
Vec vec_sub(const FieldPtr& f, const Vec& x, const Vec& y);
Vec vec_scale(const FieldPtr& f, const Vec& x, Elem c);
Vec unit_vec(std::size_t n, std::size_t i);

/// A subspace of F^n stored as its reduced row echelon basis, so equal
/// subspaces have identical representations.
class Subspace {
 public:
  Subspace() = default;
  Subspace(FieldPtr field, std::size_t ambient) : field_(std::move(field)), ambient_(ambient), basis_(field_, 0, ambient) {}

  static Subspace span(const Matrix& rows);
  static Subspace span(FieldPtr field, std::size_t ambient, const std::vector<Vec>& vectors);
  static Subspace whole(FieldPtr field, std::size_t ambient);

  const FieldPtr& field() const { return field_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  Vec vector(std::size_t i) const { return basis_.row(i); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// v minus its component in the subspace; zero exactly on the pivots.
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const { return is_zero_vec(reduce(v)); }
  bool contains(const Subspace& other) const;
  /// Coordinates of a member vector in the echelon basis.
  Vec coords(const Vec& v) const;

  Subspace operator+(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  /// Rows span the functionals vanishing on this subspace.
  Matrix annihilator() const;
  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  friend class SpanBuilder;
  FieldPtr field_;
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Incremental echelon basis. Vectors are reduced on insertion; finish()
/// back-substitutes into the canonical Subspace.
class SpanBuilder {
 public:
  SpanBuilder(FieldPtr field, std::size_t ambient) : field_(std::move(field)), ambient_(ambient) {}

  /// Returns true if v was independent of what was already added.
  bool add(Vec v);
  bool add(const Elem* v) { return add(Vec(v, v + ambient_)); }
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const { return is_zero_vec(reduce(v)); }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == ambient_; }
  Subspace finish() const;

 private:
  FieldPtr field_;
  std::size_t ambient_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

/// ambient / W with coordinates on the non-pivot columns of W.
class Quotient {
 public:
  Quotient() = default;
  explicit Quotient(Subspace w);

  std::size_t dim() const { return free_.size(); }
  std::size_t ambient() const { return w_.ambient(); }
  const Subspace& relations() const { return w_; }
  const std::vector<std::size_t>& free_columns() const { return free_; }
  Vec project(const Vec& v) const;
  Vec lift(std::size_t i) const { return unit_vec(w_.ambient(), free_[i]); }
  /// Matrix (ambient x dim) whose columns are the lifts.
  Matrix lift_matrix() const;
  /// Matrix (dim x ambient) of the projection.
  Matrix projection_matrix() const;

 private:
  Subspace w_;
  std::vector<std::size_t> free_;
};

Subspace nullspace(const Matrix& a);
Subspace column_space(const Matrix& a);
Subspace row_space(const Matrix& a);
std::size_t rank(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);
std::optional<Vec> solve(const Matrix& a, const Vec& b);

/// Matrix of `op` (ambient_tgt x ambient_src) on quotients.
Matrix induced_map(const Matrix& op, const Quotient& src, const Quotient& tgt);
/// Matrix of `op` restricted to subspaces (op(src) must lie in tgt).
Matrix restricted_map(const Matrix& op, const Subspace& src, const Subspace& tgt);

}  // namespace taumod
