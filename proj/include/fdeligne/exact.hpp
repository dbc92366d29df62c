#pragma once

// Exact scalars and dense linear algebra over Q and Q(i).
//
// Everything here is exact: rationals are GMP mpq values, Gaussian
// rationals are pairs of them. Elimination always picks the first nonzero
// entry in column order as pivot, so bases are reproducible across runs.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fdeligne/errors.hpp"

namespace fdeligne {

using Rational = mpq_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
std::string to_string(const Rational& x);

/// Element re + i*im of the Gaussian rationals Q(i).
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re) : re_(std::move(re)) {}  // NOLINT
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  Scalar conj() const { return {re_, -im_}; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar operator-() const { return {-re_, -im_}; }
  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Canonical literal: "0", "-3/2", "i", "-2/3i", "1/2+3/4i".
  std::string to_string() const;
  /// Accepts the canonical form plus "*i" suffixes and a bare "+i"/"-i".
  /// Throws std::invalid_argument on malformed input or zero denominators.
  static Scalar parse(std::string_view text);

 private:
  Rational re_;
  Rational im_;
};

inline bool is_zero(const Scalar& x) { return x.is_zero(); }

/// i^k for any integer k.
Scalar i_power(int k);

inline Rational conj_of(const Rational& x) { return x; }
inline Scalar conj_of(const Scalar& x) { return x.conj(); }

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
      for (const auto& x : r) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = T(1);
    return m;
  }
  static Matrix column(const std::vector<T>& entries) {
    Matrix m(entries.size(), 1);
    for (std::size_t k = 0; k < entries.size(); ++k) m(k, 0) = entries[k];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!fdeligne::is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }
  Matrix conjugate() const {
    Matrix t(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) t.data_[k] = conj_of(data_[k]);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr,
               std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }
  Matrix col(std::size_t c) const { return block(0, c, rows_, 1); }
  Matrix cols_at(const std::vector<std::size_t>& which) const {
    Matrix out(rows_, which.size());
    for (std::size_t k = 0; k < which.size(); ++k)
      for (std::size_t r = 0; r < rows_; ++r) out(r, k) = (*this)(r, which[k]);
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) { return a *= T(-1); }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionMismatch("product of " + a.shape() + " by " + b.shape());
    Matrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(r, k);
        if (fdeligne::is_zero(x)) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) {
          const T& y = b(k, c);
          if (!fdeligne::is_zero(y)) out(r, c) += x * y;
        }
      }
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch("shapes " + shape() + " and " + o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using CMatrix = Matrix<Scalar>;

template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  if (a.rows() != b.rows())
    throw DimensionMismatch("hstack " + a.shape() + " | " + b.shape());
  Matrix<T> out(a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() == 0 && a.cols() == 0) return b;
  if (b.rows() == 0 && b.cols() == 0) return a;
  if (a.cols() != b.cols())
    throw DimensionMismatch("vstack " + a.shape() + " / " + b.shape());
  Matrix<T> out(a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

template <class T>
Matrix<T> block_diag(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

template <class T>
struct Echelon {
  Matrix<T> reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form; pivot = first nonzero entry in column order.
template <class T>
Echelon<T> rref(Matrix<T> m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t r = row;
    while (r < m.rows() && is_zero(m(r, c))) ++r;
    if (r == m.rows()) continue;
    if (r != row)
      for (std::size_t k = c; k < m.cols(); ++k) std::swap(m(r, k), m(row, k));
    const T inv = T(1) / m(row, c);
    for (std::size_t k = c; k < m.cols(); ++k)
      if (!is_zero(m(row, k))) m(row, k) *= inv;
    for (std::size_t rr = 0; rr < m.rows(); ++rr) {
      if (rr == row || is_zero(m(rr, c))) continue;
      const T f = m(rr, c);
      for (std::size_t k = c; k < m.cols(); ++k)
        if (!is_zero(m(row, k))) m(rr, k) -= f * m(row, k);
    }
    pivots.push_back(c);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  if (m.empty()) return 0;
  return rref(m).pivots.size();
}

/// Columns form a basis of {v : m v = 0}; one basis vector per free column.
template <class T>
Matrix<T> kernel_basis(const Matrix<T>& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return Matrix<T>::identity(n);
  auto [red, piv] = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<T> k(n, free.size());
  for (std::size_t j = 0; j < free.size(); ++j) {
    k(free[j], j) = T(1);
    for (std::size_t r = 0; r < piv.size(); ++r) k(piv[r], j) = -red(r, free[j]);
  }
  return k;
}

/// Basis of the column space: the columns of m at pivot positions.
template <class T>
Matrix<T> image_basis(const Matrix<T>& m) {
  if (m.empty()) return Matrix<T>(m.rows(), 0);
  return m.cols_at(rref(m).pivots);
}

/// Some x with a x = b, or nullopt when b is not in the column space.
template <class T>
std::optional<Matrix<T>> solve(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows())
    throw DimensionMismatch("solve " + a.shape() + " against " + b.shape());
  Matrix<T> x(a.cols(), b.cols());
  if (b.cols() == 0) return x;
  if (a.cols() == 0) {
    if (!b.is_zero()) return std::nullopt;
    return x;
  }
  auto [red, piv] = rref(hstack(a, b));
  for (std::size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] >= a.cols()) return std::nullopt;
    for (std::size_t c = 0; c < b.cols(); ++c) x(piv[r], c) = red(r, a.cols() + c);
  }
  return x;
}

/// Inverse of a square matrix, or nullopt when singular.
template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  auto x = solve(a, Matrix<T>::identity(a.rows()));
  if (x && rank(a) != a.rows()) return std::nullopt;
  return x;
}

enum class FieldTag { rationals, gaussian_rationals };

template <class T>
constexpr FieldTag field_of() {
  if constexpr (std::is_same_v<T, Rational>)
    return FieldTag::rationals;
  else
    return FieldTag::gaussian_rationals;
}

/// Subspace of T^ambient spanned by the (independent) columns of `basis`.
template <class T>
struct Subspace {
  std::size_t ambient = 0;
  Matrix<T> basis{0, 0};

  Subspace() = default;
  Subspace(std::size_t n, Matrix<T> b) : ambient(n), basis(std::move(b)) {
    if (basis.rows() != ambient && !(basis.cols() == 0))
      throw DimensionMismatch("subspace basis has " + basis.shape() +
                              " in ambient " + std::to_string(ambient));
    if (basis.cols() == 0) basis = Matrix<T>(ambient, 0);
  }
  static Subspace zero(std::size_t n) { return {n, Matrix<T>(n, 0)}; }
  static Subspace whole(std::size_t n) { return {n, Matrix<T>::identity(n)}; }
  /// Span of arbitrary (possibly dependent) columns.
  static Subspace span(std::size_t n, const Matrix<T>& cols) {
    return {n, image_basis(cols)};
  }

  std::size_t dim() const { return basis.cols(); }
  static constexpr FieldTag field() { return field_of<T>(); }

  bool contains(const Matrix<T>& v) const {
    if (dim() == 0) return v.is_zero();
    return solve(basis, v).has_value();
  }
  bool contains(const Subspace& w) const { return contains(w.basis); }
  /// Coordinates of v (a column block) in this basis; throws if v is outside.
  Matrix<T> coordinates(const Matrix<T>& v) const {
    auto x = solve(basis, v);
    if (!x) throw NotASubspace("vector outside subspace");
    return *x;
  }
};

template <class T>
Subspace<T> kernel(const Matrix<T>& m) {
  return {m.cols(), kernel_basis(m)};
}

template <class T>
Subspace<T> image(const Matrix<T>& m) {
  return {m.rows(), image_basis(m)};
}

template <class T>
Subspace<T> sum(const Subspace<T>& a, const Subspace<T>& b) {
  return Subspace<T>::span(a.ambient, hstack(a.basis, b.basis));
}

template <class T>
Subspace<T> intersect(const Subspace<T>& a, const Subspace<T>& b) {
  if (a.ambient != b.ambient) throw DimensionMismatch("intersect ambients");
  if (a.dim() == 0 || b.dim() == 0) return Subspace<T>::zero(a.ambient);
  const auto coeffs = kernel_basis(hstack(a.basis, -b.basis));
  const auto top = coeffs.block(0, 0, a.dim(), coeffs.cols());
  return Subspace<T>::span(a.ambient, a.basis * top);
}

/// Representatives of v / w: basis vectors of v completing a basis of w.
template <class T>
Subspace<T> quotient(const Subspace<T>& v, const Subspace<T>& w) {
  if (v.ambient != w.ambient) throw DimensionMismatch("quotient ambients");
  if (!v.contains(w)) throw NotASubspace("w is not contained in v");
  auto [red, piv] = rref(hstack(w.basis, v.basis));
  std::vector<std::size_t> extra;
  for (auto c : piv)
    if (c >= w.dim()) extra.push_back(c - w.dim());
  return {v.ambient, v.basis.cols_at(extra)};
}

// Restriction of scalars: C^n is identified with Q^{2n} through
// v = x + i y  |->  (x, y).

QMatrix realify_vectors(const CMatrix& v);
CMatrix complexify_vectors(const QMatrix& v);
/// Real 2m x 2n matrix of a C-linear map C^n -> C^m.
QMatrix realify_linear(const CMatrix& m);
/// Real matrix of the antilinear map v |-> s * conj(v).
QMatrix realify_antilinear(const CMatrix& s);

Subspace<Rational> restrict_scalars(const Subspace<Scalar>& v);

}  // namespace fdeligne
