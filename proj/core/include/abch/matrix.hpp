#pragma once

#include "abch/error.hpp"
#include "abch/gaussian_rational.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace abch {

using Complex = std::complex<double>;

/// Scalar policy for the two backends. The exact backend decides zero-ness structurally,
/// the numeric one by magnitude.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool exact = true;
  static bool is_zero(const GaussianRational& s) { return s.is_zero(); }
  static GaussianRational conj(const GaussianRational& s) { return s.conj(); }
  static double magnitude(const GaussianRational& s) { return std::abs(s.to_complex()); }
  static Complex to_complex(const GaussianRational& s) { return s.to_complex(); }
  static GaussianRational from_int(long v) { return GaussianRational(v); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static bool is_zero(const Complex& s) { return s == Complex(0.0, 0.0); }
  static Complex conj(const Complex& s) { return std::conj(s); }
  static double magnitude(const Complex& s) { return std::abs(s); }
  static Complex to_complex(const Complex& s) { return s; }
  static Complex from_int(long v) { return Complex(static_cast<double>(v), 0.0); }
};

/// Dense row-major matrix over either backend scalar.
template <class S>
class Matrix {
 public:
  using Scalar = S;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarTraits<S>::from_int(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const S> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<S> column(std::size_t c) const {
    std::vector<S> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  static Matrix from_columns(std::size_t rows, const std::vector<std::vector<S>>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    return m;
  }

  bool is_zero() const {
    for (const auto& s : data_)
      if (!ScalarTraits<S>::is_zero(s)) return false;
    return true;
  }

  /// Conjugate transpose.
  Matrix adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(c, r) = ScalarTraits<S>::conj((*this)(r, c));
    return m;
  }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
    return m;
  }

  Matrix conjugate() const {
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = ScalarTraits<S>::conj(data_[i]);
    return m;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix m(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
    return m;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const S& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const S& s) { return a *= s; }
  friend Matrix operator*(const S& s, Matrix a) { return a *= s; }
  Matrix operator-() const {
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = -data_[i];
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw Error(ErrorKind::ShapeMismatch, "matrix product " + a.shape() + " * " + b.shape());
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (ScalarTraits<S>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const S& bkj = b(k, j);
          if (ScalarTraits<S>::is_zero(bkj)) continue;
          m(i, j) += aik * bkj;
        }
      }
    }
    return m;
  }

  std::vector<S> apply(const std::vector<S>& v) const {
    if (v.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "apply: vector length mismatch");
    std::vector<S> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!ScalarTraits<S>::is_zero((*this)(i, j))) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  const std::vector<S>& data() const { return data_; }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw Error(ErrorKind::ShapeMismatch, "shape " + shape() + " vs " + o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

using ExactMatrix = Matrix<GaussianRational>;
using NumericMatrix = Matrix<Complex>;

inline NumericMatrix to_numeric(const ExactMatrix& m, double scale = 1.0) {
  NumericMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).to_complex() * scale;
  return out;
}

/// Frobenius norm, usable for residual checks on either backend.
template <class S>
double frobenius_norm(const Matrix<S>& m) {
  double s = 0.0;
  for (const auto& x : m.data()) {
    const double a = ScalarTraits<S>::magnitude(x);
    s += a * a;
  }
  return std::sqrt(s);
}

/// Concatenate horizontally (same row count).
template <class S>
Matrix<S> hconcat(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() && !(a.cols() == 0 || b.cols() == 0))
    throw Error(ErrorKind::ShapeMismatch, "hconcat " + a.shape() + " | " + b.shape());
  const std::size_t rows = a.cols() == 0 ? b.rows() : a.rows();
  Matrix<S> m(rows, a.cols() + b.cols());
  if (a.cols() > 0) m.set_block(0, 0, a);
  if (b.cols() > 0) m.set_block(0, a.cols(), b);
  return m;
}

/// Stack vertically (same column count).
template <class S>
Matrix<S> vconcat(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.cols() != b.cols() && !(a.rows() == 0 || b.rows() == 0))
    throw Error(ErrorKind::ShapeMismatch, "vconcat " + a.shape() + " / " + b.shape());
  const std::size_t cols = a.rows() == 0 ? b.cols() : a.cols();
  Matrix<S> m(a.rows() + b.rows(), cols);
  if (a.rows() > 0) m.set_block(0, 0, a);
  if (b.rows() > 0) m.set_block(a.rows(), 0, b);
  return m;
}

}  // namespace abch
