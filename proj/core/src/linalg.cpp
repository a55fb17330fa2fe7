#include "abch/linalg.hpp"

#include <utility>

namespace abch {

RowEchelon row_reduce(ExactMatrix m) {
  RowEchelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    const GaussianRational inv = GaussianRational(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c)
      if (!m(row, c).is_zero()) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const GaussianRational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
    }
    out.pivot_columns.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const ExactMatrix& m) {
  if (m.empty()) return 0;
  return row_reduce(m).pivot_columns.size();
}

ExactMatrix nullspace(const ExactMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return ExactMatrix::identity(n);
  const RowEchelon e = row_reduce(m);
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;
  std::vector<std::vector<GaussianRational>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<GaussianRational> v(n);
    v[free] = GaussianRational(1);
    for (std::size_t i = 0; i < e.pivot_columns.size(); ++i) v[e.pivot_columns[i]] = -e.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return ExactMatrix::from_columns(n, basis);
}

ExactMatrix column_space(const ExactMatrix& m) {
  if (m.empty()) return ExactMatrix(m.rows(), 0);
  const RowEchelon e = row_reduce(m);
  std::vector<std::vector<GaussianRational>> cols;
  cols.reserve(e.pivot_columns.size());
  for (auto c : e.pivot_columns) cols.push_back(m.column(c));
  return ExactMatrix::from_columns(m.rows(), cols);
}

namespace {

// Gauss-Jordan on [a | b]. Exact: first nonzero pivot. Numeric: partial pivoting.
template <class S>
Matrix<S> gauss_jordan(Matrix<S> a, Matrix<S> b) {
  using T = ScalarTraits<S>;
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n)
    throw Error(ErrorKind::ShapeMismatch, "solve: " + a.shape() + " with rhs " + b.shape());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    if constexpr (T::exact) {
      for (std::size_t r = col; r < n; ++r)
        if (!T::is_zero(a(r, col))) {
          pivot = r;
          break;
        }
    } else {
      double best = 0.0;
      for (std::size_t r = col; r < n; ++r) {
        const double m = T::magnitude(a(r, col));
        if (m > best) {
          best = m;
          pivot = r;
        }
      }
      if (best == 0.0) pivot = n;
    }
    if (pivot == n) throw Error(ErrorKind::SingularPairing, "singular matrix in solve");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      for (std::size_t c = 0; c < b.cols(); ++c) std::swap(b(pivot, c), b(col, c));
    }
    const S inv = T::from_int(1) / a(col, col);
    for (std::size_t c = 0; c < n; ++c) a(col, c) *= inv;
    for (std::size_t c = 0; c < b.cols(); ++c) b(col, c) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || T::is_zero(a(r, col))) continue;
      const S f = a(r, col);
      for (std::size_t c = 0; c < n; ++c) a(r, c) -= f * a(col, c);
      for (std::size_t c = 0; c < b.cols(); ++c) b(r, c) -= f * b(col, c);
    }
  }
  return b;
}

}  // namespace

template <class S>
Matrix<S> inverse(const Matrix<S>& a) {
  return gauss_jordan(a, Matrix<S>::identity(a.rows()));
}

template <class S>
Matrix<S> solve(const Matrix<S>& a, const Matrix<S>& b) {
  return gauss_jordan(a, b);
}

template <class S>
S determinant(const Matrix<S>& in) {
  using T = ScalarTraits<S>;
  Matrix<S> a = in;
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(ErrorKind::ShapeMismatch, "determinant of " + a.shape());
  S det = T::from_int(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    double best = 0.0;
    for (std::size_t r = col; r < n; ++r) {
      if (T::is_zero(a(r, col))) continue;
      if constexpr (T::exact) {
        pivot = r;
        break;
      } else {
        const double m = T::magnitude(a(r, col));
        if (m > best) {
          best = m;
          pivot = r;
        }
      }
    }
    if (pivot == n) return S{};
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    const S inv = T::from_int(1) / a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (T::is_zero(a(r, col))) continue;
      const S f = a(r, col) * inv;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

template Matrix<GaussianRational> inverse(const Matrix<GaussianRational>&);
template Matrix<Complex> inverse(const Matrix<Complex>&);
template Matrix<GaussianRational> solve(const Matrix<GaussianRational>&, const Matrix<GaussianRational>&);
template Matrix<Complex> solve(const Matrix<Complex>&, const Matrix<Complex>&);
template GaussianRational determinant(const Matrix<GaussianRational>&);
template Complex determinant(const Matrix<Complex>&);

}  // namespace abch
