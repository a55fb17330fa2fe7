#pragma once

#include "abch/matrix.hpp"

#include <cstddef>
#include <vector>

namespace abch {

/// Reduced row echelon form over Q(i). Pivots are the first nonzero entry scanning
/// columns left to right and rows top to bottom, so results are bit-reproducible.
struct RowEchelon {
  ExactMatrix reduced;
  std::vector<std::size_t> pivot_columns;
};

RowEchelon row_reduce(ExactMatrix m);

std::size_t rank(const ExactMatrix& m);
inline std::size_t nullity(const ExactMatrix& m) { return m.cols() - rank(m); }

/// Basis of ker m as the columns of the returned matrix (cols() == 0 when trivial).
/// One vector per free column, with a 1 in that column.
ExactMatrix nullspace(const ExactMatrix& m);

/// Basis of the column space: the pivot columns of m itself.
ExactMatrix column_space(const ExactMatrix& m);

/// Inverse of a square matrix; throws SingularPairing when singular.
template <class S>
Matrix<S> inverse(const Matrix<S>& a);

/// Solves a * x = b for square nonsingular a.
template <class S>
Matrix<S> solve(const Matrix<S>& a, const Matrix<S>& b);

template <class S>
S determinant(const Matrix<S>& a);

extern template Matrix<GaussianRational> inverse(const Matrix<GaussianRational>&);
extern template Matrix<Complex> inverse(const Matrix<Complex>&);
extern template Matrix<GaussianRational> solve(const Matrix<GaussianRational>&, const Matrix<GaussianRational>&);
extern template Matrix<Complex> solve(const Matrix<Complex>&, const Matrix<Complex>&);
extern template GaussianRational determinant(const Matrix<GaussianRational>&);
extern template Complex determinant(const Matrix<Complex>&);

}  // namespace abch
