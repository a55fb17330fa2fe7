#include "abch/subspace.hpp"

namespace abch {

Subspace Subspace::span(const ExactMatrix& vectors) { return Subspace(column_space(vectors)); }

bool Subspace::contains(const std::vector<GaussianRational>& v) const {
  if (v.size() != ambient()) throw Error(ErrorKind::ShapeMismatch, "contains: ambient mismatch");
  const ExactMatrix col = ExactMatrix::from_columns(ambient(), {v});
  return rank(hconcat(basis_, col)) == dim();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient() != ambient()) throw Error(ErrorKind::ShapeMismatch, "contains: ambient mismatch");
  if (other.dim() == 0) return true;
  return rank(hconcat(basis_, other.basis_)) == dim();
}

bool Subspace::operator==(const Subspace& other) const {
  return dim() == other.dim() && contains(other);
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (other.ambient() != ambient()) throw Error(ErrorKind::ShapeMismatch, "sum: ambient mismatch");
  return span(hconcat(basis_, other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient() != ambient()) throw Error(ErrorKind::ShapeMismatch, "intersect: ambient mismatch");
  if (dim() == 0 || other.dim() == 0) return zero(ambient());
  // U a = V b  <=>  [U | -V] (a; b) = 0
  const ExactMatrix k = nullspace(hconcat(basis_, -other.basis_));
  if (k.cols() == 0) return zero(ambient());
  return span(basis_ * k.block(0, 0, dim(), k.cols()));
}

Subspace Subspace::orthogonal_within(const Subspace& other, const ExactMatrix& gram) const {
  if (other.dim() == 0 || dim() == 0) return *this;
  // coefficients a with other^H G (basis a) = 0
  const ExactMatrix k = nullspace(other.basis_.adjoint() * gram * basis_);
  return span(basis_ * k);
}

Subspace Subspace::orthogonal_complement(const ExactMatrix& gram) const {
  return whole(ambient()).orthogonal_within(*this, gram);
}

ExactMatrix Subspace::projection_coordinates(const ExactMatrix& x, const ExactMatrix& gram) const {
  if (dim() == 0) return ExactMatrix(0, x.cols());
  const ExactMatrix bh_g = basis_.adjoint() * gram;
  return solve(bh_g * basis_, bh_g * x);
}

ExactMatrix Subspace::projector(const ExactMatrix& gram) const {
  return basis_ * projection_coordinates(ExactMatrix::identity(ambient()), gram);
}

std::optional<std::vector<GaussianRational>> Subspace::witness_outside(const Subspace& smaller) const {
  for (std::size_t c = 0; c < dim(); ++c) {
    auto v = basis_.column(c);
    if (!smaller.contains(v)) return v;
  }
  return std::nullopt;
}

Subspace Subspace::canonical() const {
  if (dim() == 0) return *this;
  const RowEchelon e = row_reduce(basis_.transpose());
  return Subspace(e.reduced.block(0, 0, dim(), ambient()).transpose());
}

ExactMatrix cross_gram(const Subspace& u, const Subspace& v, const ExactMatrix& gram) {
  return u.basis().adjoint() * gram * v.basis();
}

}  // namespace abch
