#pragma once

#include "abch/linalg.hpp"

#include <optional>
#include <vector>

namespace abch {

/// Exact linear subspace of Q(i)^d, stored as a matrix with linearly independent columns.
/// Inner-product operations take the Gram matrix G of the ambient space, <x, y> = y^H G x.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient) { return Subspace(ExactMatrix(ambient, 0)); }
  static Subspace whole(std::size_t ambient) { return Subspace(ExactMatrix::identity(ambient)); }
  /// Span of the columns (dependent columns are dropped).
  static Subspace span(const ExactMatrix& vectors);
  static Subspace kernel(const ExactMatrix& op) { return Subspace(nullspace(op)); }
  static Subspace image(const ExactMatrix& op) { return span(op); }

  std::size_t dim() const { return basis_.cols(); }
  std::size_t ambient() const { return basis_.rows(); }
  const ExactMatrix& basis() const { return basis_; }

  bool contains(const std::vector<GaussianRational>& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& other) const;

  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  /// {x in this : <x, u> = 0 for all u in other}.
  Subspace orthogonal_within(const Subspace& other, const ExactMatrix& gram) const;
  Subspace orthogonal_complement(const ExactMatrix& gram) const;

  /// Coordinates, in this basis, of the G-orthogonal projections of the columns of x.
  ExactMatrix projection_coordinates(const ExactMatrix& x, const ExactMatrix& gram) const;
  /// Ambient-space matrix of the G-orthogonal projector onto this subspace.
  ExactMatrix projector(const ExactMatrix& gram) const;

  /// A basis vector of this subspace that is not contained in `smaller`, if any.
  std::optional<std::vector<GaussianRational>> witness_outside(const Subspace& smaller) const;

  /// Same subspace with basis in reduced column-echelon form (unique for the subspace).
  Subspace canonical() const;

 private:
  explicit Subspace(ExactMatrix basis) : basis_(std::move(basis)) {}
  ExactMatrix basis_;
};

/// Cross-Gram block U^H G V; zero iff the two subspaces are G-orthogonal.
ExactMatrix cross_gram(const Subspace& u, const Subspace& v, const ExactMatrix& gram);

}  // namespace abch
