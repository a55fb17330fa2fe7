#pragma once

#include "abch/complex.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace abch {

/// Invariant Hermitian metric: H(i,j) = h(phi^i, phi^j) on the (1,0) coframe, extended to
/// all A^{p,q} by minors. Inner products are <x, y> = y^H G x with G(a,b) = h(e_b, e_a).
template <class S>
class HermitianMetric {
 public:
  HermitianMetric() = default;
  HermitianMetric(FormBasis basis, Matrix<S> H, Matrix<S> gram, Matrix<S> gram_inverse, S vol_coeff,
                  FormVector<S> omega, Matrix<S> star)
      : basis_(std::move(basis)), H_(std::move(H)), gram_(std::move(gram)), gram_inverse_(std::move(gram_inverse)),
        vol_coeff_(std::move(vol_coeff)), omega_(std::move(omega)), star_(std::move(star)) {}

  const FormBasis& basis() const { return basis_; }
  const Matrix<S>& H() const { return H_; }

  /// Block-diagonal Gram matrix on the full algebra, and per bidegree.
  const Matrix<S>& gram() const { return gram_; }
  Matrix<S> gram(Bidegree b) const { return restrict_op(basis_, gram_, {b}, {b}); }
  Matrix<S> gram(const Sectors& s) const { return restrict_op(basis_, gram_, s, s); }
  const Matrix<S>& gram_inverse() const { return gram_inverse_; }

  /// vol = omega^n / n! = vol_coeff * (canonical top monomial).
  const S& vol_coeff() const { return vol_coeff_; }
  const FormVector<S>& fundamental_form() const { return omega_; }

  /// C-linear Hodge star on the full algebra; maps A^{p,q} to A^{n-q,n-p}.
  const Matrix<S>& star() const { return star_; }
  Matrix<S> star(Bidegree b) const {
    return restrict_op(basis_, star_, {b}, {Bidegree{basis_.n() - b.q, basis_.n() - b.p}});
  }

  /// Gram adjoint of a global operator: T* = G^{-1} T^H G.
  Matrix<S> adjoint(const Matrix<S>& T) const { return gram_inverse_ * (T.adjoint() * gram_); }

  /// <x, y> for global coordinate vectors.
  S inner(const std::vector<S>& x, const std::vector<S>& y) const;

 private:
  FormBasis basis_;
  Matrix<S> H_;
  Matrix<S> gram_;
  Matrix<S> gram_inverse_;
  S vol_coeff_{};
  FormVector<S> omega_;
  Matrix<S> star_;
};

using ExactMetric = HermitianMetric<GaussianRational>;
using NumericMetric = HermitianMetric<Complex>;

/// Throws NotHermitian / NotPositiveDefinite (leading principal minors) / ShapeMismatch.
template <class S>
HermitianMetric<S> build_metric(const FormBasis& basis, const Matrix<S>& H);

template <class S>
HermitianMetric<S> build_metric(const BigradedComplex<S>& c, const Matrix<S>& H) {
  return build_metric(c.basis(), H);
}

NumericMetric to_numeric(const ExactMetric& m);

/// omega = i sum g(j,k) phi^j ^ phibar^k with g = (H^{-1})^T, the metric H induces on
/// (1,0)-vectors. This choice gives |vol| = 1 for every H.
template <class S>
FormVector<S> fundamental_form(const FormBasis& basis, const Matrix<S>& H);

/// Coefficient of omega^n / n! on phi^1^..^phi^n^phibar^1^..^phibar^n.
template <class S>
S volume_coefficient(const FormBasis& basis, const FormVector<S>& omega);

/// Entries of a `.herm` file. `exact` is set only when every coefficient is a Gaussian rational.
struct MetricSpec {
  int n = 0;
  std::optional<ExactMatrix> exact;
  NumericMatrix numeric;
};

MetricSpec parse_metric(std::string_view text);
MetricSpec load_metric(const std::string& path);
MetricSpec identity_metric(int n);
/// diag(2, 1, ..., 1), the second metric used by the checks.
MetricSpec diagonal_metric(int n, long first);

/// FNV-1a hash of the canonical text of H, as 16 hex digits.
std::string metric_hash(const MetricSpec& spec);

}  // namespace abch
