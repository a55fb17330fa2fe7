#pragma once

#include "abch/metric.hpp"
#include "abch/subspace.hpp"

#include <array>
#include <string_view>

namespace abch {

enum class LaplacianKind { D, Del, Delbar, BC, BCTilde, BCBox, A, ATilde, ABox };

inline constexpr std::array<LaplacianKind, 9> kAllLaplacians{
    LaplacianKind::D,  LaplacianKind::Del,    LaplacianKind::Delbar, LaplacianKind::BC,  LaplacianKind::BCTilde,
    LaplacianKind::BCBox, LaplacianKind::A, LaplacianKind::ATilde, LaplacianKind::ABox};

std::string_view to_string(LaplacianKind kind);
/// Inverse of to_string; throws InputError.
LaplacianKind laplacian_from_string(std::string_view name);

/// All first-order operators, their adjoints and the nine Laplacians as global matrices
/// on the full algebra. Every Laplacian except Delta_d preserves bidegree; for Delta_d the
/// bidegree block is the compression, whose kernel is ker d cap ker d* in A^{p,q}.
template <class S>
class LaplacianEngine {
 public:
  LaplacianEngine(BigradedComplex<S> complex, HermitianMetric<S> metric);

  const BigradedComplex<S>& complex() const { return complex_; }
  const HermitianMetric<S>& metric() const { return metric_; }
  const FormBasis& basis() const { return complex_.basis(); }

  const Matrix<S>& del() const { return complex_.del(); }
  const Matrix<S>& delbar() const { return complex_.delbar(); }
  const Matrix<S>& del_star() const { return del_star_; }
  const Matrix<S>& delbar_star() const { return delbar_star_; }
  Matrix<S> d() const { return complex_.d(); }
  Matrix<S> d_star() const { return del_star_ + delbar_star_; }

  const Matrix<S>& global(LaplacianKind kind) const { return laplacians_[static_cast<std::size_t>(kind)]; }
  /// Fourth-order parts of the tilde Laplacians.
  const Matrix<S>& bc_fourth_order() const { return bc4_; }
  const Matrix<S>& a_fourth_order() const { return a4_; }

  Matrix<S> assemble(LaplacianKind kind, Bidegree b) const { return block(global(kind), b); }
  /// Delta_d on total degree k.
  Matrix<S> de_rham(int k) const;

  Matrix<S> block(const Matrix<S>& global_op, Bidegree b) const { return restrict_op(basis(), global_op, {b}, {b}); }
  Matrix<S> block(const Matrix<S>& global_op, const Sectors& src, const Sectors& dst) const {
    return restrict_op(basis(), global_op, src, dst);
  }

 private:
  BigradedComplex<S> complex_;
  HermitianMetric<S> metric_;
  Matrix<S> del_star_;
  Matrix<S> delbar_star_;
  Matrix<S> bc4_;
  Matrix<S> a4_;
  std::array<Matrix<S>, 9> laplacians_;
};

using ExactEngine = LaplacianEngine<GaussianRational>;
using NumericEngine = LaplacianEngine<Complex>;

/// Exact kernel of the Laplacian block.
Subspace harmonic_space(const ExactEngine& e, LaplacianKind kind, Bidegree b);
/// The same space from its first-order description, e.g. ker del cap ker delbar cap ker delbar* del*
/// for the Bott-Chern kinds and ker del delbar cap ker del* cap ker delbar* for Aeppli.
Subspace harmonic_space_characterized(const ExactEngine& e, LaplacianKind kind, Bidegree b);
/// ker Delta_d on total degree k, in the coordinates of bidegrees_of_degree(k).
Subspace de_rham_harmonic(const ExactEngine& e, int k);

/// d omega = 0 for the fundamental form of the metric, decided exactly.
bool is_kahler(const ExactEngine& e);

struct KahlerIdentities {
  bool d_is_twice_del = false;      // Delta_d = 2 Delta_del
  bool d_is_twice_delbar = false;   // Delta_d = 2 Delta_delbar
  bool del_delbar_star = false;     // del delbar* + delbar* del = 0
  bool del_star_delbar = false;     // del* delbar + delbar del* = 0
  bool bc_tilde_concise = false;    // tilde Delta_BC = Delta_delbar^2 + del* del + delbar* delbar
  bool fourth_orders_square = false;  // tilde Delta_BC,4 = tilde Delta_A,4 = Delta_delbar^2
  bool harmonics_coincide = false;  // all nine kernels equal at every bidegree
  bool all() const {
    return d_is_twice_del && d_is_twice_delbar && del_delbar_star && del_star_delbar && bc_tilde_concise &&
           fourth_orders_square && harmonics_coincide;
  }
};
KahlerIdentities kahler_identities(const ExactEngine& e);

struct DualityReport {
  bool bc_a = false;        // * Delta_A = Delta_BC *, * Delta_BC = Delta_A *
  bool tilde = false;
  bool box = false;
  bool all() const { return bc_a && tilde && box; }
};
DualityReport duality(const ExactEngine& e);

/// ker Delta_BC = ker tilde Delta_BC = ker Box_BC = characterized space, and the Aeppli triple.
struct KernelCoincidence {
  bool bc = false;
  bool aeppli = false;
  bool box_intersection = false;  // ker Box_BC = ker(delbar* del*) cap ker(del* del + delbar* delbar)
};
KernelCoincidence kernel_coincidence(const ExactEngine& e, Bidegree b);

/// The operator Box = (del* + delbar*)(delbar (+) del) + (delbar (+) d (+) del)(del* + delbar*) on
/// A^{p,q-1} (+) A^{p-1,q}, and Box' = Delta_delbar + del del* (+) delbar delbar*.
template <class S>
struct ChainOperators {
  Sectors sectors;
  Matrix<S> box;
  Matrix<S> box_prime;
  Matrix<S> delbar_laplacian;  // Delta_delbar on the same sum
};
template <class S>
ChainOperators<S> chain_operators(const LaplacianEngine<S>& e, Bidegree pq);

}  // namespace abch
