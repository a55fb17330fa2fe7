#pragma once

#include "abch/cohomology.hpp"
#include "abch/spectrum.hpp"

#include <filesystem>
#include <string_view>
#include <vector>

namespace abch {

/// Finite cover R^{2n}/L' -> R^{2n}/L of a flat torus. Real coordinates are ordered
/// (x_1..x_n, y_1..y_n) with z_j = x_j + i y_j; lattice generators are matrix columns.
struct CoverSpec {
  int n = 0;
  ExactMatrix base;  // 2n x 2n, integer entries
  ExactMatrix sub;   // 2n x 2n, integer entries, columns in the span of base over Z
  double radius = 0.0;
};

/// Text format: `n = 1`, `base = [[1,0],[0,1]]`, `sub = [[2,0],[0,1]]`, `radius = 1.0`
/// (rows given outer). `#` starts a comment.
CoverSpec parse_cover(std::string_view text);
CoverSpec load_cover(const std::filesystem::path& path);

/// A dual vector mu = S^{-T} k of the covering lattice, with its character class in
/// Gamma^ = L'^* / L^*.
struct Mode {
  std::vector<long> k;
  std::vector<GaussianRational> mu;  // (a_1..a_n, b_1..b_n)
  GaussianRational norm2;            // |mu|^2 in the metric used for truncation
  std::size_t character = 0;
};

/// Fourier-truncated complex on the cover: one twisted copy of the invariant complex per mode.
/// The exact operators are those of the cover divided by pi; see numeric_engine.
class FourierCover {
 public:
  FourierCover(CoverSpec spec, ComplexModel model, ExactMatrix H, std::vector<Mode> modes);

  const CoverSpec& spec() const { return spec_; }
  const ComplexModel& model() const { return model_; }
  const FormBasis& basis() const { return engines_.front().basis(); }
  const ExactMatrix& H() const { return H_; }
  const std::vector<Mode>& modes() const { return modes_; }
  long index() const { return index_; }
  std::size_t character_count() const { return static_cast<std::size_t>(index_); }
  /// |det base| / |det sub| = 1 / |Gamma|.
  const GaussianRational& volume_ratio() const { return volume_ratio_; }

  const ExactEngine& engine(std::size_t mode) const { return engines_[mode]; }
  /// The same mode with operators multiplied back by pi.
  NumericEngine numeric_engine(std::size_t mode) const;

  /// Dimension of the truncated space of (p,q)-forms, sum over modes.
  std::size_t dim(Bidegree b) const { return modes_.size() * basis().dim(b); }

 private:
  CoverSpec spec_;
  ComplexModel model_;
  ExactMatrix H_;
  std::vector<Mode> modes_;
  std::vector<ExactEngine> engines_;
  long index_ = 1;
  GaussianRational volume_ratio_;
};

/// Twist coefficients of mode mu, divided by pi.
Twist mode_twist(int n, const std::vector<GaussianRational>& mu);

/// |mu|^2 = 4 h(mu^{1,0}, mu^{1,0}) with mu^{1,0} = sum (a_j - i b_j)/2 phi^j.
GaussianRational mode_norm2(const ExactMetric& metric, const std::vector<GaussianRational>& mu);

/// Enumerates the modes with |mu| <= radius (measured with H), sorted by |mu|^2 then k.
/// Requires a flat model (InputError) and L' inside L with finite index (NotASublattice).
FourierCover build_cover(const CoverSpec& spec, const ComplexModel& model, const ExactMatrix& H);

/// A subspace of the truncated forms in the given sectors. Coordinates are blockwise, one
/// block of size dim(sectors) per mode, in mode order.
struct CoverSubspace {
  Sectors sectors;
  Subspace space;
};

/// Block-diagonal subspace assembled from one subspace per mode.
CoverSubspace direct_sum(const FourierCover& cover, const Sectors& sectors, const std::vector<Subspace>& parts);

/// Gram matrix of the truncated space: the per-mode Gram repeated along the diagonal.
ExactMatrix cover_gram(const FourierCover& cover, const Sectors& sectors);

/// Closed under the deck group iff closed under the projection onto every character class.
bool is_gamma_invariant(const FourierCover& cover, const CoverSubspace& V);

struct GammaDimension {
  GaussianRational integral;  // definition route: integral over M of the pointwise norm function
  GaussianRational counting;  // dim_C V / |Gamma|
  const GaussianRational& value() const { return counting; }
};
/// Throws NotGammaInvariant when V is not closed under the deck group.
GammaDimension gamma_dimension(const FourierCover& cover, const CoverSubspace& V);

/// Harmonic space of one Laplacian on the cover at (p,q).
CoverSubspace cover_harmonic(const FourierCover& cover, LaplacianKind kind, Bidegree b);

struct GammaCell {
  Bidegree bidegree;
  GaussianRational del, delbar, bc, a;
  bool inequality = false;  // del + delbar <= bc + a
  bool equality = false;
};

struct GammaReport {
  long index = 1;
  std::size_t modes = 0;
  std::vector<GammaCell> cells;
  std::vector<GaussianRational> betti;  // b^k_Gamma, k = 0..2n
  bool routes_agree = true;
  bool denominators_divide_index = true;
  bool monotone = true;              // dim_Gamma U <= dim_Gamma V on nested pairs
  bool additive = true;              // dim_Gamma of an orthogonal sum
  bool sequences_exact = true;       // both sequences, every mode and bidegree
  bool eckmann_sums_zero = true;     // alternating Gamma-dimension sums
  bool kernels_coincide = true;      // ker Delta_BC = ker Delta_A = ker Delta_delbar per mode
  bool harmonics_at_zero_mode = true;
  bool zero_mode_is_base = true;
  bool complex_per_mode = true;

  bool inequality_holds() const;
  bool equality_everywhere() const;
  bool ok() const;
};
GammaReport gamma_tables(const FourierCover& cover);

struct MetricIndependence {
  double constant = 1.0;  // see quasi_isometry_constant
  bool sampled_bounds = false;
  bool dims_equal = false;
  bool projections_full_rank = false;
  bool ok() const { return sampled_bounds && dims_equal && projections_full_rank; }
};

/// Smallest C with (1/C) x^H H2 x <= x^H H1 x <= C x^H H2 x.
double quasi_isometry_constant(const ExactMatrix& H1, const ExactMatrix& H2);

/// Compares BC and Aeppli Gamma-dimensions for two flat metrics on the mode set of the first.
MetricIndependence metric_independence_check(const CoverSpec& spec, const ComplexModel& model, const ExactMatrix& H1,
                                             const ExactMatrix& H2, std::uint64_t seed = kDefaultSeed,
                                             std::size_t samples = 256);

struct GapCell {
  Bidegree bidegree;
  std::optional<double> delbar_gap;  // empty: spectrum is {0}
  std::optional<double> d_gap;
  std::optional<double> a4_gap;
  bool factor_two = true;             // gap(Delta_d) = 2 gap(Delta_delbar)
  bool a4_is_square = true;           // gap(tDelta_A,4) = gap(Delta_delbar)^2
  bool closed_image_bound = true;     // |del delbar t|^2 >= C |t|^2 on sampled t
  bool dolbeault_bound = true;        // |delbar* x|^2 + |delbar x|^2 >= gap |x|^2 off the kernel
  double min_ratio_closed = 0.0;      // smallest sampled |del delbar t|^2 / |t|^2, 0 when vacuous
  double min_ratio_dolbeault = 0.0;
  bool ok() const { return factor_two && a4_is_square && closed_image_bound && dolbeault_bound; }
};

struct GapReport {
  std::vector<GapCell> cells;
  bool fourth_orders_square = true;  // tDelta_BC,4 = tDelta_A,4 = Delta_delbar^2 exactly, every mode
  bool all_vacuous = true;
  bool ok() const;
};
GapReport gap_and_closed_image(const FourierCover& cover, std::uint64_t seed = kDefaultSeed,
                               std::size_t samples = 256, Tolerance tol = {});

}  // namespace abch
