#include "abch/covering.hpp"

#include <json.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace abch {

// ---- .cover files ----

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

ExactMatrix parse_integer_matrix(const std::string& value, int line, const std::string& key) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(value);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, key + " is not a valid matrix literal", line);
  }
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::SyntaxError, key + " must be a list of rows", line);
  const std::size_t rows = j.size();
  ExactMatrix m(rows, rows);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != rows)
      throw Error(ErrorKind::ShapeMismatch, key + " must be square", line);
    for (std::size_t c = 0; c < rows; ++c) {
      if (!j[r][c].is_number_integer()) throw Error(ErrorKind::SyntaxError, key + " entries must be integers", line);
      m(r, c) = GaussianRational(j[r][c].get<long>());
    }
  }
  return m;
}

}  // namespace

CoverSpec parse_cover(std::string_view text) {
  CoverSpec spec;
  bool have_n = false, have_base = false, have_sub = false, have_radius = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view view(raw);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    const std::string content = trim(view);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::SyntaxError, "expected `key = value`", line);
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    auto once = [&](bool& seen) {
      if (seen) throw Error(ErrorKind::DuplicateEquation, "`" + key + "` given twice", line);
      seen = true;
    };
    if (key == "n") {
      once(have_n);
      try {
        std::size_t used = 0;
        spec.n = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::SyntaxError, "n must be an integer", line);
      }
      if (spec.n < 1 || spec.n > 3) throw Error(ErrorKind::InputError, "covers support 1 <= n <= 3", line);
    } else if (key == "base") {
      once(have_base);
      spec.base = parse_integer_matrix(value, line, key);
    } else if (key == "sub") {
      once(have_sub);
      spec.sub = parse_integer_matrix(value, line, key);
    } else if (key == "radius") {
      once(have_radius);
      try {
        std::size_t used = 0;
        spec.radius = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::SyntaxError, "radius must be a number", line);
      }
      if (!(spec.radius >= 0.0) || !std::isfinite(spec.radius))
        throw Error(ErrorKind::InputError, "radius must be a finite nonnegative number", line);
    } else {
      throw Error(ErrorKind::SyntaxError, "unknown key `" + key + "`", line);
    }
  }
  if (!have_n || !have_base || !have_sub || !have_radius)
    throw Error(ErrorKind::InputError, "a cover needs n, base, sub and radius");
  const std::size_t real_dim = 2 * static_cast<std::size_t>(spec.n);
  if (spec.base.rows() != real_dim || spec.sub.rows() != real_dim)
    throw Error(ErrorKind::ShapeMismatch, "base and sub must be " + std::to_string(real_dim) + " x " +
                                              std::to_string(real_dim));
  return spec;
}

CoverSpec load_cover(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InputError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_cover(ss.str());
}

// ---- modes ----

Twist mode_twist(int n, const std::vector<GaussianRational>& mu) {
  Twist t;
  for (int j = 0; j < n; ++j) {
    const GaussianRational& a = mu[j];
    const GaussianRational& b = mu[n + j];
    t.hol.push_back(b + GaussianRational::i() * a);
    t.anti.push_back(-b + GaussianRational::i() * a);
  }
  return t;
}

GaussianRational mode_norm2(const ExactMetric& metric, const std::vector<GaussianRational>& mu) {
  const FormBasis& basis = metric.basis();
  const int n = basis.n();
  std::vector<GaussianRational> x(basis.dim());
  for (int j = 0; j < n; ++j)
    x[basis.index(BasisMonomial{1u << j, 0u})] = (mu[j] - GaussianRational::i() * mu[n + j]) * GaussianRational(mpq_class(1, 2));
  return GaussianRational(4) * metric.inner(x, x);
}

namespace {

bool is_integer(const GaussianRational& x) { return x.is_real() && x.re().get_den() == 1; }

ExactMatrix real_transpose(const ExactMatrix& m) { return m.transpose(); }

std::vector<GaussianRational> times(const ExactMatrix& m, const std::vector<GaussianRational>& v) { return m.apply(v); }

// Character class of mu: fractional parts of B^T mu.
std::vector<mpq_class> character_key(const ExactMatrix& base_t, const std::vector<GaussianRational>& mu) {
  std::vector<mpq_class> key;
  for (const auto& x : times(base_t, mu)) {
    mpq_class r = x.re();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    key.push_back(r - fl);
  }
  return key;
}

}  // namespace

FourierCover::FourierCover(CoverSpec spec, ComplexModel model, ExactMatrix H, std::vector<Mode> modes)
    : spec_(std::move(spec)), model_(std::move(model)), H_(std::move(H)), modes_(std::move(modes)) {
  if (modes_.empty()) throw Error(ErrorKind::EmptyModeSet, "the cover has no Fourier modes");
  const GaussianRational det_base = determinant(spec_.base);
  const GaussianRational det_sub = determinant(spec_.sub);
  if (det_base.is_zero() || det_sub.is_zero()) throw Error(ErrorKind::NotASublattice, "lattice matrices must be invertible");
  const GaussianRational ratio = det_sub / det_base;
  if (!is_integer(ratio)) throw Error(ErrorKind::NotASublattice, "det(sub) / det(base) is not an integer");
  index_ = std::abs(ratio.re().get_num().get_si());
  volume_ratio_ = GaussianRational(mpq_class(1, index_));

  const ExactComplex base_complex = build_complex(model_);
  const ExactMetric metric = build_metric(base_complex, H_);
  engines_.reserve(modes_.size());
  for (const Mode& m : modes_) {
    const Twist t = mode_twist(model_.n, m.mu);
    engines_.emplace_back(build_complex(model_, &t), metric);
  }
}

NumericEngine FourierCover::numeric_engine(std::size_t mode) const {
  const ExactEngine& e = engines_[mode];
  return NumericEngine(to_numeric(e.complex(), std::numbers::pi), to_numeric(e.metric()));
}

FourierCover build_cover(const CoverSpec& spec, const ComplexModel& model, const ExactMatrix& H) {
  if (model.n != spec.n) throw Error(ErrorKind::ShapeMismatch, "cover and model have different n");
  if (!model.is_flat()) throw Error(ErrorKind::InputError, "covers are only supported for flat torus models");
  const int n = spec.n;
  const std::size_t m = 2 * static_cast<std::size_t>(n);

  const GaussianRational det_base = determinant(spec.base);
  const GaussianRational det_sub = determinant(spec.sub);
  if (det_base.is_zero()) throw Error(ErrorKind::NotASublattice, "base lattice is degenerate");
  if (det_sub.is_zero()) throw Error(ErrorKind::NotASublattice, "sub lattice is degenerate");
  const ExactMatrix coords = solve(spec.base, spec.sub);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c)
      if (!is_integer(coords(r, c)))
        throw Error(ErrorKind::NotASublattice, "column " + std::to_string(c + 1) + " of sub is not in the base lattice");

  const ExactMetric metric = build_metric(FormBasis(n), H);

  // Real quadratic form of |mu|^2 by polarization; its smallest eigenvalue bounds the search box.
  Eigen::MatrixXd Q(m, m);
  auto unit = [&](std::size_t i, std::size_t j) {
    std::vector<GaussianRational> v(m);
    v[i] += GaussianRational(1);
    v[j] += GaussianRational(1);
    return mode_norm2(metric, v).re().get_d();
  };
  for (std::size_t i = 0; i < m; ++i) Q(i, i) = unit(i, i) / 4.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) Q(i, j) = Q(j, i) = (unit(i, j) - Q(i, i) - Q(j, j)) / 2.0;
  const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Q, Eigen::EigenvaluesOnly).eigenvalues()(0);
  if (!(lmin > 0.0)) throw Error(ErrorKind::NotPositiveDefinite, "metric gives a degenerate norm on dual vectors");
  double snorm = 0.0;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) snorm += std::pow(spec.sub(r, c).re().get_d(), 2);
  const long K = static_cast<long>(std::floor(std::sqrt(snorm) * spec.radius / std::sqrt(lmin))) + 1;

  const ExactMatrix dual = inverse(spec.sub).transpose();
  const ExactMatrix base_t = real_transpose(spec.base);
  const mpq_class r2 = mpq_class(spec.radius) * mpq_class(spec.radius);

  std::vector<Mode> modes;
  std::vector<long> k(m, -K);
  while (true) {
    std::vector<GaussianRational> kk;
    for (long x : k) kk.emplace_back(x);
    std::vector<GaussianRational> mu = times(dual, kk);
    GaussianRational norm2 = mode_norm2(metric, mu);
    if (norm2.re() <= r2) modes.push_back(Mode{k, std::move(mu), std::move(norm2), 0});
    std::size_t i = 0;
    while (i < m && k[i] == K) k[i++] = -K;
    if (i == m) break;
    ++k[i];
  }
  std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
    if (a.norm2.re() != b.norm2.re()) return a.norm2.re() < b.norm2.re();
    return a.k < b.k;
  });
  std::map<std::vector<mpq_class>, std::size_t> classes;
  for (Mode& mode : modes) {
    const auto key = character_key(base_t, mode.mu);
    mode.character = classes.emplace(key, classes.size()).first->second;
  }
  return FourierCover(spec, model, H, std::move(modes));
}

// ---- Gamma-dimensions ----

CoverSubspace direct_sum(const FourierCover& cover, const Sectors& sectors, const std::vector<Subspace>& parts) {
  const std::size_t block = cover.basis().dim(sectors);
  std::size_t total = 0;
  for (const auto& p : parts) total += p.dim();
  ExactMatrix m(block * parts.size(), total);
  std::size_t col = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].dim() > 0) m.set_block(i * block, col, parts[i].basis());
    col += parts[i].dim();
  }
  return {sectors, Subspace::span(m)};
}

ExactMatrix cover_gram(const FourierCover& cover, const Sectors& sectors) {
  const ExactMatrix g = cover.engine(0).metric().gram(sectors);
  const std::size_t block = g.rows();
  ExactMatrix out(block * cover.modes().size(), block * cover.modes().size());
  for (std::size_t i = 0; i < cover.modes().size(); ++i)
    if (block > 0) out.set_block(i * block, i * block, g);
  return out;
}

bool is_gamma_invariant(const FourierCover& cover, const CoverSubspace& V) {
  const std::size_t block = cover.basis().dim(V.sectors);
  const ExactMatrix& basis = V.space.basis();
  for (std::size_t chi = 0; chi < cover.character_count(); ++chi) {
    ExactMatrix projected = basis;
    for (std::size_t i = 0; i < cover.modes().size(); ++i) {
      if (cover.modes()[i].character == chi) continue;
      for (std::size_t r = i * block; r < (i + 1) * block; ++r)
        for (std::size_t c = 0; c < projected.cols(); ++c) projected(r, c) = GaussianRational();
    }
    if (!V.space.contains(Subspace::span(projected))) return false;
  }
  return true;
}

GammaDimension gamma_dimension(const FourierCover& cover, const CoverSubspace& V) {
  if (!is_gamma_invariant(cover, V))
    throw Error(ErrorKind::NotGammaInvariant, "subspace is not closed under the deck group");
  GammaDimension out;
  const std::size_t dim = V.space.dim();
  out.counting = GaussianRational(mpq_class(static_cast<long>(dim), cover.index()));
  if (dim == 0) return out;
  // Each mode contributes a constant pointwise norm, so the integral over the base is
  // vol(M)/vol(M~) times the sum of the per-mode traces tr(G V_mu (V^H G V)^{-1} V_mu^H).
  const ExactMatrix g = cover.engine(0).metric().gram(V.sectors);
  const std::size_t block = g.rows();
  const ExactMatrix& basis = V.space.basis();
  const ExactMatrix pairing_inv = inverse(basis.adjoint() * cover_gram(cover, V.sectors) * basis);
  GaussianRational sum;
  for (std::size_t i = 0; i < cover.modes().size(); ++i) {
    const ExactMatrix part = basis.block(i * block, 0, block, dim);
    if (part.is_zero()) continue;
    const ExactMatrix local = pairing_inv * (part.adjoint() * g * part);
    for (std::size_t r = 0; r < dim; ++r) sum += local(r, r);
  }
  out.integral = cover.volume_ratio() * sum;
  return out;
}

CoverSubspace cover_harmonic(const FourierCover& cover, LaplacianKind kind, Bidegree b) {
  std::vector<Subspace> parts;
  for (std::size_t i = 0; i < cover.modes().size(); ++i) parts.push_back(harmonic_space(cover.engine(i), kind, b));
  return direct_sum(cover, {b}, parts);
}

// ---- tables ----

bool GammaReport::inequality_holds() const {
  for (const auto& c : cells)
    if (!c.inequality) return false;
  return true;
}

bool GammaReport::equality_everywhere() const {
  for (const auto& c : cells)
    if (!c.equality) return false;
  return true;
}

bool GammaReport::ok() const {
  return inequality_holds() && routes_agree && denominators_divide_index && monotone && additive &&
         sequences_exact && eckmann_sums_zero && kernels_coincide && harmonics_at_zero_mode && zero_mode_is_base &&
         complex_per_mode;
}

namespace {

struct PerMode {
  const FourierCover& cover;
  Bidegree b;

  template <class F>
  CoverSubspace collect(F&& f) const {
    std::vector<Subspace> parts;
    for (std::size_t i = 0; i < cover.modes().size(); ++i) parts.push_back(f(cover.engine(i)));
    return direct_sum(cover, {b}, parts);
  }

  Subspace kernel(const ExactEngine& e, const ExactMatrix& g, Bidegree dst) const {
    const ExactMatrix m = restrict_op(e.basis(), g, {b}, {dst});
    return m.rows() == 0 ? Subspace::whole(e.basis().dim(b)) : Subspace::kernel(m);
  }
  Subspace image(const ExactEngine& e, const ExactMatrix& g, Bidegree src) const {
    const ExactMatrix m = restrict_op(e.basis(), g, {src}, {b});
    return m.cols() == 0 ? Subspace::zero(e.basis().dim(b)) : Subspace::image(m);
  }
};

bool lies_in_lattice(const GaussianRational& x, long index) {
  return is_integer(GaussianRational(x.re() * index));
}

}  // namespace

GammaReport gamma_tables(const FourierCover& cover) {
  GammaReport r;
  r.index = cover.index();
  r.modes = cover.modes().size();
  const FormBasis& basis = cover.basis();
  const int n = basis.n();

  auto gdim = [&](const CoverSubspace& V) {
    const GammaDimension g = gamma_dimension(cover, V);
    if (!(g.integral == g.counting)) r.routes_agree = false;
    if (!lies_in_lattice(g.counting, cover.index())) r.denominators_divide_index = false;
    return g.counting;
  };

  const ExactComplex base = build_complex(cover.model());
  const ExactEngine& zero = cover.engine(0);
  r.zero_mode_is_base = zero.del() == base.del() && zero.delbar() == base.delbar();

  for (std::size_t i = 0; i < cover.modes().size(); ++i) {
    const ExactEngine& e = cover.engine(i);
    const ExactMatrix& D = e.del();
    const ExactMatrix& B = e.delbar();
    if (!(D * D).is_zero() || !(B * B).is_zero() || !(D * B + B * D).is_zero()) r.complex_per_mode = false;
  }

  for (Bidegree b : basis.all_bidegrees()) {
    const PerMode pm{cover, b};
    GammaCell cell;
    cell.bidegree = b;
    const CoverSubspace h_del = cover_harmonic(cover, LaplacianKind::Del, b);
    const CoverSubspace h_delbar = cover_harmonic(cover, LaplacianKind::Delbar, b);
    const CoverSubspace h_bc = cover_harmonic(cover, LaplacianKind::BC, b);
    const CoverSubspace h_a = cover_harmonic(cover, LaplacianKind::A, b);
    cell.del = gdim(h_del);
    cell.delbar = gdim(h_delbar);
    cell.bc = gdim(h_bc);
    cell.a = gdim(h_a);
    const GaussianRational lhs = cell.del + cell.delbar;
    const GaussianRational rhs = cell.bc + cell.a;
    cell.inequality = lhs.re() <= rhs.re();
    cell.equality = lhs == rhs;
    r.cells.push_back(cell);

    const Bidegree up_p{b.p + 1, b.q}, up_q{b.p, b.q + 1}, up{b.p + 1, b.q + 1}, down{b.p - 1, b.q - 1},
        down_q{b.p, b.q - 1};
    const CoverSubspace closed = pm.collect([&](const ExactEngine& e) {
      return pm.kernel(e, e.del(), up_p).intersect(pm.kernel(e, e.delbar(), up_q));
    });
    const CoverSubspace ker_delbar = pm.collect([&](const ExactEngine& e) { return pm.kernel(e, e.delbar(), up_q); });
    const CoverSubspace ker_ddbar =
        pm.collect([&](const ExactEngine& e) { return pm.kernel(e, e.del() * e.delbar(), up); });
    const CoverSubspace im_ddbar =
        pm.collect([&](const ExactEngine& e) { return pm.image(e, e.del() * e.delbar(), down); });
    const CoverSubspace im_delbar = pm.collect([&](const ExactEngine& e) { return pm.image(e, e.delbar(), down_q); });
    const CoverSubspace im_delbar_star =
        pm.collect([&](const ExactEngine& e) { return pm.image(e, e.delbar_star(), up_q); });

    const std::array<std::pair<const CoverSubspace*, const CoverSubspace*>, 4> nested{
        {{&h_bc, &closed}, {&h_delbar, &ker_delbar}, {&im_ddbar, &closed}, {&h_a, &ker_ddbar}}};
    for (auto [u, v] : nested)
      if (!v->space.contains(u->space) || gdim(*u).re() > gdim(*v).re()) r.monotone = false;

    const GaussianRational parts = gdim(h_delbar) + gdim(im_delbar) + gdim(im_delbar_star);
    const CoverSubspace sum{{b}, h_delbar.space + im_delbar.space + im_delbar_star.space};
    const GaussianRational whole(mpq_class(static_cast<long>(cover.dim(b)), cover.index()));
    if (!(gdim(sum) == parts) || !(parts == whole)) r.additive = false;

    std::array<std::vector<long>, 2> totals;
    for (std::size_t i = 0; i < cover.modes().size(); ++i) {
      const ExactEngine& e = cover.engine(i);
      const auto seqs = verify_exact_sequences(e, b);
      for (int s = 0; s < 2; ++s) {
        if (!seqs[s].exact()) r.sequences_exact = false;
        if (totals[s].empty()) totals[s].assign(seqs[s].dims.size(), 0);
        for (std::size_t j = 0; j < seqs[s].dims.size(); ++j) totals[s][j] += seqs[s].dims[j];
      }
      const Subspace bc = harmonic_space(e, LaplacianKind::BC, b);
      if (!(bc == harmonic_space(e, LaplacianKind::A, b)) || !(bc == harmonic_space(e, LaplacianKind::Delbar, b)))
        r.kernels_coincide = false;
      if (i > 0)
        for (LaplacianKind kind : kAllLaplacians)
          if (harmonic_space(e, kind, b).dim() != 0) r.harmonics_at_zero_mode = false;
    }
    for (const auto& t : totals) {
      GaussianRational alt;
      for (std::size_t j = 0; j < t.size(); ++j)
        alt += GaussianRational(mpq_class((j % 2 == 0 ? 1 : -1) * t[j], cover.index()));
      if (!alt.is_zero()) r.eckmann_sums_zero = false;
    }
  }

  for (int k = 0; k <= 2 * n; ++k) {
    std::vector<Subspace> parts;
    for (std::size_t i = 0; i < cover.modes().size(); ++i) parts.push_back(de_rham_harmonic(cover.engine(i), k));
    r.betti.push_back(gdim(direct_sum(cover, basis.bidegrees_of_degree(k), parts)));
  }
  return r;
}

// ---- metric independence ----

namespace {

Eigen::MatrixXcd to_eigen(const ExactMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).to_complex();
  return out;
}

double quadratic(const Eigen::MatrixXcd& H, const Eigen::VectorXcd& x) { return (x.adjoint() * H * x)(0, 0).real(); }

}  // namespace

double quasi_isometry_constant(const ExactMatrix& H1, const ExactMatrix& H2) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(H1), to_eigen(H2), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NotPositiveDefinite, "metrics are not positive definite");
  const Eigen::VectorXd ev = solver.eigenvalues();
  return std::max(ev.maxCoeff(), 1.0 / ev.minCoeff());
}

MetricIndependence metric_independence_check(const CoverSpec& spec, const ComplexModel& model, const ExactMatrix& H1,
                                             const ExactMatrix& H2, std::uint64_t seed, std::size_t samples) {
  const FourierCover first = build_cover(spec, model, H1);
  const FourierCover second(spec, model, H2, first.modes());
  MetricIndependence r;
  r.constant = quasi_isometry_constant(H1, H2);

  const Eigen::MatrixXcd h1 = to_eigen(H1), h2 = to_eigen(H2);
  SampleStream rng(seed);
  r.sampled_bounds = true;
  const double slack = 1e-12;
  for (std::size_t s = 0; s < samples; ++s) {
    Eigen::VectorXcd x(spec.n);
    for (int j = 0; j < spec.n; ++j) x(j) = rng.complex();
    const double q1 = quadratic(h1, x), q2 = quadratic(h2, x);
    if (q1 > r.constant * q2 * (1 + slack) || q1 * (1 + slack) < q2 / r.constant) r.sampled_bounds = false;
  }

  r.dims_equal = true;
  r.projections_full_rank = true;
  for (Bidegree b : first.basis().all_bidegrees()) {
    const ExactMatrix g2 = cover_gram(second, {b});
    for (LaplacianKind kind : {LaplacianKind::BC, LaplacianKind::A}) {
      const CoverSubspace u = cover_harmonic(first, kind, b);
      const CoverSubspace v = cover_harmonic(second, kind, b);
      if (!(gamma_dimension(first, u).value() == gamma_dimension(second, v).value())) r.dims_equal = false;
      if (u.space.dim() == 0) continue;
      if (v.space.dim() == 0 || rank(v.space.projection_coordinates(u.space.basis(), g2)) != u.space.dim())
        r.projections_full_rank = false;
    }
  }
  return r;
}

// ---- gaps ----

bool GapReport::ok() const {
  if (!fourth_orders_square) return false;
  for (const auto& c : cells)
    if (!c.ok()) return false;
  return true;
}

namespace {

void merge_gap(std::optional<double>& into, const Spectrum& s, double& lmax) {
  lmax = std::max(lmax, s.max);
  if (s.gap && (!into || *s.gap < *into)) into = s.gap;
}

bool same(const std::optional<double>& x, const std::optional<double>& y, double rel) {
  if (!x || !y) return !x && !y;
  return std::abs(*x - *y) <= rel * std::max(1.0, std::abs(*x));
}

std::vector<Complex> times(const NumericMatrix& m, const std::vector<Complex>& v) {
  if (m.rows() == 0) return {};
  return m.apply(v);
}

}  // namespace

GapReport gap_and_closed_image(const FourierCover& cover, std::uint64_t seed, std::size_t samples, Tolerance tol) {
  GapReport report;
  const FormBasis& basis = cover.basis();
  const std::size_t modes = cover.modes().size();
  std::vector<NumericEngine> numeric;
  numeric.reserve(modes);
  for (std::size_t i = 0; i < modes; ++i) {
    numeric.push_back(cover.numeric_engine(i));
    const ExactEngine& e = cover.engine(i);
    const ExactMatrix square = e.global(LaplacianKind::Delbar) * e.global(LaplacianKind::Delbar);
    if (!(e.bc_fourth_order() == square) || !(e.a_fourth_order() == square)) report.fourth_orders_square = false;
  }
  const NumericMetric& metric = numeric.front().metric();
  SampleStream rng(seed);

  for (Bidegree b : basis.all_bidegrees()) {
    GapCell cell;
    cell.bidegree = b;
    const Bidegree up{b.p + 1, b.q + 1}, up_q{b.p, b.q + 1}, down_q{b.p, b.q - 1}, down_p{b.p - 1, b.q};
    const NumericMatrix g = metric.gram(b);
    double lmax_delbar = 0.0, lmax_d = 0.0, lmax_a4 = 0.0;
    for (std::size_t i = 0; i < modes; ++i) {
      const NumericEngine& ne = numeric[i];
      merge_gap(cell.delbar_gap, spectrum(ne.assemble(LaplacianKind::Delbar, b), g, tol), lmax_delbar);
      merge_gap(cell.d_gap, spectrum(ne.assemble(LaplacianKind::D, b), g, tol), lmax_d);
      merge_gap(cell.a4_gap, spectrum(ne.block(ne.a_fourth_order(), b), g, tol), lmax_a4);
    }
    if (cell.delbar_gap || cell.d_gap) report.all_vacuous = false;
    const double rel = tol.rel;
    cell.factor_two = same(cell.d_gap, cell.delbar_gap ? std::optional<double>(2.0 * *cell.delbar_gap) : std::nullopt, rel);
    cell.a4_is_square =
        same(cell.a4_gap, cell.delbar_gap ? std::optional<double>(*cell.delbar_gap * *cell.delbar_gap) : std::nullopt, rel);

    // Closed image of del delbar: theta orthogonal to ker del delbar with del* theta = delbar* theta = 0.
    std::vector<NumericMatrix> theta_bases, ddbar_ops;
    std::size_t theta_dim = 0;
    for (std::size_t i = 0; i < modes; ++i) {
      const ExactEngine& e = cover.engine(i);
      const PerMode pm{cover, b};
      const ExactMatrix gb = e.metric().gram(b);
      const Subspace coclosed =
          pm.kernel(e, e.del_star(), down_p).intersect(pm.kernel(e, e.delbar_star(), down_q));
      const Subspace w = coclosed.intersect(pm.kernel(e, e.del() * e.delbar(), up).orthogonal_complement(gb));
      theta_bases.push_back(to_numeric(w.basis()));
      theta_dim += w.dim();
      ddbar_ops.push_back(numeric[i].block(numeric[i].del() * numeric[i].delbar(), {b}, {up}));
    }
    if (theta_dim > 0 && cell.a4_gap) {
      const NumericMatrix g_up = basis.valid(up) ? metric.gram(up) : NumericMatrix();
      double min_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t s = 0; s < samples; ++s) {
        double norm = 0.0, image = 0.0;
        for (std::size_t i = 0; i < modes; ++i) {
          const NumericMatrix& w = theta_bases[i];
          if (w.cols() == 0) continue;
          const std::vector<Complex> theta = w.apply(rng.vector(w.cols()));
          norm += real_inner(g, theta, theta);
          const std::vector<Complex> y = times(ddbar_ops[i], theta);
          if (!y.empty()) image += real_inner(g_up, y, y);
        }
        if (norm > 1e-24) min_ratio = std::min(min_ratio, image / norm);
      }
      cell.min_ratio_closed = min_ratio;
      cell.closed_image_bound = min_ratio >= *cell.a4_gap - rel * std::max(1.0, lmax_a4);
    }

    // Dolbeault complex at (p,q): |delbar* x|^2 + |delbar x|^2 >= gap |x|^2 off the harmonic forms.
    if (cell.delbar_gap) {
      std::vector<NumericMatrix> kernels, out_ops, in_adj_ops;
      for (std::size_t i = 0; i < modes; ++i) {
        kernels.push_back(to_numeric(harmonic_space(cover.engine(i), LaplacianKind::Delbar, b).basis()));
        out_ops.push_back(numeric[i].block(numeric[i].delbar(), {b}, {up_q}));
        in_adj_ops.push_back(numeric[i].block(numeric[i].delbar_star(), {b}, {down_q}));
      }
      const NumericMatrix g_out = basis.valid(up_q) ? metric.gram(up_q) : NumericMatrix();
      const NumericMatrix g_in = basis.valid(down_q) ? metric.gram(down_q) : NumericMatrix();
      double min_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t s = 0; s < samples; ++s) {
        double norm = 0.0, energy = 0.0;
        for (std::size_t i = 0; i < modes; ++i) {
          const std::vector<Complex> x = project_off(kernels[i], g, rng.vector(basis.dim(b)));
          norm += real_inner(g, x, x);
          const std::vector<Complex> y = times(out_ops[i], x);
          if (!y.empty()) energy += real_inner(g_out, y, y);
          const std::vector<Complex> z = times(in_adj_ops[i], x);
          if (!z.empty()) energy += real_inner(g_in, z, z);
        }
        if (norm > 1e-24) min_ratio = std::min(min_ratio, energy / norm);
      }
      cell.min_ratio_dolbeault = min_ratio;
      cell.dolbeault_bound = min_ratio >= *cell.delbar_gap - rel * std::max(1.0, lmax_delbar);
    }
    report.cells.push_back(cell);
  }
  return report;
}

}  // namespace abch
