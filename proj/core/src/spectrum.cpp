#include "abch/spectrum.hpp"

#include "abch/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace abch {

Tolerance Tolerance::from_env() {
  Tolerance t;
  if (const char* v = std::getenv("ABCH_TOL_REL")) {
    char* end = nullptr;
    const double rel = std::strtod(v, &end);
    if (end == v || *end != '\0' || !(rel > 0.0) || rel >= 1.0)
      throw Error(ErrorKind::InputError, std::string("ABCH_TOL_REL must be a number in (0, 1), got '") + v + "'");
    t.rel = rel;
  }
  return t;
}

namespace {

Eigen::MatrixXcd to_eigen(const NumericMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

}  // namespace

namespace {

// M = L^H A L^{-H} for G = L L^H, so that A x = lambda x iff M y = lambda y with x = L^{-H} y.
struct Reduced {
  Eigen::MatrixXcd M;
  Eigen::MatrixXcd Linv;
};

Reduced reduce(const NumericMatrix& A, const NumericMatrix& gram) {
  if (A.rows() != A.cols() || gram.rows() != A.rows() || gram.cols() != A.cols())
    throw Error(ErrorKind::ShapeMismatch, "spectrum of " + A.shape() + " with Gram " + gram.shape());
  const Eigen::MatrixXcd G = to_eigen(gram);
  Eigen::LLT<Eigen::MatrixXcd> llt(G);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::EigSolverFailure, "Gram matrix is not positive definite");
  const Eigen::MatrixXcd L = llt.matrixL();
  Reduced r;
  r.Linv = L.triangularView<Eigen::Lower>().solve(Eigen::MatrixXcd::Identity(L.rows(), L.cols()));
  r.M = L.adjoint() * to_eigen(A) * r.Linv.adjoint();
  r.M = (0.5 * (r.M + r.M.adjoint())).eval();
  return r;
}

double threshold(const Eigen::VectorXd& ev, Tolerance tol, double& lmax) {
  lmax = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) lmax = std::max(lmax, ev(i));
  return tol.abs + tol.rel * lmax;
}

}  // namespace

Spectrum spectrum(const NumericMatrix& A, const NumericMatrix& gram, Tolerance tol) {
  Spectrum out;
  if (A.rows() == 0) return out;
  const Reduced r = reduce(A, gram);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(r.M, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::EigSolverFailure, "eigensolver did not converge");

  const Eigen::VectorXd ev = solver.eigenvalues();
  const double cut = threshold(ev, tol, out.max);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double v = ev(i);
    if (v < cut) {
      out.eigenvalues.push_back(0.0);
      ++out.zero_count;
    } else {
      out.eigenvalues.push_back(v);
      if (!out.gap || v < *out.gap) out.gap = v;
    }
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  return out;
}

NumericMatrix numeric_kernel(const NumericMatrix& A, const NumericMatrix& gram, Tolerance tol) {
  if (A.rows() == 0) return NumericMatrix(0, 0);
  const Reduced r = reduce(A, gram);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(r.M);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::EigSolverFailure, "eigensolver did not converge");
  const Eigen::VectorXd ev = solver.eigenvalues();
  double lmax = 0.0;
  const double cut = threshold(ev, tol, lmax);
  std::vector<Eigen::Index> zero;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) < cut) zero.push_back(i);
  const Eigen::MatrixXcd X = r.Linv.adjoint() * solver.eigenvectors();
  NumericMatrix out(A.rows(), zero.size());
  for (std::size_t c = 0; c < zero.size(); ++c)
    for (std::size_t row = 0; row < A.rows(); ++row) out(row, c) = X(static_cast<Eigen::Index>(row), zero[c]);
  return out;
}

SampleStream::SampleStream(std::uint64_t seed) : engine_(seed) {}

double SampleStream::uniform() {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

Complex SampleStream::complex() {
  const double re = uniform();
  const double im = uniform();
  return {re, im};
}

std::vector<Complex> SampleStream::vector(std::size_t n) {
  std::vector<Complex> v(n);
  for (auto& x : v) x = complex();
  return v;
}

double real_inner(const NumericMatrix& gram, const std::vector<Complex>& x, const std::vector<Complex>& y) {
  const std::vector<Complex> gx = gram.apply(x);
  Complex s{};
  for (std::size_t i = 0; i < y.size(); ++i) s += std::conj(y[i]) * gx[i];
  return s.real();
}

std::vector<Complex> project_off(const NumericMatrix& kernel, const NumericMatrix& gram, const std::vector<Complex>& x) {
  if (kernel.cols() == 0) return x;
  const NumericMatrix kh_g = kernel.adjoint() * gram;
  const NumericMatrix xm = NumericMatrix::from_columns(x.size(), {x});
  const NumericMatrix coeffs = solve(kh_g * kernel, kh_g * xm);
  const NumericMatrix proj = kernel * coeffs;
  std::vector<Complex> out(x);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= proj(i, 0);
  return out;
}

RayleighReport verify_gap_inequality(const NumericMatrix& A, const NumericMatrix& gram, const NumericMatrix& kernel,
                                     const Spectrum& spec, std::size_t samples, std::uint64_t seed, Tolerance tol) {
  RayleighReport r;
  if (spec.all_zero() || kernel.cols() >= A.rows()) return r;
  r.vacuous = false;
  r.gap = *spec.gap;
  r.min_quotient = std::numeric_limits<double>::infinity();
  const double slack = tol.rel * std::max(1.0, spec.max);
  SampleStream rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::vector<Complex> x = project_off(kernel, gram, rng.vector(A.rows()));
    const double norm2 = real_inner(gram, x, x);
    if (norm2 <= 1e-24) continue;
    const double q = real_inner(gram, A.apply(x), x) / norm2;
    r.min_quotient = std::min(r.min_quotient, q);
    ++r.samples;
  }
  r.passed = r.samples == 0 || r.min_quotient >= r.gap - slack;
  return r;
}

}  // namespace abch
