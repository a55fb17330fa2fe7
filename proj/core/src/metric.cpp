#include "abch/metric.hpp"

#include "abch/linalg.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace abch {

namespace {

template <class S>
S minor_det(const Matrix<S>& H, unsigned rows, unsigned cols, bool conjugate) {
  std::vector<std::size_t> ri, ci;
  for (std::size_t i = 0; i < H.rows(); ++i) {
    if ((rows >> i) & 1u) ri.push_back(i);
    if ((cols >> i) & 1u) ci.push_back(i);
  }
  if (ri.empty()) return ScalarTraits<S>::from_int(1);
  Matrix<S> sub(ri.size(), ci.size());
  for (std::size_t r = 0; r < ri.size(); ++r)
    for (std::size_t c = 0; c < ci.size(); ++c)
      sub(r, c) = conjugate ? ScalarTraits<S>::conj(H(ri[r], ci[c])) : H(ri[r], ci[c]);
  return determinant(sub);
}

template <class S>
void check_hermitian(const Matrix<S>& H) {
  if (H.rows() != H.cols()) throw Error(ErrorKind::ShapeMismatch, "metric matrix is " + H.shape());
  if constexpr (ScalarTraits<S>::exact) {
    if (!(H == H.adjoint())) throw Error(ErrorKind::NotHermitian, "H differs from its conjugate transpose");
  } else {
    const double scale = std::max(1.0, frobenius_norm(H));
    if (frobenius_norm(H - H.adjoint()) > 1e-12 * scale)
      throw Error(ErrorKind::NotHermitian, "H differs from its conjugate transpose");
  }
  for (std::size_t k = 1; k <= H.rows(); ++k) {
    const S m = determinant(H.block(0, 0, k, k));
    bool positive;
    if constexpr (ScalarTraits<S>::exact) {
      positive = m.is_real() && sgn(m.re()) > 0;
    } else {
      positive = m.real() > 1e-14 * std::max(1.0, frobenius_norm(H));
    }
    if (!positive)
      throw Error(ErrorKind::NotPositiveDefinite, "leading principal minor of order " + std::to_string(k) + " is not positive");
  }
}

template <class S>
S imaginary_unit() {
  if constexpr (ScalarTraits<S>::exact) {
    return GaussianRational::i();
  } else {
    return Complex(0.0, 1.0);
  }
}

}  // namespace

template <class S>
S HermitianMetric<S>::inner(const std::vector<S>& x, const std::vector<S>& y) const {
  const std::vector<S> gx = gram_.apply(x);
  S out{};
  for (std::size_t i = 0; i < y.size(); ++i) out += ScalarTraits<S>::conj(y[i]) * gx[i];
  return out;
}

template <class S>
FormVector<S> fundamental_form(const FormBasis& basis, const Matrix<S>& H) {
  const int n = basis.n();
  const Matrix<S> g = inverse(H).transpose();
  const S i = imaginary_unit<S>();
  FormVector<S> omega{{1, 1}, std::vector<S>(basis.dim(Bidegree{1, 1}))};
  const std::size_t off = basis.offset({1, 1});
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) omega.coeffs[basis.index({1u << j, 1u << k}) - off] = i * g(j, k);
  return omega;
}

template <class S>
S volume_coefficient(const FormBasis& basis, const FormVector<S>& omega) {
  const int n = basis.n();
  FormVector<S> power = omega;
  long factorial = 1;
  for (int k = 2; k <= n; ++k) {
    power = wedge(basis, omega, power);
    factorial *= k;
  }
  return power.coeffs.at(0) / ScalarTraits<S>::from_int(factorial);
}

template <class S>
HermitianMetric<S> build_metric(const FormBasis& basis, const Matrix<S>& H) {
  const int n = basis.n();
  if (H.rows() != static_cast<std::size_t>(n))
    throw Error(ErrorKind::ShapeMismatch, "metric of size " + H.shape() + " for n = " + std::to_string(n));
  check_hermitian(H);

  const std::size_t dim = basis.dim();
  Matrix<S> gram(dim, dim);
  Matrix<S> gram_inverse(dim, dim);
  std::map<std::pair<unsigned, unsigned>, S> hol_minor, anti_minor;
  for (Bidegree b : basis.all_bidegrees()) {
    const std::size_t off = basis.offset(b);
    const std::size_t nb = basis.dim(b);
    Matrix<S> block(nb, nb);
    for (std::size_t a = 0; a < nb; ++a) {
      const BasisMonomial& ma = basis.monomial(off + a);
      for (std::size_t c = 0; c < nb; ++c) {
        const BasisMonomial& mc = basis.monomial(off + c);
        // h(e_c, e_a) = det H[I_c, I_a] * det conj(H)[J_c, J_a]
        auto hk = std::make_pair(mc.hol, ma.hol);
        auto ak = std::make_pair(mc.anti, ma.anti);
        if (!hol_minor.count(hk)) hol_minor[hk] = minor_det(H, mc.hol, ma.hol, false);
        if (!anti_minor.count(ak)) anti_minor[ak] = minor_det(H, mc.anti, ma.anti, true);
        block(a, c) = hol_minor[hk] * anti_minor[ak];
      }
    }
    gram.set_block(off, off, block);
    gram_inverse.set_block(off, off, inverse(block));
  }

  FormVector<S> omega = fundamental_form(basis, H);
  const S vol = volume_coefficient(basis, omega);
  if (ScalarTraits<S>::is_zero(vol)) throw Error(ErrorKind::SingularPairing, "volume form vanishes");

  // For x in A^{a,b} put (p,q) = (b,a). The defining equation alpha ^ *conj(beta) = h(alpha, beta) vol
  // with beta = conj(x) gives *x = vol * W^T * G_{p,q}^T * C x, where C is the conjugation
  // A^{a,b} -> A^{p,q} and W the signed-permutation wedge pairing A^{p,q} x A^{n-p,n-q} -> top.
  const ExactMatrix conj_global = conjugation_matrix(basis);
  const unsigned top = (1u << (2 * n)) - 1u;
  Matrix<S> star(dim, dim);
  for (Bidegree src : basis.all_bidegrees()) {
    const Bidegree pq{src.q, src.p};
    const Bidegree dst{n - pq.p, n - pq.q};
    const std::size_t npq = basis.dim(pq);
    const std::size_t off_pq = basis.offset(pq);
    const std::size_t off_dst = basis.offset(dst);
    Matrix<S> W(npq, basis.dim(dst));
    for (std::size_t a = 0; a < npq; ++a) {
      const unsigned ma = basis.monomial(off_pq + a).combined(n);
      const std::size_t g = basis.index_of_combined(top & ~ma);
      W(a, g - off_dst) = ScalarTraits<S>::from_int(wedge_sign(ma, top & ~ma));
    }
    Matrix<S> C(npq, npq);
    const ExactMatrix c_exact = restrict_op(basis, conj_global, {src}, {pq});
    for (std::size_t r = 0; r < npq; ++r)
      for (std::size_t c = 0; c < npq; ++c)
        if (!c_exact(r, c).is_zero()) C(r, c) = ScalarTraits<S>::from_int(sgn(c_exact(r, c).re()));
    const Matrix<S> block = vol * (W.transpose() * (restrict_op(basis, gram, {pq}, {pq}).transpose() * C));
    star.set_block(off_dst, basis.offset(src), block);
  }
  return HermitianMetric<S>(basis, H, std::move(gram), std::move(gram_inverse), vol, std::move(omega), std::move(star));
}

NumericMetric to_numeric(const ExactMetric& m) {
  FormVector<Complex> omega{m.fundamental_form().bidegree, {}};
  for (const auto& c : m.fundamental_form().coeffs) omega.coeffs.push_back(c.to_complex());
  return NumericMetric(m.basis(), to_numeric(m.H()), to_numeric(m.gram()), to_numeric(m.gram_inverse()),
                       m.vol_coeff().to_complex(), std::move(omega), to_numeric(m.star()));
}

template class HermitianMetric<GaussianRational>;
template class HermitianMetric<Complex>;
template HermitianMetric<GaussianRational> build_metric(const FormBasis&, const Matrix<GaussianRational>&);
template HermitianMetric<Complex> build_metric(const FormBasis&, const Matrix<Complex>&);
template FormVector<GaussianRational> fundamental_form(const FormBasis&, const Matrix<GaussianRational>&);
template FormVector<Complex> fundamental_form(const FormBasis&, const Matrix<Complex>&);
template GaussianRational volume_coefficient(const FormBasis&, const FormVector<GaussianRational>&);
template Complex volume_coefficient(const FormBasis&, const FormVector<Complex>&);

// ---- .herm files ----

namespace {

bool looks_decimal(std::string_view s) {
  for (char c : s)
    if (c == '.' || c == 'e' || c == 'E') return true;
  return false;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Decimal coefficient: `x`, `x i`, `i`, `(x + y i)`, `(x - y i)`.
Complex parse_decimal(std::string_view text, int line) {
  std::string s(trim(text));
  auto fail = [&] { throw Error(ErrorKind::SyntaxError, "malformed coefficient '" + s + "'", line, 1); };
  bool paren = false;
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') fail();
    s = s.substr(1, s.size() - 2);
    paren = true;
  }
  Complex out;
  const char* p = s.c_str();
  int terms = 0;
  while (true) {
    while (std::isspace(static_cast<unsigned char>(*p))) ++p;
    if (*p == '\0') break;
    double sign = 1.0;
    if (terms > 0) {
      if (*p == '+') {
        ++p;
      } else if (*p == '-') {
        sign = -1.0;
        ++p;
      } else {
        fail();
      }
      while (std::isspace(static_cast<unsigned char>(*p))) ++p;
    } else if (*p == '-') {
      sign = -1.0;
      ++p;
    }
    double value = 1.0;
    if (*p != 'i') {
      char* end = nullptr;
      value = std::strtod(p, &end);
      if (end == p) fail();
      p = end;
      while (std::isspace(static_cast<unsigned char>(*p))) ++p;
    }
    if (*p == 'i') {
      out += Complex(0.0, sign * value);
      ++p;
    } else {
      out += Complex(sign * value, 0.0);
    }
    ++terms;
  }
  if (terms == 0 || (terms > 1 && !paren)) fail();
  return out;
}

}  // namespace

MetricSpec parse_metric(std::string_view text) {
  MetricSpec spec;
  std::map<std::pair<int, int>, GaussianRational> exact_entries;
  std::map<std::pair<int, int>, Complex> numeric_entries;
  bool all_exact = true;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorKind::SyntaxError, "expected '='", line_no, 1);
    const std::string lhs(trim(line.substr(0, eq)));
    const std::string_view rhs = line.substr(eq + 1);
    if (lhs == "n") {
      if (spec.n != 0) throw Error(ErrorKind::SyntaxError, "n given twice", line_no, 1);
      const std::string v(trim(rhs));
      char* end = nullptr;
      const long n = std::strtol(v.c_str(), &end, 10);
      if (v.empty() || *end != '\0' || n < 1 || n > 6) throw Error(ErrorKind::SyntaxError, "n must be in 1..6", line_no, 1);
      spec.n = static_cast<int>(n);
      continue;
    }
    int i = 0, j = 0;
    char tail = 0;
    if (std::sscanf(lhs.c_str(), "H[%d][%d]%c", &i, &j, &tail) != 2)
      throw Error(ErrorKind::SyntaxError, "expected 'H[i][j]' or 'n'", line_no, 1);
    if (spec.n == 0) throw Error(ErrorKind::SyntaxError, "'n = <int>' must come first", line_no, 1);
    if (i < 1 || j < 1 || i > spec.n || j > spec.n)
      throw Error(ErrorKind::UnknownGenerator, "entry H[" + std::to_string(i) + "][" + std::to_string(j) + "]", line_no, 1);
    if (i > j) throw Error(ErrorKind::SyntaxError, "only the upper triangle (i <= j) is given", line_no, 1);
    if (numeric_entries.count({i, j})) throw Error(ErrorKind::DuplicateEquation, "entry given twice", line_no, 1);
    const int column = static_cast<int>(eq) + 2;
    if (looks_decimal(rhs)) {
      all_exact = false;
      numeric_entries[{i, j}] = parse_decimal(rhs, line_no);
    } else {
      const GaussianRational c = parse_coefficient(rhs, line_no, column - 1);
      exact_entries[{i, j}] = c;
      numeric_entries[{i, j}] = c.to_complex();
    }
  }
  if (spec.n == 0) throw Error(ErrorKind::SyntaxError, "missing 'n = <int>'", 1, 1);

  const auto n = static_cast<std::size_t>(spec.n);
  spec.numeric = NumericMatrix::identity(n);
  for (const auto& [ij, c] : numeric_entries) {
    spec.numeric(ij.first - 1, ij.second - 1) = c;
    spec.numeric(ij.second - 1, ij.first - 1) = std::conj(c);
  }
  if (all_exact) {
    ExactMatrix H = ExactMatrix::identity(n);
    for (const auto& [ij, c] : exact_entries) {
      H(ij.first - 1, ij.second - 1) = c;
      H(ij.second - 1, ij.first - 1) = c.conj();
    }
    spec.exact = std::move(H);
  }
  return spec;
}

MetricSpec load_metric(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InputError, "cannot open metric file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_metric(ss.str());
}

MetricSpec identity_metric(int n) {
  MetricSpec spec;
  spec.n = n;
  spec.exact = ExactMatrix::identity(n);
  spec.numeric = NumericMatrix::identity(n);
  return spec;
}

MetricSpec diagonal_metric(int n, long first) {
  MetricSpec spec = identity_metric(n);
  (*spec.exact)(0, 0) = GaussianRational(first);
  spec.numeric(0, 0) = Complex(static_cast<double>(first), 0.0);
  return spec;
}

std::string metric_hash(const MetricSpec& spec) {
  std::ostringstream canon;
  canon << "n=" << spec.n << ";";
  for (int i = 0; i < spec.n; ++i)
    for (int j = i; j < spec.n; ++j) {
      if (spec.exact) {
        canon << (*spec.exact)(i, j).to_string() << ";";
      } else {
        char buf[64];
        const Complex c = spec.numeric(i, j);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g;", c.real(), c.imag());
        canon << buf;
      }
    }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canon.str()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace abch
