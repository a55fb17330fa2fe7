#include "abch/complex.hpp"

#include <bit>
#include <sstream>

namespace abch {

std::string to_string(Bidegree b) { return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")"; }

Bidegree BasisMonomial::bidegree() const {
  return {std::popcount(hol), std::popcount(anti)};
}

std::string BasisMonomial::to_string() const {
  std::string out;
  auto append = [&](unsigned mask, const char* prefix) {
    for (int i = 0; mask >> i; ++i) {
      if (!((mask >> i) & 1u)) continue;
      if (!out.empty()) out += "^";
      out += prefix + std::to_string(i + 1);
    }
  };
  append(hol, "phi");
  append(anti, "phibar");
  return out.empty() ? "1" : out;
}

int wedge_sign(unsigned a, unsigned b) {
  if (a & b) return 0;
  int inversions = 0;
  for (unsigned rest = b; rest; rest &= rest - 1) {
    const int y = std::countr_zero(rest);
    inversions += std::popcount(a >> (y + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

namespace {

// k-subsets of {0..n-1} as bitmasks, lexicographic on the sorted index lists.
std::vector<unsigned> subsets(int n, int k) {
  std::vector<unsigned> out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    unsigned mask = 0;
    for (int i : idx) mask |= 1u << i;
    out.push_back(mask);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return out;
}

}  // namespace

FormBasis::FormBasis(int n) : n_(n), by_combined_(std::size_t{1} << (2 * n)) {
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= n; ++q) {
      offsets_[{p, q}] = monomials_.size();
      const auto hols = subsets(n, p);
      const auto antis = subsets(n, q);
      for (unsigned h : hols)
        for (unsigned a : antis) {
          by_combined_[h | (a << n)] = monomials_.size();
          monomials_.push_back({h, a});
        }
      dims_[{p, q}] = hols.size() * antis.size();
    }
  }
}

std::size_t FormBasis::dim(Bidegree b) const {
  auto it = dims_.find(b);
  return it == dims_.end() ? 0 : it->second;
}

std::size_t FormBasis::dim(const Sectors& s) const {
  std::size_t d = 0;
  for (auto b : s) d += dim(b);
  return d;
}

std::size_t FormBasis::offset(Bidegree b) const {
  auto it = offsets_.find(b);
  if (it == offsets_.end()) throw Error(ErrorKind::InvalidBidegree, "bidegree " + abch::to_string(b) + " outside range");
  return it->second;
}

std::size_t FormBasis::index(const BasisMonomial& m) const { return by_combined_[m.combined(n_)]; }

Sectors FormBasis::bidegrees_of_degree(int k) const {
  Sectors out;
  for (int p = 0; p <= n_; ++p) {
    const int q = k - p;
    if (q >= 0 && q <= n_) out.push_back({p, q});
  }
  return out;
}

Sectors FormBasis::all_bidegrees() const {
  Sectors out;
  for (const auto& [b, off] : offsets_) out.push_back(b);
  return out;
}

template <class S>
Matrix<S> restrict_op(const FormBasis& basis, const Matrix<S>& global, const Sectors& src, const Sectors& dst) {
  Matrix<S> out(basis.dim(dst), basis.dim(src));
  std::size_t r0 = 0;
  for (auto bd : dst) {
    const std::size_t nr = basis.dim(bd);
    if (nr == 0) continue;
    const std::size_t go_r = basis.offset(bd);
    std::size_t c0 = 0;
    for (auto bs : src) {
      const std::size_t nc = basis.dim(bs);
      if (nc == 0) continue;
      const std::size_t go_c = basis.offset(bs);
      for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) out(r0 + r, c0 + c) = global(go_r + r, go_c + c);
      c0 += nc;
    }
    r0 += nr;
  }
  return out;
}

template <class S>
Matrix<S> sector_projection(const FormBasis& basis, const Sectors& s) {
  Matrix<S> out(basis.dim(s), basis.dim());
  std::size_t r0 = 0;
  for (auto b : s) {
    const std::size_t nb = basis.dim(b);
    if (nb == 0) continue;
    const std::size_t off = basis.offset(b);
    for (std::size_t i = 0; i < nb; ++i) out(r0 + i, off + i) = ScalarTraits<S>::from_int(1);
    r0 += nb;
  }
  return out;
}

namespace {

using Terms = std::vector<std::pair<unsigned, GaussianRational>>;  // combined mask, coefficient

// Images of the 2n generators under del and delbar, as combined-mask expansions.
struct GeneratorImages {
  std::vector<Terms> del;
  std::vector<Terms> delbar;
};

GeneratorImages generator_images(const ComplexModel& model) {
  const int n = model.n;
  GeneratorImages g{std::vector<Terms>(2 * n), std::vector<Terms>(2 * n)};
  auto hol = [](int i) { return 1u << (i - 1); };
  auto anti = [n](int j) { return 1u << (n + j - 1); };
  for (int k = 1; k <= n; ++k) {
    // d phi^k = sum c phi^i ^ phi^j (i<j) + sum c' phi^i ^ phibar^j
    for (const auto& [ij, c] : model.d20[k - 1]) {
      g.del[k - 1].emplace_back(hol(ij.first) | hol(ij.second), c);
      // conj: phibar^i ^ phibar^j, already increasing
      g.delbar[n + k - 1].emplace_back(anti(ij.first) | anti(ij.second), c.conj());
    }
    for (const auto& [ij, c] : model.d11[k - 1]) {
      g.delbar[k - 1].emplace_back(hol(ij.first) | anti(ij.second), c);
      // conj: phibar^i ^ phi^j = -phi^j ^ phibar^i
      g.del[n + k - 1].emplace_back(hol(ij.second) | anti(ij.first), -c.conj());
    }
  }
  return g;
}

ExactMatrix leibniz(const FormBasis& basis, const std::vector<Terms>& images) {
  const std::size_t dim = basis.dim();
  const int n = basis.n();
  ExactMatrix m(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const unsigned mono = basis.monomial(col).combined(n);
    int t = 0;
    for (unsigned rest = mono; rest; rest &= rest - 1, ++t) {
      const int g = std::countr_zero(rest);
      const unsigned prefix = mono & ((1u << g) - 1u);
      const unsigned suffix = mono & ~((2u << g) - 1u);
      const int sign_t = (t & 1) ? -1 : 1;
      for (const auto& [mask, c] : images[g]) {
        const int s1 = wedge_sign(prefix, mask);
        if (s1 == 0) continue;
        const int s2 = wedge_sign(prefix | mask, suffix);
        if (s2 == 0) continue;
        const std::size_t row = basis.index_of_combined(prefix | mask | suffix);
        m(row, col) += GaussianRational(sign_t * s1 * s2) * c;
      }
    }
  }
  return m;
}

// Degree-one global left multiplication by sum coeffs[j] * gen(j).
ExactMatrix left_generator_wedge(const FormBasis& basis, const std::vector<GaussianRational>& coeffs, int shift) {
  const std::size_t dim = basis.dim();
  const int n = basis.n();
  ExactMatrix m(dim, dim);
  for (int j = 0; j < n; ++j) {
    if (coeffs[j].is_zero()) continue;
    const unsigned g = 1u << (shift + j);
    for (std::size_t col = 0; col < dim; ++col) {
      const unsigned mono = basis.monomial(col).combined(n);
      const int s = wedge_sign(g, mono);
      if (s == 0) continue;
      m(basis.index_of_combined(g | mono), col) += GaussianRational(s) * coeffs[j];
    }
  }
  return m;
}

void certify_zero(const FormBasis& basis, const ExactMatrix& m, const std::string& what) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!m(r, c).is_zero())
        throw Error(ErrorKind::NotAComplex, what + " is nonzero on A^" + to_string(basis.bidegree_of(c)));
}

}  // namespace

ExactComplex build_complex(const ComplexModel& model, const Twist* twist) {
  if (model.n < 1) throw Error(ErrorKind::InputError, "model has no generators");
  FormBasis basis(model.n);
  const GeneratorImages g = generator_images(model);
  ExactMatrix del = leibniz(basis, g.del);
  ExactMatrix delbar = leibniz(basis, g.delbar);
  if (twist != nullptr) {
    if (twist->hol.size() != static_cast<std::size_t>(model.n) || twist->anti.size() != static_cast<std::size_t>(model.n))
      throw Error(ErrorKind::ShapeMismatch, "twist length differs from n");
    del += left_generator_wedge(basis, twist->hol, 0);
    delbar += left_generator_wedge(basis, twist->anti, model.n);
  }
  certify_zero(basis, del * del, "del^2");
  certify_zero(basis, delbar * delbar, "delbar^2");
  certify_zero(basis, del * delbar + delbar * del, "del delbar + delbar del");
  return ExactComplex(model, std::move(basis), std::move(del), std::move(delbar));
}

NumericComplex to_numeric(const ExactComplex& c, double scale) {
  return NumericComplex(c.model(), c.basis(), to_numeric(c.del(), scale), to_numeric(c.delbar(), scale), scale);
}

template <class S>
OperatorMatrix<S> d_operator(const BigradedComplex<S>& c, Bidegree b) {
  const Sectors dst{{b.p + 1, b.q}, {b.p, b.q + 1}};
  return {{b}, dst, restrict_op(c.basis(), c.d(), {b}, dst)};
}

template <class S>
std::vector<S> to_global(const FormBasis& basis, const FormVector<S>& a) {
  if (a.coeffs.size() != basis.dim(a.bidegree))
    throw Error(ErrorKind::ShapeMismatch, "form of length " + std::to_string(a.coeffs.size()) + " in A^" + to_string(a.bidegree));
  std::vector<S> v(basis.dim());
  const std::size_t off = basis.offset(a.bidegree);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) v[off + i] = a.coeffs[i];
  return v;
}

template <class S>
FormVector<S> from_global(const FormBasis& basis, const std::vector<S>& v, Bidegree b) {
  FormVector<S> out{b, std::vector<S>(basis.dim(b))};
  const std::size_t off = basis.offset(b);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = v[off + i];
  return out;
}

template <class S>
Matrix<S> left_wedge(const FormBasis& basis, const FormVector<S>& a) {
  const std::size_t dim = basis.dim();
  const int n = basis.n();
  const std::size_t off = basis.offset(a.bidegree);
  Matrix<S> m(dim, dim);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (ScalarTraits<S>::is_zero(a.coeffs[i])) continue;
    const unsigned ma = basis.monomial(off + i).combined(n);
    for (std::size_t col = 0; col < dim; ++col) {
      const unsigned mb = basis.monomial(col).combined(n);
      const int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      m(basis.index_of_combined(ma | mb), col) += ScalarTraits<S>::from_int(s) * a.coeffs[i];
    }
  }
  return m;
}

template <class S>
FormVector<S> wedge(const FormBasis& basis, const FormVector<S>& a, const FormVector<S>& b) {
  const Bidegree out{a.bidegree.p + b.bidegree.p, a.bidegree.q + b.bidegree.q};
  if (!basis.valid(out))
    throw Error(ErrorKind::DegreeOverflow,
                "A^" + to_string(a.bidegree) + " ^ A^" + to_string(b.bidegree) + " exceeds n = " + std::to_string(basis.n()));
  return from_global(basis, left_wedge(basis, a).apply(to_global(basis, b)), out);
}

ExactMatrix conjugation_matrix(const FormBasis& basis) {
  const std::size_t dim = basis.dim();
  ExactMatrix m(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const BasisMonomial& mono = basis.monomial(col);
    // conj(phi^I ^ phibar^J) = phibar^I ^ phi^J = (-1)^{|I||J|} phi^J ^ phibar^I
    const Bidegree b = mono.bidegree();
    const int sign = ((b.p * b.q) & 1) ? -1 : 1;
    m(basis.index({mono.anti, mono.hol}), col) = GaussianRational(sign);
  }
  return m;
}

template <class S>
FormVector<S> conjugate(const FormBasis& basis, const FormVector<S>& a) {
  std::vector<S> g = to_global(basis, a);
  for (auto& x : g) x = ScalarTraits<S>::conj(x);
  std::vector<S> out(basis.dim());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (ScalarTraits<S>::is_zero(g[i])) continue;
    const BasisMonomial& mono = basis.monomial(i);
    const Bidegree b = mono.bidegree();
    const int sign = ((b.p * b.q) & 1) ? -1 : 1;
    out[basis.index({mono.anti, mono.hol})] = ScalarTraits<S>::from_int(sign) * g[i];
  }
  return from_global(basis, out, {a.bidegree.q, a.bidegree.p});
}

std::string format_form(const FormBasis& basis, const FormVector<GaussianRational>& a) {
  std::ostringstream os;
  const std::size_t off = basis.offset(a.bidegree);
  bool first = true;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    const GaussianRational& c = a.coeffs[i];
    if (c.is_zero()) continue;
    GaussianRational shown = c;
    const bool simple = c.is_real() || sgn(c.re()) == 0;
    const bool neg = simple && (sgn(c.re()) < 0 || (sgn(c.re()) == 0 && sgn(c.im()) < 0));
    if (neg) shown = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    const std::string mono = basis.monomial(off + i).to_string();
    if (shown == GaussianRational(1)) {
      os << mono;
    } else {
      os << shown.to_string() << (mono == "1" ? "" : " " + mono);
    }
    first = false;
  }
  return first ? "0" : os.str();
}

#define ABCH_INSTANTIATE(S)                                                                                \
  template Matrix<S> restrict_op(const FormBasis&, const Matrix<S>&, const Sectors&, const Sectors&);      \
  template Matrix<S> sector_projection(const FormBasis&, const Sectors&);                                  \
  template OperatorMatrix<S> d_operator(const BigradedComplex<S>&, Bidegree);                              \
  template std::vector<S> to_global(const FormBasis&, const FormVector<S>&);                               \
  template FormVector<S> from_global(const FormBasis&, const std::vector<S>&, Bidegree);                   \
  template Matrix<S> left_wedge(const FormBasis&, const FormVector<S>&);                                   \
  template FormVector<S> wedge(const FormBasis&, const FormVector<S>&, const FormVector<S>&);              \
  template FormVector<S> conjugate(const FormBasis&, const FormVector<S>&);

ABCH_INSTANTIATE(GaussianRational)
ABCH_INSTANTIATE(Complex)
#undef ABCH_INSTANTIATE

}  // namespace abch
