#pragma once

#include "abch/matrix.hpp"
#include "abch/model.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace abch {

struct Bidegree {
  int p = 0;
  int q = 0;

  int degree() const { return p + q; }
  auto operator<=>(const Bidegree&) const = default;
};

std::string to_string(Bidegree b);

/// A direct sum of bidegree pieces, in the order given.
using Sectors = std::vector<Bidegree>;

/// phi^I ^ phibar^J with I, J stored as bitmasks over {0..n-1}.
struct BasisMonomial {
  unsigned hol = 0;
  unsigned anti = 0;

  Bidegree bidegree() const;
  /// Mask over the 2n generators: holomorphic ones first, then antiholomorphic.
  unsigned combined(int n) const { return hol | (anti << n); }
  std::string to_string() const;  // "phi1^phibar2", "1" for the unit
  auto operator<=>(const BasisMonomial&) const = default;
};

/// Sign of a ^ b for combined generator masks: 0 on overlap, else (-1)^(inversions).
int wedge_sign(unsigned a, unsigned b);

/// Index bookkeeping for the full algebra of dimension 4^n. Bidegrees are laid out in
/// lexicographic (p, q) order; inside a bidegree the monomials are ordered
/// lexicographically on (holomorphic index list, antiholomorphic index list).
class FormBasis {
 public:
  FormBasis() = default;
  explicit FormBasis(int n);

  int n() const { return n_; }
  std::size_t dim() const { return monomials_.size(); }
  std::size_t dim(Bidegree b) const;
  std::size_t dim(const Sectors& s) const;
  std::size_t offset(Bidegree b) const;
  bool valid(Bidegree b) const { return b.p >= 0 && b.q >= 0 && b.p <= n_ && b.q <= n_; }

  const BasisMonomial& monomial(std::size_t global) const { return monomials_[global]; }
  std::size_t index(const BasisMonomial& m) const;
  std::size_t index_of_combined(unsigned combined) const { return by_combined_[combined]; }
  Bidegree bidegree_of(std::size_t global) const { return monomials_[global].bidegree(); }
  /// All bidegrees of total degree k, p ascending.
  Sectors bidegrees_of_degree(int k) const;
  Sectors all_bidegrees() const;

 private:
  int n_ = 0;
  std::vector<BasisMonomial> monomials_;
  std::vector<std::size_t> by_combined_;
  std::map<Bidegree, std::size_t> offsets_;
  std::map<Bidegree, std::size_t> dims_;
};

/// Coefficients of a form in one bidegree, in the basis order of FormBasis.
template <class S>
struct FormVector {
  Bidegree bidegree;
  std::vector<S> coeffs;

  friend bool operator==(const FormVector&, const FormVector&) = default;
};

/// A linear map between direct sums of bidegrees.
template <class S>
struct OperatorMatrix {
  Sectors src;
  Sectors dst;
  Matrix<S> entries;
};

/// Block of a global operator on the full algebra, from sectors `src` to sectors `dst`.
template <class S>
Matrix<S> restrict_op(const FormBasis& basis, const Matrix<S>& global, const Sectors& src, const Sectors& dst);

/// Global coordinates -> coordinates of the direct sum `s` and back.
template <class S>
Matrix<S> sector_projection(const FormBasis& basis, const Sectors& s);

/// Per-mode twist of the differentials: del + xi_hol ^ . and delbar + xi_anti ^ .
/// xi_hol holds the coefficients of phi^1..phi^n, xi_anti those of phibar^1..phibar^n.
struct Twist {
  std::vector<GaussianRational> hol;
  std::vector<GaussianRational> anti;
};

/// Matrices of del and delbar on the full algebra. Numeric complexes obtained from an
/// exact one carry the factor they were scaled by.
template <class S>
class BigradedComplex {
 public:
  BigradedComplex() = default;
  BigradedComplex(ComplexModel model, FormBasis basis, Matrix<S> del, Matrix<S> delbar, double scale = 1.0)
      : model_(std::move(model)), basis_(std::move(basis)), del_(std::move(del)), delbar_(std::move(delbar)),
        scale_(scale) {}

  int n() const { return basis_.n(); }
  const ComplexModel& model() const { return model_; }
  const FormBasis& basis() const { return basis_; }
  double scale() const { return scale_; }

  const Matrix<S>& del() const { return del_; }
  const Matrix<S>& delbar() const { return delbar_; }
  Matrix<S> d() const { return del_ + delbar_; }

  /// del: A^{p,q} -> A^{p+1,q} (zero rows when p = n).
  Matrix<S> del(Bidegree b) const { return restrict_op(basis_, del_, {b}, {Bidegree{b.p + 1, b.q}}); }
  Matrix<S> delbar(Bidegree b) const { return restrict_op(basis_, delbar_, {b}, {Bidegree{b.p, b.q + 1}}); }

 private:
  ComplexModel model_;
  FormBasis basis_;
  Matrix<S> del_;
  Matrix<S> delbar_;
  double scale_ = 1.0;
};

using ExactComplex = BigradedComplex<GaussianRational>;
using NumericComplex = BigradedComplex<Complex>;

/// Leibniz expansion of the structure equations, optionally twisted. Certifies
/// del^2 = delbar^2 = del delbar + delbar del = 0 exactly; throws NotAComplex naming the
/// first bidegree where an identity fails.
ExactComplex build_complex(const ComplexModel& model, const Twist* twist = nullptr);

NumericComplex to_numeric(const ExactComplex& c, double scale = 1.0);

/// Stacked [del; delbar]: A^{p,q} -> A^{p+1,q} (+) A^{p,q+1}.
template <class S>
OperatorMatrix<S> d_operator(const BigradedComplex<S>& c, Bidegree b);

/// Global matrix of x |-> a ^ x.
template <class S>
Matrix<S> left_wedge(const FormBasis& basis, const FormVector<S>& a);

/// Throws DegreeOverflow when a bidegree would exceed n.
template <class S>
FormVector<S> wedge(const FormBasis& basis, const FormVector<S>& a, const FormVector<S>& b);

/// Signed permutation C with conj(x) = C * entrywise_conj(x), on the full algebra.
ExactMatrix conjugation_matrix(const FormBasis& basis);

template <class S>
FormVector<S> conjugate(const FormBasis& basis, const FormVector<S>& a);

/// Global vector for a bidegree-local one (zeros elsewhere), and back.
template <class S>
std::vector<S> to_global(const FormBasis& basis, const FormVector<S>& a);
template <class S>
FormVector<S> from_global(const FormBasis& basis, const std::vector<S>& v, Bidegree b);

/// Human-readable form, e.g. "phi1^phi2 - i phi3^phibar1".
std::string format_form(const FormBasis& basis, const FormVector<GaussianRational>& a);

}  // namespace abch
