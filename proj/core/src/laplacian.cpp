#include "abch/laplacian.hpp"

namespace abch {

namespace {

constexpr std::array<std::string_view, 9> kNames{"Delta_d",  "Delta_del", "Delta_delbar", "Delta_BC", "tDelta_BC",
                                                 "Box_BC",   "Delta_A",   "tDelta_A",     "Box_A"};

}  // namespace

std::string_view to_string(LaplacianKind kind) { return kNames[static_cast<std::size_t>(kind)]; }

LaplacianKind laplacian_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return static_cast<LaplacianKind>(i);
  throw Error(ErrorKind::InputError, "unknown Laplacian '" + std::string(name) + "'");
}

template <class S>
LaplacianEngine<S>::LaplacianEngine(BigradedComplex<S> complex, HermitianMetric<S> metric)
    : complex_(std::move(complex)), metric_(std::move(metric)) {
  if (complex_.n() != metric_.basis().n())
    throw Error(ErrorKind::ShapeMismatch, "metric dimension differs from the complex");
  const Matrix<S>& D = complex_.del();
  const Matrix<S>& B = complex_.delbar();
  del_star_ = metric_.adjoint(D);
  delbar_star_ = metric_.adjoint(B);
  const Matrix<S>& Ds = del_star_;
  const Matrix<S>& Bs = delbar_star_;

  const Matrix<S> DB = D * B;      // del delbar
  const Matrix<S> BsDs = Bs * Ds;  // its adjoint
  const Matrix<S> DsD = Ds * D;
  const Matrix<S> BsB = Bs * B;
  const Matrix<S> DDs = D * Ds;
  const Matrix<S> BBs = B * Bs;
  const Matrix<S> bc_corner = DB * BsDs;  // del delbar delbar* del*
  const Matrix<S> a_corner = BsDs * DB;   // delbar* del* del delbar
  const Matrix<S> bc_first = DsD + BsB;
  const Matrix<S> a_first = DDs + BBs;
  const Matrix<S> d = complex_.d();
  const Matrix<S> ds = Ds + Bs;

  bc4_ = bc_corner + a_corner + Ds * (B * (Bs * D)) + Bs * (D * (Ds * B));
  a4_ = bc_corner + a_corner + D * (Bs * (B * Ds)) + B * (Ds * (D * Bs));

  auto set = [this](LaplacianKind k, Matrix<S> m) { laplacians_[static_cast<std::size_t>(k)] = std::move(m); };
  set(LaplacianKind::D, d * ds + ds * d);
  set(LaplacianKind::Del, DDs + DsD);
  set(LaplacianKind::Delbar, BBs + BsB);
  set(LaplacianKind::BC, bc_corner + bc_first);
  set(LaplacianKind::BCTilde, bc4_ + bc_first);
  set(LaplacianKind::BCBox, bc_corner + bc_first * bc_first);
  set(LaplacianKind::A, a_corner + a_first);
  set(LaplacianKind::ATilde, a4_ + a_first);
  set(LaplacianKind::ABox, a_corner + a_first * a_first);
}

template <class S>
Matrix<S> LaplacianEngine<S>::de_rham(int k) const {
  const Sectors s = basis().bidegrees_of_degree(k);
  return restrict_op(basis(), global(LaplacianKind::D), s, s);
}

namespace {

ExactMatrix from_bidegree(const ExactEngine& e, const ExactMatrix& global_op, Bidegree b) {
  return restrict_op(e.basis(), global_op, {b}, e.basis().all_bidegrees());
}

ExactMatrix stack(std::initializer_list<ExactMatrix> parts) {
  ExactMatrix out;
  for (const auto& p : parts) out = vconcat(out, p);
  return out;
}

}  // namespace

Subspace harmonic_space(const ExactEngine& e, LaplacianKind kind, Bidegree b) {
  return Subspace::kernel(e.assemble(kind, b));
}

Subspace harmonic_space_characterized(const ExactEngine& e, LaplacianKind kind, Bidegree b) {
  const ExactMatrix& D = e.del();
  const ExactMatrix& B = e.delbar();
  const ExactMatrix& Ds = e.del_star();
  const ExactMatrix& Bs = e.delbar_star();
  switch (kind) {
    case LaplacianKind::D:
      return Subspace::kernel(stack({from_bidegree(e, e.d(), b), from_bidegree(e, e.d_star(), b)}));
    case LaplacianKind::Del:
      return Subspace::kernel(stack({from_bidegree(e, D, b), from_bidegree(e, Ds, b)}));
    case LaplacianKind::Delbar:
      return Subspace::kernel(stack({from_bidegree(e, B, b), from_bidegree(e, Bs, b)}));
    case LaplacianKind::BC:
    case LaplacianKind::BCTilde:
    case LaplacianKind::BCBox:
      return Subspace::kernel(
          stack({from_bidegree(e, D, b), from_bidegree(e, B, b), from_bidegree(e, Bs * Ds, b)}));
    case LaplacianKind::A:
    case LaplacianKind::ATilde:
    case LaplacianKind::ABox:
      return Subspace::kernel(
          stack({from_bidegree(e, D * B, b), from_bidegree(e, Ds, b), from_bidegree(e, Bs, b)}));
  }
  throw Error(ErrorKind::InputError, "unknown Laplacian kind");
}

Subspace de_rham_harmonic(const ExactEngine& e, int k) { return Subspace::kernel(e.de_rham(k)); }

bool is_kahler(const ExactEngine& e) {
  const auto omega = to_global(e.basis(), e.metric().fundamental_form());
  for (const auto& x : e.d().apply(omega))
    if (!x.is_zero()) return false;
  return true;
}

KahlerIdentities kahler_identities(const ExactEngine& e) {
  KahlerIdentities k;
  const ExactMatrix& D = e.del();
  const ExactMatrix& B = e.delbar();
  const ExactMatrix& Ds = e.del_star();
  const ExactMatrix& Bs = e.delbar_star();
  const ExactMatrix& lap_d = e.global(LaplacianKind::D);
  const ExactMatrix& lap_del = e.global(LaplacianKind::Del);
  const ExactMatrix& lap_delbar = e.global(LaplacianKind::Delbar);
  const GaussianRational two(2);
  k.d_is_twice_del = lap_d == two * lap_del;
  k.d_is_twice_delbar = lap_d == two * lap_delbar;
  k.del_delbar_star = (D * Bs + Bs * D).is_zero();
  k.del_star_delbar = (Ds * B + B * Ds).is_zero();
  const ExactMatrix square = lap_delbar * lap_delbar;
  k.bc_tilde_concise = e.global(LaplacianKind::BCTilde) == square + Ds * D + Bs * B;
  k.fourth_orders_square = e.bc_fourth_order() == square && e.a_fourth_order() == square;
  k.harmonics_coincide = true;
  for (Bidegree b : e.basis().all_bidegrees()) {
    const Subspace ref = harmonic_space(e, LaplacianKind::Delbar, b);
    for (LaplacianKind kind : kAllLaplacians)
      if (!(harmonic_space(e, kind, b) == ref)) k.harmonics_coincide = false;
  }
  return k;
}

DualityReport duality(const ExactEngine& e) {
  const ExactMatrix& S = e.metric().star();
  auto dual = [&](LaplacianKind bc, LaplacianKind a) {
    const ExactMatrix& lbc = e.global(bc);
    const ExactMatrix& la = e.global(a);
    return S * la == lbc * S && S * lbc == la * S;
  };
  DualityReport r;
  r.bc_a = dual(LaplacianKind::BC, LaplacianKind::A);
  r.tilde = dual(LaplacianKind::BCTilde, LaplacianKind::ATilde);
  r.box = dual(LaplacianKind::BCBox, LaplacianKind::ABox);
  return r;
}

KernelCoincidence kernel_coincidence(const ExactEngine& e, Bidegree b) {
  KernelCoincidence r;
  const Subspace bc = harmonic_space_characterized(e, LaplacianKind::BC, b);
  r.bc = harmonic_space(e, LaplacianKind::BC, b) == bc && harmonic_space(e, LaplacianKind::BCTilde, b) == bc &&
         harmonic_space(e, LaplacianKind::BCBox, b) == bc;
  const Subspace a = harmonic_space_characterized(e, LaplacianKind::A, b);
  r.aeppli = harmonic_space(e, LaplacianKind::A, b) == a && harmonic_space(e, LaplacianKind::ATilde, b) == a &&
             harmonic_space(e, LaplacianKind::ABox, b) == a;
  const ExactMatrix p1 = from_bidegree(e, e.delbar_star() * e.del_star(), b);
  const ExactMatrix p2 = from_bidegree(e, e.del_star() * e.del() + e.delbar_star() * e.delbar(), b);
  r.box_intersection = harmonic_space(e, LaplacianKind::BCBox, b) == Subspace::kernel(vconcat(p1, p2));
  return r;
}

template <class S>
ChainOperators<S> chain_operators(const LaplacianEngine<S>& e, Bidegree pq) {
  const int p = pq.p;
  const int q = pq.q;
  const FormBasis& basis = e.basis();
  ChainOperators<S> out;
  out.sectors = {{p, q - 1}, {p - 1, q}};
  const Sectors prev{{p, q - 2}, {p - 1, q - 1}, {p - 2, q}};
  const Sectors target{pq};
  const Matrix<S> d = e.d();
  const Matrix<S> ds = e.d_star();
  // delbar (+) del into A^{p,q} is the A^{p,q} component of d; the previous map is d followed
  // by projection onto the sum.
  const Matrix<S> P = restrict_op(basis, d, out.sectors, target);
  const Matrix<S> Ps = restrict_op(basis, ds, target, out.sectors);
  const Matrix<S> Q = restrict_op(basis, d, prev, out.sectors);
  const Matrix<S> Qs = restrict_op(basis, ds, out.sectors, prev);
  out.box = Ps * P + Q * Qs;

  out.delbar_laplacian = restrict_op(basis, e.global(LaplacianKind::Delbar), out.sectors, out.sectors);
  out.box_prime = out.delbar_laplacian;
  const Matrix<S> ddstar = e.del() * e.del_star();
  const Matrix<S> bbstar = e.delbar() * e.delbar_star();
  const std::size_t n1 = basis.dim(out.sectors[0]);
  if (n1 > 0) {
    const Matrix<S> blk = restrict_op(basis, ddstar, {out.sectors[0]}, {out.sectors[0]});
    out.box_prime.set_block(0, 0, out.box_prime.block(0, 0, n1, n1) + blk);
  }
  const std::size_t n2 = basis.dim(out.sectors[1]);
  if (n2 > 0) {
    const Matrix<S> blk = restrict_op(basis, bbstar, {out.sectors[1]}, {out.sectors[1]});
    out.box_prime.set_block(n1, n1, out.box_prime.block(n1, n1, n2, n2) + blk);
  }
  return out;
}

template class LaplacianEngine<GaussianRational>;
template class LaplacianEngine<Complex>;
template ChainOperators<GaussianRational> chain_operators(const LaplacianEngine<GaussianRational>&, Bidegree);
template ChainOperators<Complex> chain_operators(const LaplacianEngine<Complex>&, Bidegree);

}  // namespace abch
