#include "abch/cohomology.hpp"

#include <sstream>

namespace abch {

std::string_view to_string(Theory t) {
  switch (t) {
    case Theory::DeRham: return "dR";
    case Theory::Del: return "del";
    case Theory::Delbar: return "delbar";
    case Theory::BC: return "BC";
    case Theory::A: return "A";
  }
  return "?";
}

long CohomologyTable::at(int p, int q) const {
  if (p < 0 || q < 0 || p >= static_cast<int>(grid.size()) || q >= static_cast<int>(grid[p].size())) return 0;
  return grid[p][q];
}

namespace {

Bidegree shift(Bidegree b, int dp, int dq) { return {b.p + dp, b.q + dq}; }

long as_long(std::size_t v) { return static_cast<long>(v); }

// Global operators shared by the metric-free computations.
struct Differentials {
  const FormBasis& basis;
  const ExactMatrix& del;
  const ExactMatrix& delbar;
  ExactMatrix d;
  ExactMatrix ddbar;

  explicit Differentials(const ExactComplex& c)
      : basis(c.basis()), del(c.del()), delbar(c.delbar()), d(c.d()), ddbar(c.del() * c.delbar()) {}

  ExactMatrix op(const ExactMatrix& g, Bidegree src, Bidegree dst) const { return restrict_op(basis, g, {src}, {dst}); }
  ExactMatrix op(const ExactMatrix& g, const Sectors& src, const Sectors& dst) const {
    return restrict_op(basis, g, src, dst);
  }
};

long dim_at(const Differentials& D, Theory theory, Bidegree b) {
  const FormBasis& basis = D.basis;
  switch (theory) {
    case Theory::Delbar:
      return as_long(nullity(D.op(D.delbar, b, shift(b, 0, 1)))) - as_long(rank(D.op(D.delbar, shift(b, 0, -1), b)));
    case Theory::Del:
      return as_long(nullity(D.op(D.del, b, shift(b, 1, 0)))) - as_long(rank(D.op(D.del, shift(b, -1, 0), b)));
    case Theory::BC: {
      const ExactMatrix closed = vconcat(D.op(D.del, b, shift(b, 1, 0)), D.op(D.delbar, b, shift(b, 0, 1)));
      const std::size_t kernel = closed.rows() == 0 ? basis.dim(b) : nullity(closed);
      return as_long(kernel) - as_long(rank(D.op(D.ddbar, shift(b, -1, -1), b)));
    }
    case Theory::A: {
      const ExactMatrix exact = hconcat(D.op(D.del, shift(b, -1, 0), b), D.op(D.delbar, shift(b, 0, -1), b));
      return as_long(nullity(D.op(D.ddbar, b, shift(b, 1, 1)))) - as_long(rank(exact));
    }
    case Theory::DeRham: {
      const int k = b.p;
      const Sectors here = basis.bidegrees_of_degree(k);
      return as_long(nullity(D.op(D.d, here, basis.bidegrees_of_degree(k + 1)))) -
             as_long(rank(D.op(D.d, basis.bidegrees_of_degree(k - 1), here)));
    }
  }
  return 0;
}

std::vector<std::vector<long>> empty_grid(Theory theory, int n) {
  if (theory == Theory::DeRham) return {std::vector<long>(2 * n + 1, 0)};
  return std::vector<std::vector<long>>(n + 1, std::vector<long>(n + 1, 0));
}

}  // namespace

long cohomology_dim(Theory theory, const ExactComplex& c, Bidegree b) {
  return dim_at(Differentials(c), theory, b);
}

CohomologyTable cohomology(Theory theory, const ExactComplex& c) {
  const Differentials D(c);
  const int n = c.n();
  CohomologyTable t{theory, empty_grid(theory, n)};
  if (theory == Theory::DeRham) {
    for (int k = 0; k <= 2 * n; ++k) t.grid[0][k] = dim_at(D, theory, {k, 0});
  } else {
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) t.grid[p][q] = dim_at(D, theory, {p, q});
  }
  return t;
}

CohomologyTable harmonic_table(Theory theory, const ExactEngine& e) {
  const int n = e.basis().n();
  CohomologyTable t{theory, empty_grid(theory, n)};
  if (theory == Theory::DeRham) {
    for (int k = 0; k <= 2 * n; ++k) t.grid[0][k] = as_long(de_rham_harmonic(e, k).dim());
    return t;
  }
  const LaplacianKind kind = theory == Theory::Del      ? LaplacianKind::Del
                             : theory == Theory::Delbar ? LaplacianKind::Delbar
                             : theory == Theory::BC     ? LaplacianKind::BC
                                                        : LaplacianKind::A;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) t.grid[p][q] = as_long(harmonic_space(e, kind, {p, q}).dim());
  return t;
}

TableSymmetries table_symmetries(const CohomologyTable& del, const CohomologyTable& delbar, const CohomologyTable& bc,
                                 const CohomologyTable& a) {
  TableSymmetries s{true, true, true, true};
  const int n = static_cast<int>(bc.grid.size()) - 1;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      if (bc.at(p, q) != bc.at(q, p)) s.bc_conjugation = false;
      if (a.at(p, q) != a.at(q, p)) s.a_conjugation = false;
      if (delbar.at(p, q) != del.at(q, p)) s.dolbeault_conjugation = false;
      if (bc.at(p, q) != a.at(n - q, n - p)) s.star_duality = false;
    }
  return s;
}

namespace {

// Subspaces of A^{p,q} built from the differentials and their adjoints.
struct Local {
  Subspace ker_del, ker_delbar, ker_ddbar;
  Subspace im_del, im_delbar, im_ddbar;
  Subspace ker_del_star, ker_delbar_star, ker_bsds;
  Subspace im_del_star, im_delbar_star, im_bsds;
  ExactMatrix gram;

  Local(const ExactEngine& e, Bidegree b) {
    const FormBasis& basis = e.basis();
    auto op = [&](const ExactMatrix& g, Bidegree src, Bidegree dst) { return restrict_op(basis, g, {src}, {dst}); };
    auto kernel = [&](const ExactMatrix& g, Bidegree dst) {
      const ExactMatrix m = op(g, b, dst);
      return m.rows() == 0 ? Subspace::whole(basis.dim(b)) : Subspace::kernel(m);
    };
    auto image = [&](const ExactMatrix& g, Bidegree src) {
      const ExactMatrix m = op(g, src, b);
      return m.cols() == 0 ? Subspace::zero(basis.dim(b)) : Subspace::image(m);
    };
    const ExactMatrix ddbar = e.del() * e.delbar();
    const ExactMatrix bsds = e.delbar_star() * e.del_star();
    ker_del = kernel(e.del(), shift(b, 1, 0));
    ker_delbar = kernel(e.delbar(), shift(b, 0, 1));
    ker_ddbar = kernel(ddbar, shift(b, 1, 1));
    im_del = image(e.del(), shift(b, -1, 0));
    im_delbar = image(e.delbar(), shift(b, 0, -1));
    im_ddbar = image(ddbar, shift(b, -1, -1));
    ker_del_star = kernel(e.del_star(), shift(b, -1, 0));
    ker_delbar_star = kernel(e.delbar_star(), shift(b, 0, -1));
    ker_bsds = kernel(bsds, shift(b, -1, -1));
    im_del_star = image(e.del_star(), shift(b, 1, 0));
    im_delbar_star = image(e.delbar_star(), shift(b, 0, 1));
    im_bsds = image(bsds, shift(b, 1, 1));
    gram = e.metric().gram(b);
  }
};

bool orthogonal(const Subspace& u, const Subspace& v, const ExactMatrix& gram) {
  if (u.dim() == 0 || v.dim() == 0) return true;
  return cross_gram(u, v, gram).is_zero();
}

}  // namespace

DecompositionReport verify_hodge_decomposition(const ExactEngine& e, Theory theory, Bidegree b) {
  const Local L(e, b);
  DecompositionReport r;
  r.theory = theory;
  r.bidegree = b;
  Subspace harmonic, exact, coexact, kernel;
  switch (theory) {
    case Theory::BC:
      harmonic = harmonic_space(e, LaplacianKind::BC, b);
      exact = L.im_ddbar;
      coexact = L.im_del_star + L.im_delbar_star;
      kernel = L.ker_del.intersect(L.ker_delbar);
      break;
    case Theory::A:
      harmonic = harmonic_space(e, LaplacianKind::A, b);
      exact = L.im_del + L.im_delbar;
      coexact = L.im_bsds;
      kernel = L.ker_ddbar;
      break;
    case Theory::Delbar:
      harmonic = harmonic_space(e, LaplacianKind::Delbar, b);
      exact = L.im_delbar;
      coexact = L.im_delbar_star;
      kernel = L.ker_delbar;
      break;
    case Theory::Del:
      harmonic = harmonic_space(e, LaplacianKind::Del, b);
      exact = L.im_del;
      coexact = L.im_del_star;
      kernel = L.ker_del;
      break;
    case Theory::DeRham:
      throw Error(ErrorKind::InvalidBidegree, "de Rham decomposition is graded by total degree");
  }
  r.dims = {harmonic.dim(), exact.dim(), coexact.dim()};
  r.orthogonal = orthogonal(harmonic, exact, L.gram) && orthogonal(harmonic, coexact, L.gram) &&
                 orthogonal(exact, coexact, L.gram);
  r.dims_add_up = harmonic.dim() + exact.dim() + coexact.dim() == e.basis().dim(b);
  r.kernel_identity = (harmonic + exact) == kernel && harmonic.dim() + exact.dim() == kernel.dim();
  return r;
}

// ---- diagram ----

namespace {

Subspace direct_sum(const FormBasis& basis, const Sectors& sectors, const std::vector<Subspace>& parts) {
  std::size_t total = 0;
  for (const auto& s : parts) total += s.dim();
  ExactMatrix m(basis.dim(sectors), total);
  std::size_t row = 0, col = 0;
  for (std::size_t i = 0; i < sectors.size(); ++i) {
    if (parts[i].dim() > 0) m.set_block(row, col, parts[i].basis());
    row += basis.dim(sectors[i]);
    col += parts[i].dim();
  }
  return Subspace::span(m);
}

Subspace harmonic_in_degree(const ExactEngine& e, Theory theory, int k) {
  if (theory == Theory::DeRham) return de_rham_harmonic(e, k);
  const LaplacianKind kind = theory == Theory::Del      ? LaplacianKind::Del
                             : theory == Theory::Delbar ? LaplacianKind::Delbar
                             : theory == Theory::BC     ? LaplacianKind::BC
                                                        : LaplacianKind::A;
  const Sectors sectors = e.basis().bidegrees_of_degree(k);
  std::vector<Subspace> parts;
  for (Bidegree b : sectors) parts.push_back(harmonic_space(e, kind, b));
  return direct_sum(e.basis(), sectors, parts);
}

ExactMatrix map_coords(const Subspace& from, const Subspace& to, const ExactMatrix& gram) {
  if (to.dim() == 0 || from.dim() == 0) return ExactMatrix(to.dim(), from.dim());
  return to.projection_coordinates(from.basis(), gram);
}

}  // namespace

bool DiagramReport::all_isomorphisms() const {
  for (const auto& a : arrows)
    if (!a.isomorphism()) return false;
  return true;
}

DiagramReport diagram_maps(const ExactEngine& e) {
  DiagramReport report;
  report.commutes = true;
  const int n = e.basis().n();
  const std::array<std::pair<Theory, Theory>, 7> edges{{{Theory::BC, Theory::Del},
                                                        {Theory::BC, Theory::DeRham},
                                                        {Theory::BC, Theory::Delbar},
                                                        {Theory::Del, Theory::A},
                                                        {Theory::DeRham, Theory::A},
                                                        {Theory::Delbar, Theory::A},
                                                        {Theory::BC, Theory::A}}};
  for (int k = 0; k <= 2 * n; ++k) {
    const ExactMatrix gram = e.metric().gram(e.basis().bidegrees_of_degree(k));
    std::map<Theory, Subspace> H;
    for (Theory t : kAllTheories) H[t] = harmonic_in_degree(e, t, k);
    std::vector<DiagramArrow> here;
    for (auto [src, dst] : edges) {
      DiagramArrow a;
      a.src = src;
      a.dst = dst;
      a.degree = k;
      a.matrix = map_coords(H[src], H[dst], gram);
      a.src_dim = H[src].dim();
      a.dst_dim = H[dst].dim();
      a.rank = rank(a.matrix);
      here.push_back(std::move(a));
    }
    const ExactMatrix& direct = here[6].matrix;
    if (!(here[3].matrix * here[0].matrix == direct) || !(here[4].matrix * here[1].matrix == direct) ||
        !(here[5].matrix * here[2].matrix == direct))
      report.commutes = false;
    for (auto& a : here) report.arrows.push_back(std::move(a));
  }
  return report;
}

// ---- ddbar conditions ----

bool DdbarReport::all_agree() const {
  for (const auto& c : conditions)
    if (c.holds != conditions[0].holds) return false;
  return true;
}

bool DdbarReport::all_hold() const {
  for (const auto& c : conditions)
    if (!c.holds) return false;
  return true;
}

namespace {

std::string format_degree_vector(const FormBasis& basis, const Sectors& sectors, const std::vector<GaussianRational>& v) {
  std::string out;
  std::size_t row = 0;
  for (Bidegree b : sectors) {
    const std::size_t nb = basis.dim(b);
    FormVector<GaussianRational> f{b, std::vector<GaussianRational>(v.begin() + row, v.begin() + row + nb)};
    row += nb;
    bool nonzero = false;
    for (const auto& x : f.coeffs)
      if (!x.is_zero()) nonzero = true;
    if (!nonzero) continue;
    if (!out.empty()) out += " + ";
    const std::string piece = format_form(basis, f);
    out += sectors.size() > 1 && piece.find_first_of("+-", 1) != std::string::npos ? "(" + piece + ")" : piece;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

DdbarReport ddbar_conditions(const ExactComplex& c) {
  const Differentials D(c);
  const FormBasis& basis = c.basis();
  const int n = c.n();
  DdbarReport report;
  const std::array<std::string, 6> statements{
      "im del delbar = ker del cap ker delbar cap im d",
      "im del delbar = ker del cap im delbar",
      "im del delbar = ker del cap ker delbar cap (im del + im delbar)",
      "ker del delbar = im del + im delbar + ker d",
      "ker del delbar = im delbar + ker del",
      "ker del delbar = im del + im delbar + (ker del cap ker delbar)"};
  for (int i = 0; i < 6; ++i) {
    report.conditions[i].label = static_cast<char>('a' + i);
    report.conditions[i].statement = statements[i];
    report.conditions[i].holds = true;
  }
  for (int k = 0; k <= 2 * n; ++k) {
    const Sectors here = basis.bidegrees_of_degree(k);
    const Sectors below = basis.bidegrees_of_degree(k - 1);
    const Sectors below2 = basis.bidegrees_of_degree(k - 2);
    const Sectors above = basis.bidegrees_of_degree(k + 1);
    const Sectors above2 = basis.bidegrees_of_degree(k + 2);
    const std::size_t dim = basis.dim(here);
    auto kernel = [&](const ExactMatrix& g, const Sectors& dst) {
      const ExactMatrix m = D.op(g, here, dst);
      return m.rows() == 0 ? Subspace::whole(dim) : Subspace::kernel(m);
    };
    auto image = [&](const ExactMatrix& g, const Sectors& src) {
      const ExactMatrix m = D.op(g, src, here);
      return m.cols() == 0 ? Subspace::zero(dim) : Subspace::image(m);
    };
    const Subspace ker_del = kernel(D.del, above), ker_delbar = kernel(D.delbar, above), ker_d = kernel(D.d, above);
    const Subspace ker_ddbar = kernel(D.ddbar, above2);
    const Subspace im_del = image(D.del, below), im_delbar = image(D.delbar, below), im_d = image(D.d, below);
    const Subspace im_ddbar = image(D.ddbar, below2);
    const Subspace closed = ker_del.intersect(ker_delbar);
    const Subspace exact = im_del + im_delbar;
    const std::array<std::pair<Subspace, Subspace>, 6> sides{{{im_ddbar, closed.intersect(im_d)},
                                                              {im_ddbar, ker_del.intersect(im_delbar)},
                                                              {im_ddbar, closed.intersect(exact)},
                                                              {ker_ddbar, exact + ker_d},
                                                              {ker_ddbar, im_delbar + ker_del},
                                                              {ker_ddbar, exact + closed}}};
    for (int i = 0; i < 6; ++i) {
      auto& cond = report.conditions[i];
      const auto& [lhs, rhs] = sides[i];
      if (lhs == rhs || !cond.holds) continue;
      cond.holds = false;
      cond.failing_degree = k;
      auto w = rhs.witness_outside(lhs);
      if (!w) w = lhs.witness_outside(rhs);
      cond.witness = format_degree_vector(basis, here, *w);
    }
  }
  return report;
}

// ---- the six subspaces and the two sequences ----

AbcSubspaceDims abc_subspaces(const ExactEngine& e, Bidegree b) {
  const Local L(e, b);
  AbcSubspaceDims r;
  r.bidegree = b;
  const Subspace im_both = L.im_delbar.intersect(L.im_del);
  r.intersection = {
      as_long(im_both.intersect(L.ker_bsds).dim()),
      as_long(L.ker_delbar.intersect(L.im_del).intersect(L.ker_bsds).dim()),
      as_long(L.ker_ddbar.intersect(L.im_delbar_star).intersect(L.ker_del_star).dim()),
      as_long(L.im_delbar.intersect(L.ker_del).intersect(L.ker_bsds).dim()),
      as_long(L.ker_ddbar.intersect(L.im_del_star).intersect(L.ker_delbar_star).dim()),
      as_long(L.ker_ddbar.intersect(L.im_delbar_star).intersect(L.im_del_star).dim()),
  };
  const long ddbar = as_long(L.im_ddbar.dim());
  const long kdd = as_long(L.ker_ddbar.dim());
  r.quotient = {
      as_long(im_both.dim()) - ddbar,
      as_long(L.im_del.intersect(L.ker_delbar).dim()) - ddbar,
      kdd - as_long((L.ker_delbar + L.im_del).dim()),
      as_long(L.im_delbar.intersect(L.ker_del).dim()) - ddbar,
      kdd - as_long((L.ker_del + L.im_delbar).dim()),
      kdd - as_long((L.ker_del + L.ker_delbar).dim()),
  };
  return r;
}

bool abc_conjugation_symmetric(const std::vector<AbcSubspaceDims>& all, int n) {
  auto find = [&](int p, int q) -> const AbcSubspaceDims& {
    for (const auto& x : all)
      if (x.bidegree == Bidegree{p, q}) return x;
    throw Error(ErrorKind::InvalidBidegree, "missing bidegree in subspace table");
  };
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      const auto& x = find(p, q).quotient;
      const auto& y = find(q, p).quotient;
      if (x[0] != y[0] || x[1] != y[3] || x[2] != y[4] || x[5] != y[5]) return false;
    }
  return true;
}

bool SequenceReport::exact() const {
  for (bool b : exact_at)
    if (!b) return false;
  return alternating_sum == 0;
}

namespace {

SequenceReport check_sequence(std::vector<std::string> names, const std::vector<Subspace>& spaces,
                              const std::vector<ExactMatrix>& maps) {
  // maps[i] : spaces[i] -> spaces[i+1]; the outer zeros are implicit.
  SequenceReport r;
  r.nodes = std::move(names);
  const std::size_t m = spaces.size();
  long sign = 1;
  for (std::size_t i = 0; i < m; ++i) {
    r.dims.push_back(as_long(spaces[i].dim()));
    r.alternating_sum += sign * r.dims.back();
    sign = -sign;
    const std::size_t rank_in = i == 0 ? 0 : rank(maps[i - 1]);
    const std::size_t rank_out = i + 1 == m ? 0 : rank(maps[i]);
    bool ok = rank_in + rank_out == spaces[i].dim();
    if (i > 0 && i + 1 < m && maps[i - 1].cols() > 0 && maps[i].rows() > 0) ok = ok && (maps[i] * maps[i - 1]).is_zero();
    r.exact_at.push_back(ok);
  }
  return r;
}

}  // namespace

std::array<SequenceReport, 2> verify_exact_sequences(const ExactEngine& e, Bidegree b) {
  const Local L(e, b);
  const Subspace calA = L.im_delbar.intersect(L.im_del).intersect(L.ker_bsds);
  const Subspace calB = L.ker_delbar.intersect(L.im_del).intersect(L.ker_bsds);
  const Subspace calC = L.ker_ddbar.intersect(L.im_delbar_star).intersect(L.ker_del_star);
  const Subspace calD = L.im_delbar.intersect(L.ker_del).intersect(L.ker_bsds);
  const Subspace calE = L.ker_ddbar.intersect(L.im_del_star).intersect(L.ker_delbar_star);
  const Subspace calF = L.ker_ddbar.intersect(L.im_delbar_star).intersect(L.im_del_star);
  const Subspace h_delbar = harmonic_space(e, LaplacianKind::Delbar, b);
  const Subspace h_a = harmonic_space(e, LaplacianKind::A, b);
  const Subspace h_bc = harmonic_space(e, LaplacianKind::BC, b);
  const ExactMatrix& G = L.gram;

  const std::vector<Subspace> first{calA, calB, h_delbar, h_a, calC};
  std::vector<ExactMatrix> first_maps;
  for (std::size_t i = 0; i + 1 < first.size(); ++i) first_maps.push_back(map_coords(first[i], first[i + 1], G));
  const std::vector<Subspace> second{calD, h_bc, h_delbar, calE, calF};
  std::vector<ExactMatrix> second_maps;
  for (std::size_t i = 0; i + 1 < second.size(); ++i) second_maps.push_back(map_coords(second[i], second[i + 1], G));

  return {check_sequence({"calA", "calB", "H_delbar", "H_A", "calC"}, first, first_maps),
          check_sequence({"calD", "H_BC", "H_delbar", "calE", "calF"}, second, second_maps)};
}

// ---- inequality ----

bool InequalityReport::holds() const {
  for (const auto& c : cells)
    if (c.lhs > c.rhs || !c.identity || !c.criterion) return false;
  return true;
}

bool InequalityReport::equality_everywhere() const {
  for (const auto& c : cells)
    if (!c.equality()) return false;
  return true;
}

bool InequalityReport::strict_somewhere() const {
  for (const auto& c : cells)
    if (c.lhs < c.rhs) return true;
  return false;
}

InequalityReport inequality_report(const ExactEngine& e) {
  const ExactComplex& c = e.complex();
  const int n = c.n();
  const CohomologyTable del = cohomology(Theory::Del, c);
  const CohomologyTable delbar = cohomology(Theory::Delbar, c);
  const CohomologyTable bc = cohomology(Theory::BC, c);
  const CohomologyTable a = cohomology(Theory::A, c);
  InequalityReport r;
  r.degree_defects.assign(2 * n + 1, 0);
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      const Bidegree b{p, q};
      InequalityCell cell;
      cell.bidegree = b;
      cell.lhs = del.at(p, q) + delbar.at(p, q);
      cell.rhs = bc.at(p, q) + a.at(p, q);
      const AbcSubspaceDims dims = abc_subspaces(e, b);
      cell.a_plus_f = dims.quotient[0] + dims.quotient[5];
      cell.identity = cell.rhs == cell.lhs + cell.a_plus_f;
      const Local L(e, b);
      const bool subspace_equal = L.ker_ddbar == L.ker_del + L.ker_delbar && L.im_ddbar == L.im_del.intersect(L.im_delbar);
      cell.criterion = (cell.a_plus_f == 0) == subspace_equal;
      r.degree_defects[p + q] += cell.rhs - cell.lhs;
      r.cells.push_back(cell);
    }
  return r;
}

// ---- full ABC complex ----

bool AbcFullComplex::nodes_match() const {
  const int corner = target.p + target.q - 2;
  return h[corner] == h_a && h[corner + 1] == h_bc;
}

bool AbcFullComplex::ok() const {
  return squares_zero && corner_laplacians_match && nodes_match() && euler_spaces == euler_cohomology &&
         laplacian_kernel == h;
}

AbcFullComplex full_abc_complex(const ExactEngine& e, Bidegree target) {
  const FormBasis& basis = e.basis();
  const int n = basis.n();
  const int p = target.p;
  const int q = target.q;
  if (p < 1 || q < 1 || p > n || q > n)
    throw Error(ErrorKind::InvalidBidegree, "full ABC complex needs 1 <= p,q <= n, got " + to_string(target));
  const int corner = p + q - 2;
  AbcFullComplex r;
  r.target = target;
  for (int k = 0; k <= 2 * n; ++k) {
    Sectors s;
    if (k <= corner) {
      for (int a = 0; a <= k; ++a)
        if (a < p && k - a < q) s.push_back({a, k - a});
    } else {
      for (int a = 0; a <= k + 1; ++a)
        if (a >= p && k + 1 - a >= q && a <= n && k + 1 - a <= n) s.push_back({a, k + 1 - a});
    }
    r.spaces.push_back(std::move(s));
  }

  const ExactMatrix d = e.d();
  const ExactMatrix d_star = e.d_star();
  const ExactMatrix ddbar = e.del() * e.delbar();
  const ExactMatrix ddbar_star = e.delbar_star() * e.del_star();
  auto global_of = [&](int k) -> const ExactMatrix& { return k == corner ? ddbar : d; };
  auto adjoint_of = [&](int k) -> const ExactMatrix& { return k == corner ? ddbar_star : d_star; };

  const int top = 2 * n;
  for (int k = 0; k < top; ++k) r.differentials.push_back(restrict_op(basis, global_of(k), r.spaces[k], r.spaces[k + 1]));

  r.squares_zero = true;
  for (int k = 0; k + 1 < top; ++k) {
    const ExactMatrix& a = r.differentials[k];
    const ExactMatrix& b = r.differentials[k + 1];
    if (a.cols() > 0 && b.rows() > 0 && a.rows() > 0 && !(b * a).is_zero()) r.squares_zero = false;
  }

  auto dim_of = [&](int k) { return basis.dim(r.spaces[k]); };
  auto rank_of = [&](int k) -> std::size_t {
    if (k < 0 || k >= top) return 0;
    return rank(r.differentials[k]);
  };
  ExactMatrix box_a, box_bc;
  long sign = 1;
  for (int k = 0; k <= top; ++k) {
    const long dk = as_long(dim_of(k));
    r.h.push_back(dk - as_long(rank_of(k)) - as_long(rank_of(k - 1)));
    r.euler_spaces += sign * dk;
    r.euler_cohomology += sign * r.h.back();
    sign = -sign;

    ExactMatrix lap(dim_of(k), dim_of(k));
    if (k > 0 && dim_of(k) > 0) {
      const ExactMatrix in = r.differentials[k - 1];
      const ExactMatrix in_star = restrict_op(basis, adjoint_of(k - 1), r.spaces[k], r.spaces[k - 1]);
      ExactMatrix part = in * in_star;
      if (k == corner) part = part * part;
      if (in.cols() > 0) lap += part;
    }
    if (k < top && dim_of(k) > 0 && dim_of(k + 1) > 0) {
      const ExactMatrix& out = r.differentials[k];
      const ExactMatrix out_star = restrict_op(basis, adjoint_of(k), r.spaces[k + 1], r.spaces[k]);
      ExactMatrix part = out_star * out;
      if (k == corner + 1) part = part * part;
      lap += part;
    }
    if (k == corner) box_a = lap;
    if (k == corner + 1) box_bc = lap;
    r.laplacian_kernel.push_back(dim_of(k) == 0 ? 0 : as_long(nullity(lap)));
  }
  r.corner_laplacians_match = box_a == e.assemble(LaplacianKind::ABox, {p - 1, q - 1}) &&
                              box_bc == e.assemble(LaplacianKind::BCBox, target);
  r.h_bc = cohomology_dim(Theory::BC, e.complex(), target);
  r.h_a = cohomology_dim(Theory::A, e.complex(), {p - 1, q - 1});
  return r;
}

}  // namespace abch
