#include "abch_cli/run.hpp"

#include "abch/cohomology.hpp"
#include "abch/covering.hpp"
#include "abch/metric.hpp"
#include "abch/model.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace abch::cli {

using nlohmann::json;

Bidegree parse_pq(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_p = 0, used_q = 0;
    const std::string ps = text.substr(0, comma), qs = text.substr(comma + 1);
    const int p = std::stoi(ps, &used_p);
    const int q = std::stoi(qs, &used_q);
    if (used_p != ps.size() || used_q != qs.size()) throw std::invalid_argument(text);
    return {p, q};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InputError, "--pq expects P,Q, got '" + text + "'");
  }
}

namespace {

std::string yes(bool b) { return b ? "yes" : "no"; }
std::string str(long v) { return std::to_string(v); }

std::string opt(const std::optional<double>& x) { return x ? format_double(*x) : "-"; }

// Shared inputs of every command.
struct Context {
  const RunConfig& config;
  Backend backend;
  ComplexModel model;
  MetricSpec metric;
  std::optional<ExactComplex> complex;
  std::optional<ExactEngine> exact;
  std::optional<NumericEngine> numeric;

  bool use_exact() const { return backend != Backend::Numeric; }
  bool use_numeric() const { return backend != Backend::Exact; }
  const FormBasis& basis() const { return exact ? exact->basis() : numeric->basis(); }
  int n() const { return model.n; }

  const ExactEngine& need_exact(const std::string& what) const {
    if (!exact) throw Error(ErrorKind::InputError, what + " needs the exact backend");
    return *exact;
  }
};

Backend default_backend(const std::string& command) { return command == "spectra" ? Backend::Both : Backend::Exact; }

Context load(const RunConfig& config, Report& report) {
  Context ctx{config, config.backend.value_or(default_backend(config.command)), load_model(config.model.string()), {},
              {}, {}, {}};
  if (ctx.model.name.empty()) ctx.model.name = config.model.stem().string();
  ctx.metric = config.metric ? load_metric(config.metric->string()) : identity_metric(ctx.model.n);
  if (ctx.metric.n != ctx.model.n)
    throw Error(ErrorKind::ShapeMismatch, "metric has n = " + str(ctx.metric.n) + " but the model has n = " + str(ctx.model.n));
  if (ctx.use_exact() && !ctx.metric.exact)
    throw Error(ErrorKind::InputError, "the exact backend needs a metric with Gaussian-rational entries");
  report.model = ctx.model.name;
  report.metric_hash = metric_hash(ctx.metric);

  ctx.complex = build_complex(ctx.model);
  if (ctx.use_exact()) ctx.exact.emplace(*ctx.complex, build_metric(*ctx.complex, *ctx.metric.exact));
  if (ctx.use_numeric()) {
    const NumericComplex nc = to_numeric(*ctx.complex);
    ctx.numeric.emplace(nc, build_metric(nc, ctx.metric.numeric));
  }
  const char* names[] = {"exact", "numeric", "both"};
  report.info.emplace_back("n", str(ctx.model.n));
  report.info.emplace_back("backend", names[static_cast<int>(ctx.backend)]);
  return ctx;
}

Table grid_table(const std::string& name, const CohomologyTable& t, int n) {
  Table out{name, {}, {}};
  if (t.theory == Theory::DeRham) {
    out.columns.push_back("k");
    for (int k = 0; k <= 2 * n; ++k) out.columns.push_back(str(k));
    std::vector<std::string> row{"b"};
    for (int k = 0; k <= 2 * n; ++k) row.push_back(str(t.at(0, k)));
    out.rows.push_back(row);
    return out;
  }
  out.columns.push_back("p\\q");
  for (int q = 0; q <= n; ++q) out.columns.push_back(str(q));
  for (int p = 0; p <= n; ++p) {
    std::vector<std::string> row{str(p)};
    for (int q = 0; q <= n; ++q) row.push_back(str(t.at(p, q)));
    out.rows.push_back(row);
  }
  return out;
}

LaplacianKind laplacian_of(Theory t) {
  switch (t) {
    case Theory::DeRham: return LaplacianKind::D;
    case Theory::Del: return LaplacianKind::Del;
    case Theory::Delbar: return LaplacianKind::Delbar;
    case Theory::BC: return LaplacianKind::BC;
    case Theory::A: return LaplacianKind::A;
  }
  return LaplacianKind::D;
}

// Numeric harmonic dimensions: zero multiplicities of the Laplacian spectra.
CohomologyTable numeric_table(const Context& ctx, Theory theory) {
  const NumericEngine& e = *ctx.numeric;
  const int n = ctx.n();
  CohomologyTable t{theory, {}};
  if (theory == Theory::DeRham) {
    t.grid.assign(1, std::vector<long>(2 * n + 1, 0));
    for (int k = 0; k <= 2 * n; ++k)
      t.grid[0][k] = static_cast<long>(
          spectrum(e.de_rham(k), e.metric().gram(e.basis().bidegrees_of_degree(k)), ctx.config.tol).zero_count);
    return t;
  }
  t.grid.assign(n + 1, std::vector<long>(n + 1, 0));
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q)
      t.grid[p][q] = static_cast<long>(
          spectrum(e.assemble(laplacian_of(theory), {p, q}), e.metric().gram(Bidegree{p, q}), ctx.config.tol).zero_count);
  return t;
}

// ---- commands ----

void cmd_check(Context& ctx, Report& r) {
  const FormBasis& basis = ctx.basis();
  r.check("complex identities", true, "del^2, delbar^2 and del delbar + delbar del vanish");
  Table dims{"bidegrees", {"(p,q)", "dim"}, {}};
  for (Bidegree b : basis.all_bidegrees()) dims.rows.push_back({to_string(b), str(static_cast<long>(basis.dim(b)))});
  r.tables.push_back(dims);
  r.data["dims"] = json::array();
  for (Bidegree b : basis.all_bidegrees()) r.data["dims"].push_back({b.p, b.q, basis.dim(b)});
  r.data["model_text"] = render_model(ctx.model);

  if (ctx.exact) {
    const ExactEngine& e = *ctx.exact;
    const ExactMatrix& S = e.metric().star();
    const ExactMatrix& G = e.metric().gram();
    ExactMatrix sign(basis.dim(), basis.dim());
    for (std::size_t i = 0; i < basis.dim(); ++i) sign(i, i) = GaussianRational(basis.bidegree_of(i).degree() % 2 ? -1 : 1);
    const bool star2 = S * S == sign;
    const bool isometry = S.adjoint() * G * S == G;
    const bool del_star = e.del_star() == GaussianRational(-1) * (S * e.delbar() * S);
    const bool delbar_star = e.delbar_star() == GaussianRational(-1) * (S * e.del() * S);
    r.check("star squares to (-1)^k", star2);
    r.check("star is an isometry", isometry);
    r.check("del* = -* delbar *", del_star);
    r.check("delbar* = -* del *", delbar_star);
    r.info.emplace_back("volume coefficient", e.metric().vol_coeff().to_string());
    r.info.emplace_back("Kahler", yes(is_kahler(e)));
    r.data["exact"] = {{"star_squared", star2}, {"isometry", isometry}, {"del_star", del_star},
                       {"delbar_star", delbar_star}, {"kahler", is_kahler(e)}};
  }
  if (ctx.numeric) {
    const NumericEngine& e = *ctx.numeric;
    const NumericMatrix& D = e.del();
    const NumericMatrix& B = e.delbar();
    const double scale = std::max(1.0, frobenius_norm(D) + frobenius_norm(B));
    const double residual = frobenius_norm(D * D) + frobenius_norm(B * B) + frobenius_norm(D * B + B * D);
    r.check("numeric complex identities", residual <= ctx.config.tol.rel * scale * scale,
            "residual " + format_double(residual));
    r.data["numeric"] = {{"residual", residual}};
  }
}

void cmd_cohomology(Context& ctx, Report& r) {
  const int n = ctx.n();
  std::map<Theory, CohomologyTable> exact_tables;
  if (ctx.exact) {
    const ExactEngine& e = *ctx.exact;
    for (Theory t : kAllTheories) {
      const CohomologyTable table = cohomology(t, e.complex());
      const CohomologyTable harmonic = harmonic_table(t, e);
      exact_tables.emplace(t, table);
      r.tables.push_back(grid_table("h_" + std::string(to_string(t)), table, n));
      r.check("harmonic " + std::string(to_string(t)) + " = rank-nullity", table == harmonic);
      r.data["tables"][std::string(to_string(t))] = table.grid;
    }
    const TableSymmetries s = table_symmetries(exact_tables.at(Theory::Del), exact_tables.at(Theory::Delbar),
                                               exact_tables.at(Theory::BC), exact_tables.at(Theory::A));
    r.check("h_BC^{p,q} = h_BC^{q,p}", s.bc_conjugation);
    r.check("h_A^{p,q} = h_A^{q,p}", s.a_conjugation);
    r.check("h_delbar^{p,q} = h_del^{q,p}", s.dolbeault_conjugation);
    r.check("h_BC^{p,q} = h_A^{n-q,n-p}", s.star_duality);
  }
  if (ctx.numeric) {
    for (Theory t : kAllTheories) {
      const CohomologyTable table = numeric_table(ctx, t);
      r.data["numeric_tables"][std::string(to_string(t))] = table.grid;
      if (!ctx.exact) r.tables.push_back(grid_table("numeric h_" + std::string(to_string(t)), table, n));
      if (ctx.exact)
        r.check("numeric " + std::string(to_string(t)) + " = exact", table == exact_tables.at(t));
    }
  }
}

void cmd_spectra(Context& ctx, Report& r) {
  const FormBasis& basis = ctx.basis();
  const Tolerance tol = ctx.config.tol;
  Table table{"spectra",
              {"operator", "sector", "dim", "zeros", "exact kernel", "gap", "max", "min Rayleigh", "samples"},
              {}};
  json rows = json::array();
  bool kernels_match = true, rayleigh = true;
  std::string first_mismatch, first_rayleigh;

  struct Item {
    LaplacianKind kind;
    std::string sector;
    Sectors sectors;
  };
  std::vector<Item> items;
  for (int k = 0; k <= 2 * ctx.n(); ++k)
    items.push_back({LaplacianKind::D, "A^" + str(k), basis.bidegrees_of_degree(k)});
  for (LaplacianKind kind : kAllLaplacians) {
    if (kind == LaplacianKind::D) continue;
    for (Bidegree b : basis.all_bidegrees()) items.push_back({kind, "A^" + to_string(b), {b}});
  }

  for (const Item& it : items) {
    const std::string op(to_string(it.kind));
    std::vector<std::string> row{op, it.sector, str(static_cast<long>(basis.dim(it.sectors)))};
    json j{{"operator", op}, {"sector", it.sector}, {"dim", basis.dim(it.sectors)}};
    std::optional<std::size_t> exact_dim;
    Subspace exact_kernel;
    if (ctx.exact) {
      const ExactEngine& e = *ctx.exact;
      const ExactMatrix m = it.kind == LaplacianKind::D ? e.block(e.global(it.kind), it.sectors, it.sectors)
                                                        : e.assemble(it.kind, it.sectors.front());
      exact_kernel = Subspace::kernel(m);
      exact_dim = exact_kernel.dim();
      j["exact_kernel"] = *exact_dim;
    }
    if (ctx.numeric) {
      const NumericEngine& e = *ctx.numeric;
      const NumericMatrix m = e.block(e.global(it.kind), it.sectors, it.sectors);
      const NumericMatrix g = e.metric().gram(it.sectors);
      const Spectrum s = spectrum(m, g, tol);
      const NumericMatrix kernel = exact_dim ? to_numeric(exact_kernel.basis()) : numeric_kernel(m, g, tol);
      const RayleighReport rr = verify_gap_inequality(m, g, kernel, s, ctx.config.samples, ctx.config.seed, tol);
      row.push_back(str(static_cast<long>(s.zero_count)));
      row.push_back(exact_dim ? str(static_cast<long>(*exact_dim)) : "-");
      row.push_back(opt(s.gap));
      row.push_back(format_double(s.max));
      row.push_back(rr.vacuous ? "-" : format_double(rr.min_quotient));
      row.push_back(str(static_cast<long>(rr.samples)));
      j["zeros"] = s.zero_count;
      j["eigenvalues"] = s.eigenvalues;
      j["gap"] = s.gap ? json(*s.gap) : json(nullptr);
      j["rayleigh"] = {{"samples", rr.samples}, {"min", rr.vacuous ? json(nullptr) : json(rr.min_quotient)},
                       {"passed", rr.passed}};
      if (exact_dim && *exact_dim != s.zero_count) {
        if (kernels_match) first_mismatch = op + " on " + it.sector;
        kernels_match = false;
      }
      if (!rr.passed) {
        if (rayleigh) first_rayleigh = op + " on " + it.sector;
        rayleigh = false;
      }
    } else {
      row.insert(row.end(), {"-", str(static_cast<long>(*exact_dim)), "-", "-", "-", "0"});
    }
    table.rows.push_back(row);
    rows.push_back(j);
  }
  r.tables.push_back(table);
  r.data["spectra"] = rows;
  r.info.emplace_back("tol", "abs " + format_double(tol.abs) + ", rel " + format_double(tol.rel));
  r.info.emplace_back("seed", std::to_string(ctx.config.seed));
  if (ctx.numeric && ctx.exact) r.check("zero multiplicities = exact kernel dimensions", kernels_match, first_mismatch);
  if (ctx.numeric) r.check("Rayleigh quotients >= gap off the kernel", rayleigh, first_rayleigh);
  if (ctx.exact) {
    const ExactEngine& e = *ctx.exact;
    const DualityReport d = duality(e);
    r.check("* Delta_A = Delta_BC * (and tilde, box pairs)", d.all());
    bool coincide = true;
    for (Bidegree b : basis.all_bidegrees()) {
      const KernelCoincidence k = kernel_coincidence(e, b);
      if (!k.bc || !k.aeppli || !k.box_intersection) coincide = false;
    }
    r.check("ker Delta_BC = ker tDelta_BC = ker Box_BC, Aeppli likewise", coincide);
  }
}

void cmd_diagram(Context& ctx, Report& r) {
  const DiagramReport d = diagram_maps(ctx.need_exact("diagram"));
  Table t{"arrows", {"k", "map", "src dim", "dst dim", "rank", "injective", "surjective"}, {}};
  json arrows = json::array();
  for (const auto& a : d.arrows) {
    const std::string map = std::string(to_string(a.src)) + " -> " + std::string(to_string(a.dst));
    t.rows.push_back({str(a.degree), map, str(static_cast<long>(a.src_dim)), str(static_cast<long>(a.dst_dim)),
                      str(static_cast<long>(a.rank)), yes(a.injective()), yes(a.surjective())});
    arrows.push_back({{"degree", a.degree},
                      {"src", std::string(to_string(a.src))},
                      {"dst", std::string(to_string(a.dst))},
                      {"rank", a.rank},
                      {"injective", a.injective()},
                      {"surjective", a.surjective()},
                      {"matrix", matrix_json(a.matrix)}});
  }
  r.tables.push_back(t);
  r.data["arrows"] = arrows;
  r.data["commutes"] = d.commutes;
  r.info.emplace_back("all arrows isomorphisms", yes(d.all_isomorphisms()));
  r.check("diagram commutes", d.commutes);
}

void cmd_ddbar(Context& ctx, Report& r) {
  const DdbarReport d = ddbar_conditions(*ctx.complex);
  Table t{"conditions", {"", "statement", "holds", "fails in degree", "witness"}, {}};
  json conds = json::array();
  for (const auto& c : d.conditions) {
    const std::string label(1, c.label);
    t.rows.push_back({label, c.statement, yes(c.holds), c.failing_degree ? str(*c.failing_degree) : "-",
                      c.witness.empty() ? "-" : c.witness});
    conds.push_back({{"label", label},
                     {"statement", c.statement},
                     {"holds", c.holds},
                     {"failing_degree", c.failing_degree ? json(*c.failing_degree) : json(nullptr)},
                     {"witness", c.witness}});
  }
  r.tables.push_back(t);
  r.data["conditions"] = conds;
  r.info.emplace_back("del-delbar-lemma", d.all_hold() ? "holds" : "fails");
  r.check("conditions a)-f) agree", d.all_agree());
}

void cmd_inequality(Context& ctx, Report& r) {
  const ExactEngine& e = ctx.need_exact("inequality");
  const int n = ctx.n();
  const InequalityReport ineq = inequality_report(e);
  Table cells{"inequality", {"(p,q)", "h_del+h_delbar", "h_BC+h_A", "defect", "a", "b", "c", "d", "e", "f"}, {}};
  json grid = json::array();
  for (int p = 0; p <= n; ++p) grid.push_back(std::vector<long>(n + 1, 0));
  json subspaces = json::array();
  bool dims_agree = true, sequences = true, identity = true, criterion = true;
  std::vector<AbcSubspaceDims> all;
  for (const auto& c : ineq.cells) {
    const AbcSubspaceDims dims = abc_subspaces(e, c.bidegree);
    all.push_back(dims);
    if (!dims.agree()) dims_agree = false;
    for (const auto& s : verify_exact_sequences(e, c.bidegree))
      if (!s.exact()) sequences = false;
    if (!c.identity) identity = false;
    if (!c.criterion) criterion = false;
    std::vector<std::string> row{to_string(c.bidegree), str(c.lhs), str(c.rhs), str(c.rhs - c.lhs)};
    for (long x : dims.quotient) row.push_back(str(x));
    cells.rows.push_back(row);
    grid[c.bidegree.p][c.bidegree.q] = c.rhs - c.lhs;
    subspaces.push_back({{"p", c.bidegree.p}, {"q", c.bidegree.q}, {"quotients", dims.quotient},
                         {"intersections", dims.intersection}});
  }
  Table degrees{"defect by degree", {"k", "defect"}, {}};
  for (std::size_t k = 0; k < ineq.degree_defects.size(); ++k)
    degrees.rows.push_back({str(static_cast<long>(k)), str(ineq.degree_defects[k])});
  long total = 0;
  for (long x : ineq.degree_defects) total += x;
  r.tables.push_back(cells);
  r.tables.push_back(degrees);
  r.data["defects"] = grid;
  r.data["defect_total"] = total;
  r.data["subspaces"] = subspaces;
  r.data["equality_everywhere"] = ineq.equality_everywhere();
  r.info.emplace_back("total defect", str(total));
  r.check("h_del + h_delbar <= h_BC + h_A", ineq.holds());
  r.check("h_BC + h_A = h_del + h_delbar + a + f", identity);
  r.check("a + f = 0 iff ker del delbar = ker del + ker delbar and im del delbar = im del cap im delbar", criterion);
  r.check("subspace dimensions: harmonic representatives = quotients", dims_agree);
  r.check("a, b/d, c/e, f conjugation symmetry", abc_conjugation_symmetric(all, n));
  r.check("both sequences exact", sequences);
}

void cmd_abc(Context& ctx, Report& r) {
  const ExactEngine& e = ctx.need_exact("abc");
  const int n = ctx.n();
  std::vector<Bidegree> targets;
  if (ctx.config.pq) {
    targets.push_back(*ctx.config.pq);
  } else {
    for (int p = 1; p <= n; ++p)
      for (int q = 1; q <= n; ++q) targets.push_back({p, q});
  }
  json results = json::array();
  for (Bidegree target : targets) {
    const AbcFullComplex f = full_abc_complex(e, target);
    Table t{"ABC complex at " + to_string(target), {"k", "sectors", "dim", "h", "ker Laplacian"}, {}};
    const FormBasis& basis = e.basis();
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k < f.spaces.size(); ++k) {
      std::string sectors;
      for (Bidegree b : f.spaces[k]) sectors += (sectors.empty() ? "" : " ") + to_string(b);
      dims.push_back(basis.dim(f.spaces[k]));
      t.rows.push_back({str(static_cast<long>(k)), sectors.empty() ? "-" : sectors, str(static_cast<long>(dims.back())),
                        str(f.h[k]), str(f.laplacian_kernel[k])});
    }
    r.tables.push_back(t);
    results.push_back({{"p", target.p},
                       {"q", target.q},
                       {"dims", dims},
                       {"h", f.h},
                       {"laplacian_kernel", f.laplacian_kernel},
                       {"h_bc", f.h_bc},
                       {"h_a", f.h_a},
                       {"ok", f.ok()}});
    const std::string at = " at " + to_string(target);
    r.check("delta^2 = 0" + at, f.squares_zero);
    r.check("corner Laplacians are Box_A and Box_BC" + at, f.corner_laplacians_match);
    r.check("corner nodes give h_A^{p-1,q-1} and h_BC^{p,q}" + at, f.nodes_match(),
            "h_A = " + str(f.h_a) + ", h_BC = " + str(f.h_bc));
    r.check("Euler characteristic" + at, f.euler_spaces == f.euler_cohomology);
    r.check("ker Laplacian = cohomology" + at, f.laplacian_kernel == f.h);
  }
  r.data["abc"] = results;
}

std::string rational(const GaussianRational& x) { return x.to_string(); }

void cmd_cover(Context& ctx, Report& r) {
  if (!ctx.config.cover) throw Error(ErrorKind::InputError, "cover needs --cover FILE");
  if (!ctx.metric.exact) throw Error(ErrorKind::InputError, "cover needs a metric with Gaussian-rational entries");
  const CoverSpec spec = load_cover(ctx.config.cover->string());
  const ExactMatrix H = *ctx.metric.exact;
  const FourierCover cover = build_cover(spec, ctx.model, H);
  const int n = ctx.n();
  r.info.emplace_back("|Gamma|", str(cover.index()));
  r.info.emplace_back("modes", str(static_cast<long>(cover.modes().size())));
  r.info.emplace_back("radius", format_double(spec.radius));

  Table modes{"modes", {"#", "k", "mu", "|mu|^2", "character"}, {}};
  json jmodes = json::array();
  for (std::size_t i = 0; i < cover.modes().size(); ++i) {
    const Mode& m = cover.modes()[i];
    std::string k, mu;
    std::vector<std::string> mus;
    for (long x : m.k) k += (k.empty() ? "" : " ") + str(x);
    for (const auto& x : m.mu) {
      mu += (mu.empty() ? "" : " ") + x.to_string();
      mus.push_back(x.to_string());
    }
    modes.rows.push_back({str(static_cast<long>(i)), k, mu, m.norm2.to_string(), str(static_cast<long>(m.character))});
    jmodes.push_back({{"k", m.k}, {"mu", mus}, {"norm2", m.norm2.to_string()}, {"character", m.character}});
  }
  r.tables.push_back(modes);
  r.data["modes"] = jmodes;

  const GammaReport g = gamma_tables(cover);
  Table dims{"Gamma-dimensions", {"(p,q)", "del", "delbar", "BC", "A", "inequality", "equality"}, {}};
  json jcells = json::array();
  for (const auto& c : g.cells) {
    dims.rows.push_back({to_string(c.bidegree), rational(c.del), rational(c.delbar), rational(c.bc), rational(c.a),
                         yes(c.inequality), yes(c.equality)});
    jcells.push_back({{"p", c.bidegree.p},
                      {"q", c.bidegree.q},
                      {"del", rational(c.del)},
                      {"delbar", rational(c.delbar)},
                      {"bc", rational(c.bc)},
                      {"a", rational(c.a)}});
  }
  r.tables.push_back(dims);
  Table betti{"Gamma-Betti numbers", {"k", "b_Gamma"}, {}};
  std::vector<std::string> jbetti;
  for (std::size_t k = 0; k < g.betti.size(); ++k) {
    betti.rows.push_back({str(static_cast<long>(k)), rational(g.betti[k])});
    jbetti.push_back(rational(g.betti[k]));
  }
  r.tables.push_back(betti);
  r.data["gamma"] = jcells;
  r.data["betti"] = jbetti;
  r.check("Gamma-dimension routes agree", g.routes_agree);
  r.check("denominators divide |Gamma|", g.denominators_divide_index);
  r.check("h_del + h_delbar <= h_BC + h_A (Gamma)", g.inequality_holds());
  r.check("equality on the flat torus", g.equality_everywhere());
  r.check("monotone on nested subspaces", g.monotone);
  r.check("additive on orthogonal sums", g.additive);
  r.check("sequences exact on every mode", g.sequences_exact);
  r.check("alternating Gamma-dimension sums vanish", g.eckmann_sums_zero);
  r.check("ker Delta_BC = ker Delta_A = ker Delta_delbar per mode", g.kernels_coincide);
  r.check("harmonic forms live in the zero mode", g.harmonics_at_zero_mode);
  r.check("zero mode is the base complex", g.zero_mode_is_base);
  r.check("twisted complexes square to zero", g.complex_per_mode);

  const GapReport gaps = gap_and_closed_image(cover, ctx.config.seed, 256, ctx.config.tol);
  Table gt{"gaps", {"(p,q)", "Delta_delbar", "Delta_d", "tDelta_A,4", "min |ddbar t|^2/|t|^2", "min Dolbeault ratio"}, {}};
  json jgaps = json::array();
  for (const auto& c : gaps.cells) {
    gt.rows.push_back({to_string(c.bidegree), opt(c.delbar_gap), opt(c.d_gap), opt(c.a4_gap),
                       format_double(c.min_ratio_closed), format_double(c.min_ratio_dolbeault)});
    auto val = [](const std::optional<double>& x) { return x ? json(*x) : json(nullptr); };
    jgaps.push_back({{"p", c.bidegree.p},
                     {"q", c.bidegree.q},
                     {"delbar", val(c.delbar_gap)},
                     {"d", val(c.d_gap)},
                     {"a4", val(c.a4_gap)},
                     {"ok", c.ok()}});
  }
  r.tables.push_back(gt);
  r.data["gaps"] = jgaps;
  bool two = true, square = true, closed = true, dolbeault = true;
  for (const auto& c : gaps.cells) {
    two = two && c.factor_two;
    square = square && c.a4_is_square;
    closed = closed && c.closed_image_bound;
    dolbeault = dolbeault && c.dolbeault_bound;
  }
  r.check("gap(Delta_d) = 2 gap(Delta_delbar)", two);
  r.check("gap(tDelta_A,4) = gap(Delta_delbar)^2", square);
  r.check("tDelta_BC,4 = tDelta_A,4 = Delta_delbar^2", gaps.fourth_orders_square);
  r.check("|del delbar t|^2 >= gap |t|^2 on sampled t", closed);
  r.check("Dolbeault energy >= gap |x|^2 off the kernel", dolbeault);

  const ExactMatrix identity = ExactMatrix::identity(n);
  const ExactMatrix other = H == identity ? *diagonal_metric(n, 2).exact : identity;
  const MetricIndependence mi = metric_independence_check(spec, ctx.model, H, other, ctx.config.seed);
  r.info.emplace_back("quasi-isometry constant", format_double(mi.constant));
  r.data["metric_independence"] = {{"constant", mi.constant},
                                   {"sampled_bounds", mi.sampled_bounds},
                                   {"dims_equal", mi.dims_equal},
                                   {"projections_full_rank", mi.projections_full_rank}};
  r.check("quasi-isometry bounds on samples", mi.sampled_bounds);
  r.check("Gamma-dimensions independent of the metric", mi.dims_equal);
  r.check("projection between harmonic spaces has full rank", mi.projections_full_rank);
}

}  // namespace

Report build_report(const RunConfig& config) {
  Report report;
  report.command = config.command;
  std::optional<Context> loaded;
  try {
    loaded.emplace(load(config, report));
  } catch (const Error& e) {
    // A model that is not a complex is the one failure `check` reports rather than aborts on.
    if (e.kind() != ErrorKind::NotAComplex || config.command != "check") throw;
    report.check("complex identities", false, e.detail());
    return report;
  }
  Context& ctx = *loaded;
  if (config.command == "check") cmd_check(ctx, report);
  else if (config.command == "cohomology") cmd_cohomology(ctx, report);
  else if (config.command == "spectra") cmd_spectra(ctx, report);
  else if (config.command == "diagram") cmd_diagram(ctx, report);
  else if (config.command == "ddbar") cmd_ddbar(ctx, report);
  else if (config.command == "inequality") cmd_inequality(ctx, report);
  else if (config.command == "abc") cmd_abc(ctx, report);
  else if (config.command == "cover") cmd_cover(ctx, report);
  else throw Error(ErrorKind::InputError, "unknown command '" + config.command + "'");
  return report;
}

namespace {

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotAComplex:
    case ErrorKind::EigSolverFailure:
    case ErrorKind::NotGammaInvariant:
    case ErrorKind::SingularPairing:
      return false;
    default:
      return true;
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const Report report = build_report(config);
    out << render(report, config.format);
    if (!report.passed()) {
      for (const auto& c : report.checks)
        if (!c.passed) err << "check failed: " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
      return kVerificationFailed;
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.kind()) ? kInputError : kVerificationFailed;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Bott-Chern and Aeppli cohomology of invariant complex structures"};
  RunConfig config;
  std::string backend, format = "md", pq, out_path;
  std::string metric, cover;
  app.add_option("command", config.command, "check | cohomology | spectra | diagram | ddbar | inequality | abc | cover")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("model", config.model, "structure equations (.cplx)")->required();
  app.add_option("--metric", metric, "Hermitian metric (.herm); identity when omitted");
  app.add_option("--cover", cover, "finite cover of a flat torus (.cover)");
  app.add_option("--backend", backend, "exact | numeric | both")->check(CLI::IsMember({"exact", "numeric", "both"}));
  app.add_option("--format", format, "md | json | csv")->check(CLI::IsMember({"md", "json", "csv"}));
  app.add_option("--pq", pq, "target bidegree P,Q for abc");
  app.add_option("--seed", config.seed, "seed of the sampled property checks");
  app.add_option("--samples", config.samples, "samples per Rayleigh-quotient check");
  app.add_option("--out", out_path, "write the report here instead of stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  try {
    config.tol = Tolerance::from_env();
    if (!pq.empty()) config.pq = parse_pq(pq);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (!metric.empty()) config.metric = metric;
  if (!cover.empty()) config.cover = cover;
  if (backend == "exact") config.backend = Backend::Exact;
  if (backend == "numeric") config.backend = Backend::Numeric;
  if (backend == "both") config.backend = Backend::Both;
  config.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Markdown;

  if (out_path.empty()) return run(config, std::cout, std::cerr);
  std::ostringstream buffer;
  const int code = run(config, buffer, std::cerr);
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kInputError;
  }
  file << buffer.str();
  return code;
}

}  // namespace abch::cli
