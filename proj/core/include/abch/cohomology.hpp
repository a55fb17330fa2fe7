#pragma once

#include "abch/laplacian.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace abch {

enum class Theory { DeRham, Del, Delbar, BC, A };

inline constexpr std::array<Theory, 5> kAllTheories{Theory::DeRham, Theory::Del, Theory::Delbar, Theory::BC,
                                                    Theory::A};

std::string_view to_string(Theory t);

/// grid[p][q] for the bigraded theories; a single row grid[0][k], k = 0..2n, for de Rham.
struct CohomologyTable {
  Theory theory = Theory::Delbar;
  std::vector<std::vector<long>> grid;

  long at(int p, int q) const;
  friend bool operator==(const CohomologyTable&, const CohomologyTable&) = default;
};

/// Rank-nullity over Q(i), no metric involved. For DeRham, b.p is the degree.
long cohomology_dim(Theory theory, const ExactComplex& c, Bidegree b);
CohomologyTable cohomology(Theory theory, const ExactComplex& c);
/// Same grid from harmonic spaces: ker Delta_delbar, Delta_del, Delta_BC, Delta_A per bidegree
/// and ker Delta_d per total degree.
CohomologyTable harmonic_table(Theory theory, const ExactEngine& e);

struct TableSymmetries {
  bool bc_conjugation = false;      // h_BC^{p,q} = h_BC^{q,p}
  bool a_conjugation = false;       // h_A^{p,q} = h_A^{q,p}
  bool dolbeault_conjugation = false;  // h_delbar^{p,q} = h_del^{q,p}
  bool star_duality = false;        // h_BC^{p,q} = h_A^{n-q,n-p}
  bool all() const { return bc_conjugation && a_conjugation && dolbeault_conjugation && star_duality; }
};
TableSymmetries table_symmetries(const CohomologyTable& del, const CohomologyTable& delbar, const CohomologyTable& bc,
                                 const CohomologyTable& a);

/// Orthogonal decomposition of A^{p,q} into harmonic part, "exact" part and "coexact" part:
///   BC:     H_BC (+) im del delbar (+) (im del* + im delbar*)
///   A:      H_A (+) (im del + im delbar) (+) im delbar* del*
///   delbar: H_delbar (+) im delbar (+) im delbar*     (del likewise)
/// together with the kernel identity ker = harmonic (+) exact part.
struct DecompositionReport {
  Theory theory = Theory::BC;
  Bidegree bidegree;
  std::array<std::size_t, 3> dims{};
  bool orthogonal = false;
  bool dims_add_up = false;
  bool kernel_identity = false;
  bool ok() const { return orthogonal && dims_add_up && kernel_identity; }
};
DecompositionReport verify_hodge_decomposition(const ExactEngine& e, Theory theory, Bidegree b);

/// Map between harmonic spaces induced by the identity, realized by Gram projection.
struct DiagramArrow {
  Theory src = Theory::BC;
  Theory dst = Theory::A;
  int degree = 0;
  ExactMatrix matrix;  // coordinates in the exact harmonic bases
  std::size_t src_dim = 0;
  std::size_t dst_dim = 0;
  std::size_t rank = 0;
  bool injective() const { return rank == src_dim; }
  bool surjective() const { return rank == dst_dim; }
  bool isomorphism() const { return injective() && surjective(); }
};

struct DiagramReport {
  std::vector<DiagramArrow> arrows;  // 7 per total degree
  bool commutes = false;
  bool all_isomorphisms() const;
};
DiagramReport diagram_maps(const ExactEngine& e);

struct DdbarCondition {
  char label = 'a';
  std::string statement;
  bool holds = false;
  std::optional<int> failing_degree;
  std::string witness;  // a form in the larger space that is not in the smaller one
};

struct DdbarReport {
  std::array<DdbarCondition, 6> conditions;
  bool all_agree() const;
  bool all_hold() const;
};
/// Conditions a)-f) on A^k = sum of A^{p,q} with p+q = k, tested as exact subspace equalities.
DdbarReport ddbar_conditions(const ExactComplex& c);

/// dim of the six subspaces at one bidegree, from intersections and from quotients.
struct AbcSubspaceDims {
  Bidegree bidegree;
  std::array<long, 6> intersection{};  // calA .. calF
  std::array<long, 6> quotient{};      // A .. F
  bool agree() const { return intersection == quotient; }
};
AbcSubspaceDims abc_subspaces(const ExactEngine& e, Bidegree b);

/// a^{pq} = a^{qp}, b^{pq} = d^{qp}, c^{pq} = e^{qp}, f^{pq} = f^{qp}.
bool abc_conjugation_symmetric(const std::vector<AbcSubspaceDims>& all, int n);

struct SequenceReport {
  std::vector<std::string> nodes;
  std::vector<long> dims;
  std::vector<bool> exact_at;
  long alternating_sum = 0;
  bool exact() const;
};
/// 0 -> calA -> calB -> H_delbar -> H_A -> calC -> 0 and 0 -> calD -> H_BC -> H_delbar -> calE -> calF -> 0,
/// with maps given by inclusions and Gram projections.
std::array<SequenceReport, 2> verify_exact_sequences(const ExactEngine& e, Bidegree b);

struct InequalityCell {
  Bidegree bidegree;
  long lhs = 0;  // h_del + h_delbar
  long rhs = 0;  // h_BC + h_A
  long a_plus_f = 0;
  bool identity = false;   // rhs = lhs + a + f
  bool criterion = false;  // (a + f = 0) <=> (ker del delbar = ker del + ker delbar and im del delbar = im del cap im delbar)
  bool equality() const { return lhs == rhs; }
};

struct InequalityReport {
  std::vector<InequalityCell> cells;
  std::vector<long> degree_defects;  // sum of rhs - lhs over p+q = k
  bool holds() const;                // lhs <= rhs everywhere, identity and criterion everywhere
  bool equality_everywhere() const;
  bool strict_somewhere() const;
};
InequalityReport inequality_report(const ExactEngine& e);

struct AbcFullComplex {
  Bidegree target;
  std::vector<Sectors> spaces;              // L^k, k = 0..2n
  std::vector<ExactMatrix> differentials;   // delta^k : L^k -> L^{k+1}, k = 0..2n-1
  std::vector<long> h;                      // cohomology at each node
  std::vector<long> laplacian_kernel;       // dim ker Delta^k
  bool squares_zero = false;
  bool corner_laplacians_match = false;     // Delta at A^{p-1,q-1} is Box_A, at A^{p,q} is Box_BC
  long euler_spaces = 0;
  long euler_cohomology = 0;
  long h_bc = 0;  // h_BC^{p,q} by direct computation
  long h_a = 0;   // h_A^{p-1,q-1} by direct computation

  bool nodes_match() const;
  bool ok() const;
};
/// Requires 1 <= p, q <= n (InvalidBidegree otherwise).
AbcFullComplex full_abc_complex(const ExactEngine& e, Bidegree target);

}  // namespace abch
