#pragma once

#include <vector>

#include "fockrel/fock.hpp"
#include "fockrel/subspace.hpp"

namespace fockrel {

/// One input/output pair (f, g) of a relation. Both components share the
/// same truncation level.
struct RelationPair {
  FockVector f;
  FockVector g;
};

/// A linear relation on the truncated space H = C^{space_dim}, stored as
/// its graph: a subspace of H + H with vectors stacked (input; output).
/// Multi-valuedness is the whole point, so nothing here assumes the graph
/// comes from a single-valued map.
class LinearRelation {
public:
  LinearRelation(Eigen::Index space_dim, Subspace graph);

  Eigen::Index space_dim() const { return space_dim_; }
  const Subspace& graph() const { return graph_; }
  Eigen::Index graph_dim() const { return graph_.dim(); }

private:
  Eigen::Index space_dim_;
  Subspace graph_;
};

/// Relation spanned by the given pairs plus (0, h) for each extra
/// multivalued direction h. Generators are scale-normalized before the
/// rank decision so wildly different magnitudes cannot mask dependence.
LinearRelation from_pairs(const std::vector<RelationPair>& pairs,
                          const std::vector<FockVector>& extra_multivalued = {},
                          double rank_tol = kDefaultRankTol);

/// Same, with an explicit space dimension (needed when both lists are empty).
LinearRelation from_pairs(Eigen::Index space_dim,
                          const std::vector<RelationPair>& pairs,
                          const std::vector<FockVector>& extra_multivalued = {},
                          double rank_tol = kDefaultRankTol);

/// Graph of the matrix map restricted to the basis vectors e_0..e_budget
/// (budget < 0 means the whole space).
LinearRelation graph_of_matrix(const CMatrix& m, int degree_budget = -1,
                               double rank_tol = kDefaultRankTol);

/// A(0) = { g : (0, g) in G(A) }.
Subspace multivalued_part(const LinearRelation& a);

/// Projections of the graph onto its blocks, and the block swaps.
Subspace domain(const LinearRelation& a);
Subspace range(const LinearRelation& a);
Subspace kernel(const LinearRelation& a);
LinearRelation inverse(const LinearRelation& a);

/// Adjoint relation: G(A*) is the orthogonal complement of
/// { (-g, f) : (f, g) in G(A) }.
LinearRelation adjoint(const LinearRelation& a);

/// Adjoint twisted by a matrix s. For linear s this is the relation whose
/// graph pairs (u, v) satisfy <g, s u> = <f, s v> for all (f, g) in G(A).
/// For antilinear s (the matrix acts as x -> s conj(x)), the graph is the
/// plain adjoint graph transported pairwise through the twist.
LinearRelation s_adjoint(const LinearRelation& a, const CMatrix& s, bool antilinear);

/// Seminorm of the reduced single-valued part: outputs are taken modulo
/// the multivalued subspace, inputs range over the domain. This does not
/// separate points (a purely multivalued relation has norm 0). The
/// infinite flag exists for API symmetry but is unreachable for graphs
/// assembled by from_pairs, which are finite-dimensional and closed.
struct RelationNorm {
  double value = 0.0;
  bool infinite = false;
};
RelationNorm relation_norm(const LinearRelation& a);

/// Largest and smallest gain of the reduced map over the domain. min_gain
/// is the best constant c in ||g mod A(0)|| >= c ||f|| over the graph.
struct GainRange {
  double max_gain = 0.0;
  double min_gain = 0.0;
};
GainRange reduced_gain_range(const LinearRelation& a);

/// Result of a graph-symmetry test. max_angle is the largest principal
/// angle between the two graphs, computed on the smaller dimension, so it
/// measures containment when the dimensions differ (holds is then false).
struct SymmetryDiagnostics {
  bool holds = false;
  double max_angle = 0.0;
  Eigen::Index lhs_dim = 0;
  Eigen::Index rhs_dim = 0;
};

/// G(A*) == G(A)?
SymmetryDiagnostics is_hermitian(const LinearRelation& a, double tol);
/// G(A*_C) == G(A) for an antilinear twist C?
SymmetryDiagnostics is_c_selfadjoint(const LinearRelation& a,
                                     const CMatrix& conjugation, double tol);
/// G(A*) == G(A^{-1})?
SymmetryDiagnostics is_unitary(const LinearRelation& a, double tol);

} // namespace fockrel
