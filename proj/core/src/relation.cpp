#include "fockrel/relation.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace fockrel {

namespace {

// Null space of m as an orthonormal column basis (full V from the SVD).
CMatrix null_space(const CMatrix& m, double rank_tol) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  if (sigma_max > 0.0) {
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) >= rank_tol * sigma_max) ++rank;
    }
  }
  return svd.matrixV().rightCols(m.cols() - rank);
}

CMatrix top_block(const LinearRelation& a) {
  return a.graph().frame().topRows(a.space_dim());
}

CMatrix bottom_block(const LinearRelation& a) {
  return a.graph().frame().bottomRows(a.space_dim());
}

SymmetryDiagnostics compare_graphs(const Subspace& lhs, const Subspace& rhs,
                                   double tol) {
  SymmetryDiagnostics d;
  d.lhs_dim = lhs.dim();
  d.rhs_dim = rhs.dim();
  const auto angles = principal_angles(lhs, rhs);
  d.max_angle = angles.empty() ? 0.0 : angles.back();
  d.holds = (d.lhs_dim == d.rhs_dim) && d.max_angle <= tol;
  return d;
}

} // namespace

LinearRelation::LinearRelation(Eigen::Index space_dim, Subspace graph)
    : space_dim_(space_dim), graph_(std::move(graph)) {
  if (space_dim_ < 1) {
    throw std::invalid_argument("LinearRelation: space dimension must be positive");
  }
  if (graph_.ambient_dim() != 2 * space_dim_) {
    throw std::invalid_argument("LinearRelation: graph ambient must be twice the space dimension");
  }
}

LinearRelation from_pairs(Eigen::Index space_dim,
                          const std::vector<RelationPair>& pairs,
                          const std::vector<FockVector>& extra_multivalued,
                          double rank_tol) {
  if (space_dim < 1) {
    throw std::invalid_argument("from_pairs: space dimension must be positive");
  }
  const Eigen::Index n = space_dim;
  CMatrix generators(2 * n,
                     static_cast<Eigen::Index>(pairs.size() + extra_multivalued.size()));
  Eigen::Index col = 0;
  auto put = [&](const CVector& f, const CVector& g) {
    if (f.size() != n || g.size() != n) {
      throw std::invalid_argument("from_pairs: truncation mismatch among generators");
    }
    CVector stacked(2 * n);
    stacked.head(n) = f;
    stacked.tail(n) = g;
    const double scale = stacked.norm();
    if (scale > 0.0) {
      stacked /= scale;
    }
    generators.col(col++) = stacked;
  };
  for (const auto& p : pairs) {
    put(p.f.coeffs, p.g.coeffs);
  }
  for (const auto& h : extra_multivalued) {
    put(CVector::Zero(n), h.coeffs);
  }
  return LinearRelation(n, orthonormalize(generators, rank_tol));
}

LinearRelation from_pairs(const std::vector<RelationPair>& pairs,
                          const std::vector<FockVector>& extra_multivalued,
                          double rank_tol) {
  Eigen::Index n = 0;
  if (!pairs.empty()) {
    n = pairs.front().f.coeffs.size();
  } else if (!extra_multivalued.empty()) {
    n = extra_multivalued.front().coeffs.size();
  } else {
    throw std::invalid_argument("from_pairs: no generators and no explicit space dimension");
  }
  return from_pairs(n, pairs, extra_multivalued, rank_tol);
}

LinearRelation graph_of_matrix(const CMatrix& m, int degree_budget,
                               double rank_tol) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw std::invalid_argument("graph_of_matrix: matrix must be square and nonempty");
  }
  const Eigen::Index n = m.rows();
  Eigen::Index cols = degree_budget < 0 ? n : degree_budget + 1;
  if (cols > n) {
    throw std::invalid_argument("graph_of_matrix: degree budget exceeds truncation");
  }
  CMatrix generators(2 * n, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    CVector stacked(2 * n);
    stacked.head(n) = CVector::Unit(n, j);
    stacked.tail(n) = m.col(j);
    generators.col(j) = stacked / stacked.norm();
  }
  return LinearRelation(n, orthonormalize(generators, rank_tol));
}

Subspace multivalued_part(const LinearRelation& a) {
  const CMatrix kill_top = null_space(top_block(a), a.graph().rank_tol());
  return orthonormalize(bottom_block(a) * kill_top, a.graph().rank_tol());
}

Subspace domain(const LinearRelation& a) {
  return orthonormalize(top_block(a), a.graph().rank_tol());
}

Subspace range(const LinearRelation& a) {
  return orthonormalize(bottom_block(a), a.graph().rank_tol());
}

Subspace kernel(const LinearRelation& a) {
  const CMatrix kill_bottom = null_space(bottom_block(a), a.graph().rank_tol());
  return orthonormalize(top_block(a) * kill_bottom, a.graph().rank_tol());
}

LinearRelation inverse(const LinearRelation& a) {
  const Eigen::Index n = a.space_dim();
  CMatrix swapped(2 * n, a.graph_dim());
  swapped.topRows(n) = bottom_block(a);
  swapped.bottomRows(n) = top_block(a);
  return LinearRelation(n, Subspace(swapped, a.graph().rank_tol()));
}

LinearRelation adjoint(const LinearRelation& a) {
  const Eigen::Index n = a.space_dim();
  CMatrix flipped(2 * n, a.graph_dim());
  flipped.topRows(n) = -bottom_block(a);
  flipped.bottomRows(n) = top_block(a);
  return LinearRelation(n, complement(Subspace(flipped, a.graph().rank_tol())));
}

LinearRelation s_adjoint(const LinearRelation& a, const CMatrix& s, bool antilinear) {
  const Eigen::Index n = a.space_dim();
  if (s.rows() != n || s.cols() != n) {
    throw std::invalid_argument("s_adjoint: twist matrix dimension mismatch");
  }
  if (antilinear) {
    const LinearRelation star = adjoint(a);
    CMatrix frame = star.graph().frame().conjugate();
    CMatrix twisted(2 * n, frame.cols());
    twisted.topRows(n) = s * frame.topRows(n);
    twisted.bottomRows(n) = s * frame.bottomRows(n);
    return LinearRelation(n, orthonormalize(twisted, a.graph().rank_tol()));
  }
  const CMatrix sh = s.adjoint();
  CMatrix flipped(2 * n, a.graph_dim());
  flipped.topRows(n) = -(sh * bottom_block(a));
  flipped.bottomRows(n) = sh * top_block(a);
  return LinearRelation(
      n, complement(orthonormalize(flipped, a.graph().rank_tol())));
}

GainRange reduced_gain_range(const LinearRelation& a) {
  GainRange out;
  const Subspace dom = domain(a);
  const Eigen::Index d = dom.dim();
  if (d == 0) {
    return out;
  }
  const Subspace mv_perp = complement(multivalued_part(a));
  if (mv_perp.dim() == 0) {
    return out;
  }
  // For each domain basis vector pick any graph preimage (least squares is
  // exact here since the vector lies in the column span); the multivalued
  // ambiguity in the output is killed by reducing to coordinates on the
  // complement of A(0).
  const CMatrix top = top_block(a);
  const CMatrix bottom = bottom_block(a);
  Eigen::JacobiSVD<CMatrix> solver(top, Eigen::ComputeThinU | Eigen::ComputeThinV);
  solver.setThreshold(a.graph().rank_tol());
  CMatrix reduced(mv_perp.dim(), d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const CVector coeff = solver.solve(dom.frame().col(j));
    reduced.col(j) = mv_perp.frame().adjoint() * (bottom * coeff);
  }
  Eigen::JacobiSVD<CMatrix> svd(reduced);
  const auto& sv = svd.singularValues();
  out.max_gain = sv.size() > 0 ? sv(0) : 0.0;
  out.min_gain = (reduced.rows() < d) ? 0.0 : sv(sv.size() - 1);
  return out;
}

RelationNorm relation_norm(const LinearRelation& a) {
  return RelationNorm{reduced_gain_range(a).max_gain, false};
}

SymmetryDiagnostics is_hermitian(const LinearRelation& a, double tol) {
  return compare_graphs(a.graph(), adjoint(a).graph(), tol);
}

SymmetryDiagnostics is_c_selfadjoint(const LinearRelation& a,
                                     const CMatrix& conjugation, double tol) {
  return compare_graphs(a.graph(), s_adjoint(a, conjugation, true).graph(), tol);
}

SymmetryDiagnostics is_unitary(const LinearRelation& a, double tol) {
  return compare_graphs(inverse(a).graph(), adjoint(a).graph(), tol);
}

} // namespace fockrel
