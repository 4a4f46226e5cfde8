#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace fockrel {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Relative singular value cutoff used for rank decisions.
inline constexpr double kDefaultRankTol = 1e-10;

/// A subspace of C^n held as an orthonormal column frame. Frames come out
/// of SVDs, so columns are orthonormal to machine precision; the
/// constructor re-checks this and rejects anything worse than 1e-12.
class Subspace {
public:
  /// Zero-dimensional subspace of C^n.
  static Subspace zero(Eigen::Index ambient_dim);
  /// All of C^n (identity frame).
  static Subspace full(Eigen::Index ambient_dim);

  Subspace(CMatrix frame, double rank_tol = kDefaultRankTol);

  Eigen::Index ambient_dim() const { return frame_.rows(); }
  Eigen::Index dim() const { return frame_.cols(); }
  const CMatrix& frame() const { return frame_; }
  double rank_tol() const { return rank_tol_; }

private:
  CMatrix frame_;
  double rank_tol_;
};

/// Span of the given vectors, all of one ambient dimension. Rank is decided
/// by singular values relative to the largest one; an empty input yields
/// the zero subspace of C^0.
Subspace orthonormalize(const std::vector<CVector>& vectors,
                        double rank_tol = kDefaultRankTol);

/// Span of the matrix columns.
Subspace orthonormalize(const CMatrix& columns,
                        double rank_tol = kDefaultRankTol);

/// Orthogonal complement within the ambient space.
Subspace complement(const Subspace& s);

/// Principal angles between two subspaces of one ambient space, ascending,
/// in [0, pi/2]. The number of angles is min(dim s1, dim s2); they are all
/// zero exactly when one subspace contains the other.
std::vector<double> principal_angles(const Subspace& s1, const Subspace& s2);

/// Equal dimension and largest principal angle at most tol.
bool subspace_equal(const Subspace& s1, const Subspace& s2, double tol);

/// Orthogonal projection of v onto s.
CVector project(const Subspace& s, const CVector& v);

} // namespace fockrel
