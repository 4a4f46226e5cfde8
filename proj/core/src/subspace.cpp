#include "fockrel/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fockrel {

namespace {

void require_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

} // namespace

Subspace Subspace::zero(Eigen::Index ambient_dim) {
  return Subspace(CMatrix(ambient_dim, 0));
}

Subspace Subspace::full(Eigen::Index ambient_dim) {
  return Subspace(CMatrix::Identity(ambient_dim, ambient_dim));
}

Subspace::Subspace(CMatrix frame, double rank_tol)
    : frame_(std::move(frame)), rank_tol_(rank_tol) {
  if (frame_.cols() > frame_.rows()) {
    throw std::invalid_argument("Subspace: more frame columns than ambient dimension");
  }
  require_finite(frame_, "Subspace");
  if (frame_.cols() > 0) {
    const CMatrix gram = frame_.adjoint() * frame_;
    const double defect =
        (gram - CMatrix::Identity(frame_.cols(), frame_.cols())).cwiseAbs().maxCoeff();
    if (defect > 1e-12) {
      throw std::invalid_argument("Subspace: frame columns not orthonormal");
    }
  }
}

Subspace orthonormalize(const CMatrix& columns, double rank_tol) {
  require_finite(columns, "orthonormalize");
  if (columns.cols() == 0) {
    return Subspace::zero(columns.rows());
  }
  Eigen::JacobiSVD<CMatrix> svd(columns, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  if (sigma_max > 0.0) {
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) >= rank_tol * sigma_max) ++rank;
    }
  }
  return Subspace(svd.matrixU().leftCols(rank), rank_tol);
}

Subspace orthonormalize(const std::vector<CVector>& vectors, double rank_tol) {
  if (vectors.empty()) {
    return Subspace::zero(0);
  }
  const Eigen::Index n = vectors.front().size();
  CMatrix columns(n, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != n) {
      throw std::invalid_argument("orthonormalize: mixed vector dimensions");
    }
    columns.col(static_cast<Eigen::Index>(j)) = vectors[j];
  }
  return orthonormalize(columns, rank_tol);
}

Subspace complement(const Subspace& s) {
  const Eigen::Index n = s.ambient_dim();
  const Eigen::Index k = s.dim();
  if (k == 0) {
    return Subspace::full(n);
  }
  if (k == n) {
    return Subspace::zero(n);
  }
  Eigen::JacobiSVD<CMatrix> svd(s.frame(), Eigen::ComputeFullU);
  return Subspace(svd.matrixU().rightCols(n - k), s.rank_tol());
}

std::vector<double> principal_angles(const Subspace& s1, const Subspace& s2) {
  if (s1.ambient_dim() != s2.ambient_dim()) {
    throw std::invalid_argument("principal_angles: ambient dimensions differ");
  }
  const Eigen::Index count = std::min(s1.dim(), s2.dim());
  if (count == 0) {
    return {};
  }
  // Cosines come from the overlap, but acos() cannot resolve angles below
  // about 1e-8; small angles are therefore recomputed from the sines of the
  // projection residual, which stay accurate down to machine precision.
  const Subspace& big = s1.dim() >= s2.dim() ? s1 : s2;
  const Subspace& small = s1.dim() >= s2.dim() ? s2 : s1;
  const CMatrix overlap = big.frame().adjoint() * small.frame();
  Eigen::JacobiSVD<CMatrix> svd_cos(overlap);
  const auto& cosines = svd_cos.singularValues();
  const CMatrix residual = small.frame() - big.frame() * overlap;
  Eigen::JacobiSVD<CMatrix> svd_sin(residual);
  const auto& sines = svd_sin.singularValues();
  std::vector<double> angles(static_cast<std::size_t>(count));
  for (Eigen::Index i = 0; i < count; ++i) {
    const double c = std::clamp(cosines(i), 0.0, 1.0);
    const double s = std::clamp(sines(count - 1 - i), 0.0, 1.0);
    angles[static_cast<std::size_t>(i)] = c * c > 0.5 ? std::asin(s) : std::acos(c);
  }
  return angles;
}

bool subspace_equal(const Subspace& s1, const Subspace& s2, double tol) {
  if (s1.ambient_dim() != s2.ambient_dim() || s1.dim() != s2.dim()) {
    return false;
  }
  const auto angles = principal_angles(s1, s2);
  return angles.empty() || angles.back() <= tol;
}

CVector project(const Subspace& s, const CVector& v) {
  if (v.size() != s.ambient_dim()) {
    throw std::invalid_argument("project: vector dimension does not match ambient");
  }
  if (s.dim() == 0) {
    return CVector::Zero(v.size());
  }
  return s.frame() * (s.frame().adjoint() * v);
}

} // namespace fockrel
