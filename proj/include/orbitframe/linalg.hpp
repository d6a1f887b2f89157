#pragma once

#include <Eigen/Dense>
#include <complex>

#include "orbitframe/errors.hpp"

namespace orbitframe::linalg {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Eigen::VectorXd singular_values(const Mat& m) {
  return Eigen::JacobiSVD<Mat>(m).singularValues();
}

// Number of singular values above tol_rel * sigma_max.
inline Eigen::Index numerical_rank(const Eigen::VectorXd& sv, double tol_rel) {
  if (sv.size() == 0) return 0;
  const double cut = tol_rel * sv(0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

// Orthonormal basis of the numerical kernel: right singular vectors whose
// singular value is at most tol_rel * sigma_max (columns beyond min(rows,
// cols) count as zero singular values).
inline Mat kernel_basis(const Mat& m, double tol_rel) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cut = sv.size() > 0 ? tol_rel * sv(0) : 0.0;
  const Eigen::Index n = m.cols();
  Eigen::Index first = 0;
  while (first < sv.size() && sv(first) > cut) ++first;
  return svd.matrixV().rightCols(n - first);
}

// Solve G x = rhs for Hermitian positive definite G via Cholesky, falling
// back to an SVD pseudo-solve when the factorization reports trouble.
inline Vec hermitian_solve(const Mat& G, const Vec& rhs, double rank_tol) {
  Eigen::LLT<Mat> llt(G);
  if (llt.info() == Eigen::Success) return llt.solve(rhs);
  Eigen::JacobiSVD<Mat> svd(G, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(rank_tol);
  return svd.solve(rhs);
}

}  // namespace orbitframe::linalg
