#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orbitframe/errors.hpp"
#include "orbitframe/linalg.hpp"

namespace orbitframe::oprep {

using CoefficientSeq = Eigen::VectorXcd;

// Ordered finite family f_1, ..., f_N as the columns of a d x N complex
// matrix. `independent` verifies full numerical column rank at construction;
// `raw` admits anything, rank-deficient families included (those are the
// interesting inputs for the kernel analysis).
class VectorFamily {
public:
  static VectorFamily independent(Eigen::MatrixXcd columns, std::string label = {},
                                  double rank_tol = 1e-10) {
    VectorFamily f(std::move(columns), std::move(label));
    const Eigen::VectorXd sv = linalg::singular_values(f.columns_);
    if (linalg::numerical_rank(sv, rank_tol) < f.columns_.cols())
      throw RankError("VectorFamily: columns are not numerically independent");
    return f;
  }

  static VectorFamily raw(Eigen::MatrixXcd columns, std::string label = {}) {
    return VectorFamily(std::move(columns), std::move(label));
  }

  Eigen::Index ambient_dim() const { return columns_.cols() ? columns_.rows() : 0; }
  Eigen::Index size() const { return columns_.cols(); }
  Eigen::VectorXcd column(Eigen::Index k) const { return columns_.col(k); }
  const Eigen::MatrixXcd& matrix() const { return columns_; }
  const std::string& label() const { return label_; }

private:
  VectorFamily(Eigen::MatrixXcd columns, std::string label)
      : columns_(std::move(columns)), label_(std::move(label)) {
    if (columns_.rows() < 1 || columns_.cols() < 2)
      throw DimensionError("VectorFamily: need ambient dimension >= 1 and at least 2 vectors");
  }

  Eigen::MatrixXcd columns_;
  std::string label_;
};

// Candidate dual family g_1, ..., g_N; its defining property (expansion
// residuals vanish on the span) is checked on demand, not at construction.
struct DualFamily {
  Eigen::MatrixXcd columns;
};

// (c_1, ..., c_N) -> (0, c_1, ..., c_N).
inline CoefficientSeq right_shift(const CoefficientSeq& c) {
  CoefficientSeq out(c.size() + 1);
  out(0) = 0.0;
  out.tail(c.size()) = c;
  return out;
}

// U c = sum_k c_k f_k, missing tail coefficients treated as zero. The sum is
// accumulated column by column in index order so that shift identities hold
// bit for bit.
inline Eigen::VectorXcd synthesis_apply(const VectorFamily& family, const CoefficientSeq& c) {
  if (c.size() > family.size())
    throw DimensionError("synthesis_apply: more coefficients than family vectors");
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(family.ambient_dim());
  for (Eigen::Index k = 0; k < c.size(); ++k) acc += c(k) * family.matrix().col(k);
  return acc;
}

// Smallest constant bounding ||sum c_k f_{k+1}|| by ||sum c_k f_k|| over the
// truncation, i.e. the norm of the shift operator restricted to
// span{f_1, ..., f_{N-1}}. Computed as the largest singular value of
// A V_B diag(1/s_B), the quotient of A = [f_2 .. f_N] against the
// orthonormalized span of B = [f_1 .. f_{N-1}]. The quotient is invariant
// under jointly rescaling column k of A and B, so B's columns are
// equilibrated to unit norm first; the rank tolerance then measures genuine
// angular degeneracy instead of column scale spread (a plain relative cut
// would declare diag(1!, ..., 14!) rank-deficient).
inline double restricted_norm_estimate(const VectorFamily& family, double rank_tol = 1e-10) {
  const Eigen::Index n = family.size();
  Eigen::MatrixXcd A = family.matrix().rightCols(n - 1);
  Eigen::MatrixXcd B = family.matrix().leftCols(n - 1);
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    const double scale = B.col(k).norm();
    if (scale == 0.0)
      throw RankError("restricted_norm_estimate: zero vector among the leading columns");
    A.col(k) /= scale;
    B.col(k) /= scale;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const Eigen::Index r = linalg::numerical_rank(sv, rank_tol);
  if (r < n - 1)
    throw RankError("restricted_norm_estimate: leading columns are rank-deficient");
  Eigen::MatrixXcd quotient = A * svd.matrixV();
  for (Eigen::Index i = 0; i < r; ++i) quotient.col(i) /= sv(i);
  return linalg::singular_values(quotient)(0);
}

// Entry k is ||f_{k+1}|| / ||f_k||.
inline Eigen::VectorXd norm_ratio_sequence(const VectorFamily& family) {
  const Eigen::Index n = family.size();
  Eigen::VectorXd norms(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    norms(k) = family.matrix().col(k).norm();
    if (norms(k) == 0.0) throw DomainError("norm_ratio_sequence: zero column");
  }
  Eigen::VectorXd out(n - 1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) out(k) = norms(k + 1) / norms(k);
  return out;
}

// How far the numerical kernel of the synthesis map is from being invariant
// under the right shift. For each unit kernel vector c we shift, truncate
// back to N entries and report both the component outside the kernel
// subspace and the synthesized norm ||U T c||. Exact invariance is an
// infinite-model statement; finite truncations only get residuals.
struct KernelShiftRow {
  double projection_residual = 0.0;  // ||(I - P_ker) T c||
  double synthesis_residual = 0.0;   // ||U T c||
};

struct KernelShiftReport {
  std::size_t kernel_dimension = 0;
  std::vector<KernelShiftRow> rows;
  double max_projection_residual = 0.0;
  double max_synthesis_residual = 0.0;
  double tolerance = 0.0;
  bool invariant_within_tol = true;
};

inline KernelShiftReport kernel_shift_check(const VectorFamily& family, double tol) {
  KernelShiftReport rep;
  rep.tolerance = tol;
  const Eigen::MatrixXcd ker = linalg::kernel_basis(family.matrix(), tol);
  rep.kernel_dimension = static_cast<std::size_t>(ker.cols());
  for (Eigen::Index i = 0; i < ker.cols(); ++i) {
    CoefficientSeq shifted = CoefficientSeq::Zero(family.size());
    shifted.tail(family.size() - 1) = ker.col(i).head(family.size() - 1);
    KernelShiftRow row;
    row.synthesis_residual = synthesis_apply(family, shifted).norm();
    row.projection_residual = (shifted - ker * (ker.adjoint() * shifted)).norm();
    rep.max_projection_residual = std::max(rep.max_projection_residual, row.projection_residual);
    rep.max_synthesis_residual = std::max(rep.max_synthesis_residual, row.synthesis_residual);
    rep.rows.push_back(row);
  }
  rep.invariant_within_tol =
      rep.max_projection_residual <= tol && rep.max_synthesis_residual <= tol;
  return rep;
}

// On-demand check of the dual's defining property on a single vector:
// || f - sum_k <f, g_k> f_k ||, small on the span when `dual` is a genuine
// analysis family for `family`.
inline double dual_expansion_residual(const VectorFamily& family, const DualFamily& dual,
                                      const Eigen::VectorXcd& f) {
  if (dual.columns.rows() != family.ambient_dim() || dual.columns.cols() != family.size())
    throw DimensionError("dual_expansion_residual: dual family shape mismatch");
  if (f.size() != family.ambient_dim())
    throw DimensionError("dual_expansion_residual: vector dimension mismatch");
  Eigen::VectorXcd approx = Eigen::VectorXcd::Zero(family.ambient_dim());
  for (Eigen::Index k = 0; k < family.size(); ++k)
    approx += dual.columns.col(k).dot(f) * family.matrix().col(k);
  return (f - approx).norm();
}

// Residuals of the shifted expansion: entry j is
// || f_{j+1} - sum_{k <= N-1} <f_j, g_k> f_{k+1} ||.
// Zero residuals witness that the family is reproduced by the bounded
// operator sending each f_k to f_{k+1}.
inline Eigen::VectorXd expansion_residuals(const VectorFamily& family, const DualFamily& dual) {
  if (dual.columns.rows() != family.ambient_dim() || dual.columns.cols() != family.size())
    throw DimensionError("expansion_residuals: dual family shape mismatch");
  const Eigen::Index n = family.size();
  Eigen::VectorXd out(n - 1);
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    Eigen::VectorXcd approx = Eigen::VectorXcd::Zero(family.ambient_dim());
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      const std::complex<double> t = dual.columns.col(k).dot(family.matrix().col(j));
      approx += t * family.matrix().col(k + 1);
    }
    out(j) = (family.matrix().col(j + 1) - approx).norm();
  }
  return out;
}

// For the scaled family f_k = m_k e_k over a Riesz basis {e_k} with bounds
// A <= B, the restricted shift norm obeys
//   restricted_norm^2 <= (B/A) C^2,  C = max |m_{k+1} / m_k|.
// Both sides are computed and reported; `bounds` can be supplied or measured
// as the extreme squared singular values of the basis matrix.
struct RieszBoundReport {
  double restricted_norm = 0.0;
  double lhs_squared = 0.0;
  double ratio_bound = 0.0;  // C
  double riesz_lower = 0.0;
  double riesz_upper = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

inline RieszBoundReport scaled_riesz_bound_check(
    const Eigen::MatrixXcd& riesz_basis, const Eigen::VectorXcd& scalars,
    std::optional<std::pair<double, double>> bounds = {}) {
  if (scalars.size() != riesz_basis.cols())
    throw DimensionError("scaled_riesz_bound_check: one scalar per basis vector required");
  for (Eigen::Index k = 0; k < scalars.size(); ++k)
    if (scalars(k) == std::complex<double>(0.0))
      throw DomainError("scaled_riesz_bound_check: scalars must be nonzero");

  RieszBoundReport rep;
  if (bounds) {
    if (!(bounds->first > 0.0) || bounds->second < bounds->first)
      throw DomainError("scaled_riesz_bound_check: need 0 < A <= B");
    rep.riesz_lower = bounds->first;
    rep.riesz_upper = bounds->second;
  } else {
    const Eigen::VectorXd sv = linalg::singular_values(riesz_basis);
    rep.riesz_lower = sv(sv.size() - 1) * sv(sv.size() - 1);
    rep.riesz_upper = sv(0) * sv(0);
    if (!(rep.riesz_lower > 0.0))
      throw RankError("scaled_riesz_bound_check: basis matrix is singular");
  }

  rep.ratio_bound = 0.0;
  for (Eigen::Index k = 0; k + 1 < scalars.size(); ++k)
    rep.ratio_bound = std::max(rep.ratio_bound, std::abs(scalars(k + 1)) / std::abs(scalars(k)));

  const VectorFamily scaled =
      VectorFamily::raw(riesz_basis * scalars.asDiagonal(), "scaled_riesz");
  rep.restricted_norm = restricted_norm_estimate(scaled);
  rep.lhs_squared = rep.restricted_norm * rep.restricted_norm;
  rep.rhs = (rep.riesz_upper / rep.riesz_lower) * rep.ratio_bound * rep.ratio_bound;
  rep.holds = rep.lhs_squared <= rep.rhs * (1.0 + 1e-9) + 1e-12;
  return rep;
}

// Orbit coefficients of the alternating block construction: the index line
// splits into consecutive blocks of sizes 2, 3, 4, ...; every step inside
// block number B multiplies by 2 when B is odd and by 1/2 when B is even,
// so the running product oscillates without bound in either direction.
inline std::vector<double> block_orbit_coefficients(std::size_t count) {
  std::vector<double> c;
  c.reserve(count);
  if (count == 0) return c;
  c.push_back(1.0);
  std::size_t block = 2;           // current block number
  std::size_t block_end = 2;       // last index inside the current block
  for (std::size_t k = 1; c.size() < count; ++k) {
    if (k > block_end) {
      ++block;
      block_end = block * (block + 1) / 2 - 1;
    }
    const double factor = block % 2 == 1 ? 2.0 : 0.5;
    c.push_back(c.back() * factor);
  }
  return c;
}

namespace detail {
inline std::vector<double> fractional_norms(std::size_t count) {
  // Reduced fractions p/q listed by denominator: 1/2, 1/3, 2/3, 1/4, 3/4, ...
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t q = 2; out.size() < count; ++q) {
    for (std::size_t p = 1; p < q && out.size() < count; ++p) {
      if (std::gcd(p, q) == 1)
        out.push_back(static_cast<double>(p) / static_cast<double>(q));
    }
  }
  return out;
}
}  // namespace detail

// Named families in standard coordinates:
//   sum_basis   f_k = e_k + e_{k+1}                 (needs dim >= count+1)
//   factorial   f_k = k! e_k                        (count <= 18, exact doubles)
//   fractional  f_k = (reduced fraction)_k e_k
//   block       f_k = c_{k-1} e_k, block orbit coefficients
//   scaled      f_k = s^k e_k, s = parameter (default 2)
inline VectorFamily example_factory(std::string_view name, std::size_t dimension,
                                    std::size_t count, std::optional<double> parameter = {}) {
  const auto d = static_cast<Eigen::Index>(dimension);
  const auto n = static_cast<Eigen::Index>(count);
  if (dimension < 1 || count < 2)
    throw DimensionError("example_factory: need dimension >= 1 and count >= 2");

  Eigen::MatrixXcd cols = Eigen::MatrixXcd::Zero(d, n);
  if (name == "sum_basis") {
    if (dimension < count + 1)
      throw DimensionError("example_factory: sum_basis needs dimension >= count + 1");
    for (Eigen::Index k = 0; k < n; ++k) {
      cols(k, k) = 1.0;
      cols(k + 1, k) = 1.0;
    }
  } else if (name == "factorial") {
    if (count > 18)
      throw OverflowRiskError("example_factory: factorial beyond 18 is not exact in doubles");
    if (dimension < count)
      throw DimensionError("example_factory: factorial needs dimension >= count");
    double f = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      f *= static_cast<double>(k + 1);
      cols(k, k) = f;
    }
  } else if (name == "fractional") {
    if (dimension < count)
      throw DimensionError("example_factory: fractional needs dimension >= count");
    const auto norms = detail::fractional_norms(count);
    for (Eigen::Index k = 0; k < n; ++k) cols(k, k) = norms[static_cast<std::size_t>(k)];
  } else if (name == "block") {
    if (dimension < count)
      throw DimensionError("example_factory: block needs dimension >= count");
    const auto c = block_orbit_coefficients(count);
    for (Eigen::Index k = 0; k < n; ++k) cols(k, k) = c[static_cast<std::size_t>(k)];
  } else if (name == "scaled") {
    if (dimension < count)
      throw DimensionError("example_factory: scaled needs dimension >= count");
    const double s = parameter.value_or(2.0);
    if (s == 0.0) throw DomainError("example_factory: scale must be nonzero");
    double p = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      p *= s;
      cols(k, k) = p;
    }
  } else {
    throw UnknownExampleError("example_factory: unknown family '" + std::string(name) + "'");
  }
  return VectorFamily::raw(std::move(cols), std::string(name));
}

}  // namespace orbitframe::oprep
