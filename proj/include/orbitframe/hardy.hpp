#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>

#include "orbitframe/disc.hpp"
#include "orbitframe/errors.hpp"
#include "orbitframe/linalg.hpp"

namespace orbitframe::hardy {

// Truncated element of the coefficient Hilbert space on the disc: the
// polynomial a_0 + a_1 z + ... + a_D z^D standing in for a power series with
// square-summable coefficients.
struct HardyPoly {
  Eigen::VectorXcd coeffs;

  explicit HardyPoly(Eigen::VectorXcd c) : coeffs(std::move(c)) {
    if (coeffs.size() == 0) throw DomainError("HardyPoly: coefficient vector must be non-empty");
  }

  static HardyPoly constant(std::complex<double> a) {
    Eigen::VectorXcd c(1);
    c(0) = a;
    return HardyPoly(std::move(c));
  }

  // z^n
  static HardyPoly monomial(std::size_t n) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n) + 1);
    c(static_cast<Eigen::Index>(n)) = 1.0;
    return HardyPoly(std::move(c));
  }

  std::size_t degree() const { return static_cast<std::size_t>(coeffs.size()) - 1; }
};

// <f, g> = sum a_n conj(b_n); the shorter coefficient vector is zero-padded.
inline std::complex<double> hardy_inner(const HardyPoly& f, const HardyPoly& g) {
  const Eigen::Index n = std::min(f.coeffs.size(), g.coeffs.size());
  std::complex<double> s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) s += f.coeffs(i) * std::conj(g.coeffs(i));
  return s;
}

inline std::complex<double> eval_poly(const HardyPoly& f, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (Eigen::Index i = f.coeffs.size() - 1; i >= 0; --i) acc = acc * z + f.coeffs(i);
  return acc;
}

// Weighted evaluation map: component k is f(l_k) * sqrt(1 - |l_k|^2).
inline Eigen::VectorXcd phi_lambda(const HardyPoly& f, const disc::DiscSequence& seq) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(seq.size()));
  for (std::size_t k = 0; k < seq.size(); ++k)
    out(static_cast<Eigen::Index>(k)) =
        eval_poly(f, seq.value(k)) * disc::radial_weight(seq.point(k));
  return out;
}

// Normalized reproducing kernel at l, truncated at `degree`:
// coefficients sqrt(1 - |l|^2) * conj(l)^n.
inline HardyPoly normalized_kernel(std::complex<double> lambda, std::size_t degree) {
  if (!(std::abs(lambda) < 1.0))
    throw DomainError("normalized_kernel: point must lie in the open unit disc");
  const double w = std::sqrt(1.0 - std::norm(lambda));
  Eigen::VectorXcd c(static_cast<Eigen::Index>(degree) + 1);
  std::complex<double> p = 1.0;
  const std::complex<double> cl = std::conj(lambda);
  for (std::size_t n = 0; n <= degree; ++n) {
    c(static_cast<Eigen::Index>(n)) = w * p;
    p *= cl;
  }
  return HardyPoly(std::move(c));
}

// Gram matrix of the normalized kernels at the sequence points:
// G(j, k) = w_j w_k / (1 - l_j conj(l_k)), unit diagonal, Hermitian by
// construction. Real nonnegative pairs use the gap form of the denominator,
// 1 - (1-gj)(1-gk) = gj + gk - gj*gk.
struct KernelGram {
  Eigen::MatrixXcd matrix;
  disc::DiscSequence sequence;
};

inline KernelGram kernel_gram(const disc::DiscSequence& seq, double rank_tol = 1e-12) {
  if (seq.empty()) throw DomainError("kernel_gram: empty sequence");
  const auto K = static_cast<Eigen::Index>(seq.size());
  Eigen::MatrixXcd G(K, K);
  for (Eigen::Index j = 0; j < K; ++j) {
    G(j, j) = 1.0;
    for (Eigen::Index k = j + 1; k < K; ++k) {
      const auto& pj = seq.point(static_cast<std::size_t>(j));
      const auto& pk = seq.point(static_cast<std::size_t>(k));
      const double wj = disc::radial_weight(pj);
      const double wk = disc::radial_weight(pk);
      std::complex<double> denom;
      if (pj.real_nonneg && pk.real_nonneg)
        denom = pj.gap + pk.gap - pj.gap * pk.gap;
      else
        denom = 1.0 - pj.value * std::conj(pk.value);
      G(j, k) = wj * wk / denom;
      G(k, j) = std::conj(G(j, k));
    }
  }
  const Eigen::VectorXd sv = linalg::singular_values(G);
  if (linalg::numerical_rank(sv, rank_tol) < K)
    throw SingularGramError("kernel_gram: Gram matrix is numerically rank-deficient");
  return {std::move(G), seq};
}

// Largest admissible automatic degree; beyond this the coefficient vector
// would not fit in memory anyway and the caller must truncate explicitly.
inline constexpr std::size_t kMaxAutoDegree = 1u << 21;

inline std::size_t auto_degree(const disc::DiscSequence& seq, double tail_tol) {
  const double min_gap = seq.min_gap();
  if (min_gap >= 1.0) return 0;  // all points at the origin
  const double d = std::ceil(std::log(tail_tol) / std::log1p(-min_gap));
  if (!(d >= 0.0) || d > static_cast<double>(kMaxAutoDegree))
    throw TailError("interpolate: requested tail tolerance needs degree beyond " +
                    std::to_string(kMaxAutoDegree) + "; pass an explicit degree");
  return static_cast<std::size_t>(d);
}

// Minimal-norm interpolant through the kernel Gram system: solve G a =
// target and synthesize f = sum_j a_j w_j k_{l_j}, truncated at `degree`
// (automatic from the tail tolerance when omitted). The weighted evaluation
// phi_lambda(f, seq) then reproduces `target` up to solve and tail error.
inline HardyPoly interpolate(const disc::DiscSequence& seq, const Eigen::VectorXcd& target,
                             std::optional<std::size_t> degree = {}, double tail_tol = 1e-12) {
  if (seq.empty()) throw DomainError("interpolate: empty sequence");
  if (static_cast<std::size_t>(target.size()) != seq.size())
    throw DimensionError("interpolate: target length must match the sequence length");

  const double min_gap = seq.min_gap();
  std::size_t D;
  if (degree) {
    D = *degree;
    const double tail = min_gap >= 1.0
                            ? 0.0
                            : std::exp(static_cast<double>(D) * std::log1p(-min_gap));
    if (min_gap < 1.0 && tail >= tail_tol)
      throw TailError("interpolate: degree too small for the requested tail tolerance");
  } else {
    D = auto_degree(seq, tail_tol);
  }

  const KernelGram gram = kernel_gram(seq);
  const Eigen::VectorXcd a = linalg::hermitian_solve(gram.matrix, target, 1e-12);

  const auto K = static_cast<Eigen::Index>(seq.size());
  Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(D) + 1);
  Eigen::VectorXcd p = Eigen::VectorXcd::Ones(K);
  Eigen::VectorXcd base(K);
  for (Eigen::Index j = 0; j < K; ++j)
    base(j) = std::conj(seq.value(static_cast<std::size_t>(j)));
  for (std::size_t n = 0; n <= D; ++n) {
    std::complex<double> c = 0.0;
    for (Eigen::Index j = 0; j < K; ++j)
      c += a(j) * disc::radial_weight(seq.point(static_cast<std::size_t>(j))) * p(j);
    coeffs(static_cast<Eigen::Index>(n)) = c;
    p.array() *= base.array();
  }
  return HardyPoly(std::move(coeffs));
}

}  // namespace orbitframe::hardy
