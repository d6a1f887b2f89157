#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <thread>
#include <vector>

#include "orbitframe/disc.hpp"
#include "orbitframe/errors.hpp"
#include "orbitframe/linalg.hpp"

namespace orbitframe::frames {

// Truncated diagonal operator T e_k = l_k e_k on C^K, together with the
// eigenvalue sequence that defines it. The operator norm of the truncation
// is max |l_k| < 1.
class DiagonalSystem {
public:
  explicit DiagonalSystem(disc::DiscSequence seq, std::optional<std::size_t> dimension = {}) {
    const std::size_t k = dimension.value_or(seq.size());
    if (k == 0) throw DomainError("DiagonalSystem: dimension must be at least 1");
    if (k > seq.size())
      throw DimensionError("DiagonalSystem: dimension exceeds the sequence length");
    seq_ = seq.prefix(k);
  }

  std::size_t dimension() const { return seq_.size(); }
  const disc::DiscSequence& sequence() const { return seq_; }
  double operator_norm() const { return seq_.max_modulus(); }

private:
  disc::DiscSequence seq_;
};

// h = sum_k sqrt(1 - |l_k|^2) e_k in coordinates.
inline Eigen::VectorXcd build_h(const DiagonalSystem& sys) {
  const auto K = static_cast<Eigen::Index>(sys.dimension());
  Eigen::VectorXcd h(K);
  for (Eigen::Index k = 0; k < K; ++k)
    h(k) = disc::radial_weight(sys.sequence().point(static_cast<std::size_t>(k)));
  return h;
}

inline Eigen::VectorXcd apply_diag(const DiagonalSystem& sys, const Eigen::VectorXcd& x) {
  if (static_cast<std::size_t>(x.size()) != sys.dimension())
    throw DimensionError("apply_diag: vector length must equal the system dimension");
  Eigen::VectorXcd out(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k)
    out(k) = sys.sequence().value(static_cast<std::size_t>(k)) * x(k);
  return out;
}

// K x (N+1) matrix whose column n holds T^n h. Powers are accumulated by
// repeated elementwise multiplication so that column n+1 equals the diagonal
// action applied to column n bit for bit.
struct OrbitMatrix {
  Eigen::MatrixXcd entries;
  std::size_t iterations() const { return static_cast<std::size_t>(entries.cols()) - 1; }
};

namespace detail {
inline Eigen::MatrixXcd orbit_from_seed(const Eigen::VectorXcd& eigenvalues,
                                        const Eigen::VectorXcd& seed, std::size_t iterations) {
  const Eigen::Index K = seed.size();
  Eigen::MatrixXcd M(K, static_cast<Eigen::Index>(iterations) + 1);
  Eigen::VectorXcd col = seed;
  for (std::size_t n = 0; n <= iterations; ++n) {
    M.col(static_cast<Eigen::Index>(n)) = col;
    for (Eigen::Index k = 0; k < K; ++k) col(k) = eigenvalues(k) * col(k);
  }
  return M;
}

inline Eigen::VectorXcd eigenvalue_vector(const disc::DiscSequence& seq) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(seq.size()));
  for (std::size_t k = 0; k < seq.size(); ++k) v(static_cast<Eigen::Index>(k)) = seq.value(k);
  return v;
}
}  // namespace detail

inline OrbitMatrix orbit_matrix(const DiagonalSystem& sys, std::size_t iterations) {
  return {detail::orbit_from_seed(detail::eigenvalue_vector(sys.sequence()), build_h(sys),
                                  iterations)};
}

// Optimal frame bounds of the column family for C^K: extreme squared
// singular values. With fewer than K columns the family cannot span, so the
// lower bound is 0 by convention.
struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

inline FrameBounds frame_bounds(const OrbitMatrix& orbit) {
  const Eigen::VectorXd sv = linalg::singular_values(orbit.entries);
  FrameBounds b;
  b.upper = sv.size() > 0 ? sv(0) * sv(0) : 0.0;
  b.lower = orbit.entries.cols() >= orbit.entries.rows() && sv.size() > 0
                ? sv(sv.size() - 1) * sv(sv.size() - 1)
                : 0.0;
  return b;
}

struct ExperimentRow {
  std::size_t truncation = 0;  // K
  std::size_t iterations = 0;  // N
  double lower = 0.0;
  double upper = 0.0;
  double carleson_infimum = 0.0;  // delta of the K-point prefix
};

// Frame bounds and truncated Carleson infimum over a (K, N) grid. Rows come
// back sorted by (K, N). Cells are independent and may be evaluated by up to
// `max_threads` workers (0 picks the hardware count); each cell writes only
// its own slot, so the result does not depend on scheduling.
inline std::vector<ExperimentRow> carleson_frame_experiment(const disc::SequenceGenerator& gen,
                                                            std::vector<std::size_t> truncations,
                                                            std::vector<std::size_t> iteration_counts,
                                                            unsigned max_threads = 0) {
  if (truncations.empty() || iteration_counts.empty())
    throw DomainError("carleson_frame_experiment: grids must be non-empty");
  std::sort(truncations.begin(), truncations.end());
  truncations.erase(std::unique(truncations.begin(), truncations.end()), truncations.end());
  std::sort(iteration_counts.begin(), iteration_counts.end());
  iteration_counts.erase(std::unique(iteration_counts.begin(), iteration_counts.end()),
                         iteration_counts.end());

  std::vector<ExperimentRow> rows(truncations.size() * iteration_counts.size());
  const auto cell = [&](std::size_t idx) {
    const std::size_t K = truncations[idx / iteration_counts.size()];
    const std::size_t N = iteration_counts[idx % iteration_counts.size()];
    const disc::DiscSequence seq = disc::generate_prefix(gen, K);
    const DiagonalSystem sys(seq);
    const FrameBounds b = frame_bounds(orbit_matrix(sys, N));
    rows[idx] = {K, N, b.lower, b.upper, disc::carleson_products(seq).infimum};
  };

  unsigned workers = max_threads != 0 ? max_threads : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(rows.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) cell(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < rows.size(); i += workers) cell(i);
      });
    for (auto& t : pool) t.join();
  }
  return rows;
}

// Orbit of the order-th root operator T_l e_k = l_k^{1/order} e_k from the
// original seed h, checked column by column against the identity
// T_l^{n*order + r} h = T_l^r (T^n h).
struct RootOrbitReport {
  unsigned order = 1;
  std::size_t checked_columns = 0;
  double max_deviation = 0.0;
  FrameBounds bounds;
};

inline RootOrbitReport root_orbit_decomposition(const DiagonalSystem& sys, unsigned order,
                                                std::size_t iterations) {
  if (order == 0) throw DomainError("root_orbit_decomposition: order must be at least 1");
  const disc::DiscSequence root_seq =
      disc::transform_sequence(sys.sequence(), disc::RootMap{order});
  const Eigen::VectorXcd mu = detail::eigenvalue_vector(root_seq);
  const Eigen::VectorXcd lambda = detail::eigenvalue_vector(sys.sequence());
  const Eigen::VectorXcd h = build_h(sys);

  const Eigen::MatrixXcd root_orbit = detail::orbit_from_seed(mu, h, iterations);
  const std::size_t base_cols = iterations / order;
  const Eigen::MatrixXcd base_orbit = detail::orbit_from_seed(lambda, h, base_cols);

  RootOrbitReport rep;
  rep.order = order;
  for (std::size_t n = 0; n <= base_cols; ++n) {
    Eigen::VectorXcd cur = base_orbit.col(static_cast<Eigen::Index>(n));
    for (unsigned r = 0; r < order; ++r) {
      const std::size_t idx = n * order + r;
      if (idx > iterations) break;
      const double dev =
          (root_orbit.col(static_cast<Eigen::Index>(idx)) - cur).cwiseAbs().maxCoeff();
      rep.max_deviation = std::max(rep.max_deviation, dev);
      ++rep.checked_columns;
      for (Eigen::Index k = 0; k < cur.size(); ++k) cur(k) = mu(k) * cur(k);
    }
  }
  rep.bounds = frame_bounds(OrbitMatrix{root_orbit});
  return rep;
}

// h_order = sum_k sqrt(1 - l_k^{2/order}) e_k, the natural seed for the
// root operator. Coincides with build_h of the root-mapped system.
inline Eigen::VectorXcd build_h_root(const DiagonalSystem& sys, unsigned order) {
  if (order == 0) throw DomainError("build_h_root: order must be at least 1");
  const disc::DiscSequence root_seq =
      disc::transform_sequence(sys.sequence(), disc::RootMap{order});
  return build_h(DiagonalSystem(root_seq));
}

}  // namespace orbitframe::frames
