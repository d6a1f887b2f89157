#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orbitframe/errors.hpp"

namespace orbitframe::disc {

inline constexpr double kDefaultSeparationTol = 1e-14;

// A point of the open unit disc. `gap` caches 1 - |value| and is the
// authoritative radial coordinate: generator constructors track it exactly,
// so radial quantities (consecutive ratios, tail sums, distances between
// real points) stay meaningful even when |value| itself rounds to 1 in
// double precision.
struct DiscPoint {
  std::complex<double> value;
  double gap;
  bool real_nonneg;
};

// Finite truncation of a sequence in the open unit disc. Invariants checked
// at construction: every modulus strictly below 1 (zero tolerance), points
// pairwise distinct within the separation tolerance.
class DiscSequence {
public:
  DiscSequence() = default;

  static DiscSequence from_values(const std::vector<std::complex<double>>& values,
                                  std::string generator = "explicit",
                                  double separation_tol = kDefaultSeparationTol) {
    std::vector<DiscPoint> pts;
    pts.reserve(values.size());
    for (const auto& v : values) {
      const bool rn = v.imag() == 0.0 && v.real() >= 0.0;
      const double gap = rn ? 1.0 - v.real() : 1.0 - std::abs(v);
      pts.push_back({v, gap, rn});
    }
    return DiscSequence(std::move(pts), std::move(generator), separation_tol);
  }

  // Points 1 - g for explicitly supplied radial gaps g in (0, 1].
  static DiscSequence from_radial_gaps(const std::vector<double>& gaps,
                                       std::string generator = "explicit",
                                       double separation_tol = kDefaultSeparationTol) {
    std::vector<DiscPoint> pts;
    pts.reserve(gaps.size());
    for (double g : gaps) {
      if (!(g > 0.0) || g > 1.0 || !std::isfinite(g))
        throw DomainError("DiscSequence: radial gap must lie in (0, 1]");
      pts.push_back({{1.0 - g, 0.0}, g, true});
    }
    return DiscSequence(std::move(pts), std::move(generator), separation_tol);
  }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const DiscPoint& point(std::size_t i) const { return points_[i]; }
  std::complex<double> value(std::size_t i) const { return points_[i].value; }
  double gap(std::size_t i) const { return points_[i].gap; }
  const std::vector<DiscPoint>& points() const { return points_; }
  const std::string& generator() const { return generator_; }
  double separation_tol() const { return separation_tol_; }

  std::vector<std::complex<double>> values() const {
    std::vector<std::complex<double>> v(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) v[i] = points_[i].value;
    return v;
  }

  bool all_real_nonneg() const {
    return std::all_of(points_.begin(), points_.end(),
                       [](const DiscPoint& p) { return p.real_nonneg; });
  }

  double min_gap() const {
    double g = 1.0;
    for (const auto& p : points_) g = std::min(g, p.gap);
    return g;
  }

  // max |value|, computed from the tracked gaps.
  double max_modulus() const { return empty() ? 0.0 : 1.0 - min_gap(); }

  DiscSequence prefix(std::size_t count) const {
    if (count > points_.size())
      throw IndexError("DiscSequence::prefix: count exceeds sequence length");
    DiscSequence out;
    out.points_.assign(points_.begin(), points_.begin() + static_cast<std::ptrdiff_t>(count));
    out.generator_ = generator_;
    out.separation_tol_ = separation_tol_;
    return out;
  }

private:
  DiscSequence(std::vector<DiscPoint> pts, std::string generator, double separation_tol)
      : points_(std::move(pts)), generator_(std::move(generator)),
        separation_tol_(separation_tol) {
    for (const auto& p : points_) {
      if (!(p.gap > 0.0) || !std::isfinite(std::abs(p.value)))
        throw DomainError("DiscSequence: every value must have modulus strictly below 1");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
      for (std::size_t j = i + 1; j < points_.size(); ++j) {
        const double d = points_[i].real_nonneg && points_[j].real_nonneg
                             ? std::abs(points_[i].gap - points_[j].gap)
                             : std::abs(points_[i].value - points_[j].value);
        if (d <= separation_tol_)
          throw DomainError("DiscSequence: values " + std::to_string(i) + " and " +
                            std::to_string(j) + " are closer than the separation tolerance");
      }
    }
  }

  std::vector<DiscPoint> points_;
  std::string generator_ = "explicit";
  double separation_tol_ = kDefaultSeparationTol;
};

// |a-b| / |1 - conj(a) b|, the pseudo-hyperbolic distance on the disc.
inline double pseudo_hyperbolic_distance(std::complex<double> a, std::complex<double> b) {
  if (!(std::abs(a) < 1.0) || !(std::abs(b) < 1.0))
    throw DomainError("pseudo_hyperbolic_distance: arguments must lie in the open unit disc");
  if (a == b) return 0.0;
  return std::abs(a - b) / std::abs(1.0 - std::conj(a) * b);
}

// Same distance on stored points. For a real nonnegative pair with x = 1-gx,
// y = 1-gy this is |gx-gy| / (gx + gy - gx*gy), which stays accurate when
// the gaps are far below 1 ulp of 1.
inline double point_distance(const DiscPoint& p, const DiscPoint& q) {
  if (p.real_nonneg && q.real_nonneg) {
    const double num = std::abs(p.gap - q.gap);
    const double den = p.gap + q.gap - p.gap * q.gap;
    return num / den;
  }
  if (p.value == q.value) return 0.0;
  return std::abs(p.value - q.value) / std::abs(1.0 - std::conj(p.value) * q.value);
}

// sqrt(1 - |value|^2) = sqrt(gap * (2 - gap)).
inline double radial_weight(const DiscPoint& p) { return std::sqrt(p.gap * (2.0 - p.gap)); }

// Sum of (1 - |value|^2) over the truncation.
inline double tail_sum(const DiscSequence& seq) {
  double s = 0.0;
  for (const auto& p : seq.points()) s += p.gap * (2.0 - p.gap);
  return s;
}

enum class CarlesonVerdict { CarlesonByRatio, LikelyCarleson, FailsNecessaryCondition };

inline const char* to_string(CarlesonVerdict v) {
  switch (v) {
    case CarlesonVerdict::CarlesonByRatio: return "CarlesonByRatio";
    case CarlesonVerdict::LikelyCarleson: return "LikelyCarleson";
    case CarlesonVerdict::FailsNecessaryCondition: return "FailsNecessaryCondition";
  }
  return "?";
}

struct CarlesonReport {
  std::vector<double> per_index_products;  // delta_n, each in [0, 1]
  double infimum = 1.0;                    // min over n
  double ratio_sup = 0.0;                  // sup of (1-|l_{k+1}|)/(1-|l_k|), 0 for singletons
  double tail_sum = 0.0;
  CarlesonVerdict verdict = CarlesonVerdict::LikelyCarleson;
};

inline bool positive_increasing(const DiscSequence& seq) {
  if (!seq.all_real_nonneg()) return false;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (!(seq.gap(k) < 1.0)) return false;  // value must be strictly positive
    if (k + 1 < seq.size() && !(seq.gap(k + 1) < seq.gap(k))) return false;
  }
  return true;
}

// Separation products delta_n = prod_{k != n} d(l_k, l_n) over the given
// truncation, accumulated as sums of logs so that a thousand factors below 1
// cannot underflow. A one-point sequence has the empty product, delta = 1.
//
// The verdict is advisory. Only a user-supplied ratio certificate c < 1 can
// certify the condition (sufficiency of the ratio test); a refuted
// certificate on a positive increasing sequence is a genuine failure by the
// necessity direction; anything else is reported as LikelyCarleson because
// no finite truncation decides the infinite condition.
inline CarlesonReport carleson_products(const DiscSequence& seq,
                                        std::optional<double> ratio_certificate = {}) {
  if (seq.empty()) throw DomainError("carleson_products: empty sequence");
  if (ratio_certificate && !(*ratio_certificate > 0.0 && *ratio_certificate < 1.0))
    throw DomainError("carleson_products: ratio certificate must lie in (0, 1)");

  const std::size_t n = seq.size();
  CarlesonReport rep;
  rep.per_index_products.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double log_sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      log_sum += std::log(point_distance(seq.point(k), seq.point(i)));
    }
    rep.per_index_products[i] = std::exp(log_sum);
  }
  rep.infimum = *std::min_element(rep.per_index_products.begin(), rep.per_index_products.end());

  rep.ratio_sup = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k)
    rep.ratio_sup = std::max(rep.ratio_sup, seq.gap(k + 1) / seq.gap(k));

  rep.tail_sum = tail_sum(seq);

  const bool incr = positive_increasing(seq);
  if (ratio_certificate && rep.ratio_sup <= *ratio_certificate && n >= 2)
    rep.verdict = CarlesonVerdict::CarlesonByRatio;
  else if (ratio_certificate && incr && n >= 2)
    rep.verdict = CarlesonVerdict::FailsNecessaryCondition;
  else if (incr && n >= 2 && rep.ratio_sup >= 1.0)
    rep.verdict = CarlesonVerdict::FailsNecessaryCondition;
  else
    rep.verdict = CarlesonVerdict::LikelyCarleson;
  return rep;
}

// l_k = 1 - alpha^{-k}, k = 1..count. Gaps are generated by repeated
// division, so for alpha = 2 every consecutive ratio is exactly 1/2.
// Generator output is strictly decreasing in the gap by construction, so
// only exact duplicates are rejected (separation tolerance 0); the 1e-14
// euclidean default would otherwise refuse deep truncations whose points
// are euclidean-close yet pseudo-hyperbolically far apart.
inline DiscSequence generate_geometric(double alpha, std::size_t count) {
  if (!(alpha > 1.0)) throw DomainError("generate_geometric: alpha must exceed 1");
  if (count == 0) throw DomainError("generate_geometric: count must be positive");
  std::vector<double> gaps(count);
  double g = 1.0;
  for (std::size_t k = 0; k < count; ++k) {
    g /= alpha;
    gaps[k] = g;
  }
  return DiscSequence::from_radial_gaps(gaps, "geometric", 0.0);
}

struct Subsequence {
  std::vector<std::size_t> indices;  // strictly increasing, 0-based
};
struct DropPrefix {
  std::size_t count = 0;
};
struct RootMap {
  unsigned order = 1;  // l_k -> l_k^{1/order}, real sequences only
};
using SequenceTransform = std::variant<Subsequence, DropPrefix, RootMap>;

// 1 - (1-g)^{1/order}, evaluated through log1p/expm1 so tiny gaps survive.
inline double root_gap(double gap, unsigned order) {
  if (order == 1) return gap;
  return -std::expm1(std::log1p(-gap) / static_cast<double>(order));
}

inline DiscSequence transform_sequence(const DiscSequence& seq, const SequenceTransform& op) {
  if (const auto* sub = std::get_if<Subsequence>(&op)) {
    std::vector<std::complex<double>> vals;
    std::vector<double> gaps;
    std::size_t prev = 0;
    bool first = true;
    for (std::size_t idx : sub->indices) {
      if (idx >= seq.size()) throw IndexError("transform_sequence: index out of range");
      if (!first && idx <= prev)
        throw IndexError("transform_sequence: indices must be strictly increasing");
      prev = idx;
      first = false;
      vals.push_back(seq.value(idx));
      gaps.push_back(seq.gap(idx));
    }
    if (seq.all_real_nonneg())
      return DiscSequence::from_radial_gaps(gaps, seq.generator(), seq.separation_tol());
    return DiscSequence::from_values(vals, seq.generator(), seq.separation_tol());
  }
  if (const auto* drop = std::get_if<DropPrefix>(&op)) {
    if (drop->count >= seq.size())
      throw IndexError("transform_sequence: prefix drop must leave at least one element");
    Subsequence rest;
    for (std::size_t i = drop->count; i < seq.size(); ++i) rest.indices.push_back(i);
    return transform_sequence(seq, rest);
  }
  const auto& root = std::get<RootMap>(op);
  if (root.order == 0) throw DomainError("transform_sequence: root order must be at least 1");
  std::vector<double> gaps;
  gaps.reserve(seq.size());
  for (const auto& p : seq.points()) {
    if (!p.real_nonneg)
      throw DomainError("transform_sequence: RootMap needs real values in [0, 1)");
    gaps.push_back(root_gap(p.gap, root.order));
  }
  return DiscSequence::from_radial_gaps(gaps, seq.generator(), seq.separation_tol());
}

// f(x, y) = sum_{i<order} (x^{1/o} y^{1/o})^i / sum_{j<order} x^{(o-1-j)/o} y^{j/o}.
// Relates the distance of roots to the distance of the original pair:
// d(x^{1/o}, y^{1/o}) = d(x, y) * f(x, y), and f >= 1 on (0,1)^2.
inline double root_lemma_factor(double x, double y, unsigned order) {
  if (!(x > 0.0 && x < 1.0) || !(y > 0.0 && y < 1.0))
    throw DomainError("root_lemma_factor: arguments must lie in (0, 1)");
  if (order == 0) throw DomainError("root_lemma_factor: order must be at least 1");
  if (order == 1) return 1.0;
  const double inv = 1.0 / static_cast<double>(order);
  const double a = std::pow(x, inv);
  const double b = std::pow(y, inv);
  std::vector<double> apow(order), bpow(order);
  apow[0] = bpow[0] = 1.0;
  for (unsigned i = 1; i < order; ++i) {
    apow[i] = apow[i - 1] * a;
    bpow[i] = bpow[i - 1] * b;
  }
  double num = 0.0, den = 0.0;
  for (unsigned i = 0; i < order; ++i) {
    num += apow[i] * bpow[i];
    den += apow[order - 1 - i] * bpow[i];
  }
  return num / den;
}

// Prefix generators used by the frame experiments and the CLI.
struct GeometricGenerator {
  double alpha = 2.0;
};
struct PowerGenerator {
  double exponent = 2.0;  // l_k = 1 - (k+1)^{-exponent}
};
struct ExplicitGenerator {
  std::vector<std::complex<double>> values;
};
using SequenceGenerator = std::variant<GeometricGenerator, PowerGenerator, ExplicitGenerator>;

// The separation tolerance guards explicitly supplied values; generator
// prefixes are strictly monotone by construction and reject exact
// duplicates only.
inline DiscSequence generate_prefix(const SequenceGenerator& gen, std::size_t count,
                                    double separation_tol = kDefaultSeparationTol) {
  if (const auto* g = std::get_if<GeometricGenerator>(&gen))
    return generate_geometric(g->alpha, count);
  if (const auto* p = std::get_if<PowerGenerator>(&gen)) {
    if (!(p->exponent > 0.0)) throw DomainError("power generator: exponent must be positive");
    if (count == 0) throw DomainError("power generator: count must be positive");
    std::vector<double> gaps(count);
    for (std::size_t k = 0; k < count; ++k)
      gaps[k] = std::pow(static_cast<double>(k) + 2.0, -p->exponent);
    return DiscSequence::from_radial_gaps(gaps, "power", 0.0);
  }
  const auto& e = std::get<ExplicitGenerator>(gen);
  if (count > e.values.size())
    throw IndexError("explicit generator: prefix longer than the supplied value list");
  return DiscSequence::from_values(
      std::vector<std::complex<double>>(e.values.begin(),
                                        e.values.begin() + static_cast<std::ptrdiff_t>(count)),
      "explicit", separation_tol);
}

inline std::string generator_name(const SequenceGenerator& gen) {
  if (std::holds_alternative<GeometricGenerator>(gen)) return "geometric";
  if (std::holds_alternative<PowerGenerator>(gen)) return "power";
  return "explicit";
}

}  // namespace orbitframe::disc
