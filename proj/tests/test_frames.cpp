#include <doctest.h>

#include <cmath>
#include <complex>

#include "orbitframe/frames.hpp"
#include "orbitframe/rng.hpp"
#include "orbitframe/testing/oracles.hpp"

using namespace orbitframe;
using disc::DiscSequence;
using frames::DiagonalSystem;
using std::complex;

TEST_CASE("diagonal system construction") {
  const auto seq = disc::generate_geometric(2.0, 8);
  const DiagonalSystem sys(seq);
  CHECK(sys.dimension() == 8);
  CHECK(sys.operator_norm() == doctest::Approx(1.0 - 1.0 / 256.0));

  const DiagonalSystem prefix(seq, 3);
  CHECK(prefix.dimension() == 3);
  CHECK_THROWS_AS(DiagonalSystem(seq, 0), DomainError);
  CHECK_THROWS_AS(DiagonalSystem(seq, 9), DimensionError);
}

TEST_CASE("seed vector h") {
  const auto h0 = frames::build_h(DiagonalSystem(DiscSequence::from_values({0.0})));
  CHECK(h0.size() == 1);
  CHECK(h0(0) == complex<double>(1.0));

  const auto h = frames::build_h(DiagonalSystem(DiscSequence::from_values({0.5, 0.75})));
  CHECK(h(0).real() == doctest::Approx(std::sqrt(0.75)).epsilon(1e-16));
  CHECK(h(1).real() == doctest::Approx(std::sqrt(0.4375)).epsilon(1e-16));

  const auto h30 = frames::build_h(DiagonalSystem(disc::generate_geometric(2.0, 30)));
  CHECK(std::abs(h30.squaredNorm() - 5.0 / 3.0) < 1e-8);
}

TEST_CASE("diagonal application") {
  const auto seq = DiscSequence::from_values({0.5, {0.0, 0.25}, -0.75});
  const DiagonalSystem sys(seq);
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(3);
  e1(0) = 1.0;
  const auto out = frames::apply_diag(sys, e1);
  CHECK(out(0) == seq.value(0));
  CHECK(out(1) == complex<double>(0.0));

  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXcd x(3);
    for (int i = 0; i < 3; ++i) x(i) = rng.uniform_complex(1.0);
    const auto y = frames::apply_diag(sys, x);
    CHECK(y.norm() <= sys.operator_norm() * x.norm() + 1e-15);
    const auto twice = frames::apply_diag(sys, y);
    for (int i = 0; i < 3; ++i) {
      const auto direct = seq.value(static_cast<std::size_t>(i)) *
                          seq.value(static_cast<std::size_t>(i)) * x(i);
      CHECK(std::abs(twice(i) - direct) <= 1e-15 * std::abs(direct) + 1e-18);
    }
  }

  Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(2);
  CHECK_THROWS_AS(frames::apply_diag(sys, bad), DimensionError);
}

TEST_CASE("orbit matrix") {
  SUBCASE("column zero is the seed") {
    const DiagonalSystem sys(disc::generate_geometric(2.0, 6));
    const auto orbit = frames::orbit_matrix(sys, 40);
    CHECK(orbit.entries.col(0) == frames::build_h(sys));
    CHECK(orbit.iterations() == 40);
  }

  SUBCASE("origin gives a single unit column") {
    const DiagonalSystem sys(DiscSequence::from_values({0.0}));
    const auto orbit = frames::orbit_matrix(sys, 5);
    CHECK(orbit.entries(0, 0) == complex<double>(1.0));
    for (int n = 1; n <= 5; ++n) CHECK(orbit.entries(0, n) == complex<double>(0.0));
  }

  SUBCASE("hand case at one half") {
    const DiagonalSystem sys(DiscSequence::from_values({0.5}));
    const auto orbit = frames::orbit_matrix(sys, 2);
    const double w = std::sqrt(0.75);
    CHECK(orbit.entries(0, 0).real() == w);
    CHECK(orbit.entries(0, 1).real() == 0.5 * w);
    CHECK(orbit.entries(0, 2).real() == 0.25 * w);
  }

  SUBCASE("column recurrence is exact, complex eigenvalues included") {
    const auto seq = DiscSequence::from_values({{0.3, 0.4}, -0.5, {0.0, 0.9}, 0.7});
    const DiagonalSystem sys(seq);
    const auto orbit = frames::orbit_matrix(sys, 60);
    for (std::size_t n = 0; n + 1 <= 60; ++n)
      for (std::size_t k = 0; k < 4; ++k) {
        const auto expect = seq.value(k) * orbit.entries(static_cast<Eigen::Index>(k),
                                                         static_cast<Eigen::Index>(n));
        CHECK(orbit.entries(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n + 1)) ==
              expect);
      }
  }
}

TEST_CASE("frame bounds") {
  SUBCASE("origin") {
    const DiagonalSystem sys(DiscSequence::from_values({0.0}));
    const auto b = frames::frame_bounds(frames::orbit_matrix(sys, 7));
    CHECK(b.lower == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("single mode matches the geometric sum oracle") {
    const DiagonalSystem sys(DiscSequence::from_values({0.5}));
    for (std::size_t n : {0u, 2u, 6u, 40u}) {
      const auto b = frames::frame_bounds(frames::orbit_matrix(sys, n));
      const double oracle = static_cast<double>(testing::single_mode_frame_bound(0.5L, n));
      CHECK(b.lower == doctest::Approx(oracle).epsilon(1e-13));
      CHECK(b.upper == doctest::Approx(oracle).epsilon(1e-13));
    }
    const auto far = frames::frame_bounds(frames::orbit_matrix(sys, 200));
    CHECK(far.lower == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("fewer columns than coordinates means lower bound zero") {
    const DiagonalSystem sys(disc::generate_geometric(2.0, 5));
    const auto b = frames::frame_bounds(frames::orbit_matrix(sys, 2));
    CHECK(b.lower == 0.0);
    CHECK(b.upper > 0.0);
  }

  SUBCASE("ordering and the crude upper cap") {
    const DiagonalSystem sys(disc::generate_geometric(2.0, 6));
    const auto orbit = frames::orbit_matrix(sys, 500);
    const auto b = frames::frame_bounds(orbit);
    CHECK(b.lower <= b.upper);
    const double h2 = frames::build_h(sys).squaredNorm();
    CHECK(b.upper <= h2 * 501.0);
  }

  SUBCASE("converged dyadic golden values") {
    // At K = 8 the orbit needs N in the thousands before the smallest
    // singular value settles; once it does, it matches the kernel Gram
    // eigenvalue 1.8931523e-4 frozen from the reference run.
    const DiagonalSystem sys(disc::generate_geometric(2.0, 8));
    const auto b2000 = frames::frame_bounds(frames::orbit_matrix(sys, 2000));
    const auto b4000 = frames::frame_bounds(frames::orbit_matrix(sys, 4000));
    CHECK(b4000.lower == doctest::Approx(1.8931523000e-4).epsilon(1e-6));
    CHECK(std::abs(b4000.lower - b2000.lower) / b4000.lower < 1e-4);
    CHECK(b4000.upper == doctest::Approx(5.4887855896).epsilon(1e-8));
  }
}

TEST_CASE("carleson frame experiment") {
  SUBCASE("rows are sorted and reproduce direct computation") {
    const auto rows = frames::carleson_frame_experiment(disc::GeometricGenerator{2.0},
                                                        {10, 5}, {300, 100});
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].truncation == 5);
    CHECK(rows[0].iterations == 100);
    CHECK(rows[3].truncation == 10);
    CHECK(rows[3].iterations == 300);
    for (const auto& r : rows) {
      const DiagonalSystem sys(disc::generate_geometric(2.0, r.truncation));
      const auto b = frames::frame_bounds(frames::orbit_matrix(sys, r.iterations));
      CHECK(r.lower == b.lower);
      CHECK(r.upper == b.upper);
      const double delta =
          disc::carleson_products(disc::generate_geometric(2.0, r.truncation)).infimum;
      CHECK(r.carleson_infimum == delta);
    }
  }

  SUBCASE("parallel evaluation does not change results") {
    const auto serial = frames::carleson_frame_experiment(disc::GeometricGenerator{2.0},
                                                          {4, 6, 8}, {200, 400}, 1);
    const auto parallel = frames::carleson_frame_experiment(disc::GeometricGenerator{2.0},
                                                            {4, 6, 8}, {200, 400}, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(serial[i].lower == parallel[i].lower);
      CHECK(serial[i].upper == parallel[i].upper);
      CHECK(serial[i].carleson_infimum == parallel[i].carleson_infimum);
    }
  }

  SUBCASE("lower bound is monotone in the iteration count") {
    const auto rows = frames::carleson_frame_experiment(disc::GeometricGenerator{2.0}, {6},
                                                        {100, 200, 400, 800});
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
      CHECK(rows[i + 1].lower >= rows[i].lower - 1e-12 * rows[i].upper);
  }

  SUBCASE("dichotomy between the dyadic and inverse-square families") {
    // Carleson side: the converged lower bound stays above a fixed floor.
    const auto good = frames::carleson_frame_experiment(disc::GeometricGenerator{2.0}, {8},
                                                        {4000});
    CHECK(good[0].lower >= 1.8e-4);
    // Failing side: doubling K at fixed N collapses the lower bound.
    const auto bad = frames::carleson_frame_experiment(disc::PowerGenerator{2.0}, {10, 20},
                                                       {800});
    CHECK(bad[1].lower <= 0.1 * bad[0].lower);
    CHECK(bad[1].lower < bad[0].lower / 10.0);
  }

  SUBCASE("upper bound stabilizes once the orbit has decayed") {
    const auto geo = frames::carleson_frame_experiment(disc::GeometricGenerator{2.0}, {6},
                                                       {1000, 2000});
    CHECK(std::abs(geo[1].upper - geo[0].upper) / geo[0].upper < 0.01);
    const auto pow = frames::carleson_frame_experiment(disc::PowerGenerator{2.0}, {10},
                                                       {800, 1600});
    CHECK(std::abs(pow[1].upper - pow[0].upper) / pow[0].upper < 0.01);
  }

  SUBCASE("single point grid") {
    const auto rows = frames::carleson_frame_experiment(
        disc::ExplicitGenerator{{0.5}}, {1}, {6});
    REQUIRE(rows.size() == 1);
    const double oracle = static_cast<double>(testing::single_mode_frame_bound(0.5L, 6));
    CHECK(rows[0].lower == doctest::Approx(oracle).epsilon(1e-13));
    CHECK(rows[0].upper == doctest::Approx(oracle).epsilon(1e-13));
  }

  CHECK_THROWS_AS(frames::carleson_frame_experiment(disc::GeometricGenerator{2.0}, {}, {10}),
                  DomainError);
}

TEST_CASE("root orbit decomposition") {
  SUBCASE("order one is the plain orbit") {
    const DiagonalSystem sys(disc::generate_geometric(2.0, 6));
    const auto rep = frames::root_orbit_decomposition(sys, 1, 120);
    CHECK(rep.max_deviation == 0.0);
    const auto direct = frames::frame_bounds(frames::orbit_matrix(sys, 120));
    CHECK(rep.bounds.lower == direct.lower);
    CHECK(rep.bounds.upper == direct.upper);
  }

  SUBCASE("interleaving identity holds to roundoff") {
    const DiagonalSystem sys(disc::generate_geometric(2.0, 8));
    const auto rep = frames::root_orbit_decomposition(sys, 2, 200);
    CHECK(rep.checked_columns == 201);
    CHECK(rep.max_deviation <= 1e-12);
  }

  SUBCASE("cube-root orbit of the dyadic sequence still spans") {
    const DiagonalSystem sys(disc::generate_geometric(2.0, 5));
    const auto rep = frames::root_orbit_decomposition(sys, 3, 2000);
    CHECK(rep.bounds.lower > 1e-6);
  }

  SUBCASE("rejects complex eigenvalues") {
    const DiagonalSystem sys(DiscSequence::from_values({{0.3, 0.4}, 0.5}));
    CHECK_THROWS_AS(frames::root_orbit_decomposition(sys, 2, 10), DomainError);
    CHECK_THROWS_AS(frames::root_orbit_decomposition(sys, 0, 10), DomainError);
  }
}

TEST_CASE("root seed vector") {
  const DiagonalSystem quarter(DiscSequence::from_values({0.25}));
  const auto h2 = frames::build_h_root(quarter, 2);
  CHECK(h2(0).real() == doctest::Approx(std::sqrt(0.75)).epsilon(1e-16));

  const DiagonalSystem sys(disc::generate_geometric(2.0, 7));
  CHECK(frames::build_h_root(sys, 1) == frames::build_h(sys));

  // orbit of the root operator from its own natural seed keeps a positive
  // lower bound for the dyadic sequence
  const DiagonalSystem small(disc::generate_geometric(2.0, 5));
  const auto root_seq = disc::transform_sequence(small.sequence(), disc::RootMap{3});
  const DiagonalSystem root_sys(root_seq);
  const auto bounds = frames::frame_bounds(frames::orbit_matrix(root_sys, 2000));
  CHECK(bounds.lower > 1e-6);
}
