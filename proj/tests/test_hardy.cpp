#include <doctest.h>

#include <cmath>
#include <complex>

#include "orbitframe/hardy.hpp"
#include "orbitframe/rng.hpp"

using namespace orbitframe;
using disc::DiscSequence;
using hardy::HardyPoly;
using std::complex;

namespace {

HardyPoly random_poly(Rng& rng, std::size_t degree) {
  Eigen::VectorXcd c(static_cast<Eigen::Index>(degree) + 1);
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = rng.uniform_complex(1.0);
  return HardyPoly(std::move(c));
}

}  // namespace

TEST_CASE("hardy inner product") {
  for (std::size_t n = 0; n < 6; ++n)
    for (std::size_t m = 0; m < 6; ++m) {
      const auto v = hardy::hardy_inner(HardyPoly::monomial(n), HardyPoly::monomial(m));
      CHECK(v == complex<double>(n == m ? 1.0 : 0.0));
    }

  Eigen::VectorXcd a(2), b(2);
  a << 1.0, 2.0;
  b << 3.0, 4.0;
  CHECK(hardy::hardy_inner(HardyPoly(a), HardyPoly(b)) == complex<double>(11.0));

  // <f, f> is the squared coefficient norm, with zero imaginary part
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto f = random_poly(rng, 12);
    const auto self = hardy::hardy_inner(f, f);
    CHECK(self.imag() == 0.0);
    double manual = 0.0;
    for (Eigen::Index i = 0; i < f.coeffs.size(); ++i) manual += std::norm(f.coeffs(i));
    CHECK(self.real() == manual);
    CHECK(self.real() >= 0.0);
  }

  CHECK_THROWS_AS(HardyPoly(Eigen::VectorXcd()), DomainError);
}

TEST_CASE("polynomial evaluation") {
  CHECK(hardy::eval_poly(HardyPoly::constant(1.0), {0.3, -0.7}) == complex<double>(1.0));
  for (std::size_t n = 1; n < 5; ++n)
    CHECK(hardy::eval_poly(HardyPoly::monomial(n), 0.0) == complex<double>(0.0));
  Eigen::VectorXcd c(3);
  c << 1.0, 1.0, 1.0;
  CHECK(hardy::eval_poly(HardyPoly(c), 0.5) == complex<double>(1.75));
}

TEST_CASE("weighted evaluation map") {
  const auto seq = DiscSequence::from_values({0.0, 0.5, {0.1, 0.2}});
  const auto ones = hardy::phi_lambda(HardyPoly::constant(1.0), seq);
  for (std::size_t k = 0; k < seq.size(); ++k)
    CHECK(ones(static_cast<Eigen::Index>(k)) ==
          complex<double>(disc::radial_weight(seq.point(k))));

  const auto z_at_zero = hardy::phi_lambda(HardyPoly::monomial(1), DiscSequence::from_values({0.0}));
  CHECK(z_at_zero(0) == complex<double>(0.0));

  Eigen::VectorXcd c(2);
  c << 1.0, 1.0;
  const auto v = hardy::phi_lambda(HardyPoly(c), DiscSequence::from_values({0.5}));
  CHECK(v(0).real() == doctest::Approx(1.5 * std::sqrt(0.75)).epsilon(1e-15));
}

TEST_CASE("kernel gram matrix") {
  const auto one = hardy::kernel_gram(DiscSequence::from_values({0.0}));
  CHECK(one.matrix.rows() == 1);
  CHECK(one.matrix(0, 0) == complex<double>(1.0));

  const auto g = hardy::kernel_gram(DiscSequence::from_values({0.0, 0.5}));
  CHECK(g.matrix(0, 0) == complex<double>(1.0));
  CHECK(g.matrix(1, 1) == complex<double>(1.0));
  CHECK(g.matrix(0, 1).real() == doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));
  CHECK(g.matrix(0, 1).imag() == 0.0);

  // Hermitian bit for bit, positive definite for separated points
  const auto seq = DiscSequence::from_values({0.1, {0.3, 0.4}, -0.5, {0.0, 0.8}});
  const auto gram = hardy::kernel_gram(seq);
  for (Eigen::Index j = 0; j < gram.matrix.rows(); ++j) {
    CHECK(gram.matrix(j, j) == complex<double>(1.0));
    for (Eigen::Index k = 0; k < gram.matrix.cols(); ++k)
      CHECK(gram.matrix(j, k) == std::conj(gram.matrix(k, j)));
  }
  const Eigen::VectorXd ev =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(gram.matrix).eigenvalues();
  CHECK(ev.minCoeff() > 0.0);

  // two points closer than the kernel resolution make the Gram numerically
  // singular even though they pass the separation tolerance
  const auto tight = DiscSequence::from_values({0.5, 0.5 + 2e-14});
  CHECK_THROWS_AS(hardy::kernel_gram(tight), SingularGramError);
}

TEST_CASE("truncated kernels reproduce point evaluation") {
  Rng rng(11);
  for (int t = 0; t < 25; ++t) {
    const std::size_t deg = static_cast<std::size_t>(rng.uniform_int(0, 10));
    const auto f = random_poly(rng, deg);
    const double r = rng.uniform(0.0, 0.9);
    const auto lambda = std::polar(r, rng.uniform(0.0, 6.283185307179586));
    const auto kernel = hardy::normalized_kernel(lambda, deg + 200);
    const double w = std::sqrt(1.0 - std::norm(lambda));
    const auto lhs = hardy::hardy_inner(f, kernel) / w;
    const auto rhs = hardy::eval_poly(f, lambda);
    CHECK(std::abs(lhs - rhs) <= 1e-10);
  }
  CHECK_THROWS_AS(hardy::normalized_kernel({1.0, 0.0}, 5), DomainError);
}

TEST_CASE("gram entries agree with truncated kernel inner products") {
  // degree picked so the geometric tail (l_j conj(l_k))^{D+1} is below 1e-12
  const auto real_seq = DiscSequence::from_values({0.1, 0.5, 0.9, 0.99});
  const auto complex_seq = DiscSequence::from_values({{0.3, 0.4}, {-0.2, 0.6}, 0.7});
  for (const auto& seq : {real_seq, complex_seq}) {
    const auto gram = hardy::kernel_gram(seq);
    const std::size_t degree = 3000;
    for (std::size_t j = 0; j < seq.size(); ++j)
      for (std::size_t k = 0; k < seq.size(); ++k) {
        const auto kj = hardy::normalized_kernel(seq.value(j), degree);
        const auto kk = hardy::normalized_kernel(seq.value(k), degree);
        const auto inner = hardy::hardy_inner(kk, kj);
        CHECK(std::abs(gram.matrix(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) -
                       inner) <= 1e-10);
      }
  }
}

TEST_CASE("interpolation through the kernel gram system") {
  SUBCASE("single point at the origin gives the constant") {
    const auto seq = DiscSequence::from_values({0.0});
    Eigen::VectorXcd target(1);
    target << 1.0;
    for (std::size_t deg : {0u, 3u, 17u}) {
      const auto f = hardy::interpolate(seq, target, deg);
      CHECK(f.coeffs(0) == complex<double>(1.0));
      for (Eigen::Index i = 1; i < f.coeffs.size(); ++i)
        CHECK(f.coeffs(i) == complex<double>(0.0));
    }
  }

  SUBCASE("round trip against a known polynomial") {
    Rng rng(23);
    const auto seq = disc::generate_geometric(2.0, 6);
    const auto g = random_poly(rng, 8);
    const Eigen::VectorXcd target = hardy::phi_lambda(g, seq);
    const auto f = hardy::interpolate(seq, target);
    const double resid = (hardy::phi_lambda(f, seq) - target).norm();
    CHECK(resid <= 1e-8 * target.norm());
  }

  SUBCASE("canonical unit target on a dyadic sequence") {
    const auto seq = disc::generate_geometric(2.0, 8);
    Eigen::VectorXcd target = Eigen::VectorXcd::Zero(8);
    target(2) = 1.0;
    const auto f = hardy::interpolate(seq, target);
    CHECK((hardy::phi_lambda(f, seq) - target).norm() <= 1e-8);
    CHECK(std::isfinite(f.coeffs.norm()));
  }

  SUBCASE("round trip across separated test sequences") {
    Rng rng(31);
    const DiscSequence sequences[] = {
        disc::generate_geometric(2.0, 12),
        disc::generate_geometric(1.5, 8),
        DiscSequence::from_values({{0.0, 0.3}, -0.5, {0.2, 0.4}, 0.7, {-0.3, -0.6}}),
    };
    for (const auto& seq : sequences) {
      for (int t = 0; t < 10; ++t) {
        Eigen::VectorXcd target(static_cast<Eigen::Index>(seq.size()));
        for (Eigen::Index i = 0; i < target.size(); ++i) target(i) = rng.uniform_complex(1.0);
        const auto f = hardy::interpolate(seq, target);
        CHECK((hardy::phi_lambda(f, seq) - target).norm() <= 1e-8 * target.norm());
      }
    }
  }

  SUBCASE("error paths") {
    const auto seq = disc::generate_geometric(2.0, 10);
    Eigen::VectorXcd target = Eigen::VectorXcd::Ones(10);
    CHECK_THROWS_AS(hardy::interpolate(seq, target, 10), TailError);
    Eigen::VectorXcd wrong = Eigen::VectorXcd::Ones(9);
    CHECK_THROWS_AS(hardy::interpolate(seq, wrong), DimensionError);
    const auto tight = DiscSequence::from_values({0.5, 0.5 + 2e-14});
    Eigen::VectorXcd t2 = Eigen::VectorXcd::Ones(2);
    CHECK_THROWS_AS(hardy::interpolate(tight, t2), SingularGramError);
    // automatic degree refuses truncations it cannot represent
    const auto extreme = disc::generate_geometric(10.0, 12);
    Eigen::VectorXcd t3 = Eigen::VectorXcd::Ones(12);
    CHECK_THROWS_AS(hardy::interpolate(extreme, t3), TailError);
  }
}

TEST_CASE("hermitian solve falls back to a pseudo-solve") {
  // rank-one PSD matrix: Cholesky reports a numerical issue, the SVD path
  // still returns the minimum-norm solution
  Eigen::VectorXcd v(3);
  v << 1.0, std::complex<double>(0.0, 2.0), -1.0;
  const Eigen::MatrixXcd g = v * v.adjoint();
  const Eigen::VectorXcd rhs = g * v;
  const Eigen::VectorXcd x = linalg::hermitian_solve(g, rhs, 1e-12);
  CHECK((g * x - rhs).norm() <= 1e-10 * rhs.norm());

  // well-conditioned path goes through Cholesky and is accurate
  Eigen::MatrixXcd pd = Eigen::MatrixXcd::Identity(3, 3) + 0.1 * g;
  const Eigen::VectorXcd y = linalg::hermitian_solve(pd, rhs, 1e-12);
  CHECK((pd * y - rhs).norm() <= 1e-12 * rhs.norm());
}

TEST_CASE("kernel basis edge cases") {
  // zero matrix: everything is kernel
  const Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(2, 4);
  CHECK(linalg::kernel_basis(z, 1e-10).cols() == 4);
  // full-rank square matrix: nothing is
  CHECK(linalg::kernel_basis(Eigen::MatrixXcd::Identity(3, 3), 1e-10).cols() == 0);
}

TEST_CASE("restricted evaluation norm stabilizes as the degree grows") {
  const auto seq = disc::generate_geometric(2.0, 5);
  const auto sigma_max = [&](std::size_t degree) {
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(seq.size()),
                       static_cast<Eigen::Index>(degree) + 1);
    for (std::size_t k = 0; k < seq.size(); ++k) {
      complex<double> p = disc::radial_weight(seq.point(k));
      for (std::size_t n = 0; n <= degree; ++n) {
        m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n)) = p;
        p *= seq.value(k);
      }
    }
    return linalg::singular_values(m)(0);
  };
  const double s200 = sigma_max(200);
  const double s400 = sigma_max(400);
  CHECK(s400 >= s200);
  CHECK((s400 - s200) / s200 < 0.01);
}
