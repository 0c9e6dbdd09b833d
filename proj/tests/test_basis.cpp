#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "gcs/basis.hpp"
#include "gcs/errors.hpp"

using namespace gcs;

TEST_CASE("oscillator eigenfunction examples") {
  CHECK(ho_eigenfunction(0, 0.0) == doctest::Approx(0.75112554446494248).epsilon(1e-15));
  CHECK(ho_eigenfunction(1, 0.0) == 0.0);

  // frozen from the 50-digit explicit Hermite sum
  CHECK(oracle::oscillator(7, 1.3) == doctest::Approx(0.40609866425190538).epsilon(1e-15));
  CHECK(std::abs(ho_eigenfunction(7, 1.3) - 0.40609866425190538) < 1e-14);
}

TEST_CASE("recurrence matches the explicit Hermite oracle") {
  const double zs[] = {-6.5, -2.0, -0.3, 0.0, 0.9, 3.7, 7.25};
  for (double z : zs) {
    const auto table = ho_eigenfunctions(40, z);
    REQUIRE(table.size() == 41);
    for (int n : {0, 1, 2, 5, 13, 27, 40}) {
      CHECK(std::abs(table[n] - oracle::oscillator(n, z)) < 1e-13);
      CHECK(ho_eigenfunction(n, z) == table[n]);
    }
  }
}

TEST_CASE("eigenfunctions stay finite deep in the Gaussian tail") {
  const auto far = ho_eigenfunctions(kMaxBasis, 45.0);
  for (double v : far) CHECK(std::isfinite(v));
  CHECK(far[0] == 0.0);
  CHECK(far[kMaxBasis] > 0.0);
  CHECK(std::isfinite(ho_eigenfunction(kMaxBasis, 1e3)));
}

TEST_CASE("basis index cap") {
  CHECK_NOTHROW(ho_eigenfunction(kMaxBasis, 0.1));
  try {
    ho_eigenfunction(kMaxBasis + 1, 0.1);
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::capacity);
  }
  CHECK_THROWS_AS(ho_eigenfunctions(kMaxBasis + 1, 0.0), Error);
}

TEST_CASE("ladder matrix elements") {
  CHECK(ladder_matrix_element(LadderOp::lower, 0, 1) == 1.0);
  CHECK(ladder_matrix_element(LadderOp::position, 3, 2) == doctest::Approx(1.2247448713915890).epsilon(1e-15));
  CHECK(ladder_matrix_element(LadderOp::lower, 2, 1) == 0.0);
  CHECK(ladder_matrix_element(LadderOp::raise, 4, 3) == doctest::Approx(2.0));
  CHECK(ladder_matrix_element(LadderOp::momentum_imag, 3, 2) == doctest::Approx(std::sqrt(1.5)));
  CHECK(ladder_matrix_element(LadderOp::momentum_imag, 1, 2) == doctest::Approx(-1.0));

  // <z^2>_n = <p^2>_n = n + 1/2
  for (int n = 0; n < 30; ++n) {
    CHECK(squared_matrix_element(LadderOp::position, n, n) == doctest::Approx(n + 0.5));
    CHECK(squared_matrix_element(LadderOp::momentum_imag, n, n) == doctest::Approx(n + 0.5));
  }
}

TEST_CASE("matrix elements obey the ladder algebra") {
  const auto sum_over = [](auto&& fn, int m, int n) {
    double s = 0;
    for (int j = 0; j <= std::max(m, n) + 2; ++j) s += fn(m, j, n);
    return s;
  };
  for (int m = 0; m < 25; ++m) {
    for (int n = 0; n < 25; ++n) {
      // z and i p are symmetric and antisymmetric respectively
      CHECK(ladder_matrix_element(LadderOp::position, m, n) == ladder_matrix_element(LadderOp::position, n, m));
      CHECK(ladder_matrix_element(LadderOp::momentum_imag, m, n) ==
            -ladder_matrix_element(LadderOp::momentum_imag, n, m));
      CHECK(ladder_matrix_element(LadderOp::raise, m, n) == ladder_matrix_element(LadderOp::lower, n, m));

      // [z, p] = i: with p = i c, (z c - c z)_{mn} = delta_{mn}
      const double comm = sum_over(
          [](int a, int j, int b) {
            return ladder_matrix_element(LadderOp::position, a, j) * ladder_matrix_element(LadderOp::momentum_imag, j, b) -
                   ladder_matrix_element(LadderOp::momentum_imag, a, j) * ladder_matrix_element(LadderOp::position, j, b);
          },
          m, n);
      CHECK(comm == doctest::Approx(m == n ? 1.0 : 0.0).epsilon(1e-14));

      // squared elements compose the tridiagonal ones
      const double zz = sum_over(
          [](int a, int j, int b) {
            return ladder_matrix_element(LadderOp::position, a, j) * ladder_matrix_element(LadderOp::position, j, b);
          },
          m, n);
      CHECK(squared_matrix_element(LadderOp::position, m, n) == doctest::Approx(zz).epsilon(1e-14));
      if (std::abs(m - n) > 2) CHECK(squared_matrix_element(LadderOp::momentum_imag, m, n) == 0.0);
    }
  }
}

TEST_CASE("rho matrix element") {
  const PhysicsConfig cfg(2.0, 1.0);  // omega = 4, z = sqrt(2)(x + 1/2)
  // psi+_0(z=0)^2 with the (omega/2)^{1/2} Jacobian factor; psi-_1(0) = 0
  CHECK(rho_matrix_element(cfg, 1, 1, -0.5) == doctest::Approx(0.79788456080286536).epsilon(1e-14));
  const double lower = landau_eigenfunction(cfg, 0, 0.3);
  CHECK(rho_matrix_element(cfg, 0, 0, 0.3) == doctest::Approx(lower * lower).epsilon(1e-15));
  CHECK(rho_matrix_element(cfg, 2, 5, 0.7) == rho_matrix_element(cfg, 5, 2, 0.7));

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> idx(0, 40);
  std::uniform_real_distribution<double> xs(-6.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    const int n = idx(rng), m = idx(rng);
    const double x = xs(rng);
    CHECK(rho_matrix_element(cfg, n, m, x) == rho_matrix_element(cfg, m, n, x));
    const auto phi = ho_eigenfunctions(40, cfg.z_of_x(x));
    CHECK(rho_matrix_element(phi, cfg.amplitude_scale(), n, m) ==
          doctest::Approx(rho_matrix_element(cfg, n, m, x)).epsilon(1e-14));
  }
}

TEST_CASE("quadrature examples") {
  CHECK(quadrature([](double z) { return std::pow(ho_eigenfunction(0, z), 2); }, 0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(quadrature([](double z) { return ho_eigenfunction(3, z) * ho_eigenfunction(5, z); }, 5)) < 1e-12);
  CHECK(quadrature([](double z) { return z * z * std::pow(ho_eigenfunction(2, z), 2); }, 3) ==
        doctest::Approx(2.5).epsilon(1e-12));

  const auto detailed = quadrature_detailed([](double z) { return std::exp(-z * z); }, 0);
  CHECK(detailed.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(detailed.intervals >= 4096);
  CHECK(quadrature_half_width(0) == doctest::Approx(std::sqrt(8.0) + 8.0));
}

TEST_CASE("quadrature rejects non-finite integrands") {
  try {
    quadrature([](double z) { return z > 1.0 ? std::nan("") : 1.0; }, 0);
    FAIL("expected numerical error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::numerical);
  }
}

TEST_CASE("orthonormality up to n = 60") { CHECK(orthonormality_deviation(60) <= 1e-10); }

TEST_CASE("ladder action pointwise") {
  const double h = 1e-5;
  double worst = 0;
  for (int n = 1; n <= 30; ++n) {
    for (double z = -8.0; z <= 8.0; z += 0.05) {
      const double d = (ho_eigenfunction(n, z + h) - ho_eigenfunction(n, z - h)) / (2 * h);
      const double lhs = (z * ho_eigenfunction(n, z) + d) / std::sqrt(2.0);
      worst = std::max(worst, std::abs(lhs - std::sqrt(n) * ho_eigenfunction(n - 1, z)));
    }
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("energy ladder") {
  for (double b0 : {0.125, 0.5, 2.0, 7.0}) {
    const PhysicsConfig cfg(b0, 1.0);
    CHECK(lower_oscillator_energy(cfg, 0) == 0.0);
    for (int n = 1; n < 100; ++n) {
      CHECK(lower_oscillator_energy(cfg, n) == upper_oscillator_energy(cfg, n - 1));
      CHECK(lower_oscillator_energy(cfg, n) == n * cfg.omega());
    }
  }
}

TEST_CASE("spinor basis states") {
  const PhysicsConfig cfg(2.0, 1.0);
  const auto s0 = SpinorBasisState::make(0, cfg);
  CHECK_FALSE(s0.upper_index.has_value());
  CHECK(s0.energy == 0.0);
  CHECK(s0.component_weight == 1.0);
  const auto s3 = SpinorBasisState::make(3, cfg);
  REQUIRE(s3.upper_index.has_value());
  CHECK(*s3.upper_index == 2);
  CHECK(s3.lower_index == 3);
  CHECK(s3.energy == doctest::Approx(std::sqrt(12.0)));
  CHECK(s3.component_weight * s3.component_weight == doctest::Approx(0.5));
}

TEST_CASE("x-space normalization and coordinate map") {
  for (double b0 : {0.125, 2.0}) {
    const PhysicsConfig cfg(b0, 1.0);
    CHECK(cfg.omega() == 2 * b0);
    CHECK(cfg.x_of_z(cfg.z_of_x(0.37)) == doctest::Approx(0.37));
    CHECK(cfg.z_of_x(-2 * cfg.k() / cfg.omega()) == doctest::Approx(0.0));
    for (int n : {0, 1, 4, 17}) {
      // integrate in z and convert with dx = (dx/dz) dz
      const double norm = quadrature(
          [&](double z) { return std::pow(landau_eigenfunction(cfg, n, cfg.x_of_z(z)), 2) * cfg.dx_dz(); }, n);
      CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("PhysicsConfig validation") {
  for (double bad : {0.0, -1.0, std::nan(""), std::numeric_limits<double>::infinity()}) {
    try {
      PhysicsConfig(bad, 0.0);
      FAIL("expected config error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::config);
    }
  }
  CHECK_THROWS_AS(PhysicsConfig(1.0, std::nan("")), Error);
  CHECK(PhysicsConfig::unit().omega() == 1.0);
}
