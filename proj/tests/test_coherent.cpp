#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "gcs/coherent.hpp"
#include "gcs/errors.hpp"

using namespace gcs;

namespace {

const LadderFamily kFamilies[] = {LadderFamily::one(), LadderFamily::shifted(), LadderFamily::cubic()};

std::vector<Complex> polar_alphas() {
  std::vector<Complex> out;
  for (double r : {0.5, 1.0, 2.0, 3.0})
    for (double theta : {0.0, std::numbers::pi / 4, std::numbers::pi / 2}) out.push_back(std::polar(r, theta));
  return out;
}

double norm2(const CoeffVector& v) {
  double s = 0;
  for (const auto& a : v) s += std::norm(a);
  return s;
}

}  // namespace

TEST_CASE("ladder coefficients") {
  CHECK(ladder_coefficient(LadderFamily::one(), 1) == doctest::Approx(0.70710678118654752).epsilon(1e-15));
  CHECK(ladder_coefficient(LadderFamily::one(), 0) == 0.0);
  CHECK(ladder_coefficient(LadderFamily::shifted(), 3) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(ladder_coefficient(LadderFamily::cubic(), 2) == 0.0);

  CHECK(f1_consistency(LadderFamily::one(), 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(f1_consistency(LadderFamily::shifted(), 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f1_consistency(LadderFamily::cubic(), 3) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("family zero patterns") {
  CHECK(LadderFamily::one().support_start() == 0);
  CHECK(LadderFamily::shifted().support_start() == 1);
  CHECK(LadderFamily::cubic().support_start() == 2);
  CHECK(LadderFamily::shifted()(1) == 0.0);
  CHECK(LadderFamily::shifted()(2) != 0.0);
  CHECK(LadderFamily::cubic()(2) == 0.0);
  CHECK(LadderFamily::cubic()(3) != 0.0);
  CHECK_THROWS_AS(LadderFamily::one()(0), Error);
  CHECK(parse_family_kind("cubic") == FamilyKind::cubic);
  CHECK_THROWS_AS(parse_family_kind("quartic"), Error);
}

TEST_CASE("custom families outside the three zero patterns are rejected") {
  const auto expect_domain = [](auto&& f) {
    try {
      LadderFamily::custom(f);
      FAIL("expected domain error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::domain);
    }
  };
  expect_domain([](int n) { return n == 3 ? 0.0 : 1.0; });
  expect_domain([](int n) { return n == 2 ? 0.0 : 1.0; });
  expect_domain([](int n) { return n == 40 ? 0.0 : 1.0; });
  expect_domain([](int n) { return n == 7 ? std::nan("") : 1.0; });
  CHECK_NOTHROW(LadderFamily::custom([](int n) { return n <= 2 ? 0.0 : 1.0; }));
  CHECK(LadderFamily::custom([](int n) { return n == 1 ? 0.0 : 2.0; }).support_start() == 1);
}

TEST_CASE("build_coefficients examples") {
  const auto one0 = build_coefficients(LadderFamily::one(), 0.0);
  CHECK(one0.coeffs().at(0) == Complex(1.0, 0.0));
  CHECK(norm2(one0.coeffs()) == 1.0);

  const auto cubic0 = build_coefficients(LadderFamily::cubic(), 0.0);
  CHECK(cubic0.coeffs().at(2) == Complex(1.0, 0.0));
  CHECK(std::abs(cubic0.coeffs()[0]) == 0.0);
  CHECK(std::abs(cubic0.coeffs()[1]) == 0.0);

  const auto shifted0 = build_coefficients(LadderFamily::shifted(), 0.0);
  CHECK(shifted0.coeffs().at(1) == Complex(1.0, 0.0));

  // a_{n+1} = e^{-1/2}/sqrt(n!)
  const auto shifted1 = build_coefficients(LadderFamily::shifted(), 1.0);
  CHECK(shifted1.coeffs()[0] == Complex(0.0, 0.0));
  for (int n = 0; n + 1 <= shifted1.trunc_order(); ++n) {
    const double expected = std::exp(-0.5) / std::sqrt(static_cast<double>(oracle::factorial(n)));
    CHECK(shifted1.coeffs()[n + 1].real() == doctest::Approx(expected).epsilon(1e-14));
    CHECK(shifted1.coeffs()[n + 1].imag() == 0.0);
  }

  // frozen 30-digit value: 1/sqrt(0F2(1,2;1) normalization), see oracle test
  const auto cubic1 = build_coefficients(LadderFamily::cubic(), 1.0);
  CHECK(cubic1.coeffs()[2].real() == doctest::Approx(0.80508131381108688).epsilon(1e-14));
  CHECK(1.0 / std::sqrt(oracle::hyper_0F2(1, 2, 1)) == doctest::Approx(0.80508131381108688).epsilon(1e-15));
}

TEST_CASE("coefficients on the imaginary axis carry exact phases") {
  const auto s = build_coefficients(LadderFamily::one(), Complex(0.0, 2.0));
  for (int n = 0; n <= s.trunc_order(); ++n) {
    const Complex a = s.coeffs()[n];
    if (n % 2 == 0) {
      CHECK(a.imag() == 0.0);
    } else {
      CHECK(a.real() == 0.0);
    }
  }
}

TEST_CASE("apply_annihilation examples") {
  for (const auto& family : kFamilies) {
    const auto out = apply_annihilation(family, CoeffVector{1.0});
    for (const auto& b : out) CHECK(b == Complex(0.0, 0.0));
  }
  const auto e1 = apply_annihilation(LadderFamily::one(), CoeffVector{0.0, 1.0});
  CHECK(e1[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  const auto e3 = apply_annihilation(LadderFamily::one(), CoeffVector{0.0, 0.0, 0.0, 1.0});
  CHECK(e3[2].real() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(e3[0] == Complex(0.0, 0.0));
  CHECK(e3[1] == Complex(0.0, 0.0));
}

TEST_CASE("eigenstate residual on the 36-case grid") {
  int cases = 0;
  for (const auto& family : kFamilies) {
    for (const auto& alpha : polar_alphas()) {
      const auto s = build_coefficients(family, alpha);
      CHECK(eigen_residual(s) <= 1e-8);
      ++cases;
    }
  }
  CHECK(cases == 36);
}

TEST_CASE("ONE-family recursion ratios") {
  const auto family = LadderFamily::one();
  for (const auto& alpha : polar_alphas()) {
    const auto s = build_coefficients(family, alpha);
    const auto& a = s.coeffs();
    CHECK(std::abs(a[1] / a[0] - std::sqrt(2.0) * alpha / family(1)) < 1e-12 * std::abs(alpha));
    for (int n = 1; n + 1 <= std::min(s.trunc_order(), 25); ++n) {
      const Complex expected = alpha / (std::sqrt(n + 1.0) * family(n + 1));
      CHECK(std::abs(a[n + 1] / a[n] - expected) < 1e-12 * std::abs(expected));
    }
  }
}

TEST_CASE("block form of the annihilation operator") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (const auto& family : kFamilies) {
    for (int trial = 0; trial < 10; ++trial) {
      CoeffVector a(21);
      for (auto& v : a) v = {g(rng), g(rng)};
      for (int n = 0; n < family.support_start(); ++n) a[n] = 0.0;

      const auto direct = spinor_components(apply_annihilation(family, a));
      const auto block = apply_annihilation_block(family, spinor_components(a));
      REQUIRE(direct.lower.size() <= block.lower.size());
      for (std::size_t k = 0; k < block.lower.size(); ++k) {
        const Complex dl = k < direct.lower.size() ? direct.lower[k] : 0.0;
        const Complex du = k < direct.upper.size() ? direct.upper[k] : 0.0;
        CHECK(std::abs(block.lower[k] - dl) <= 1e-12 * (1 + std::abs(dl)));
        CHECK(std::abs(block.upper[k] - du) <= 1e-12 * (1 + std::abs(du)));
      }
    }
  }
}

TEST_CASE("support, normalization and tail of built states") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> r(0.0, 6.0), th(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < 60; ++i) {
    const Complex alpha = std::polar(r(rng), th(rng));
    for (const auto& family : kFamilies) {
      const auto s = build_coefficients(family, alpha);
      CHECK(std::abs(norm2(s.coeffs()) - 1.0) <= 1e-12);
      CHECK(s.tail_bound() < 1e-15);
      for (int n = 0; n < family.support_start(); ++n) CHECK(s.coeffs()[n] == Complex(0.0, 0.0));
      CHECK(s.trunc_order() <= kMaxBasis);
    }
  }
}

TEST_CASE("large amplitudes fit under the cap") {
  for (const auto& family : kFamilies) {
    const auto s = build_coefficients(family, 10.0);
    CHECK(s.trunc_order() < kMaxBasis);
    CHECK(eigen_residual(s) <= 1e-8);
  }
  const auto cubic = build_coefficients(LadderFamily::cubic(), 100.0);
  CHECK(std::abs(norm2(cubic.coeffs()) - 1.0) <= 1e-12);
}

TEST_CASE("non-convergence is reported with family and amplitude") {
  const auto slow = LadderFamily::custom([](int n) { return 1.0 / n; }, "inverse");
  try {
    build_coefficients(slow, 3.0);
    FAIL("expected non-convergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::non_convergence);
    const std::string msg = e.what();
    CHECK(msg.find("inverse") != std::string::npos);
    CHECK(msg.find("3") != std::string::npos);
  }
}

TEST_CASE("custom family reproduces the matching built-in") {
  const auto unity = LadderFamily::custom([](int) { return 1.0; });
  const Complex alpha(0.7, -1.1);
  const auto a = build_coefficients(unity, alpha).coeffs();
  const auto b = build_coefficients(LadderFamily::one(), alpha).coeffs();
  REQUIRE(a.size() == b.size());
  for (std::size_t n = 0; n < a.size(); ++n) CHECK(std::abs(a[n] - b[n]) < 1e-15);
}

TEST_CASE("tolerance bounds") {
  for (double tol : {0.0, -1e-12, 1e-7}) {
    try {
      build_coefficients(LadderFamily::one(), 1.0, tol);
      FAIL("expected domain error");
    } catch (const Error&) {
    }
  }
  const auto loose = build_coefficients(LadderFamily::one(), 2.0, 1e-8);
  const auto tight = build_coefficients(LadderFamily::one(), 2.0, 1e-15);
  CHECK(loose.trunc_order() <= tight.trunc_order());
}

TEST_CASE("with_config keeps the coefficients") {
  const auto s = build_coefficients(LadderFamily::shifted(), Complex(1.0, 1.0));
  const auto t = s.with_config(PhysicsConfig(0.125, 1.0));
  CHECK(t.coeffs() == s.coeffs());
  CHECK(t.config().omega() == 0.25);
  CHECK(t.alpha() == s.alpha());
}
