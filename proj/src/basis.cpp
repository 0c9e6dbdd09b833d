#include "gcs/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gcs/errors.hpp"

namespace gcs {

PhysicsConfig::PhysicsConfig(double b0, double k) : b0_(b0), k_(k), omega_(2.0 * b0) {
  if (!std::isfinite(b0) || !(b0 > 0.0)) throw Error(ErrorKind::config, "b0 must be positive and finite");
  if (!std::isfinite(k)) throw Error(ErrorKind::config, "k must be finite");
}

double PhysicsConfig::z_of_x(double x) const { return std::sqrt(omega_ / 2.0) * (x + 2.0 * k_ / omega_); }

double PhysicsConfig::x_of_z(double z) const { return std::sqrt(2.0 / omega_) * z - 2.0 * k_ / omega_; }

double PhysicsConfig::dx_dz() const { return std::sqrt(2.0 / omega_); }

double PhysicsConfig::amplitude_scale() const { return std::pow(omega_ / 2.0, 0.25); }

SpinorBasisState SpinorBasisState::make(int n, const PhysicsConfig& cfg) {
  if (n < 0) throw Error(ErrorKind::domain, "Landau index must be non-negative");
  SpinorBasisState s{};
  s.n = n;
  if (n > 0) s.upper_index = n - 1;
  s.lower_index = n;
  s.component_weight = spinor_weight(n);
  s.energy = std::sqrt(n * cfg.omega());
  return s;
}

double lower_oscillator_energy(const PhysicsConfig& cfg, int n) { return n * cfg.omega(); }

double upper_oscillator_energy(const PhysicsConfig& cfg, int n) { return (n + 1) * cfg.omega(); }

namespace {

void check_capacity(int n_max) {
  if (n_max < 0) throw Error(ErrorKind::domain, "oscillator index must be non-negative");
  if (n_max > kMaxBasis) {
    throw Error(ErrorKind::capacity,
                "oscillator index " + std::to_string(n_max) + " exceeds cap " + std::to_string(kMaxBasis));
  }
}

}  // namespace

void ho_eigenfunctions(int n_max, double z, std::span<double> out) {
  check_capacity(n_max);
  // Recurrence on a rescaled sequence; exp(log_scale) carries the Gaussian so
  // that large |z| does not underflow phi_0 before the polynomial growth.
  constexpr double kBig = 1e150;
  const double kLogBig = std::log(kBig);
  double log_scale = -0.5 * z * z - 0.25 * std::log(std::numbers::pi);
  double prev = 0.0;
  double cur = 1.0;
  out[0] = std::exp(log_scale);
  for (int n = 0; n < n_max; ++n) {
    const double next = z * std::sqrt(2.0 / (n + 1)) * cur - std::sqrt(static_cast<double>(n) / (n + 1)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kBig) {
      cur /= kBig;
      prev /= kBig;
      log_scale += kLogBig;
    }
    out[n + 1] = cur * std::exp(log_scale);
  }
}

std::vector<double> ho_eigenfunctions(int n_max, double z) {
  check_capacity(n_max);
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  ho_eigenfunctions(n_max, z, out);
  return out;
}

double ho_eigenfunction(int n, double z) { return ho_eigenfunctions(n, z).back(); }

double landau_eigenfunction(const PhysicsConfig& cfg, int n, double x) {
  return cfg.amplitude_scale() * ho_eigenfunction(n, cfg.z_of_x(x));
}

double ladder_matrix_element(LadderOp op, int m, int n) {
  if (m < 0 || n < 0) return 0.0;
  switch (op) {
    case LadderOp::lower: return m == n - 1 ? std::sqrt(static_cast<double>(n)) : 0.0;
    case LadderOp::raise: return m == n + 1 ? std::sqrt(n + 1.0) : 0.0;
    case LadderOp::position:
      if (m == n - 1) return std::sqrt(n / 2.0);
      if (m == n + 1) return std::sqrt((n + 1) / 2.0);
      return 0.0;
    case LadderOp::momentum_imag:
      if (m == n + 1) return std::sqrt((n + 1) / 2.0);
      if (m == n - 1) return -std::sqrt(n / 2.0);
      return 0.0;
  }
  return 0.0;
}

double squared_matrix_element(LadderOp op, int m, int n) {
  if (m < 0 || n < 0) return 0.0;
  // i c_mk * i c_kn = -c_mk c_kn for the momentum operator
  const double sign = op == LadderOp::momentum_imag ? -1.0 : 1.0;
  double sum = 0.0;
  for (int k : {n - 1, n + 1}) {
    if (k < 0) continue;
    sum += ladder_matrix_element(op, m, k) * ladder_matrix_element(op, k, n);
  }
  return sign * sum;
}

double rho_matrix_element(std::span<const double> phi, double amplitude_scale, int n, int m) {
  const double upper = (n >= 1 && m >= 1) ? phi[n - 1] * phi[m - 1] : 0.0;
  const double lower = phi[n] * phi[m];
  return amplitude_scale * amplitude_scale * (upper + lower);
}

double rho_matrix_element(const PhysicsConfig& cfg, int n, int m, double x) {
  if (n < 0 || m < 0) throw Error(ErrorKind::domain, "rho_matrix_element: negative index");
  const auto phi = ho_eigenfunctions(std::max(n, m), cfg.z_of_x(x));
  return rho_matrix_element(phi, cfg.amplitude_scale(), n, m);
}

double quadrature_half_width(int order_hint) {
  return std::sqrt(4.0 * std::max(order_hint, 0) + 8.0) + 8.0;
}

namespace {

constexpr int kInitialIntervals = 4096;
constexpr int kMaxIntervals = 1 << 22;
constexpr double kAgreement = 1e-11;

double checked(double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::numerical, "quadrature: non-finite integrand value");
  return v;
}

}  // namespace

QuadratureResult quadrature_detailed(const std::function<double(double)>& integrand, int order_hint) {
  const double half = quadrature_half_width(order_hint);
  int intervals = kInitialIntervals;
  double h = 2.0 * half / intervals;
  double sum = 0.5 * (checked(integrand(-half)) + checked(integrand(half)));
  for (int i = 1; i < intervals; ++i) sum += checked(integrand(-half + i * h));
  double estimate = h * sum;

  while (intervals < kMaxIntervals) {
    // Refinement only needs the new midpoints.
    double mid = 0.0;
    for (int i = 0; i < intervals; ++i) mid += checked(integrand(-half + (i + 0.5) * h));
    sum += mid;
    intervals *= 2;
    h *= 0.5;
    const double refined = h * sum;
    if (std::abs(refined - estimate) <= kAgreement) return {refined, intervals};
    estimate = refined;
  }
  throw Error(ErrorKind::numerical, "quadrature: no agreement before the interval cap");
}

double quadrature(const std::function<double(double)>& integrand, int order_hint) {
  return quadrature_detailed(integrand, order_hint).value;
}

double orthonormality_deviation(int n_max) {
  check_capacity(n_max);
  const double half = quadrature_half_width(n_max);
  const auto size = static_cast<std::size_t>(n_max) + 1;

  auto gram = [&](int intervals) {
    const double h = 2.0 * half / intervals;
    std::vector<double> g(size * size, 0.0);
    std::vector<double> phi(size);
    for (int i = 0; i <= intervals; ++i) {
      const double w = (i == 0 || i == intervals) ? 0.5 * h : h;
      ho_eigenfunctions(n_max, -half + i * h, phi);
      for (std::size_t m = 0; m < size; ++m) {
        const double wm = w * phi[m];
        for (std::size_t n = m; n < size; ++n) g[m * size + n] += wm * phi[n];
      }
    }
    return g;
  };

  auto previous = gram(kInitialIntervals);
  for (int intervals = 2 * kInitialIntervals; intervals <= kMaxIntervals; intervals *= 2) {
    auto current = gram(intervals);
    double change = 0.0;
    double worst = 0.0;
    for (std::size_t m = 0; m < size; ++m) {
      for (std::size_t n = m; n < size; ++n) {
        const double v = current[m * size + n];
        change = std::max(change, std::abs(v - previous[m * size + n]));
        worst = std::max(worst, std::abs(v - (m == n ? 1.0 : 0.0)));
      }
    }
    if (change <= kAgreement) return worst;
    previous = std::move(current);
  }
  throw Error(ErrorKind::numerical, "orthonormality_deviation: no agreement before the interval cap");
}

}  // namespace gcs
