#include "gcs/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gcs/errors.hpp"
#include "gcs/specfun.hpp"

namespace gcs {

std::string_view to_string(Observable obs) {
  switch (obs) {
    case Observable::z: return "z";
    case Observable::z2: return "z2";
    case Observable::p: return "p";
    case Observable::p2: return "p2";
    case Observable::energy: return "H";
  }
  return "unknown";
}

namespace {

/// <phi_m|S|phi_n> as a complex number (p carries a factor i).
Complex oscillator_element(Observable obs, int m, int n) {
  switch (obs) {
    case Observable::z: return ladder_matrix_element(LadderOp::position, m, n);
    case Observable::z2: return squared_matrix_element(LadderOp::position, m, n);
    case Observable::p: return {0.0, ladder_matrix_element(LadderOp::momentum_imag, m, n)};
    case Observable::p2: return squared_matrix_element(LadderOp::momentum_imag, m, n);
    case Observable::energy: break;
  }
  throw Error(ErrorKind::domain, "oscillator_element: energy is diagonal in the spinor basis");
}

/// <Psi_m|S|Psi_n> = w_m w_n (<phi_{m-1}|S|phi_{n-1}> + <phi_m|S|phi_n>), upper
/// term absent when either index is 0.
Complex spinor_element(Observable obs, int m, int n) {
  Complex sum = oscillator_element(obs, m, n);
  if (m >= 1 && n >= 1) sum += oscillator_element(obs, m - 1, n - 1);
  return spinor_weight(m) * spinor_weight(n) * sum;
}

double contract_banded(const CoeffVector& a, Observable obs) {
  const int size = static_cast<int>(a.size());
  Complex total{0.0, 0.0};
  for (int n = 0; n < size; ++n) {
    if (a[n] == Complex{0.0, 0.0}) continue;
    for (int m = std::max(0, n - 2); m <= std::min(size - 1, n + 2); ++m) {
      const Complex element = spinor_element(obs, m, n);
      if (element == Complex{0.0, 0.0}) continue;
      total += std::conj(a[m]) * a[n] * element;
    }
  }
  return total.real();
}

// ln of r^{2n} with 0^0 = 1.
double log_r2n(double r, int n) { return log_power(r, 2 * n); }

double lg(double x) { return log_gamma(x); }

double closed_one(Complex alpha, Observable obs, const PhysicsConfig& cfg, SeriesVariant variant) {
  const double r = std::abs(alpha);
  const double er2 = std::exp(r * r);
  const double re = alpha.real();
  const double im = alpha.imag();
  const double d = re * re - im * im;
  const bool ref = variant == SeriesVariant::reference;
  switch (obs) {
    case Observable::z:
    case Observable::p: {
      // sum_{n>=1} r^{2n} / (G(n) G(n+2)), square root on the Gamma product in the rederived form
      const double s = sum_series(
          [&](int n) {
            const double lgs = lg(n) + lg(n + 2.0);
            return std::exp(log_r2n(r, n) - (ref ? lgs : 0.5 * lgs));
          },
          1);
      const double comp = obs == Observable::z ? re : im;
      return std::sqrt(2.0) * comp / (2.0 * er2 - 1.0) * (er2 + s);
    }
    case Observable::z2:
    case Observable::p2: {
      const double s = sum_series(
          [&](int n) {
            const double lgs = lg(n) + lg(n + 3.0);
            return std::sqrt(n + 1.0) * std::exp(log_r2n(r, n) - (ref ? lgs : 0.5 * lgs));
          },
          1);
      const double sgn = obs == Observable::z2 ? 1.0 : -1.0;
      return (1.0 + 4.0 * r * r * er2 + sgn * 2.0 * d * (er2 + s)) / (4.0 * er2 - 2.0);
    }
    case Observable::energy: {
      const double s = sum_series(
          [&](int n) { return std::sqrt(n * cfg.omega()) * std::exp(log_r2n(r, n) - lg(n + 1.0)); }, 0);
      return 2.0 / (2.0 * er2 - 1.0) * s;
    }
  }
  return 0.0;
}

double closed_shifted(Complex alpha, Observable obs, const PhysicsConfig& cfg) {
  const double r = std::abs(alpha);
  const double r2 = r * r;
  const double re = alpha.real();
  const double im = alpha.imag();
  const double d = re * re - im * im;
  // e^{-r^2} folded into each term
  auto weighted = [&](auto&& numerator, auto&& log_den) {
    return sum_series([&](int n) { return numerator(n) * std::exp(log_r2n(r, n) - r2 - log_den(n)); }, 0);
  };
  auto half_lg_pair = [](int n) { return 0.5 * (lg(n + 1.0) + lg(n + 2.0)); };
  switch (obs) {
    case Observable::z:
    case Observable::p: {
      const double s = weighted([](int n) { return std::sqrt(n + 2.0); }, half_lg_pair);
      const double comp = obs == Observable::z ? re : im;
      return comp / std::sqrt(2.0) * (1.0 + s);
    }
    case Observable::z2:
    case Observable::p2: {
      const double diag = weighted([](int n) { return n + 1.0; }, [](int n) { return lg(n + 1.0); });
      const double s = weighted([](int n) { return std::sqrt(n + 3.0); }, half_lg_pair);
      const double sgn = obs == Observable::z2 ? 1.0 : -1.0;
      return diag + sgn * d / 2.0 * (1.0 + s);
    }
    case Observable::energy:
      return weighted([&](int n) { return std::sqrt((n + 1.0) * cfg.omega()); },
                      [](int n) { return lg(n + 1.0); });
  }
  return 0.0;
}

double closed_cubic(Complex alpha, Observable obs, const PhysicsConfig& cfg, SeriesVariant variant) {
  const double r = std::abs(alpha);
  const double x = r * r;
  const double re = alpha.real();
  const double im = alpha.imag();
  const double d = re * re - im * im;
  const double norm = hyper_0F2(1.0, 2.0, x);
  switch (obs) {
    case Observable::z:
    case Observable::p: {
      const double s = sum_series(
          [&](int n) {
            return std::sqrt(n + 3.0) *
                   std::exp(log_r2n(r, n) - lg(n + 1.0) - 0.5 * (3.0 * lg(n + 2.0) + lg(n + 3.0)));
          },
          0);
      const double comp = obs == Observable::z ? re : im;
      return comp / (std::sqrt(2.0) * norm) * (hyper_0F2(2.0, 2.0, x) + s);
    }
    case Observable::z2:
    case Observable::p2: {
      const double diag = sum_series(
          [&](int n) { return (n + 2.0) * std::exp(log_r2n(r, n) - lg(n + 2.0) - 2.0 * lg(n + 1.0)); }, 0);
      const double shift = variant == SeriesVariant::reference ? 3.0 : 4.0;
      const double s = sum_series(
          [&](int n) {
            return std::sqrt(n + shift) *
                   std::exp(log_r2n(r, n) - lg(n + 1.0) - 0.5 * (lg(n + 2.0) + 3.0 * lg(n + 3.0)));
          },
          0);
      const double sgn = obs == Observable::z2 ? 1.0 : -1.0;
      return (2.0 * diag + sgn * d * (hyper_0F2(2.0, 3.0, x) / 2.0 + s)) / (2.0 * norm);
    }
    case Observable::energy: {
      const double s = sum_series(
          [&](int n) {
            return std::sqrt((n + 2.0) * cfg.omega()) * std::exp(log_r2n(r, n) - lg(n + 2.0) - 2.0 * lg(n + 1.0));
          },
          0);
      return s / norm;
    }
  }
  return 0.0;
}

}  // namespace

double expectation_generic(const CoherentState& state, Observable obs) {
  if (obs == Observable::energy) return mean_energy(state);
  return contract_banded(state.coeffs(), obs);
}

double expectation_closed_form(const LadderFamily& family, Complex alpha, Observable obs,
                               const PhysicsConfig& cfg, SeriesVariant variant) {
  switch (family.kind()) {
    case FamilyKind::one: return closed_one(alpha, obs, cfg, variant);
    case FamilyKind::shifted: return closed_shifted(alpha, obs, cfg);
    case FamilyKind::cubic: return closed_cubic(alpha, obs, cfg, variant);
    case FamilyKind::custom: break;
  }
  throw Error(ErrorKind::unsupported, "closed-form series exist only for the built-in families");
}

MeanValues uncertainty_product(const CoherentState& state) {
  MeanValues m{};
  m.z_mean = expectation_generic(state, Observable::z);
  m.z2_mean = expectation_generic(state, Observable::z2);
  m.p_mean = expectation_generic(state, Observable::p);
  m.p2_mean = expectation_generic(state, Observable::p2);
  m.var_z = m.z2_mean - m.z_mean * m.z_mean;
  m.var_p = m.p2_mean - m.p_mean * m.p_mean;
  m.product = m.var_z * m.var_p;
  return m;
}

namespace {

/// Density in x at the point whose shifted coordinate is z, with phi as scratch.
double density_at_z(const CoherentState& state, double z, std::vector<double>& phi) {
  const auto& a = state.coeffs();
  const int top = state.trunc_order();
  phi.resize(static_cast<std::size_t>(top) + 1);
  ho_eigenfunctions(top, z, phi);
  Complex upper{0.0, 0.0};
  Complex lower{0.0, 0.0};
  for (int n = 0; n <= top; ++n) {
    const Complex wa = spinor_weight(n) * a[n];
    lower += wa * phi[n];
    if (n >= 1) upper += wa * phi[n - 1];
  }
  const double s = state.config().amplitude_scale();
  return s * s * (std::norm(upper) + std::norm(lower));
}

}  // namespace

double probability_density(const CoherentState& state, double x) {
  std::vector<double> phi;
  return density_at_z(state, state.config().z_of_x(x), phi);
}

std::vector<double> probability_density(const CoherentState& state, std::span<const double> xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  std::vector<double> phi;
  for (double x : xs) out.push_back(density_at_z(state, state.config().z_of_x(x), phi));
  return out;
}

double probability_density_closed_form(const CoherentState& state, double x) {
  const auto& family = state.family();
  const Complex alpha = state.alpha();
  const double r = std::abs(alpha);
  const double theta = std::arg(alpha);
  const int top = state.trunc_order();
  const auto& cfg = state.config();
  const auto phi = ho_eigenfunctions(top, cfg.z_of_x(x));
  const double scale = cfg.amplitude_scale();
  auto rho = [&](int n, int m) { return rho_matrix_element(phi, scale, n, m); };

  switch (family.kind()) {
    case FamilyKind::one: {
      const double pref = 1.0 / (2.0 * std::exp(r * r) - 1.0);
      const double psi0 = scale * phi[0];
      double cross = 0.0;
      double single = 0.0;
      for (int n = 1; n <= top; ++n) {
        const double ln = log_power(r, n) - 0.5 * lg(n + 1.0);
        single += std::exp(ln) * std::cos(n * theta) * scale * phi[n] * psi0;
        for (int m = 1; m <= top; ++m) {
          const double lm = log_power(r, m) - 0.5 * lg(m + 1.0);
          cross += std::exp(ln + lm) * std::cos((n - m) * theta) * rho(n, m);
        }
      }
      return pref * (cross + 2.0 * single + psi0 * psi0);
    }
    case FamilyKind::shifted: {
      double sum = 0.0;
      for (int n = 0; n + 1 <= top; ++n) {
        const double ln = log_power(r, n) - 0.5 * lg(n + 1.0);
        for (int m = 0; m + 1 <= top; ++m) {
          const double lm = log_power(r, m) - 0.5 * lg(m + 1.0);
          sum += std::exp(ln + lm - r * r) * std::cos((n - m) * theta) * rho(n + 1, m + 1);
        }
      }
      return 0.5 * sum;
    }
    case FamilyKind::cubic: {
      const double norm = hyper_0F2(1.0, 2.0, r * r);
      double sum = 0.0;
      for (int n = 0; n + 2 <= top; ++n) {
        const double ln = log_power(r, n) - lg(n + 1.0) - 0.5 * lg(n + 2.0);
        for (int m = 0; m + 2 <= top; ++m) {
          const double lm = log_power(r, m) - lg(m + 1.0) - 0.5 * lg(m + 2.0);
          sum += std::exp(ln + lm) * std::cos((n - m) * theta) * rho(n + 2, m + 2);
        }
      }
      return sum / (2.0 * norm);
    }
    case FamilyKind::custom: break;
  }
  throw Error(ErrorKind::unsupported, "closed-form density exists only for the built-in families");
}

double density_integral(const CoherentState& state) {
  std::vector<double> phi;
  const double jac = state.config().dx_dz();
  return quadrature([&](double z) { return density_at_z(state, z, phi) * jac; }, state.trunc_order());
}

double density_argmax(const CoherentState& state) {
  std::vector<double> phi;
  auto rho = [&](double z) { return density_at_z(state, z, phi); };
  const double half = std::sqrt(2.0 * state.trunc_order() + 1.0) + 6.0;
  constexpr int kScan = 4000;
  const double h = 2.0 * half / kScan;
  int best = 0;
  double best_val = -1.0;
  for (int i = 0; i <= kScan; ++i) {
    const double v = rho(-half + i * h);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = -half + std::max(best - 1, 0) * h;
  double hi = -half + std::min(best + 1, kScan) * h;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = rho(c);
  double fd = rho(d);
  while (hi - lo > 1e-12) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = rho(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = rho(d);
    }
  }
  return state.config().x_of_z(0.5 * (lo + hi));
}

double mean_energy(const CoherentState& state) {
  const double omega = state.config().omega();
  if (!(omega > 0.0) || !std::isfinite(omega)) throw Error(ErrorKind::config, "mean_energy: invalid omega");
  const auto& a = state.coeffs();
  double sum = 0.0;
  for (std::size_t n = 1; n < a.size(); ++n) sum += std::sqrt(n * omega) * std::norm(a[n]);
  return sum;
}

}  // namespace gcs
