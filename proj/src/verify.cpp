#include "gcs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gcs/basis.hpp"
#include "gcs/coherent.hpp"
#include "gcs/errors.hpp"

namespace gcs {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

const std::vector<FamilyKind> kBuiltins{FamilyKind::one, FamilyKind::shifted, FamilyKind::cubic};
const std::vector<Observable> kObservables{Observable::z, Observable::z2, Observable::p, Observable::p2,
                                           Observable::energy};

json alpha_json(Complex a) { return json::array({a.real(), a.imag()}); }

void add(VerifyReport& report, std::string name, json params, double residual, double tolerance) {
  const bool pass = std::isfinite(residual) && residual <= tolerance;
  report.cases.push_back({std::move(name), std::move(params), residual, tolerance, pass});
}

/// Default r values per family for the density presets.
std::vector<double> preset_radii(FamilyKind family) {
  switch (family) {
    case FamilyKind::one: return {1.0, 4.0, 5.0};
    case FamilyKind::shifted: return {1.0, 3.0, 5.0};
    case FamilyKind::cubic: return {1.0, 50.0, 100.0};
    case FamilyKind::custom: break;
  }
  return {};
}

void verify_basis(VerifyReport& report) {
  add(report, "basis.orthonormality", {{"n_max", 60}}, orthonormality_deviation(60), 1e-10);

  // (z phi_n + phi_n') / sqrt(2) = sqrt(n) phi_{n-1}, derivative by central differences
  constexpr double h = 1e-5;
  double worst = 0.0;
  for (int n = 1; n <= 30; ++n) {
    for (int i = 0; i <= 1600; ++i) {
      const double z = -8.0 + 0.01 * i;
      const double d = (ho_eigenfunction(n, z + h) - ho_eigenfunction(n, z - h)) / (2.0 * h);
      const double lhs = (z * ho_eigenfunction(n, z) + d) / std::sqrt(2.0);
      worst = std::max(worst, std::abs(lhs - std::sqrt(static_cast<double>(n)) * ho_eigenfunction(n - 1, z)));
    }
  }
  add(report, "basis.ladder_action", {{"n_range", {1, 30}}, {"step", h}}, worst, 1e-8);

  worst = 0.0;
  for (double b0 : {0.125, 2.0}) {
    const PhysicsConfig cfg(b0, 1.0);
    for (int n : {0, 1, 5, 20, 60}) {
      const double norm = quadrature(
          [&](double z) {
            const double psi = landau_eigenfunction(cfg, n, cfg.x_of_z(z));
            return psi * psi * cfg.dx_dz();
          },
          n);
      worst = std::max(worst, std::abs(norm - 1.0));
    }
  }
  add(report, "basis.x_normalization", {{"b0", {0.125, 2.0}}, {"k", 1.0}}, worst, 1e-10);

  worst = 0.0;
  for (double b0 : {0.125, 2.0}) {
    const PhysicsConfig cfg(b0, 1.0);
    worst = std::max(worst, std::abs(lower_oscillator_energy(cfg, 0)));
    for (int n = 1; n <= kMaxBasis; ++n) {
      worst = std::max(worst, std::abs(lower_oscillator_energy(cfg, n) - upper_oscillator_energy(cfg, n - 1)));
      worst = std::max(worst, std::abs(lower_oscillator_energy(cfg, n) - n * cfg.omega()));
      const double e = SpinorBasisState::make(n, cfg).energy;
      worst = std::max(worst, std::abs(e * e - n * cfg.omega()) / (n * cfg.omega()));
    }
  }
  add(report, "basis.energy_ladder", {{"n_max", kMaxBasis}}, worst, 4e-16);
}

void verify_coherent(VerifyReport& report, double tol) {
  double worst_norm = 0.0;
  double worst_support = 0.0;
  for (FamilyKind kind : kBuiltins) {
    const auto family = LadderFamily::builtin(kind);
    for (double r : {0.5, 1.0, 2.0, 3.0}) {
      for (double theta : {0.0, kPi / 4, kPi / 2}) {
        const Complex alpha = std::polar(r, theta);
        const auto state = build_coefficients(family, alpha, tol);
        add(report, "coherent.eigen_residual",
            {{"family", to_string(kind)}, {"alpha", alpha_json(alpha)}, {"trunc_order", state.trunc_order()}},
            eigen_residual(state), 1e-8);
        double norm = 0.0;
        for (const auto& a : state.coeffs()) norm += std::norm(a);
        worst_norm = std::max(worst_norm, std::abs(norm - 1.0));
        for (int n = 0; n < family.support_start(); ++n) worst_support = std::max(worst_support, std::abs(state.coeffs()[n]));
      }
    }
  }
  add(report, "coherent.normalization", {{"states", 36}}, worst_norm, 1e-12);
  add(report, "coherent.support", {{"states", 36}}, worst_support, 0.0);

  // Block form against the index-space action on deterministic pseudo-random vectors.
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> gauss;
  double worst = 0.0;
  for (FamilyKind kind : kBuiltins) {
    const auto family = LadderFamily::builtin(kind);
    for (int trial = 0; trial < 8; ++trial) {
      CoeffVector a(21);
      for (auto& c : a) c = {gauss(rng), gauss(rng)};
      const auto via_index = spinor_components(apply_annihilation(family, a));
      const auto via_block = apply_annihilation_block(family, spinor_components(a));
      for (std::size_t k = 0; k + 1 < a.size(); ++k) {
        worst = std::max(worst, std::abs(via_index.upper[k] - via_block.upper[k]));
        worst = std::max(worst, std::abs(via_index.lower[k] - via_block.lower[k]));
      }
    }
  }
  add(report, "coherent.block_equivalence", {{"n_max", 20}}, worst, 1e-12);
}

}  // namespace

std::string known_misprint(FamilyKind family, Observable obs) {
  if (family == FamilyKind::one && (obs == Observable::z || obs == Observable::p)) {
    return "series term r^{2n}/(Gamma(n)Gamma(n+2)) should be r^{2n}/sqrt(Gamma(n)Gamma(n+2))";
  }
  if (family == FamilyKind::one && (obs == Observable::z2 || obs == Observable::p2)) {
    return "series term sqrt(n+1) r^{2n}/(Gamma(n)Gamma(n+3)) should be sqrt(n+1) r^{2n}/sqrt(Gamma(n)Gamma(n+3))";
  }
  if (family == FamilyKind::cubic && (obs == Observable::z2 || obs == Observable::p2)) {
    return "numerator sqrt(n+3) of the second series should be sqrt(n+4)";
  }
  return {};
}

void verify_closed_forms(VerifyReport& report, double tol) {
  const PhysicsConfig cfg(2.0, 1.0);
  for (FamilyKind kind : kBuiltins) {
    const auto family = LadderFamily::builtin(kind);
    for (Observable obs : kObservables) {
      double worst_rederived = 0.0;
      double worst_unlogged = 0.0;
      int mismatches = 0;
      for (double r : {1.0, 2.0, 3.0}) {
        for (double theta : {0.0, kPi / 4, kPi / 2}) {
          const Complex alpha = std::polar(r, theta);
          const auto state = build_coefficients(family, alpha, tol, cfg);
          const double generic = expectation_generic(state, obs);
          const double scale = std::max(1.0, std::abs(generic));
          const double rederived = expectation_closed_form(family, alpha, obs, cfg, SeriesVariant::rederived);
          const double reference = expectation_closed_form(family, alpha, obs, cfg, SeriesVariant::reference);
          worst_rederived = std::max(worst_rederived, std::abs(rederived - generic) / scale);
          const double dev = std::abs(reference - generic) / scale;
          if (dev > 1e-8) {
            ++mismatches;
            std::string note = known_misprint(kind, obs);
            if (note.empty()) {
              note = "unexplained disagreement";
              worst_unlogged = std::max(worst_unlogged, dev);
            }
            report.errata.push_back({kind, obs, alpha, reference, generic, rederived, std::move(note)});
          }
        }
      }
      json params{{"family", to_string(kind)}, {"observable", to_string(obs)}, {"points", 9}, {"r_max", 3.0}};
      add(report, "observables.closed_form_rederived", params, worst_rederived, 1e-8);
      params["reference_mismatches"] = mismatches;
      // A mismatch counts only if no misprint explains it.
      add(report, "observables.closed_form_reference_logged", params, worst_unlogged, 0.0);
    }
  }
}

namespace {

void verify_observables(VerifyReport& report, double tol) {
  const double limits[] = {0.25, 1.0, 4.0};
  for (std::size_t i = 0; i < kBuiltins.size(); ++i) {
    const auto state = build_coefficients(LadderFamily::builtin(kBuiltins[i]), {0.0, 0.0}, tol);
    add(report, "observables.alpha_zero_limit", {{"family", to_string(kBuiltins[i])}, {"expected", limits[i]}},
        std::abs(uncertainty_product(state).product - limits[i]), 1e-9);
  }

  verify_closed_forms(report, tol);

  int violations = 0;
  double worst_p = 0.0;
  double worst_z = 0.0;
  for (FamilyKind kind : kBuiltins) {
    const auto family = LadderFamily::builtin(kind);
    for (int i = 0; i <= 12; ++i) {
      for (int j = 0; j <= 12; ++j) {
        const Complex alpha{-3.0 + 0.5 * i, -3.0 + 0.5 * j};
        const auto m = uncertainty_product(build_coefficients(family, alpha, tol));
        if (!(m.product >= 0.25 - 1e-12) || m.var_z < 0.0 || m.var_p < 0.0) ++violations;
        if (alpha.imag() == 0.0) worst_p = std::max(worst_p, std::abs(m.p_mean));
        if (alpha.real() == 0.0) worst_z = std::max(worst_z, std::abs(m.z_mean));
      }
    }
  }
  add(report, "observables.uncertainty_floor", {{"grid", "[-3,3]^2 step 0.5"}, {"floor", 0.25}},
      violations, 0.0);
  add(report, "observables.p_zero_for_real_alpha", json::object(), worst_p, 0.0);
  add(report, "observables.z_zero_for_imaginary_alpha", json::object(), worst_z, 0.0);

  double worst_parity = 0.0;
  double worst_negative = 0.0;
  double worst_closed = 0.0;
  double worst_integral = 0.0;
  for (FamilyKind kind : kBuiltins) {
    const auto family = LadderFamily::builtin(kind);
    for (double b0 : {0.125, 2.0}) {
      const PhysicsConfig cfg(b0, 1.0);
      for (double r : preset_radii(kind)) {
        for (double theta : {0.0, kPi / 4, kPi / 2}) {
          const auto state = build_coefficients(family, std::polar(r, theta), tol, cfg);
          const auto mirror = build_coefficients(family, std::polar(r, -theta), tol, cfg);
          worst_integral = std::max(worst_integral, std::abs(density_integral(state) - 1.0));
          const double half = std::sqrt(2.0 * state.trunc_order() + 1.0) + 4.0;
          for (int i = 0; i <= 40; ++i) {
            const double x = cfg.x_of_z(-half + i * half / 20.0);
            const double rho = probability_density(state, x);
            worst_parity = std::max(worst_parity, std::abs(rho - probability_density(mirror, x)));
            worst_negative = std::max(worst_negative, -rho);
            if (i % 4 == 0) {
              worst_closed = std::max(worst_closed, std::abs(rho - probability_density_closed_form(state, x)) /
                                                        std::max(1.0, std::abs(rho)));
            }
          }
        }
      }
    }
  }
  add(report, "observables.density_normalization", {{"b0", {0.125, 2.0}}, {"k", 1.0}}, worst_integral, 1e-6);
  add(report, "observables.density_theta_parity", json::object(), worst_parity, 1e-12);
  add(report, "observables.density_positivity", json::object(), worst_negative, 1e-12);
  add(report, "observables.density_closed_form", json::object(), worst_closed, 1e-10);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> radius(0.0, 3.0);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  double worst_scaling = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Complex alpha = std::polar(radius(rng), angle(rng));
    const auto base = build_coefficients(LadderFamily::one(), alpha, tol, PhysicsConfig(0.5, 1.0));
    const double e1 = mean_energy(base);
    const double e4 = mean_energy(base.with_config(PhysicsConfig(2.0, 1.0)));
    worst_scaling = std::max(worst_scaling, std::abs(e4 - 2.0 * e1) / std::max(1.0, std::abs(e1)));
  }
  add(report, "observables.energy_scaling", {{"samples", 10}, {"family", "one"}}, worst_scaling, 1e-12);

  const PhysicsConfig cfg(2.0, 1.0);
  std::vector<double> peaks;
  for (double theta : {0.0, kPi / 4, kPi / 2}) {
    peaks.push_back(density_argmax(build_coefficients(LadderFamily::one(), std::polar(4.0, theta), tol, cfg)));
  }
  const bool decreasing = peaks[0] > peaks[1] && peaks[1] > peaks[2];
  const bool increasing = peaks[0] < peaks[1] && peaks[1] < peaks[2];
  add(report, "observables.density_peak_displacement",
      {{"family", "one"}, {"b0", 2.0}, {"k", 1.0}, {"r", 4.0}, {"argmax_x", peaks},
       {"direction", decreasing ? "decreasing" : (increasing ? "increasing" : "not monotone")}},
      (decreasing || increasing) ? 0.0 : 1.0, 0.0);
}

}  // namespace

bool VerifyReport::all_pass() const {
  return std::all_of(cases.begin(), cases.end(), [](const VerifyCase& c) { return c.pass; });
}

nlohmann::json VerifyReport::to_json() const {
  json j;
  j["suite"] = suite;
  j["cases"] = json::array();
  for (const auto& c : cases) {
    j["cases"].push_back({{"name", c.name}, {"params", c.params}, {"residual", c.residual},
                          {"tolerance", c.tolerance}, {"pass", c.pass}});
  }
  j["errata"] = json::array();
  for (const auto& e : errata) {
    j["errata"].push_back({{"family", to_string(e.family)}, {"observable", to_string(e.observable)},
                           {"alpha", alpha_json(e.alpha)}, {"reference", e.reference}, {"generic", e.generic},
                           {"rederived", e.rederived}, {"note", e.note}});
  }
  j["pass"] = all_pass();
  return j;
}

VerifyReport run_verification(double tol) {
  VerifyReport report;
  report.suite = "graphene-coherent-states";
  verify_basis(report);
  verify_coherent(report, tol);
  verify_observables(report, tol);
  return report;
}

}  // namespace gcs
