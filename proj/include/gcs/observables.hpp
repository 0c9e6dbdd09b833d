#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "gcs/coherent.hpp"

namespace gcs {

enum class Observable { z, z2, p, p2, energy };

std::string_view to_string(Observable obs);

struct MeanValues {
  double z_mean;
  double z2_mean;
  double p_mean;
  double p2_mean;
  double var_z;
  double var_p;
  double product;
};

/// <Psi|S|Psi> by contracting the coefficient vector with the spinor matrix
/// elements of S, built component-wise from the oscillator ladder algebra.
double expectation_generic(const CoherentState& state, Observable obs);

/// Which transcription of the closed-form mean-value series to evaluate.
///   reference  reference transcription of the series, misprints included
///   rederived  series rederived from the coefficient formulas
enum class SeriesVariant { reference, rederived };

/// Closed-form series for the built-in families. Throws Error(unsupported) for
/// custom families.
double expectation_closed_form(const LadderFamily& family, Complex alpha, Observable obs,
                               const PhysicsConfig& cfg,
                               SeriesVariant variant = SeriesVariant::reference);

MeanValues uncertainty_product(const CoherentState& state);

/// rho(x) = Psi^dagger Psi = |sum a_n w_n psi_{n-1}(x)|^2 + |sum a_n w_n psi_n(x)|^2.
double probability_density(const CoherentState& state, double x);

/// Density on a grid of x values, sharing one oscillator table per point.
std::vector<double> probability_density(const CoherentState& state, std::span<const double> xs);

/// Per-family double series over rho_{n,m}(x), truncated at the state's order.
/// Uses only family, alpha, config and truncation order of the state.
double probability_density_closed_form(const CoherentState& state, double x);

/// Integral of rho over x via the adaptive trapezoid rule.
double density_integral(const CoherentState& state);

/// Location of the global maximum of rho(x): dense scan over the state's support
/// followed by golden-section refinement.
double density_argmax(const CoherentState& state);

/// sum sqrt(n omega) |a_n|^2 in units hbar v_F = 1.
double mean_energy(const CoherentState& state);

}  // namespace gcs
