#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace gcs {

/// Largest Landau index any state may carry.
inline constexpr int kMaxBasis = 500;

/// Field strength and transverse wavenumber in units hbar = c = e = v_F = 1,
/// so omega = 2 b0.
class PhysicsConfig {
 public:
  /// Throws Error(config) unless b0 > 0 and both values are finite.
  PhysicsConfig(double b0, double k);
  /// b0 = 1/2, k = 0: omega = 1 and the x and z coordinates coincide.
  static PhysicsConfig unit() { return {0.5, 0.0}; }

  double b0() const { return b0_; }
  double k() const { return k_; }
  double omega() const { return omega_; }

  double z_of_x(double x) const;
  double x_of_z(double z) const;
  /// dx/dz = sqrt(2/omega).
  double dx_dz() const;
  /// Factor (omega/2)^{1/4} turning z-space into x-space eigenfunctions.
  double amplitude_scale() const;

 private:
  double b0_;
  double k_;
  double omega_;
};

struct SpinorBasisState {
  int n;
  std::optional<int> upper_index;  // n-1, absent for n = 0
  int lower_index;
  double component_weight;         // 1 for n = 0, 1/sqrt(2) otherwise
  double energy;                   // sqrt(n omega), electron branch

  static SpinorBasisState make(int n, const PhysicsConfig& cfg);
};

/// Weight w_n of each component of the Landau spinor Psi_n.
inline double spinor_weight(int n) { return n == 0 ? 1.0 : 0.70710678118654752440; }

/// Squared energy bookkeeping of the decoupled oscillators: E^-_n = n omega,
/// E^+_n = (n+1) omega.
double lower_oscillator_energy(const PhysicsConfig& cfg, int n);
double upper_oscillator_energy(const PhysicsConfig& cfg, int n);

/// Normalized oscillator eigenfunction phi_n(z) = (2^n n! sqrt(pi))^{-1/2} H_n(z) e^{-z^2/2}.
double ho_eigenfunction(int n, double z);

/// phi_0(z) ... phi_{n_max}(z) in one pass of the normalized recurrence.
std::vector<double> ho_eigenfunctions(int n_max, double z);
void ho_eigenfunctions(int n_max, double z, std::span<double> out);

/// x-space eigenfunction psi_n(x) = (omega/2)^{1/4} phi_n(z(x)); identical for
/// both pseudospin components.
double landau_eigenfunction(const PhysicsConfig& cfg, int n, double x);

enum class LadderOp { lower, raise, position, momentum_imag };

/// <phi_m|op|phi_n>. For momentum_imag the returned c satisfies <phi_m|p|phi_n> = i c.
double ladder_matrix_element(LadderOp op, int m, int n);

/// <phi_m|op^2|phi_n> for position or momentum_imag, composed from the
/// tridiagonal elements (the result is real for both).
double squared_matrix_element(LadderOp op, int m, int n);

/// rho_{n,m}(x) = psi+_{n-1} psi+_{m-1} + psi-_n psi-_m with psi+_{-1} = 0.
double rho_matrix_element(const PhysicsConfig& cfg, int n, int m, double x);

/// Same, from a precomputed table phi_0..phi_N at the z matching x.
double rho_matrix_element(std::span<const double> phi, double amplitude_scale, int n, int m);

struct QuadratureResult {
  double value;
  int intervals;
};

/// Integral over the real line of an integrand with Gaussian decay times a
/// polynomial of degree <= 2 order_hint: composite trapezoid on [-Z, Z],
/// Z = sqrt(4 order_hint + 8) + 8, starting from 4096 intervals and doubling
/// until successive results agree within 1e-11.
QuadratureResult quadrature_detailed(const std::function<double(double)>& integrand, int order_hint);
double quadrature(const std::function<double(double)>& integrand, int order_hint);

/// Half-width Z of the quadrature window for a given order.
double quadrature_half_width(int order_hint);

/// Worst |<phi_m|phi_n> - delta_mn| over 0 <= m, n <= n_max using the quadrature rule.
double orthonormality_deviation(int n_max);

}  // namespace gcs
