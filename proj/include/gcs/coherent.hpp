#pragma once

#include <complex>
#include <span>
#include <vector>

#include "gcs/basis.hpp"
#include "gcs/ladder_family.hpp"

namespace gcs {

using Complex = std::complex<double>;
using CoeffVector = std::vector<Complex>;

/// Eigenvalue c_n of the annihilation operator on Psi_n: A Psi_n = c_n Psi_{n-1}.
double ladder_coefficient(const LadderFamily& family, int n);

/// Upper-block function f1(n-2) = sqrt(n) f(n) / sqrt(n-1) forced by A Psi_n being
/// proportional to Psi_{n-1}; n >= 2.
double f1_consistency(const LadderFamily& family, int n);

inline constexpr double kDefaultTolerance = 1e-15;

/// Normalized coefficients a_0..a_N of a coherent state over the Landau spinors.
class CoherentState {
 public:
  const LadderFamily& family() const { return family_; }
  Complex alpha() const { return alpha_; }
  const PhysicsConfig& config() const { return cfg_; }
  const CoeffVector& coeffs() const { return coeffs_; }
  int trunc_order() const { return static_cast<int>(coeffs_.size()) - 1; }
  double tail_bound() const { return tail_bound_; }

  /// Same coefficients under another field configuration (they do not depend on it).
  CoherentState with_config(const PhysicsConfig& cfg) const;

 private:
  friend CoherentState build_coefficients(const LadderFamily&, Complex, double, const PhysicsConfig&);
  CoherentState(LadderFamily family, Complex alpha, PhysicsConfig cfg, CoeffVector coeffs, double tail)
      : family_(std::move(family)), alpha_(alpha), cfg_(cfg), coeffs_(std::move(coeffs)), tail_bound_(tail) {}

  LadderFamily family_;
  Complex alpha_;
  PhysicsConfig cfg_;
  CoeffVector coeffs_;
  double tail_bound_;
};

/// Builds the eigenstate of the annihilation operator with eigenvalue alpha.
/// Truncates once the geometric tail estimate of sum |a_n|^2 drops below tol and
/// then keeps 10 guard terms. tol must lie in (0, 1e-8].
/// Throws Error(non_convergence) if the cap kMaxBasis is reached first.
CoherentState build_coefficients(const LadderFamily& family, Complex alpha, double tol,
                                 const PhysicsConfig& cfg);
CoherentState build_coefficients(const LadderFamily& family, Complex alpha,
                                 double tol = kDefaultTolerance);

/// b_{n-1} = c_n a_n.
CoeffVector apply_annihilation(const LadderFamily& family, std::span<const Complex> coeffs);

/// Oscillator-space components of sum_n a_n Psi_n, dropping the common e^{iky}
/// and the i on the lower entry: upper_k = w_{k+1} a_{k+1}, lower_k = w_k a_k.
struct SpinorComponents {
  CoeffVector upper;
  CoeffVector lower;
};
SpinorComponents spinor_components(std::span<const Complex> coeffs);

/// The annihilation operator in its 2x2 block form acting on spinor components:
/// upper block f1(N) v-, lower block f(N+1) v-.
SpinorComponents apply_annihilation_block(const LadderFamily& family, const SpinorComponents& in);

/// ||A psi - alpha psi||_2 over the truncated coefficient vector.
double eigen_residual(const CoherentState& state);

}  // namespace gcs
