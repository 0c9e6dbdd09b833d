#include "gcs/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gcs/errors.hpp"
#include "gcs/specfun.hpp"

namespace gcs {

double ladder_coefficient(const LadderFamily& family, int n) {
  if (n < 0) throw Error(ErrorKind::domain, "ladder_coefficient: negative index");
  if (n == 0) return 0.0;
  if (n == 1) return family(1) / std::sqrt(2.0);
  return std::sqrt(static_cast<double>(n)) * family(n);
}

double f1_consistency(const LadderFamily& family, int n) {
  if (n < 2) throw Error(ErrorKind::domain, "f1_consistency: n must be >= 2");
  return std::sqrt(static_cast<double>(n)) * family(n) / std::sqrt(n - 1.0);
}

CoherentState CoherentState::with_config(const PhysicsConfig& cfg) const {
  CoherentState copy = *this;
  copy.cfg_ = cfg;
  return copy;
}

namespace {

constexpr int kGuardTerms = 10;

/// e^{i j theta}, exact on the real and imaginary axes.
Complex unit_power(Complex alpha, int j) {
  if (alpha.imag() == 0.0) return {(alpha.real() < 0.0 && (j & 1)) ? -1.0 : 1.0, 0.0};
  if (alpha.real() == 0.0) {
    const int q = alpha.imag() > 0.0 ? (j & 3) : ((4 - (j & 3)) & 3);
    switch (q) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, j * std::arg(alpha));
}

std::string describe(const LadderFamily& family, Complex alpha) {
  std::ostringstream os;
  os.precision(17);
  os << "family " << family.name() << ", |alpha| = " << std::abs(alpha);
  return os.str();
}

}  // namespace

CoherentState build_coefficients(const LadderFamily& family, Complex alpha, double tol,
                                 const PhysicsConfig& cfg) {
  if (!(tol > 0.0) || tol > 1e-8) throw Error(ErrorKind::domain, "build_coefficients: tol must lie in (0, 1e-8]");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw Error(ErrorKind::domain, "build_coefficients: alpha must be finite");
  }
  const int start = family.support_start();
  const double r = std::abs(alpha);

  if (r == 0.0) {
    CoeffVector coeffs(static_cast<std::size_t>(start) + 1, Complex{0.0, 0.0});
    coeffs[start] = 1.0;
    return CoherentState(family, alpha, cfg, std::move(coeffs), 0.0);
  }

  // Unnormalized term j sits at Landau index start + j:
  //   start = 0:  sqrt(2) alpha^j / (sqrt(j!) [f(j)]!)        (j >= 1; 1 at j = 0)
  //   start = s:  alpha^j / (sqrt((j+s)!) [f(j+s)...f(1+s)])
  std::vector<double> log_mag;
  std::vector<int> signs;
  SignedLogValue product = SignedLogValue::one();

  double peak = -std::numeric_limits<double>::infinity();
  bool past_peak = false;
  int stop_at = -1;
  double tail = std::numeric_limits<double>::infinity();

  auto relative_tail = [&](int j) {
    // Geometric bound on sum_{i>j} |t_i|^2 from the last weight ratio, relative
    // to the partial sum; infinite while the ratio is not yet below one.
    const double q = std::exp(2.0 * (log_mag[j] - log_mag[j - 1]));
    if (!(q < 1.0)) return std::numeric_limits<double>::infinity();
    double partial = 0.0;
    for (int i = 0; i <= j; ++i) partial += std::exp(2.0 * (log_mag[i] - peak));
    return std::exp(2.0 * (log_mag[j] - peak)) * q / (1.0 - q) / partial;
  };

  for (int j = 0;; ++j) {
    const int index = start + j;
    if (index > kMaxBasis) {
      throw Error(ErrorKind::non_convergence,
                  "coherent state truncation did not converge within " + std::to_string(kMaxBasis) +
                      " basis states (" + describe(family, alpha) + ")");
    }
    if (j > 0) product = product * SignedLogValue::from(family(j + start));
    if (product.is_zero()) {
      throw Error(ErrorKind::domain, "ladder function vanishes inside the support (" + describe(family, alpha) + ")");
    }
    double lm = log_power(r, j) - 0.5 * log_gamma(index + 1.0) - product.log_magnitude();
    if (start == 0 && j >= 1) lm += 0.5 * std::log(2.0);
    log_mag.push_back(lm);
    signs.push_back(product.sign());
    if (!std::isfinite(lm)) throw Error(ErrorKind::numerical, "coefficient magnitude is not finite");

    if (lm >= peak) {
      peak = lm;
    } else {
      past_peak = true;
    }
    if (stop_at < 0 && past_peak && j >= 1) {
      tail = relative_tail(j);
      if (tail < tol) stop_at = j + kGuardTerms;
    }
    if (stop_at >= 0 && j == stop_at) {
      tail = relative_tail(j);
      break;
    }
  }

  const int terms = static_cast<int>(log_mag.size());
  double norm2 = 0.0;
  for (double lm : log_mag) norm2 += std::exp(2.0 * (lm - peak));
  const double inv_norm = 1.0 / std::sqrt(norm2);

  CoeffVector coeffs(static_cast<std::size_t>(start + terms), Complex{0.0, 0.0});
  for (int j = 0; j < terms; ++j) {
    const double mag = std::exp(log_mag[j] - peak) * inv_norm;
    coeffs[start + j] = mag * signs[j] * unit_power(alpha, j);
  }
  return CoherentState(family, alpha, cfg, std::move(coeffs), tail);
}

CoherentState build_coefficients(const LadderFamily& family, Complex alpha, double tol) {
  return build_coefficients(family, alpha, tol, PhysicsConfig::unit());
}

CoeffVector apply_annihilation(const LadderFamily& family, std::span<const Complex> coeffs) {
  CoeffVector out(coeffs.size(), Complex{0.0, 0.0});
  for (std::size_t n = 1; n < coeffs.size(); ++n) {
    out[n - 1] += ladder_coefficient(family, static_cast<int>(n)) * coeffs[n];
  }
  return out;
}

SpinorComponents spinor_components(std::span<const Complex> coeffs) {
  SpinorComponents c;
  c.upper.assign(coeffs.size(), Complex{0.0, 0.0});
  c.lower.assign(coeffs.size(), Complex{0.0, 0.0});
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    const double w = spinor_weight(static_cast<int>(n));
    c.lower[n] = w * coeffs[n];
    if (n >= 1) c.upper[n - 1] = w * coeffs[n];
  }
  return c;
}

SpinorComponents apply_annihilation_block(const LadderFamily& family, const SpinorComponents& in) {
  SpinorComponents out;
  out.upper.assign(in.upper.size(), Complex{0.0, 0.0});
  out.lower.assign(in.lower.size(), Complex{0.0, 0.0});
  // v- phi_k = sqrt(k) phi_{k-1}; the diagonal function then acts on phi_{k-1}.
  for (std::size_t k = 1; k < in.upper.size(); ++k) {
    const int ki = static_cast<int>(k);
    out.upper[k - 1] += f1_consistency(family, ki + 1) * std::sqrt(static_cast<double>(ki)) * in.upper[k];
  }
  for (std::size_t k = 1; k < in.lower.size(); ++k) {
    const int ki = static_cast<int>(k);
    out.lower[k - 1] += family(ki) * std::sqrt(static_cast<double>(ki)) * in.lower[k];
  }
  return out;
}

double eigen_residual(const CoherentState& state) {
  const auto& a = state.coeffs();
  const auto b = apply_annihilation(state.family(), a);
  double sum = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) sum += std::norm(b[n] - state.alpha() * a[n]);
  return std::sqrt(sum);
}

}  // namespace gcs
