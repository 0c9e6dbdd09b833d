#include "gcs/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include "gcs/ladder_family.hpp"

namespace gcs {

SignedLogValue SignedLogValue::from(double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::numerical, "SignedLogValue: non-finite value");
  if (v == 0.0) return zero();
  return {std::log(std::abs(v)), v > 0 ? 1 : -1};
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw Error(ErrorKind::domain, "log_gamma: argument must be positive and finite");
  }
  return boost::math::lgamma(x);
}

double log_power(double magnitude, int n) {
  if (n == 0) return 0.0;
  if (magnitude == 0.0) return -std::numeric_limits<double>::infinity();
  return n * std::log(magnitude);
}

namespace {

bool is_nonpositive_integer(double b) { return b <= 0.0 && b == std::floor(b); }

}  // namespace

double hyper_0F2(double b1, double b2, double x) {
  if (is_nonpositive_integer(b1) || is_nonpositive_integer(b2)) {
    throw Error(ErrorKind::domain, "hyper_0F2: denominator parameter is a non-positive integer");
  }
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw Error(ErrorKind::domain, "hyper_0F2: argument must be finite and non-negative");
  }
  // t_{n+1} = t_n x / ((b1+n)(b2+n)(n+1))
  constexpr SeriesOptions opt{};
  double term = 1.0;
  double sum = 1.0;
  int small_run = 0;
  for (std::size_t n = 0; n < opt.max_terms; ++n) {
    const double dn = static_cast<double>(n);
    term *= x / ((b1 + dn) * (b2 + dn) * (dn + 1.0));
    sum += term;
    if (!std::isfinite(sum)) throw Error(ErrorKind::numerical, "hyper_0F2: overflow");
    if (std::abs(term) <= opt.relative_threshold * std::abs(sum)) {
      if (++small_run == 2) return sum;
    } else {
      small_run = 0;
    }
  }
  throw Error(ErrorKind::numerical, "hyper_0F2: no convergence within 10000 terms");
}

SignedLogValue f_factorial(const LadderFamily& family, int n, int shift) {
  if (n < 0 || shift < 0) throw Error(ErrorKind::domain, "f_factorial: negative index");
  SignedLogValue product = SignedLogValue::one();
  for (int j = 1; j <= n; ++j) {
    product = product * SignedLogValue::from(family(j + shift));
    if (product.is_zero()) break;
  }
  return product;
}

}  // namespace gcs
