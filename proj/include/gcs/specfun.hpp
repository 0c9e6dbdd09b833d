#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#include "gcs/errors.hpp"

namespace gcs {

class LadderFamily;

/// A real number stored as (ln|v|, sign). Products of many ladder-function
/// values are carried this way because they leave the double range long
/// before the normalized coefficients they feed do.
class SignedLogValue {
 public:
  constexpr SignedLogValue() = default;
  constexpr SignedLogValue(double log_magnitude, int sign)
      : log_magnitude_(sign == 0 ? 0.0 : log_magnitude), sign_(sign > 0 ? 1 : (sign < 0 ? -1 : 0)) {}

  static constexpr SignedLogValue zero() { return {0.0, 0}; }
  static constexpr SignedLogValue one() { return {0.0, 1}; }
  static SignedLogValue from(double v);

  double log_magnitude() const { return log_magnitude_; }
  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  double value() const { return sign_ == 0 ? 0.0 : sign_ * std::exp(log_magnitude_); }

  friend SignedLogValue operator*(SignedLogValue a, SignedLogValue b) {
    if (a.sign_ == 0 || b.sign_ == 0) return zero();
    return {a.log_magnitude_ + b.log_magnitude_, a.sign_ * b.sign_};
  }
  friend SignedLogValue operator/(SignedLogValue a, SignedLogValue b) {
    if (b.sign_ == 0) throw Error(ErrorKind::domain, "SignedLogValue: division by zero");
    if (a.sign_ == 0) return zero();
    return {a.log_magnitude_ - b.log_magnitude_, a.sign_ * b.sign_};
  }
  friend bool operator==(const SignedLogValue&, const SignedLogValue&) = default;

 private:
  double log_magnitude_ = 0.0;
  int sign_ = 1;
};

/// ln Γ(x) for x > 0.
double log_gamma(double x);

/// ln|α|^n with the convention 0^0 = 1, returning -inf for a zero base and n > 0.
double log_power(double magnitude, int n);

struct SeriesOptions {
  double relative_threshold = 1e-17;
  std::size_t max_terms = 10000;
};

/// Sums term(n) for n = first, first+1, ... until two consecutive terms are
/// both at most relative_threshold times the running sum.
template <class TermFn>
double sum_series(TermFn&& term, int first = 0, SeriesOptions opt = {}) {
  double sum = 0.0;
  int small_run = 0;
  for (std::size_t i = 0; i < opt.max_terms; ++i) {
    const double t = term(first + static_cast<int>(i));
    if (!std::isfinite(t)) throw Error(ErrorKind::numerical, "sum_series: non-finite term");
    sum += t;
    if (std::abs(t) <= opt.relative_threshold * std::abs(sum)) {
      if (++small_run == 2) return sum;
    } else {
      small_run = 0;
    }
  }
  throw Error(ErrorKind::numerical, "sum_series: no convergence within term limit");
}

/// Generalized hypergeometric 0F2(;b1,b2;x) for x >= 0.
double hyper_0F2(double b1, double b2, double x);

/// [f(n)]! = f(1+shift) ... f(n+shift), 1 for n = 0. With shift = 1 or 2 this is
/// the product over g(n) = f(n+1) or h(n) = f(n+2).
SignedLogValue f_factorial(const LadderFamily& family, int n, int shift = 0);

}  // namespace gcs
