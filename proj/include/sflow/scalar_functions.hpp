#ifndef SFLOW_SCALAR_FUNCTIONS_HPP
#define SFLOW_SCALAR_FUNCTIONS_HPP

#include <algorithm>
#include <cmath>

#include "sflow/errors.hpp"

namespace sflow {

/// Even bump phi_n(x) = phi(n x) with phi(x) = exp(1 - 1/(1 - x^2)) on |x| < 1
/// and 0 outside. Smooth, supp phi_n = [-1/n, 1/n], phi_n(0) = 1, strictly
/// increasing on (-1/n, 0).
class BumpFunction {
public:
  explicit BumpFunction(int n) : n_(n) {
    if (n < 1) throw ValidationError("BumpFunction: scale n must be positive");
  }

  double operator()(double x) const {
    const double u = n_ * x;
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
  }

  int scale() const { return n_; }

private:
  int n_;
};

/// Normalizing function chi_n(x) = clamp(n x, -1, 1): odd, non-decreasing,
/// zero only at 0, equal to +-1 outside (-1/n, 1/n).
class NormalizingFunction {
public:
  explicit NormalizingFunction(int n) : n_(n) {
    if (n < 1) throw ValidationError("NormalizingFunction: scale n must be positive");
  }

  double operator()(double x) const { return std::clamp(n_ * x, -1.0, 1.0); }

  int scale() const { return n_; }

private:
  int n_;
};

/// Even plateau: g(0) = 1, g(+-1) = 0, g == 1 for |x| >= 2, smoothstep in between.
inline double plateau(double x) {
  const double u = std::abs(x);
  auto smoothstep = [](double s) {
    s = std::clamp(s, 0.0, 1.0);
    return s * s * (3.0 - 2.0 * s);
  };
  if (u >= 2.0) return 1.0;
  if (u <= 1.0) return smoothstep(1.0 - u);
  return smoothstep(u - 1.0);
}

}  // namespace sflow

#endif
