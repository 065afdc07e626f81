#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "quermass/errors.hpp"

namespace quermass {

/// Gamma function at integer or half-integer arguments by exact recurrence
/// from Gamma(1/2) = sqrt(pi) and Gamma(1) = 1. `twice_x` is 2x, so
/// gamma_half<double>(7) is Gamma(3.5).
template <typename Scalar>
Scalar gamma_half(int twice_x) {
  if (twice_x <= 0) throw validation_error("gamma_half: argument must be positive");
  Scalar value = (twice_x % 2 == 0) ? Scalar(1) : std::sqrt(std::numbers::pi_v<Scalar>);
  for (int t = twice_x % 2 == 0 ? 2 : 1; t < twice_x; t += 2) {
    value *= Scalar(t) / Scalar(2);
  }
  return value;
}

/// kappa_n: volume of the unit ball in n-space.
template <typename Scalar>
Scalar unit_ball_volume(int n) {
  if (n < 0) throw validation_error("unit_ball_volume: dimension must be nonnegative");
  // kappa_n = kappa_{n-2} * 2 pi / n, kappa_0 = 1, kappa_1 = 2.
  Scalar even = 1, odd = 2;
  if (n == 0) return even;
  for (int k = 2; k <= n; ++k) {
    Scalar& v = (k % 2 == 0) ? even : odd;
    v *= Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(k);
  }
  return (n % 2 == 0) ? even : odd;
}

/// omega_k: surface area of the unit sphere in (k+1)-space, so omega_0 = 2,
/// omega_1 = 2 pi, omega_2 = 4 pi. Equals (k+1) * kappa_{k+1}.
template <typename Scalar>
Scalar unit_sphere_area(int k) {
  if (k < 0) throw validation_error("unit_sphere_area: index must be nonnegative");
  return Scalar(k + 1) * unit_ball_volume<Scalar>(k + 1);
}

/// Table of kappa_1..kappa_n and omega_0..omega_{n-1} for a fixed dimension.
template <typename Scalar>
struct DimensionalConstants {
  int dim = 0;
  std::vector<Scalar> kappa;  // kappa[k-1] = unit ball volume in k-space, k = 1..n
  std::vector<Scalar> omega;  // omega[k] = unit sphere area in (k+1)-space, k = 0..n-1

  static DimensionalConstants up_to(int n) {
    if (n < 1) throw validation_error("DimensionalConstants: dimension must be positive");
    DimensionalConstants c;
    c.dim = n;
    c.kappa.reserve(n);
    c.omega.reserve(n);
    for (int k = 1; k <= n; ++k) c.kappa.push_back(unit_ball_volume<Scalar>(k));
    for (int k = 0; k < n; ++k) c.omega.push_back(unit_sphere_area<Scalar>(k));
    return c;
  }
};

/// Exact binomial coefficient, valid through n = 60 without overflow.
inline unsigned long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (n > 60) throw validation_error("binomial: n too large for exact evaluation");
  unsigned long long r = 1;
  k = std::min(k, n - k);
  for (int j = 1; j <= k; ++j) {
    r = r * static_cast<unsigned long long>(n - k + j) / static_cast<unsigned long long>(j);
  }
  return r;
}

}  // namespace quermass
