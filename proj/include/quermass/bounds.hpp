#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <optional>

#include "quermass/constants.hpp"
#include "quermass/ellipsoid.hpp"
#include "quermass/errors.hpp"
#include "quermass/mean_curvature.hpp"
#include "quermass/symmetric.hpp"

namespace quermass {

enum class BoundQuantityKind { MeanCurvature, TubeArea, TubeVolume };

inline std::string to_string(BoundQuantityKind k) {
  switch (k) {
    case BoundQuantityKind::MeanCurvature: return "mean_curvature";
    case BoundQuantityKind::TubeArea: return "tube_area";
    case BoundQuantityKind::TubeVolume: return "tube_volume";
  }
  return "unknown";
}

/// What a BoundInterval talks about: M_i (index set) or a tube quantity at a
/// fixed radius (rho set).
struct BoundQuantity {
  BoundQuantityKind kind = BoundQuantityKind::MeanCurvature;
  int index = 0;
  double rho = 0.0;
};

/// Dimensional constants carried alongside a bound, so a report can show how
/// the interval was produced. `ratio_bound` is the certified bound on
/// upper/lower; `gamma_factor` records Gamma((n+1)/2) / (2 pi^{(n+1)/2})
/// for the tube bounds.
template <typename Scalar>
struct BoundConstants {
  Scalar c = 0;
  Scalar C = 0;
  Scalar ratio_bound = 0;
  std::optional<Scalar> gamma_factor;
};

template <typename Scalar>
struct BoundInterval {
  Scalar lower = 0;
  Scalar upper = 0;
  BoundQuantity quantity;
  BoundConstants<Scalar> constants_used;

  bool contains(Scalar x) const { return lower <= x && x <= upper; }
};

using BoundIntervald = BoundInterval<double>;

namespace detail {

template <typename Scalar>
Scalar ulp_step(Scalar x, Scalar toward, int steps) {
  for (int i = 0; i < steps; ++i) x = std::nextafter(x, toward);
  return x;
}

/// Rounds an interval outward by 4 ulps so it stays safe for assertions.
template <typename Scalar>
void widen_outward(Scalar& lower, Scalar& upper) {
  lower = ulp_step(lower, -std::numeric_limits<Scalar>::infinity(), 4);
  upper = ulp_step(upper, std::numeric_limits<Scalar>::infinity(), 4);
}

}  // namespace detail

/// C_{n,i}: coefficient on s_{n-1-i}(a) in the upper bound
/// M_i(E) <= C_{n,i} s_{n-1-i}(a), obtained from the circumscribed box with
/// sides 2 a_j.
template <typename Scalar>
Scalar pinch_upper_coefficient(int n, int i) {
  return unit_sphere_area<Scalar>(i) * std::pow(Scalar(2), Scalar(n - 1 - i)) /
         Scalar(binomial(n - 1, i));
}

/// Ratio between the circumscribed-box bound and the inscribed-box bound:
/// (sqrt n)^{n-1-i}. Never exceeds n^{(n-i)/2}.
template <typename Scalar>
Scalar pinch_ratio(int n, int i) {
  return std::pow(std::sqrt(Scalar(n)), Scalar(n - 1 - i));
}

/// Two-sided bound on M_i(E) from the boxes sandwiching E: the circumscribed
/// box P with sides 2 a_j gives the upper bound, P / sqrt(n) is inscribed in
/// E and gives the lower one. Exact at i = n-1, where every convex body has
/// M_{n-1} = omega_{n-1}.
template <typename Scalar>
BoundInterval<Scalar> pinch_bounds(const Ellipsoid<Scalar>& e, int i) {
  const int n = e.dim();
  if (i < 0 || i >= n) throw validation_error("pinch_bounds: index i must satisfy 0 <= i <= n-1");
  const Scalar s = sym_elem_all(e.semi_axes())[n - 1 - i];
  const Scalar C = pinch_upper_coefficient<Scalar>(n, i);
  const Scalar ratio = pinch_ratio<Scalar>(n, i);
  BoundInterval<Scalar> b;
  b.upper = C * s;
  b.lower = b.upper / ratio;
  b.quantity = {BoundQuantityKind::MeanCurvature, i, 0.0};
  b.constants_used = {C / ratio, C, ratio, std::nullopt};
  return b;
}

/// Area of the outer parallel surface at distance rho:
/// sum_k binom(n-1,k) M_k rho^k.
template <typename Scalar>
Scalar parallel_area(const MeanCurvatures<Scalar>& m, Scalar rho) {
  if (!(rho >= Scalar(0))) throw validation_error("parallel_area: rho must be >= 0");
  const int n = m.dim;
  Scalar sum = 0, rk = 1;
  for (int k = 0; k < n; ++k) {
    sum += Scalar(binomial(n - 1, k)) * m.values[k] * rk;
    rk *= rho;
  }
  return sum;
}

/// Volume of the outer parallel body: vol0 plus the term-wise integral of
/// parallel_area over [0, rho].
template <typename Scalar>
Scalar parallel_volume(Scalar vol0, const MeanCurvatures<Scalar>& m, Scalar rho) {
  if (!(rho >= Scalar(0))) throw validation_error("parallel_volume: rho must be >= 0");
  const int n = m.dim;
  Scalar sum = vol0, rk = rho;
  for (int k = 0; k < n; ++k) {
    sum += Scalar(binomial(n - 1, k)) * m.values[k] * rk / Scalar(k + 1);
    rk *= rho;
  }
  return sum;
}

/// Steiner polynomial of a box: vol(P + rho B) = sum_k s_{n-k}(l) kappa_k
/// rho^k. Returned as the coefficient list c_0..c_n.
template <typename Scalar>
VectorX<Scalar> steiner_volume_coefficients(const Box<Scalar>& b) {
  const int n = b.dim();
  const VectorX<Scalar> s = sym_elem_all(b.side_lengths);
  VectorX<Scalar> c(n + 1);
  for (int k = 0; k <= n; ++k) c[k] = s[n - k] * unit_ball_volume<Scalar>(k);
  return c;
}

/// f(rho) = (1/rho) [ prod(rho + 2 a_i) - rho^n - 2^n prod a_i ], stored by
/// coefficients: f(rho) = sum_{j=0}^{n-2} rho^j s_{n-1-j}(2a).
template <typename Scalar>
struct TubePolynomial {
  int dim = 0;
  VectorX<Scalar> coefficients;  // coefficient of rho^j at position j

  Scalar evaluate(Scalar rho) const {
    Scalar sum = 0, rj = 1;
    for (Eigen::Index j = 0; j < coefficients.size(); ++j) {
      sum += coefficients[j] * rj;
      rj *= rho;
    }
    return sum;
  }

  /// Exact integral over [0, rho].
  Scalar integral(Scalar rho) const {
    Scalar sum = 0, rj = rho;
    for (Eigen::Index j = 0; j < coefficients.size(); ++j) {
      sum += coefficients[j] * rj / Scalar(j + 1);
      rj *= rho;
    }
    return sum;
  }
};

template <typename Scalar>
TubePolynomial<Scalar> tube_polynomial(const Ellipsoid<Scalar>& e) {
  const int n = e.dim();
  if (n < 2) throw validation_error("tube_polynomial: dimension must be >= 2");
  const VectorX<Scalar> s = sym_elem_all(VectorX<Scalar>(Scalar(2) * e.semi_axes()));
  VectorX<Scalar> coeff(n - 1);
  for (int j = 0; j <= n - 2; ++j) coeff[j] = s[n - 1 - j];
  return TubePolynomial<Scalar>{n, std::move(coeff)};
}

namespace detail {

// Term-wise box bounds on the Steiner coefficients binom(n-1,k) M_k:
// upper_k = omega_k s_{n-1-k}(2a), lower_k = upper_k / (sqrt n)^{n-1-k}.
template <typename Scalar>
void steiner_term_bounds(const Ellipsoid<Scalar>& e, VectorX<Scalar>& lower_terms,
                         VectorX<Scalar>& upper_terms) {
  const int n = e.dim();
  const VectorX<Scalar> s2a = sym_elem_all(VectorX<Scalar>(Scalar(2) * e.semi_axes()));
  lower_terms.resize(n);
  upper_terms.resize(n);
  for (int k = 0; k < n; ++k) {
    upper_terms[k] = unit_sphere_area<Scalar>(k) * s2a[n - 1 - k];
    lower_terms[k] = upper_terms[k] / pinch_ratio<Scalar>(n, k);
  }
}

}  // namespace detail

/// Two-sided bound on the area of the equidistant surface at distance rho,
/// built by bounding every Steiner term of the parallel-surface area through
/// the box pinch. Valid for every rho > 0. The single-coefficient form
/// (c, C such that the interval is [c f(rho), C f(rho)]) is recorded in
/// constants_used together with the dimensional gamma factor.
template <typename Scalar>
BoundInterval<Scalar> tube_area_bounds(const Ellipsoid<Scalar>& e, Scalar rho) {
  if (!(rho > Scalar(0))) throw validation_error("tube_area_bounds: rho must be > 0");
  const int n = e.dim();
  VectorX<Scalar> lo_t, up_t;
  detail::steiner_term_bounds(e, lo_t, up_t);
  Scalar lower = 0, upper = 0, rk = 1;
  for (int k = 0; k < n; ++k) {
    lower += lo_t[k] * rk;
    upper += up_t[k] * rk;
    rk *= rho;
  }
  detail::widen_outward(lower, upper);
  const Scalar f = tube_polynomial(e).evaluate(rho);
  BoundInterval<Scalar> b;
  b.lower = lower;
  b.upper = upper;
  b.quantity = {BoundQuantityKind::TubeArea, 0, static_cast<double>(rho)};
  b.constants_used = {lower / f, upper / f, pinch_ratio<Scalar>(n, 0),
                      gamma_half<Scalar>(n + 1) /
                          (Scalar(2) * std::pow(std::numbers::pi_v<Scalar>, Scalar(n + 1) / 2))};
  return b;
}

/// Two-sided bound on the volume of the outer parallel body at distance rho:
/// term-wise integral of tube_area_bounds added to vol E. The interval width
/// goes to 0 as rho -> 0.
template <typename Scalar>
BoundInterval<Scalar> tube_volume_bounds(const Ellipsoid<Scalar>& e, Scalar rho) {
  if (!(rho > Scalar(0))) throw validation_error("tube_volume_bounds: rho must be > 0");
  const int n = e.dim();
  VectorX<Scalar> lo_t, up_t;
  detail::steiner_term_bounds(e, lo_t, up_t);
  const Scalar vol = ellipsoid_volume(e);
  Scalar lower = vol, upper = vol, rk = rho;
  for (int k = 0; k < n; ++k) {
    lower += lo_t[k] * rk / Scalar(k + 1);
    upper += up_t[k] * rk / Scalar(k + 1);
    rk *= rho;
  }
  detail::widen_outward(lower, upper);
  const Scalar fint = tube_polynomial(e).integral(rho);
  BoundInterval<Scalar> b;
  b.lower = lower;
  b.upper = upper;
  b.quantity = {BoundQuantityKind::TubeVolume, 0, static_cast<double>(rho)};
  b.constants_used = {(lower - vol) / fint, (upper - vol) / fint, pinch_ratio<Scalar>(n, 0),
                      gamma_half<Scalar>(n + 1) /
                          (Scalar(2) * std::pow(std::numbers::pi_v<Scalar>, Scalar(n + 1) / 2))};
  return b;
}

}  // namespace quermass
