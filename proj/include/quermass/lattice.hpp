#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "quermass/bounds.hpp"
#include "quermass/ellipsoid.hpp"
#include "quermass/errors.hpp"

namespace quermass {

/// Exact lattice count next to the volume it approximates, with the tube
/// quantities the discrepancy is compared against. tube_value and
/// tube_value_half evaluate the tube polynomial at sqrt(n) and sqrt(n)/2;
/// tube_integral is its exact integral over [0, sqrt(n)].
struct LatticeReport {
  long long count = 0;
  double volume = 0;
  double discrepancy = 0;
  double tube_value = 0;
  double tube_integral = 0;
  double ratio = 0;
  double tube_value_half = 0;
};

namespace detail {

// Signed-permutation test: is the ellipsoid's quadratic form diagonal in the
// coordinate axes?
inline bool frame_is_axis_aligned(const Eigen::MatrixXd& frame, std::vector<int>& perm) {
  const int n = static_cast<int>(frame.rows());
  perm.assign(n, -1);
  std::vector<bool> used(n, false);
  for (int j = 0; j < n; ++j) {
    int big = -1;
    for (int i = 0; i < n; ++i) {
      const double v = std::abs(frame(i, j));
      if (v > 1e-14 && v < 1.0 - 1e-14) return false;
      if (v >= 1.0 - 1e-14) {
        if (big >= 0) return false;
        big = i;
      }
    }
    if (big < 0 || used[big]) return false;
    used[big] = true;
    perm[j] = big;
  }
  return true;
}

// Innermost closed range of integers t with q(t) <= 1 where the double-
// precision roots give [r1, r2]; candidates within the 1e-9 margin of the
// boundary are re-checked with the long-double form evaluation `exact_in`.
template <typename ExactIn>
inline void edge_trimmed_range(double r1, double r2, const ExactIn& exact_in, long long& lo,
                               long long& hi) {
  lo = static_cast<long long>(std::ceil(r1 - 1e-9));
  hi = static_cast<long long>(std::floor(r2 + 1e-9));
  while (lo <= hi && !exact_in(lo)) ++lo;
  while (lo <= hi && !exact_in(hi)) --hi;
}

inline bool near_boundary(double q) { return std::abs(q - 1.0) <= 1e-9; }

}  // namespace detail

/// Exact number of integer lattice points inside the solid ellipsoid.
/// Iterates the bounding box with per-axis range restriction: in the
/// axis-aligned case every coordinate range shrinks with the residual
/// quadratic; otherwise the innermost coordinate range is solved from the
/// one-variable quadratic while outer coordinates scan their box ranges.
/// Near-boundary candidates are re-checked in extended precision.
inline long long lattice_count(const Ellipsoidd& e, double candidate_budget = 1e9) {
  const int n = e.dim();
  const Eigen::VectorXd& c = e.center();

  double candidates = 1.0;
  std::vector<long long> box_lo(n), box_hi(n);
  for (int j = 0; j < n; ++j) {
    const double w = e.axis_extent(j);
    box_lo[j] = static_cast<long long>(std::ceil(c[j] - w - 1e-9));
    box_hi[j] = static_cast<long long>(std::floor(c[j] + w + 1e-9));
    candidates *= static_cast<double>(box_hi[j] - box_lo[j] + 1);
  }
  if (candidates > candidate_budget) {
    throw resource_error("lattice_count: bounding box holds about " +
                             std::to_string(candidates) +
                             " candidate points, above the configured budget",
                         candidates);
  }

  std::vector<int> perm;
  if (detail::frame_is_axis_aligned(e.frame(), perm)) {
    // separable: per-axis half width along coordinate j is the semi-axis of
    // the principal direction mapped to j
    std::vector<double> w(n);
    std::vector<long double> w_ld(n);
    for (int j = 0; j < n; ++j) {
      w[perm[j]] = e.semi_axes()[j];
      w_ld[perm[j]] = static_cast<long double>(e.semi_axes()[j]);
    }
    std::vector<long long> fixed(n, 0);
    const auto exact_in = [&](int upto, long long t) {
      long double q = 0;
      for (int k = 0; k < upto; ++k) {
        const long double d = (static_cast<long double>(fixed[k]) - c[k]) / w_ld[k];
        q += d * d;
      }
      const long double d = (static_cast<long double>(t) - c[upto]) / w_ld[upto];
      q += d * d;
      return q <= 1.0L;
    };
    long long total = 0;
    const auto recurse = [&](const auto& self, int d, double remaining) -> void {
      const double span = w[d] * std::sqrt(std::max(0.0, remaining));
      if (d == n - 1) {
        long long lo, hi;
        detail::edge_trimmed_range(c[d] - span, c[d] + span,
                                   [&](long long t) { return exact_in(d, t); }, lo, hi);
        if (hi >= lo) total += hi - lo + 1;
        return;
      }
      const long long lo = static_cast<long long>(std::ceil(c[d] - span - 1e-9));
      const long long hi = static_cast<long long>(std::floor(c[d] + span + 1e-9));
      for (long long t = lo; t <= hi; ++t) {
        fixed[d] = t;
        const double u = (static_cast<double>(t) - c[d]) / w[d];
        self(self, d + 1, remaining - u * u);
      }
    };
    recurse(recurse, 0, 1.0);
    return total;
  }

  // rotated ellipsoid: outer box scan, innermost coordinate from the
  // one-variable quadratic of the full form
  const Eigen::MatrixXd M = e.form_matrix();
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> M_ld = M.cast<long double>();
  std::vector<long long> x(n, 0);
  const auto exact_in = [&](long long t) {
    x[n - 1] = t;
    long double q = 0;
    for (int i = 0; i < n; ++i) {
      const long double di = static_cast<long double>(x[i]) - c[i];
      for (int j = 0; j < n; ++j) {
        const long double dj = static_cast<long double>(x[j]) - c[j];
        q += M_ld(i, j) * di * dj;
      }
    }
    return q <= 1.0L;
  };
  long long total = 0;
  const double alpha = M(n - 1, n - 1);
  const auto scan = [&](const auto& self, int d) -> void {
    if (d == n - 1) {
      double beta = 0, gamma = 0;
      for (int i = 0; i < n - 1; ++i) {
        const double di = static_cast<double>(x[i]) - c[i];
        beta += 2.0 * M(n - 1, i) * di;
        for (int j = 0; j < n - 1; ++j) gamma += M(i, j) * di * (static_cast<double>(x[j]) - c[j]);
      }
      // alpha (t - c_last)^2 + beta (t - c_last) + gamma <= 1
      const double disc = beta * beta - 4.0 * alpha * (gamma - 1.0);
      if (disc < 0) return;
      const double sq = std::sqrt(disc);
      long long lo, hi;
      detail::edge_trimmed_range(c[n - 1] + (-beta - sq) / (2 * alpha),
                                 c[n - 1] + (-beta + sq) / (2 * alpha), exact_in, lo, hi);
      if (hi >= lo) total += hi - lo + 1;
      return;
    }
    for (long long t = box_lo[d]; t <= box_hi[d]; ++t) {
      x[d] = t;
      self(self, d + 1);
    }
  };
  scan(scan, 0);
  return total;
}

/// Lattice count, volume, discrepancy, and the tube-polynomial quantities
/// the discrepancy is dominated by.
inline LatticeReport lattice_discrepancy(const Ellipsoidd& e, double candidate_budget = 1e9) {
  LatticeReport r;
  r.count = lattice_count(e, candidate_budget);
  r.volume = ellipsoid_volume(e);
  r.discrepancy = std::abs(static_cast<double>(r.count) - r.volume);
  const auto f = tube_polynomial(e);
  const double root_n = std::sqrt(static_cast<double>(e.dim()));
  r.tube_value = f.evaluate(root_n);
  r.tube_value_half = f.evaluate(root_n / 2);
  r.tube_integral = f.integral(root_n);
  r.ratio = r.discrepancy / r.tube_value;
  return r;
}

/// Reports for the dilation family lambda * E.
inline std::vector<std::pair<double, LatticeReport>> dilation_sweep(
    const Ellipsoidd& e, const std::vector<double>& lambdas, double candidate_budget = 1e9) {
  std::vector<std::pair<double, LatticeReport>> out;
  out.reserve(lambdas.size());
  for (const double lam : lambdas) {
    out.emplace_back(lam, lattice_discrepancy(e.scaled(lam), candidate_budget));
  }
  return out;
}

}  // namespace quermass
