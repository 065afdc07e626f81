#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

#include "quermass/ellipsoid.hpp"
#include "quermass/errors.hpp"
#include "quermass/rng.hpp"

namespace quermass {

/// Affine r-flat { basepoint + directions * t } in n-space, stored with
/// orthonormal directions and the canonical basepoint orthogonal to their
/// span, so |basepoint| is the distance from the origin to the flat.
template <typename Scalar>
class AffineFlat {
public:
  AffineFlat(VectorX<Scalar> basepoint, MatrixX<Scalar> directions)
      : basepoint_(std::move(basepoint)), directions_(std::move(directions)) {
    const Eigen::Index n = basepoint_.size();
    const Eigen::Index r = directions_.cols();
    if (r < 1 || r > n - 1 || directions_.rows() != n) {
      throw validation_error("AffineFlat: need 1 <= r <= n-1 direction columns of length n");
    }
    const Scalar ortho =
        (directions_.transpose() * directions_ - MatrixX<Scalar>::Identity(r, r))
            .cwiseAbs()
            .maxCoeff();
    if (ortho > Scalar(1e-12)) {
      throw validation_error("AffineFlat: directions must be orthonormal within 1e-12");
    }
    basepoint_ -= directions_ * (directions_.transpose() * basepoint_);
  }

  int dim_ambient() const { return static_cast<int>(basepoint_.size()); }
  int dim_flat() const { return static_cast<int>(directions_.cols()); }
  const VectorX<Scalar>& basepoint() const { return basepoint_; }
  const MatrixX<Scalar>& directions() const { return directions_; }

private:
  VectorX<Scalar> basepoint_;
  MatrixX<Scalar> directions_;
};

using AffineFlatd = AffineFlat<double>;

/// Draws a flat from the rigid-motion-invariant measure conditioned on
/// meeting the ball of radius reference_radius around `center`: directions
/// are a Haar-random r-frame, the basepoint is uniform in the (n-r)-ball of
/// the orthogonal complement.
inline AffineFlatd sample_flat(int n, int r, double reference_radius, CounterRng& rng,
                               const Eigen::VectorXd& center) {
  if (r < 1 || r > n - 1) throw validation_error("sample_flat: need 1 <= r <= n-1");
  if (!(reference_radius > 0)) {
    throw validation_error("sample_flat: reference_radius must be positive");
  }
  Eigen::MatrixXd g(n, r);
  for (int j = 0; j < r; ++j) g.col(j) = rng.gaussian_vector(n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd dirs = qr.householderQ() * Eigen::MatrixXd::Identity(n, r);
  const Eigen::MatrixXd rmat = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  for (int j = 0; j < r; ++j) {
    if (rmat(j, j) < 0) dirs.col(j) = -dirs.col(j);
  }

  Eigen::VectorXd q;
  double norm = 0.0;
  do {
    Eigen::VectorXd h = rng.gaussian_vector(n);
    q = h - dirs * (dirs.transpose() * h);
    norm = q.norm();
  } while (norm < 1e-12);
  const double radius = reference_radius * std::pow(rng.uniform01(), 1.0 / (n - r));
  return AffineFlatd(center + (radius / norm) * q, std::move(dirs));
}

inline AffineFlatd sample_flat(int n, int r, double reference_radius, CounterRng& rng) {
  return sample_flat(n, r, reference_radius, rng, Eigen::VectorXd::Zero(n));
}

/// Whether the flat meets the solid ellipsoid: minimizes the defining
/// quadratic over the flat through the r x r normal equations (exact up to
/// the linear solve; boundary tangency counts as a hit).
template <typename Scalar>
bool flat_hits_ellipsoid(const AffineFlat<Scalar>& flat, const Ellipsoid<Scalar>& e) {
  if (flat.dim_ambient() != e.dim()) {
    throw validation_error("flat_hits_ellipsoid: ambient dimensions differ");
  }
  const MatrixX<Scalar> M = e.form_matrix();
  const VectorX<Scalar> p0 = flat.basepoint() - e.center();
  const MatrixX<Scalar>& V = flat.directions();
  const MatrixX<Scalar> A = V.transpose() * M * V;
  const VectorX<Scalar> b = V.transpose() * (M * p0);
  const VectorX<Scalar> t = A.llt().solve(b);
  const Scalar minval = p0.dot(M * p0) - b.dot(t);
  return minval <= Scalar(1);
}

/// Monte Carlo bookkeeping for flat-hit counts against a reference ball.
struct HitEstimate {
  long long hits = 0;
  long long trials = 0;
  double reference_radius = 0;
  double estimate = 0;   // hits / trials
  double std_error = 0;  // binomial
};

struct HitRatio {
  double ratio = 0;
  double std_error = 0;
  HitEstimate first;
  HitEstimate second;
};

/// Fraction of invariant-measure flats meeting `e` among those meeting the
/// reference ball around its center. Streams are keyed per trial, so counts
/// are independent of any work partitioning.
inline HitEstimate flat_hit_fraction(const Ellipsoidd& e, int r, long long trials,
                                     std::uint64_t seed, double reference_radius = -1.0) {
  const int n = e.dim();
  if (trials < 1) throw validation_error("flat_hit_fraction: trials must be positive");
  double ref = reference_radius > 0 ? reference_radius : e.semi_axes()[0] * (1.0 + 1e-9);
  if (ref < e.semi_axes()[0]) {
    throw validation_error("flat_hit_fraction: reference ball must contain the ellipsoid");
  }
  HitEstimate est;
  est.trials = trials;
  est.reference_radius = ref;
  for (long long i = 0; i < trials; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    const AffineFlatd flat = sample_flat(n, r, ref, rng, e.center());
    if (flat_hits_ellipsoid(flat, e)) ++est.hits;
  }
  est.estimate = static_cast<double>(est.hits) / static_cast<double>(trials);
  est.std_error = std::sqrt(std::max(0.0, est.estimate * (1.0 - est.estimate) /
                                              static_cast<double>(trials)));
  return est;
}

/// Ratio of hit fractions of two ellipsoids under a shared reference ball,
/// which estimates M_{r-1}(e1) / M_{r-1}(e2); the measure normalization
/// cancels. Standard error by the delta method with the joint-hit
/// covariance.
inline HitRatio hit_measure_ratio(const Ellipsoidd& e1, const Ellipsoidd& e2, int r,
                                  long long trials, std::uint64_t seed) {
  const int n = e1.dim();
  if (e2.dim() != n) throw validation_error("hit_measure_ratio: dimensions differ");
  if (trials < 10000) throw validation_error("hit_measure_ratio: trials must be >= 1e4");
  const double scale = std::max(e1.semi_axes()[0], e2.semi_axes()[0]);
  if ((e1.center() - e2.center()).norm() > 1e-9 * std::max(1.0, scale)) {
    throw validation_error("hit_measure_ratio: ellipsoids must share their center");
  }
  const double ref = scale * (1.0 + 1e-9);

  long long h1 = 0, h2 = 0, h12 = 0;
  for (long long i = 0; i < trials; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    const AffineFlatd flat = sample_flat(n, r, ref, rng, e1.center());
    const bool a = flat_hits_ellipsoid(flat, e1);
    const bool b = flat_hits_ellipsoid(flat, e2);
    h1 += a;
    h2 += b;
    h12 += (a && b);
  }
  if (h2 == 0) {
    throw numerical_error("hit_measure_ratio: denominator body was never hit; ratio undefined");
  }
  const double N = static_cast<double>(trials);
  const double p1 = h1 / N, p2 = h2 / N, p12 = h12 / N;
  HitRatio out;
  out.ratio = static_cast<double>(h1) / static_cast<double>(h2);
  if (h1 == 0) {
    out.std_error = 1.0 / (N * p2);  // one-hit scale; the ratio itself is 0
  } else {
    const double var_rel = (1.0 - p1) / (N * p1) + (1.0 - p2) / (N * p2) -
                           2.0 * (p12 - p1 * p2) / (N * p1 * p2);
    out.std_error = out.ratio * std::sqrt(std::max(0.0, var_rel));
  }
  out.first = {h1, trials, ref, p1, std::sqrt(std::max(0.0, p1 * (1 - p1) / N))};
  out.second = {h2, trials, ref, p2, std::sqrt(std::max(0.0, p2 * (1 - p2) / N))};
  return out;
}

}  // namespace quermass
