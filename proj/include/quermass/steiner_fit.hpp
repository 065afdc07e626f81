#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "quermass/bounds.hpp"
#include "quermass/ellipsoid.hpp"
#include "quermass/errors.hpp"
#include "quermass/mean_curvature.hpp"
#include "quermass/rng.hpp"

namespace quermass {

/// Euclidean distance from a point to a solid ellipsoid (0 inside).
/// Safeguarded Newton on the Lagrange-multiplier equation
/// sum a_i^2 y_i^2 / (a_i^2 + t)^2 = 1, with bisection fallback.
template <typename Scalar>
Scalar distance_to_ellipsoid(const Ellipsoid<Scalar>& e, const VectorX<Scalar>& x) {
  const VectorX<Scalar> y = e.frame().transpose() * (x - e.center());
  const VectorX<Scalar>& a = e.semi_axes();
  if ((y.cwiseQuotient(a)).squaredNorm() <= Scalar(1)) return Scalar(0);

  const VectorX<Scalar> a2 = a.array().square();
  const VectorX<Scalar> c = a2.cwiseProduct(y.array().square().matrix());
  const auto phi = [&](Scalar t) {
    Scalar s = 0;
    for (Eigen::Index i = 0; i < a2.size(); ++i) {
      const Scalar d = a2[i] + t;
      s += c[i] / (d * d);
    }
    return s - Scalar(1);
  };
  const auto dphi = [&](Scalar t) {
    Scalar s = 0;
    for (Eigen::Index i = 0; i < a2.size(); ++i) {
      const Scalar d = a2[i] + t;
      s -= Scalar(2) * c[i] / (d * d * d);
    }
    return s;
  };

  Scalar lo = 0, hi = std::sqrt(c.sum());  // phi(hi) <= 0 since sum c / hi^2 <= 1
  Scalar t = hi;
  for (int it = 0; it < 200; ++it) {
    const Scalar f = phi(t);
    if (f > 0) lo = t;
    else hi = t;
    const Scalar step = f / dphi(t);
    Scalar next = t - step;
    if (!(next > lo && next < hi)) next = (lo + hi) / 2;
    if (std::abs(next - t) <= Scalar(1e-10) * (Scalar(1) + std::abs(t))) {
      t = next;
      break;
    }
    t = next;
  }
  VectorX<Scalar> z(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) z[i] = a2[i] * y[i] / (a2[i] + t);
  return (y - z).norm();
}

/// Generic convex body accessed through a membership oracle. The body must
/// contain the origin in its interior and fit inside the origin-centered
/// ball of radius bounding_radius. `distance` is optional; when absent it is
/// reconstructed from the membership oracle alone (slower).
template <typename Scalar>
struct ConvexBodyProbe {
  std::function<bool(const VectorX<Scalar>&)> membership;
  Scalar bounding_radius = 0;
  std::optional<Scalar> volume_hint;
  std::function<Scalar(const VectorX<Scalar>&)> distance;
};

using ConvexBodyProbed = ConvexBodyProbe<double>;

template <typename Scalar>
ConvexBodyProbe<Scalar> probe_from_ball(int dim, Scalar radius) {
  if (dim < 1 || !(radius > 0)) throw validation_error("probe_from_ball: bad dimension or radius");
  ConvexBodyProbe<Scalar> p;
  p.membership = [radius](const VectorX<Scalar>& x) { return x.norm() <= radius; };
  p.bounding_radius = radius;
  p.volume_hint = unit_ball_volume<Scalar>(dim) * std::pow(radius, Scalar(dim));
  p.distance = [radius](const VectorX<Scalar>& x) {
    return std::max(Scalar(0), x.norm() - radius);
  };
  return p;
}

template <typename Scalar>
ConvexBodyProbe<Scalar> probe_from_box(const Box<Scalar>& b) {
  const VectorX<Scalar> half = b.side_lengths / Scalar(2);
  const VectorX<Scalar> center = b.center;
  ConvexBodyProbe<Scalar> p;
  p.membership = [half, center](const VectorX<Scalar>& x) {
    return ((x - center).cwiseAbs().array() <= half.array()).all();
  };
  p.bounding_radius = (center.cwiseAbs() + half).norm();
  p.volume_hint = b.volume();
  p.distance = [half, center](const VectorX<Scalar>& x) {
    VectorX<Scalar> d = (x - center).cwiseAbs() - half;
    return d.cwiseMax(Scalar(0)).norm();
  };
  return p;
}

template <typename Scalar>
ConvexBodyProbe<Scalar> probe_from_ellipsoid(const Ellipsoid<Scalar>& e) {
  ConvexBodyProbe<Scalar> p;
  p.membership = [e](const VectorX<Scalar>& x) { return e.contains(x); };
  p.bounding_radius = e.center().norm() + e.semi_axes()[0];
  p.volume_hint = ellipsoid_volume(e);
  p.distance = [e](const VectorX<Scalar>& x) { return distance_to_ellipsoid(e, x); };
  return p;
}

namespace detail {

/// Radial distance to the boundary along direction u (unit), by bisection on
/// the membership oracle. Assumes the origin is interior.
template <typename Scalar>
Scalar radial_boundary(const ConvexBodyProbe<Scalar>& body, const VectorX<Scalar>& u) {
  Scalar lo = 0, hi = body.bounding_radius * Scalar(1 + 1e-12);
  for (int it = 0; it < 60; ++it) {
    const Scalar mid = (lo + hi) / 2;
    if (body.membership(mid * u)) lo = mid;
    else hi = mid;
  }
  return (lo + hi) / 2;
}

/// Distance from an exterior point to the body using only the membership
/// oracle: minimize |x - R(u) u| over boundary directions u by projected
/// descent on the sphere, with numerical tangent gradients. The distance to
/// a convex body from an exterior point has a unique local minimum over the
/// boundary, attained where x - z lies in the outward normal cone.
template <typename Scalar>
Scalar distance_via_membership(const ConvexBodyProbe<Scalar>& body, const VectorX<Scalar>& x) {
  if (body.membership(x)) return Scalar(0);
  const int n = static_cast<int>(x.size());
  const auto phi = [&](const VectorX<Scalar>& u) {
    return (x - radial_boundary(body, u) * u).norm();
  };

  VectorX<Scalar> u = x.normalized();
  Scalar f = phi(u);
  const Scalar h = Scalar(1e-5);
  VectorX<Scalar> w(n), grad(n);
  MatrixX<Scalar> tangent(n, n - 1);
  for (int iter = 0; iter < 100; ++iter) {
    // Householder basis of the tangent space at u
    const Scalar sign = u[0] >= 0 ? Scalar(1) : Scalar(-1);
    w = u;
    w[0] += sign;
    const Scalar wn2 = w.squaredNorm();
    for (int c = 0; c < n - 1; ++c) {
      tangent.col(c) = -(Scalar(2) * w[c + 1] / wn2) * w;
      tangent(c + 1, c) += Scalar(1);
    }
    grad.setZero();
    for (int c = 0; c < n - 1; ++c) {
      const Scalar fp = phi((u + h * tangent.col(c)).normalized());
      const Scalar fm = phi((u - h * tangent.col(c)).normalized());
      grad += ((fp - fm) / (2 * h)) * tangent.col(c);
    }
    const Scalar gnorm = grad.norm();
    if (gnorm <= Scalar(1e-9) * (Scalar(1) + f)) break;
    Scalar step = Scalar(0.5) / (Scalar(1) + gnorm);
    bool moved = false;
    for (int bt = 0; bt < 25; ++bt) {
      const VectorX<Scalar> cand = (u - step * grad).normalized();
      const Scalar fc = phi(cand);
      if (fc < f - Scalar(1e-4) * step * gnorm * gnorm) {
        u = cand;
        f = fc;
        moved = true;
        break;
      }
      step /= 2;
    }
    if (!moved) break;
  }
  return f;
}

}  // namespace detail

struct SteinerFitOptions {
  double rho_max = -1.0;       // default: bounding_radius / 2
  std::vector<double> radii;   // override (must have dim + 1 entries)
};

/// Fits the Steiner polynomial vol(K_rho) = vol K + sum_k binom(n-1,k) M_k
/// rho^{k+1}/(k+1) to Monte Carlo volumes of outer parallel bodies at n+1
/// radii, sharing one sample cloud across radii, and solves for the mean
/// curvature vector. error_estimate holds three propagated standard errors
/// per entry (binomial sampling covariance pushed through the linear solve).
template <typename Scalar>
MeanCurvatures<Scalar> steiner_fit_mean_curvatures(const ConvexBodyProbe<Scalar>& body, int dim,
                                                   long long samples, std::uint64_t seed,
                                                   const SteinerFitOptions& opt = {}) {
  if (dim < 2) throw validation_error("steiner_fit: dimension must be >= 2");
  if (samples < 100000) throw validation_error("steiner_fit: samples must be >= 1e5");
  if (!(body.bounding_radius > 0)) {
    throw validation_error("steiner_fit: bounding_radius must be positive");
  }
  if (!body.membership(VectorX<Scalar>::Zero(dim))) {
    throw validation_error("steiner_fit: the body must contain the origin in its interior");
  }

  const int m = dim + 1;  // number of radii = number of Steiner coefficients
  std::vector<Scalar> radii(m);
  if (!opt.radii.empty()) {
    if (static_cast<int>(opt.radii.size()) != m) {
      throw validation_error("steiner_fit: radii override must have dim+1 entries");
    }
    for (int j = 0; j < m; ++j) radii[j] = Scalar(opt.radii[j]);
  } else {
    // Chebyshev-Gauss nodes of (0, rho_max]; far better conditioned than
    // equispaced radii for the coefficient solve.
    const Scalar rho_max = opt.rho_max > 0 ? Scalar(opt.rho_max) : body.bounding_radius;
    for (int j = 0; j < m; ++j) {
      radii[j] = rho_max * (Scalar(1) + std::cos(Scalar(2 * (m - 1 - j) + 1) *
                                                 std::numbers::pi_v<Scalar> / Scalar(2 * m))) /
                 Scalar(2);
    }
  }
  const Scalar rho_top = *std::max_element(radii.begin(), radii.end());

  const auto dist = [&](const VectorX<Scalar>& x) {
    return body.distance ? body.distance(x) : detail::distance_via_membership(body, x);
  };

  const Scalar big_radius = body.bounding_radius + rho_top;
  const Scalar big_volume =
      unit_ball_volume<Scalar>(dim) * std::pow(big_radius, Scalar(dim));

  std::vector<long long> hits(m, 0);
  for (long long i = 0; i < samples; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    const VectorX<Scalar> y = rng.uniform_in_ball(dim, static_cast<double>(big_radius))
                                  .template cast<Scalar>();
    const Scalar d = dist(y);
    for (int j = 0; j < m; ++j) {
      if (d <= radii[j]) ++hits[j];
    }
  }

  VectorX<Scalar> p(m), vol(m);
  for (int j = 0; j < m; ++j) {
    p[j] = Scalar(hits[j]) / Scalar(samples);
    vol[j] = big_volume * p[j];
  }

  // Scaled Vandermonde rows (1, t_j, ..., t_j^n), t_j = rho_j / rho_top.
  MatrixX<Scalar> A(m, m);
  for (int j = 0; j < m; ++j) {
    Scalar t = radii[j] / rho_top, v = 1;
    for (int k = 0; k < m; ++k) {
      A(j, k) = v;
      v *= t;
    }
  }
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Scalar cond = svd.singularValues()[0] / svd.singularValues()[m - 1];
  if (!(cond < Scalar(1e8))) {
    throw numerical_error("steiner_fit: Steiner system is ill-conditioned (condition number " +
                          std::to_string(static_cast<double>(cond)) + ")");
  }
  const VectorX<Scalar> coeff = svd.solve(vol);

  // Sampling covariance of the shared-cloud volume estimates: the hit
  // indicators are nested across radii, so Cov(p_i, p_j) involves
  // p_{min(i,j)}.
  MatrixX<Scalar> cov(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const Scalar pmin = p[std::min(i, j)] <= p[std::max(i, j)] ? p[std::min(i, j)]
                                                                 : p[std::max(i, j)];
      cov(i, j) = big_volume * big_volume * (pmin - p[i] * p[j]) / Scalar(samples);
    }
  }
  const MatrixX<Scalar> Ainv = A.inverse();
  const MatrixX<Scalar> coeff_cov = Ainv * cov * Ainv.transpose();

  // coeff[k+1] = binom(n-1,k) M_k / (k+1) * rho_top^{k+1}
  VectorX<Scalar> values(dim), err(dim);
  for (int k = 0; k < dim; ++k) {
    const Scalar scale =
        Scalar(k + 1) / (Scalar(binomial(dim - 1, k)) * std::pow(rho_top, Scalar(k + 1)));
    values[k] = coeff[k + 1] * scale;
    err[k] = Scalar(3) * std::sqrt(std::max(Scalar(0), coeff_cov(k + 1, k + 1))) * scale;
  }
  if (!(values.array() > Scalar(0)).all()) {
    throw numerical_error(
        "steiner_fit: sampling budget too small; fitted mean curvatures not positive");
  }
  MeanCurvatures<Scalar> result(dim, std::move(values), CurvatureMethod::SteinerMonteCarlo,
                                std::move(err));
  const Scalar omega = unit_sphere_area<Scalar>(dim - 1);
  validate_gauss_normalization(result,
                               Scalar(2) * (*result.error_estimate)[dim - 1] / omega + Scalar(1e-9));
  return result;
}

}  // namespace quermass
