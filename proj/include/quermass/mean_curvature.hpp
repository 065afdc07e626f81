#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "quermass/constants.hpp"
#include "quermass/ellipsoid.hpp"
#include "quermass/errors.hpp"

namespace quermass {

enum class CurvatureMethod { ClosedFormSphere, BoxFormula, Quadrature, SteinerMonteCarlo };

inline std::string to_string(CurvatureMethod m) {
  switch (m) {
    case CurvatureMethod::ClosedFormSphere: return "closed_form_sphere";
    case CurvatureMethod::BoxFormula: return "box_formula";
    case CurvatureMethod::Quadrature: return "quadrature";
    case CurvatureMethod::SteinerMonteCarlo: return "steiner_monte_carlo";
  }
  return "unknown";
}

/// The vector (M_0, ..., M_{n-1}) of integral mean curvatures of a convex
/// surface in n-space. M_0 is the surface area; M_{n-1} always equals
/// omega_{n-1} because the Gauss map of a convex body covers the sphere once.
template <typename Scalar>
struct MeanCurvatures {
  int dim = 0;
  VectorX<Scalar> values;
  CurvatureMethod method = CurvatureMethod::Quadrature;
  std::optional<VectorX<Scalar>> error_estimate;

  MeanCurvatures(int n, VectorX<Scalar> vals, CurvatureMethod m,
                 std::optional<VectorX<Scalar>> err = std::nullopt)
      : dim(n), values(std::move(vals)), method(m), error_estimate(std::move(err)) {
    if (dim < 1 || values.size() != dim) {
      throw validation_error("MeanCurvatures: values must have length dim >= 1");
    }
    if (!(values.array() > Scalar(0)).all()) {
      throw validation_error("MeanCurvatures: all entries must be strictly positive");
    }
  }
};

using MeanCurvaturesd = MeanCurvatures<double>;

/// Checks M_{n-1} against omega_{n-1} within `slack` (absolute, relative to
/// omega). Throws on gross violation; methods call this with a slack derived
/// from their own error bound.
template <typename Scalar>
void validate_gauss_normalization(const MeanCurvatures<Scalar>& m, Scalar rel_slack) {
  const Scalar omega = unit_sphere_area<Scalar>(m.dim - 1);
  const Scalar err = std::abs(m.values[m.dim - 1] - omega) / omega;
  if (err > rel_slack) {
    throw convergence_error(
        "mean curvature vector fails the Gauss-map normalization check: "
        "M_{n-1} differs from omega_{n-1} by relative " +
        std::to_string(static_cast<double>(err)));
  }
}

/// Sphere of the given radius: all principal curvatures are 1/r, so
/// M_i = omega_{n-1} * r^{n-1-i}.
template <typename Scalar>
MeanCurvatures<Scalar> sphere_mean_curvatures(Scalar radius, int n) {
  if (n < 2) throw validation_error("sphere_mean_curvatures: dimension must be >= 2");
  if (!(radius > Scalar(0))) {
    throw validation_error("sphere_mean_curvatures: radius must be positive");
  }
  const Scalar omega = unit_sphere_area<Scalar>(n - 1);
  VectorX<Scalar> values(n);
  for (int i = 0; i < n; ++i) values[i] = omega * std::pow(radius, Scalar(n - 1 - i));
  return MeanCurvatures<Scalar>(n, std::move(values), CurvatureMethod::ClosedFormSphere,
                                VectorX<Scalar>::Zero(n));
}

/// Rectangular parallelepiped: binom(n-1,i) * M_i = omega_i * s_{n-1-i}(l).
/// This normalization makes the box Steiner polynomial
/// sum_k s_{n-k}(l) kappa_k rho^k reproduce the parallel-body area and
/// volume formulas exactly.
template <typename Scalar>
MeanCurvatures<Scalar> box_mean_curvatures(const Box<Scalar>& b) {
  const int n = b.dim();
  const VectorX<Scalar> s = sym_elem_all(b.side_lengths);
  VectorX<Scalar> values(n);
  for (int i = 0; i < n; ++i) {
    values[i] = unit_sphere_area<Scalar>(i) * s[n - 1 - i] / Scalar(binomial(n - 1, i));
  }
  return MeanCurvatures<Scalar>(n, std::move(values), CurvatureMethod::BoxFormula,
                                VectorX<Scalar>::Zero(n));
}

namespace detail {

/// Gauss-Legendre nodes and weights on [-1, 1].
inline void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(m);
  weights.resize(m);
  for (int i = 0; i < m; ++i) {
    // Newton from the Chebyshev-based initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= m; ++k) {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = m * (x * p1 - p0) / (x * x - 1.0);
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

/// Sums of principal k x k minors of a symmetric matrix S (k = 1..size),
/// i.e. the elementary symmetric functions of its eigenvalues. Supports
/// size <= 5. Minors of positive-definite matrices are positive, so the
/// sums are subtraction-free.
template <typename Scalar>
void principal_minor_sums(const MatrixX<Scalar>& S, VectorX<Scalar>& e) {
  const int k = static_cast<int>(S.rows());
  e.resize(k + 1);
  e[0] = Scalar(1);
  const auto det_sub = [&](const int* idx, int m) -> Scalar {
    switch (m) {
      case 1:
        return S(idx[0], idx[0]);
      case 2:
        return S(idx[0], idx[0]) * S(idx[1], idx[1]) - S(idx[0], idx[1]) * S(idx[1], idx[0]);
      case 3: {
        const Scalar a = S(idx[0], idx[0]), b = S(idx[0], idx[1]), c = S(idx[0], idx[2]);
        const Scalar d = S(idx[1], idx[0]), f = S(idx[1], idx[1]), g = S(idx[1], idx[2]);
        const Scalar h = S(idx[2], idx[0]), i = S(idx[2], idx[1]), j = S(idx[2], idx[2]);
        return a * (f * j - g * i) - b * (d * j - g * h) + c * (d * i - f * h);
      }
      default: {
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, 0, 5, 5> sub(m, m);
        for (int r = 0; r < m; ++r)
          for (int c = 0; c < m; ++c) sub(r, c) = S(idx[r], idx[c]);
        return sub.determinant();
      }
    }
  };
  for (int m = 1; m <= k; ++m) {
    Scalar sum = 0;
    int idx[5];
    for (int i = 0; i < m; ++i) idx[i] = i;
    while (true) {
      sum += det_sub(idx, m);
      int pos = m - 1;
      while (pos >= 0 && idx[pos] == k - m + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < m; ++i) idx[i] = idx[i - 1] + 1;
    }
    e[m] = sum;
  }
}

}  // namespace detail

struct QuadratureOptions {
  int max_points_per_axis = -1;  // refinement cap; -1 = per-dimension default
  double cluster = -1.0;         // endpoint clustering strength; -1 = from aspect ratio
  long long max_points = 600'000'000;
};

namespace detail {

/// One full tensor-product pass over the first-orthant angle box with the
/// given number of panels per axis and Gauss-Legendre order per panel.
/// Returns the M-vector estimate.
template <typename Scalar>
VectorX<Scalar> quadrature_pass(const VectorX<Scalar>& axes, int panels, int order,
                                double lambda, long long& points_used) {
  const int n = static_cast<int>(axes.size());
  const int pdim = n - 1;
  std::vector<double> gl_nodes, gl_weights;
  gauss_legendre(order, gl_nodes, gl_weights);

  const int per_axis = order * panels;

  // Clustered substitution s -> theta on [0, pi/2]: endpoints of the angle
  // box are the coordinate poles, where curvature concentrates for
  // anisotropic bodies.
  const double tl = std::tanh(lambda);
  std::vector<double> theta(per_axis), dtheta(per_axis), axis_weight(per_axis);
  for (int p = 0; p < panels; ++p) {
    for (int q = 0; q < order; ++q) {
      const double s = (p + 0.5 * (1.0 + gl_nodes[q])) / panels;
      const double t = lambda * (2.0 * s - 1.0);
      const double sech = 1.0 / std::cosh(t);
      const int idx = p * order + q;
      theta[idx] = (std::numbers::pi / 4.0) * (std::tanh(t) + tl) / tl;
      dtheta[idx] = (std::numbers::pi / 2.0) * lambda * sech * sech / tl;
      axis_weight[idx] = gl_weights[q] * (0.5 / panels) * dtheta[idx];
    }
  }
  std::vector<double> sin_t(per_axis), cos_t(per_axis);
  for (int i = 0; i < per_axis; ++i) {
    sin_t[i] = std::sin(theta[i]);
    cos_t[i] = std::cos(theta[i]);
  }
  // per-axis combined weight including the sin^{n-2-d} surface factor
  std::vector<std::vector<double>> wtab(pdim, std::vector<double>(per_axis));
  for (int d = 0; d < pdim; ++d) {
    const int expnt = (d < pdim - 1) ? (n - 2 - d) : 0;
    for (int i = 0; i < per_axis; ++i) {
      wtab[d][i] = axis_weight[i] * std::pow(sin_t[i], expnt);
    }
  }

  const Scalar axes_prod = axes.prod();
  VectorX<Scalar> inv_a2 = axes.array().square().inverse();
  VectorX<Scalar> acc = VectorX<Scalar>::Zero(n);

  std::vector<int> it(pdim, 0);
  VectorX<Scalar> u(n), nu(n), w_house(n), e_sym(n), g(n);
  MatrixX<Scalar> tangent(n, pdim), shape(pdim, pdim);

  const long long total = [&] {
    long long t = 1;
    for (int d = 0; d < pdim; ++d) t *= per_axis;
    return t;
  }();
  points_used += total;

  for (long long count = 0; count < total; ++count) {
    // spherical coordinates restricted to the first orthant
    double weight = 1.0, prefix = 1.0;
    for (int d = 0; d < pdim; ++d) {
      const int id = it[d];
      weight *= wtab[d][id];
      if (d < pdim - 1) {
        u[d] = prefix * cos_t[id];
        prefix *= sin_t[id];
      } else {
        u[pdim - 1] = prefix * cos_t[id];
        u[pdim] = prefix * sin_t[id];
      }
    }

    g = u.cwiseQuotient(axes);
    const Scalar gnorm = g.norm();
    const Scalar area_jacobian = axes_prod * gnorm;
    nu = g / gnorm;

    // Householder basis of the tangent space at the surface point.
    const Scalar sign = nu[0] >= Scalar(0) ? Scalar(1) : Scalar(-1);
    w_house = nu;
    w_house[0] += sign;
    const Scalar wnorm2 = w_house.squaredNorm();
    for (int c = 0; c < pdim; ++c) {
      tangent.col(c) = -(Scalar(2) * w_house[c + 1] / wnorm2) * w_house;
      tangent(c + 1, c) += Scalar(1);
    }

    // Shape operator in that basis; eigenvalues are principal curvatures.
    for (int r = 0; r < pdim; ++r) {
      for (int c = r; c < pdim; ++c) {
        Scalar s = 0;
        for (int l = 0; l < n; ++l) s += inv_a2[l] * tangent(l, r) * tangent(l, c);
        shape(r, c) = s / gnorm;
        shape(c, r) = shape(r, c);
      }
    }
    if (pdim == 1) {
      e_sym.resize(2);
      e_sym[0] = Scalar(1);
      e_sym[1] = shape(0, 0);
    } else if (pdim == 2) {
      e_sym.resize(3);
      e_sym[0] = Scalar(1);
      e_sym[1] = shape(0, 0) + shape(1, 1);
      e_sym[2] = shape(0, 0) * shape(1, 1) - shape(0, 1) * shape(1, 0);
    } else {
      principal_minor_sums(shape, e_sym);
    }

    const Scalar common = Scalar(weight) * area_jacobian;
    for (int i = 0; i < n; ++i) {
      acc[i] += common * e_sym[i] / Scalar(binomial(n - 1, i));
    }

    for (int d = pdim - 1; d >= 0; --d) {
      if (++it[d] < per_axis) break;
      it[d] = 0;
    }
  }

  // first-orthant integration covers 1/2^n of the sphere
  return acc * Scalar(1 << n);
}

}  // namespace detail

/// A quadrature run that failed to meet rel_tol within the refinement
/// budget; carries the best estimate obtained.
template <typename Scalar>
class quadrature_convergence_error : public convergence_error {
public:
  quadrature_convergence_error(const std::string& what, MeanCurvatures<Scalar> best)
      : convergence_error(what), best_(std::move(best)) {}
  const MeanCurvatures<Scalar>& best_estimate() const { return best_; }

private:
  MeanCurvatures<Scalar> best_;
};

/// Integral mean curvatures of an ellipsoid by tensor-product
/// Gauss-Legendre over spherical parameter angles, refined geometrically
/// until two successive levels agree within rel_tol. The integrand per
/// point assembles the shape operator from the gradient and Hessian of the
/// defining quadratic and takes elementary symmetric functions of its
/// eigenvalues.
template <typename Scalar>
MeanCurvatures<Scalar> ellipsoid_mean_curvatures_quadrature(const Ellipsoid<Scalar>& e,
                                                            Scalar rel_tol,
                                                            QuadratureOptions opt = {}) {
  const int n = e.dim();
  if (n < 2) throw validation_error("quadrature: dimension must be >= 2");
  if (!(rel_tol >= Scalar(1e-12) && rel_tol <= Scalar(1e-2))) {
    throw validation_error("quadrature: rel_tol must lie in [1e-12, 1e-2]");
  }
  const VectorX<Scalar>& a = e.semi_axes();
  const Scalar aspect = a[0] / a[n - 1];
  if (aspect > Scalar(1e6)) {
    throw validation_error(
        "quadrature: aspect ratio a_1/a_n exceeds 1e6; curvature peaks exceed "
        "the refinement budget");
  }

  static constexpr int kDefaultAxisCap[7] = {0, 0, 4096, 1024, 240, 96, 40};
  const int axis_cap =
      opt.max_points_per_axis > 0 ? opt.max_points_per_axis : kDefaultAxisCap[std::min(n, 6)];
  const double lambda =
      opt.cluster > 0
          ? opt.cluster
          : std::min(4.0, std::max(0.8, 0.6 * std::log(static_cast<double>(aspect)) + 0.4));

  // Per-axis point counts grow by 3/2 per level; each count is realized as
  // (panels, order) with the per-panel order kept moderate.
  std::vector<std::pair<int, int>> ladder;  // (panels, order)
  for (int N = 8; N <= axis_cap; N = std::max(N + 1, N + N / 2)) {
    int panels = 1;
    while (N / panels > 48) panels *= 2;
    ladder.emplace_back(panels, (N + panels - 1) / panels);
  }

  long long points_used = 0;
  VectorX<Scalar> prev, curr;
  VectorX<Scalar> err = VectorX<Scalar>::Zero(n);
  bool converged = false;
  for (std::size_t level = 0; level < ladder.size(); ++level) {
    const auto [panels, order] = ladder[level];
    long long next_cost = 1;
    for (int d = 0; d < n - 1; ++d) next_cost *= static_cast<long long>(panels) * order;
    if (level > 0 && points_used + next_cost > opt.max_points) break;
    curr = detail::quadrature_pass(a, panels, order, lambda, points_used);
    if (level > 0) {
      err = (curr - prev).cwiseAbs();
      converged = true;
      for (int i = 0; i < n; ++i) {
        if (err[i] > rel_tol * std::abs(curr[i])) converged = false;
      }
      if (converged) break;
    }
    prev = curr;
  }

  if (!converged) {
    MeanCurvatures<Scalar> best(n, curr.cwiseMax(Scalar(1e-300)), CurvatureMethod::Quadrature,
                                err);
    throw quadrature_convergence_error<Scalar>(
        "quadrature: tolerance " + std::to_string(static_cast<double>(rel_tol)) +
            " not reached within the refinement budget (" + std::to_string(axis_cap) +
            " points per axis, " + std::to_string(points_used) + " total)",
        std::move(best));
  }

  MeanCurvatures<Scalar> result(n, std::move(curr), CurvatureMethod::Quadrature, err);
  validate_gauss_normalization(result, std::max(Scalar(50) * rel_tol, Scalar(1e-10)));
  return result;
}

}  // namespace quermass
