// Independent oracles for the test suites. Everything here deliberately
// avoids the code paths it is used to check: brute-force enumeration,
// closed forms, AGM, and direct geometric decompositions.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracles {

// statistical critical values used by the suites
inline constexpr double kChiSquared99Dof99 = 134.64161685578915;   // P(chi2_99 <= x) = 0.99
inline constexpr double kStudentT95Dof48 = 1.6772241961243388;     // one-sided, 48 dof

// s_k by explicit subset enumeration; exponential, fine for n <= 12
inline double sym_elem_bruteforce(const Eigen::VectorXd& a, int k) {
  const int n = static_cast<int>(a.size());
  if (k == 0) return 1.0;
  double sum = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    double prod = 1.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) prod *= a[i];
    }
    sum += prod;
  }
  return sum;
}

// Mean curvature vector of a 3-box by direct enumeration of faces, edges,
// and vertices with their exterior angles (pi/2 per edge, octant per
// vertex).
inline Eigen::Vector3d box3_mean_curvatures(double l1, double l2, double l3) {
  const double area = 2.0 * (l1 * l2 + l1 * l3 + l2 * l3);
  double edge_sum = 0.0;  // sum over the 12 edges of length * exterior angle
  for (const double l : {l1, l2, l3}) edge_sum += 4.0 * l * (std::numbers::pi / 2.0);
  const double vertex_sum = 8.0 * (4.0 * std::numbers::pi / 8.0);
  // binom(2,0) M0 = area, binom(2,1) M1 = edge_sum, binom(2,2) M2 = vertex_sum
  return {area, edge_sum / 2.0, vertex_sum};
}

// Surface area of the prolate spheroid with semi-axes (a, a, c), c > a.
inline double prolate_spheroid_area(double a, double c) {
  const double e = std::sqrt(1.0 - (a * a) / (c * c));
  return 2.0 * std::numbers::pi * a * a * (1.0 + (c / (a * e)) * std::asin(e));
}

// Ellipse perimeter 4 a E(m), with the complete elliptic integrals from the
// arithmetic-geometric mean.
inline double ellipse_perimeter(double a, double b) {
  if (a < b) std::swap(a, b);
  const double m = 1.0 - (b * b) / (a * a);
  double x = 1.0, y = std::sqrt(1.0 - m);
  double sum = 1.0 - 0.5 * m;  // 1 - sum 2^{j-1} c_j^2 accumulates below
  double pow2 = 0.5;
  for (int it = 0; it < 60; ++it) {
    const double c = 0.5 * (x - y);
    const double xn = 0.5 * (x + y), yn = std::sqrt(x * y);
    x = xn;
    y = yn;
    pow2 *= 2.0;
    sum -= pow2 * c * c;
    if (c < 1e-17) break;
  }
  const double K = std::numbers::pi / (2.0 * x);
  const double E = K * sum;
  return 4.0 * a * E;
}

// Lattice points in the closed disk of integer radius R, by the classical
// divisor correction of the leading term.
inline long long circle_lattice_count(long long R) {
  const long long R2 = R * R;
  long long N = 1;
  for (long long j = 0;; ++j) {
    const long long a = R2 / (4 * j + 1);
    const long long b = R2 / (4 * j + 3);
    if (a == 0) break;
    N += 4 * (a - b);
  }
  return N;
}

// Outer parallel body of a 3-box decomposed into slabs, quarter cylinders,
// and sphere octants.
inline double rounded_box3_area(double l1, double l2, double l3, double rho) {
  const double faces = 2.0 * (l1 * l2 + l1 * l3 + l2 * l3);
  const double edges = 2.0 * std::numbers::pi * rho * (l1 + l2 + l3);
  const double corners = 4.0 * std::numbers::pi * rho * rho;
  return faces + edges + corners;
}

inline double rounded_box3_volume(double l1, double l2, double l3, double rho) {
  const double core = l1 * l2 * l3;
  const double slabs = 2.0 * (l1 * l2 + l1 * l3 + l2 * l3) * rho;
  const double cylinders = std::numbers::pi * rho * rho * (l1 + l2 + l3);
  const double ball = 4.0 * std::numbers::pi * rho * rho * rho / 3.0;
  return core + slabs + cylinders + ball;
}

// Steiner circumellipse of a triangle: the centered conic through the three
// vertices, solved from the 3x3 linear system for the quadratic form.
struct CircumEllipse {
  Eigen::Matrix2d form;   // (x-g)^T Q (x-g) = 1 on the boundary
  Eigen::Vector2d center;
  double area;
};

inline CircumEllipse steiner_circumellipse(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1,
                                           const Eigen::Vector2d& p2) {
  const Eigen::Vector2d g = (p0 + p1 + p2) / 3.0;
  Eigen::Matrix3d A;
  Eigen::Vector3d rhs = Eigen::Vector3d::Ones();
  const Eigen::Vector2d d0 = p0 - g, d1 = p1 - g, d2 = p2 - g;
  A << d0.x() * d0.x(), 2.0 * d0.x() * d0.y(), d0.y() * d0.y(),
       d1.x() * d1.x(), 2.0 * d1.x() * d1.y(), d1.y() * d1.y(),
       d2.x() * d2.x(), 2.0 * d2.x() * d2.y(), d2.y() * d2.y();
  const Eigen::Vector3d q = A.fullPivLu().solve(rhs);
  CircumEllipse ce;
  ce.form << q[0], q[1], q[1], q[2];
  ce.center = g;
  ce.area = std::numbers::pi / std::sqrt(ce.form.determinant());
  return ce;
}

// Distance from a point to the convex hull of a point set (columns), by
// Gilbert's iteration with the vertex support oracle. Returns ~0 for points
// inside the hull.
inline double hull_distance(const Eigen::MatrixXd& pts, const Eigen::VectorXd& y,
                            int max_iter = 4000) {
  Eigen::Index best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < pts.cols(); ++j) {
    const double d = (y - pts.col(j)).squaredNorm();
    if (d < bd) {
      bd = d;
      best = j;
    }
  }
  Eigen::VectorXd w = pts.col(best);
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::VectorXd dir = y - w;
    if (dir.norm() < 1e-12) return 0.0;
    Eigen::Index sup = 0;
    double bestdot = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < pts.cols(); ++j) {
      const double d = dir.dot(pts.col(j));
      if (d > bestdot) {
        bestdot = d;
        sup = j;
      }
    }
    const Eigen::VectorXd v = pts.col(sup);
    if (dir.dot(v - w) <= 1e-14 * (1.0 + dir.norm())) break;  // no improving vertex
    // closest point to y on the segment [w, v]
    const Eigen::VectorXd seg = v - w;
    const double t = std::clamp(seg.dot(y - w) / seg.squaredNorm(), 0.0, 1.0);
    w += t * seg;
  }
  return (y - w).norm();
}

// Distance from a point to a solid origin-centered axis-aligned ellipse,
// via dense boundary sampling plus golden-section refinement. Test-local
// alternative to the library's Newton path.
inline double ellipse_distance_sampled(double a, double b, const Eigen::Vector2d& y) {
  if ((y.x() * y.x()) / (a * a) + (y.y() * y.y()) / (b * b) <= 1.0) return 0.0;
  const auto bd = [&](double th) {
    const double dx = y.x() - a * std::cos(th), dy = y.y() - b * std::sin(th);
    return std::sqrt(dx * dx + dy * dy);
  };
  double best_th = 0.0, best = bd(0.0);
  const int N = 2048;
  for (int i = 1; i < N; ++i) {
    const double th = 2.0 * std::numbers::pi * i / N;
    const double d = bd(th);
    if (d < best) {
      best = d;
      best_th = th;
    }
  }
  double lo = best_th - 2.0 * std::numbers::pi / N, hi = best_th + 2.0 * std::numbers::pi / N;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  for (int i = 0; i < 80; ++i) {
    if (bd(c) < bd(d)) hi = d;
    else lo = c;
    c = hi - gr * (hi - lo);
    d = lo + gr * (hi - lo);
  }
  return bd(0.5 * (lo + hi));
}

// Ordinary least squares slope and its standard error for y against x.
struct SlopeFit {
  double slope = 0;
  double std_error = 0;
  double t_statistic = 0;
};

inline SlopeFit ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  double rss = 0;
  for (int i = 0; i < n; ++i) {
    const double resid = y[i] - my - slope * (x[i] - mx);
    rss += resid * resid;
  }
  const double se = std::sqrt(rss / (n - 2) / sxx);
  return {slope, se, slope / se};
}

}  // namespace oracles
