#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "quermass/bounds.hpp"
#include "quermass/ellipsoid.hpp"
#include "quermass/errors.hpp"

namespace quermass {

/// Minimum-volume enclosing ellipsoid of a finite point set, with the
/// support weights of the optimality certificate.
struct MveeResult {
  Ellipsoidd ellipsoid;
  Eigen::VectorXd weights;
  long long iterations = 0;
  double gap = 0;  // final optimality gap max(kappa_max/d - 1, 1 - kappa_min/d)
  bool centrally_symmetric = false;
};

class mvee_convergence_error : public convergence_error {
public:
  mvee_convergence_error(const std::string& what, MveeResult best)
      : convergence_error(what), best_(std::move(best)) {}
  const MveeResult& best_iterate() const { return best_; }

private:
  MveeResult best_;
};

namespace detail {

// Shared state of the multiplicative-weights ascent on the log-det design
// problem: M(u) = sum u_j q_j q_j^T, kappa_j = q_j^T M^{-1} q_j,
// optimal when all support kappa equal the lifted dimension d.
struct DesignAscent {
  const Eigen::MatrixXd& Q;  // d x m
  Eigen::VectorXd u;
  Eigen::MatrixXd Minv;
  Eigen::VectorXd kappa;
  long long iterations = 0;

  explicit DesignAscent(const Eigen::MatrixXd& q) : Q(q) {
    const Eigen::Index m = Q.cols();
    u = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
    refactor();
  }

  void refactor() {
    const Eigen::Index d = Q.rows();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index j = 0; j < Q.cols(); ++j) {
      if (u[j] > 0) M.noalias() += u[j] * Q.col(j) * Q.col(j).transpose();
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(M);
    const Eigen::VectorXd D = ldlt.vectorD();
    if (ldlt.info() != Eigen::Success || (D.array() <= D.maxCoeff() * 1e-14).any()) {
      throw validation_error("mvee: points do not span the space (rank-deficient design)");
    }
    Minv = ldlt.solve(Eigen::MatrixXd::Identity(d, d));
    kappa = (Q.transpose() * (Minv * Q)).diagonal();
  }

  // One Frank-Wolfe or away step toward equalized kappa. Returns the pair
  // of optimality gaps seen before the step.
  std::pair<double, double> step() {
    const double d = static_cast<double>(Q.rows());
    Eigen::Index jmax = 0, jmin = -1;
    double kmax = -1.0, kmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < kappa.size(); ++j) {
      if (kappa[j] > kmax) {
        kmax = kappa[j];
        jmax = j;
      }
      if (u[j] > 0 && kappa[j] < kmin) {
        kmin = kappa[j];
        jmin = j;
      }
    }
    const double gap_plus = kmax / d - 1.0;
    const double gap_minus = 1.0 - kmin / d;
    ++iterations;

    if (gap_plus >= gap_minus) {
      const double kap = kmax;
      const double alpha = (kap - d) / (d * (kap - 1.0));
      if (!(alpha > 0)) return {gap_plus, gap_minus};
      const Eigen::VectorXd Mq = Minv * Q.col(jmax);
      const Eigen::VectorXd w = Q.transpose() * Mq;
      const double denom = 1.0 - alpha + alpha * kap;
      Minv = (Minv - (alpha / denom) * (Mq * Mq.transpose())) / (1.0 - alpha);
      kappa = (kappa - (alpha / denom) * w.cwiseAbs2()) / (1.0 - alpha);
      u *= (1.0 - alpha);
      u[jmax] += alpha;
    } else {
      const double kap = kmin;
      const double cap = u[jmin] / (1.0 - u[jmin]);
      double beta = cap;
      if (kap > 1.0) beta = std::min(beta, (d - kap) / (d * (kap - 1.0)));
      const double s = beta / (1.0 + beta);
      const double denom = 1.0 - s * kap;
      if (denom <= 1e-12) {
        // nearly rank-dropping downdate; take the safe full recomputation
        u *= (1.0 + beta);
        u[jmin] -= beta;
        if (beta == cap) u[jmin] = 0.0;
        u /= u.sum();
        refactor();
        return {gap_plus, gap_minus};
      }
      const Eigen::VectorXd Mq = Minv * Q.col(jmin);
      const Eigen::VectorXd w = Q.transpose() * Mq;
      Minv = (Minv + (s / denom) * (Mq * Mq.transpose())) / (1.0 - s);
      kappa = (kappa + (s / denom) * w.cwiseAbs2()) / (1.0 - s);
      u *= (1.0 + beta);
      u[jmin] -= beta;
      if (beta == cap) u[jmin] = 0.0;
    }
    return {gap_plus, gap_minus};
  }
};

inline void check_central_symmetry(const Eigen::MatrixXd& points, const Eigen::VectorXd& about,
                                   double tol) {
  const Eigen::Index m = points.cols();
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::VectorXd target = 2.0 * about - points.col(i);
    bool found = false;
    for (Eigen::Index j = 0; j < m && !found; ++j) {
      found = (points.col(j) - target).lpNorm<Eigen::Infinity>() <= tol;
    }
    if (!found) {
      throw validation_error(
          "mvee: centrally_symmetric was requested but the point set is not "
          "closed under reflection about its centroid (point " +
          std::to_string(i) + " has no mirror partner within 1e-9)");
    }
  }
}

}  // namespace detail

/// (1+epsilon)-optimal minimum-volume enclosing ellipsoid by Khachiyan-style
/// multiplicative-weights ascent with Wolfe-type away steps that drop slack
/// weights. Deterministic for fixed inputs. With centrally_symmetric the
/// problem is solved in the centered formulation over the reflected pairs,
/// after validating that the input really is symmetric about its centroid.
inline MveeResult mvee(const Eigen::MatrixXd& points, double epsilon = 1e-9,
                       long long max_iterations = 1000000, bool centrally_symmetric = false) {
  const Eigen::Index n = points.rows();
  const Eigen::Index m = points.cols();
  if (n < 1 || m < n + 1) {
    throw validation_error("mvee: need at least n+1 points in n-space");
  }
  if (!(epsilon >= 1e-10 && epsilon <= 1e-2)) {
    throw validation_error("mvee: epsilon must lie in [1e-10, 1e-2]");
  }

  const double scale = std::max(1.0, points.cwiseAbs().maxCoeff());
  Eigen::VectorXd centroid = points.rowwise().mean();
  if (centrally_symmetric) {
    detail::check_central_symmetry(points, centroid, 1e-9 * scale);
  }

  // Lifted rows (x, 1) in the general case; centered rows in the symmetric
  // case, where the center is pinned by symmetry.
  const Eigen::Index d = centrally_symmetric ? n : n + 1;
  Eigen::MatrixXd Q(d, m);
  if (centrally_symmetric) {
    Q = points.colwise() - centroid;
  } else {
    Q.topRows(n) = points;
    Q.row(n).setOnes();
  }

  detail::DesignAscent ascent(Q);
  bool converged = false;
  double gap = 0;
  while (ascent.iterations < max_iterations) {
    const auto [gp, gm] = ascent.step();
    gap = std::max(gp, gm);
    if (gap <= epsilon) {
      // confirm against freshly factored state; incremental updates drift
      ascent.refactor();
      double kmax = -1.0, kmin = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < m; ++j) {
        kmax = std::max(kmax, ascent.kappa[j]);
        if (ascent.u[j] > 0) kmin = std::min(kmin, ascent.kappa[j]);
      }
      gap = std::max(kmax / static_cast<double>(d) - 1.0,
                     1.0 - kmin / static_cast<double>(d));
      if (gap <= epsilon) {
        converged = true;
        break;
      }
    }
    if (ascent.iterations % 4096 == 0) ascent.refactor();
  }

  const auto extract = [&]() -> MveeResult {
    Eigen::VectorXd center;
    Eigen::MatrixXd sigma;
    if (centrally_symmetric) {
      center = centroid;
      sigma = Eigen::MatrixXd::Zero(n, n);
      for (Eigen::Index j = 0; j < m; ++j) {
        if (ascent.u[j] > 0) sigma.noalias() += ascent.u[j] * Q.col(j) * Q.col(j).transpose();
      }
    } else {
      center = points * ascent.u;
      sigma = Eigen::MatrixXd::Zero(n, n);
      for (Eigen::Index j = 0; j < m; ++j) {
        if (ascent.u[j] > 0) {
          const Eigen::VectorXd z = points.col(j) - center;
          sigma.noalias() += ascent.u[j] * z * z.transpose();
        }
      }
    }
    // E = { x : (x-c)^T sigma^{-1} (x-c) <= n }, so semi-axes are
    // sqrt(n * eigenvalues).
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
    Eigen::VectorXd axes =
        (static_cast<double>(n) * es.eigenvalues().cwiseMax(0.0)).cwiseSqrt();
    if (!(axes.array() > 0).all()) {
      throw validation_error("mvee: degenerate enclosing ellipsoid (rank-deficient point set)");
    }
    MveeResult r{Ellipsoidd(axes, es.eigenvectors(), center), ascent.u, ascent.iterations, gap,
                 centrally_symmetric};
    return r;
  };

  if (!converged) {
    throw mvee_convergence_error("mvee: iteration cap " + std::to_string(max_iterations) +
                                     " reached with optimality gap " + std::to_string(gap),
                                 extract());
  }
  return extract();
}

/// Interval for s_{n-1-i} of the John semi-axes implied by one measured
/// integral mean curvature of the body: the containment chain
/// t E_K subset K subset E_K turns the box pinch around.
struct SymmetricFunctionInterval {
  int order = 0;  // which s_k
  double lower = 0;
  double upper = 0;
};

inline SymmetricFunctionInterval axes_symmetric_function_interval(int n, int i,
                                                                  double mean_curvature_value,
                                                                  bool centrally_symmetric) {
  if (i < 0 || i >= n) throw validation_error("axes interval: index i must satisfy 0 <= i <= n-1");
  if (!(mean_curvature_value > 0)) {
    throw validation_error("axes interval: mean curvature value must be positive");
  }
  const double t = centrally_symmetric ? 1.0 / std::sqrt(static_cast<double>(n))
                                       : 1.0 / static_cast<double>(n);
  const double C = pinch_upper_coefficient<double>(n, i);
  const double c_low =
      C / pinch_ratio<double>(n, i) * std::pow(t, static_cast<double>(n - 1 - i));
  return {n - 1 - i, mean_curvature_value / C, mean_curvature_value / c_low};
}

/// Sandwich of a convex body (given by points) between shrunken and full
/// John ellipsoids: conservative intervals for every M_i(K), with the box
/// pinch applied at both endpoints, plus the implied intervals for the
/// elementary symmetric functions of the John semi-axes.
struct JohnSandwich {
  int dim = 0;
  double shrink = 0;  // t with t E_K subset K
  MveeResult enclosing;
  std::vector<BoundIntervald> m_intervals;
  std::vector<SymmetricFunctionInterval> s_intervals;
};

inline JohnSandwich john_sandwich(const Eigen::MatrixXd& points, bool centrally_symmetric,
                                  double epsilon = 1e-9) {
  const int n = static_cast<int>(points.rows());
  MveeResult enclosing = mvee(points, epsilon, 1000000, centrally_symmetric);
  const double shrink = centrally_symmetric ? 1.0 / std::sqrt(static_cast<double>(n))
                                            : 1.0 / static_cast<double>(n);
  const Ellipsoidd& ek = enclosing.ellipsoid;
  const Ellipsoidd shrunk = ek.scaled(shrink);
  std::vector<BoundIntervald> m_intervals;
  std::vector<SymmetricFunctionInterval> s_intervals;
  for (int i = 0; i < n; ++i) {
    const auto lo = pinch_bounds(shrunk, i);
    const auto hi = pinch_bounds(ek, i);
    const double c_eff =
        lo.constants_used.c * std::pow(shrink, static_cast<double>(n - 1 - i));
    BoundIntervald b;
    b.lower = lo.lower;
    b.upper = hi.upper;
    b.quantity = {BoundQuantityKind::MeanCurvature, i, 0.0};
    b.constants_used = {c_eff, hi.constants_used.C, b.upper / b.lower, std::nullopt};
    m_intervals.push_back(b);
    s_intervals.push_back({n - 1 - i, b.lower / hi.constants_used.C, b.upper / c_eff});
  }
  return JohnSandwich{n, shrink, std::move(enclosing), std::move(m_intervals),
                      std::move(s_intervals)};
}

}  // namespace quermass
