#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace quermass {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Counter-based generator keyed by (seed, stream). Output i depends only on
/// (seed, stream, i), so streams are independent and results do not depend on
/// how work is partitioned across workers.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(detail::mix64(seed ^ detail::mix64(stream + 0x9E3779B97F4A7C15ull))) {}

  std::uint64_t next_u64() {
    return detail::mix64(key_ + (++counter_) * 0x9E3779B97F4A7C15ull);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Standard normal via Box-Muller (pairs cached).
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform01(), u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(t);
    have_cached_ = true;
    return r * std::cos(t);
  }

  Eigen::VectorXd gaussian_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  /// Uniform in the solid n-ball of the given radius.
  Eigen::VectorXd uniform_in_ball(int n, double radius) {
    Eigen::VectorXd g = gaussian_vector(n);
    double norm = g.norm();
    while (norm == 0.0) {
      g = gaussian_vector(n);
      norm = g.norm();
    }
    const double r = radius * std::pow(uniform01(), 1.0 / n);
    return g * (r / norm);
  }

  /// Uniform on the unit sphere in n-space.
  Eigen::VectorXd uniform_on_sphere(int n) {
    Eigen::VectorXd g = gaussian_vector(n);
    double norm = g.norm();
    while (norm == 0.0) {
      g = gaussian_vector(n);
      norm = g.norm();
    }
    return g / norm;
  }

  /// Haar-distributed rotation (QR of a Gaussian matrix with sign fix).
  Eigen::MatrixXd haar_rotation(int n) {
    Eigen::MatrixXd g(n, n);
    for (int j = 0; j < n; ++j) g.col(j) = gaussian_vector(n);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
      if (r(j, j) < 0) q.col(j) = -q.col(j);
    }
    return q;
  }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace quermass
