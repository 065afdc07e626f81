#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <vector>

#include "quermass/constants.hpp"
#include "quermass/errors.hpp"
#include "quermass/symmetric.hpp"

namespace quermass {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Solid ellipsoid { c + F diag(a) u : |u| <= 1 }: orthonormal frame F whose
/// columns are the principal directions, semi-axes a sorted non-increasing.
template <typename Scalar>
class Ellipsoid {
public:
  static constexpr Scalar kFrameTol = Scalar(1e-12);

  Ellipsoid(VectorX<Scalar> semi_axes, MatrixX<Scalar> frame, VectorX<Scalar> center)
      : center_(std::move(center)), frame_(std::move(frame)), semi_axes_(std::move(semi_axes)) {
    const Eigen::Index n = semi_axes_.size();
    if (n < 1) throw validation_error("Ellipsoid: dimension must be positive");
    if (center_.size() != n || frame_.rows() != n || frame_.cols() != n) {
      throw validation_error("Ellipsoid: center/frame dimensions must match semi_axes");
    }
    if (!(semi_axes_.array() > Scalar(0)).all()) {
      throw validation_error("Ellipsoid: all semi-axes must be strictly positive");
    }
    const Scalar ortho = (frame_.transpose() * frame_ - MatrixX<Scalar>::Identity(n, n))
                             .cwiseAbs()
                             .maxCoeff();
    if (ortho > kFrameTol) {
      throw validation_error("Ellipsoid: frame must be orthonormal within 1e-12");
    }
    canonicalize_order();
  }

  /// Axis-aligned ellipsoid centered at the origin.
  static Ellipsoid from_semi_axes(VectorX<Scalar> semi_axes) {
    const Eigen::Index n = semi_axes.size();
    return Ellipsoid(std::move(semi_axes), MatrixX<Scalar>::Identity(n, n),
                     VectorX<Scalar>::Zero(n));
  }

  static Ellipsoid ball(int dim, Scalar radius) {
    return from_semi_axes(VectorX<Scalar>::Constant(dim, radius));
  }

  int dim() const { return static_cast<int>(semi_axes_.size()); }
  const VectorX<Scalar>& center() const { return center_; }
  const MatrixX<Scalar>& frame() const { return frame_; }
  const VectorX<Scalar>& semi_axes() const { return semi_axes_; }

  /// sigma_i = 1 / a_i and lambda_i = sigma_i^2 (eigenvalues of the defining
  /// quadratic form).
  VectorX<Scalar> sigmas() const { return semi_axes_.cwiseInverse(); }
  VectorX<Scalar> form_eigenvalues() const { return semi_axes_.array().square().inverse(); }

  /// Matrix M of the solid-body inequality (x-c)^T M (x-c) <= 1.
  MatrixX<Scalar> form_matrix() const {
    return frame_ * form_eigenvalues().asDiagonal() * frame_.transpose();
  }

  /// Value of the defining quadratic form at x; <= 1 inside.
  Scalar form_value(const VectorX<Scalar>& x) const {
    VectorX<Scalar> y = frame_.transpose() * (x - center_);
    return (y.cwiseQuotient(semi_axes_)).squaredNorm();
  }

  bool contains(const VectorX<Scalar>& x) const { return form_value(x) <= Scalar(1); }

  /// Half-width of the axis-aligned bounding box along coordinate j
  /// (support function in direction e_j).
  Scalar axis_extent(Eigen::Index j) const {
    return (frame_.row(j).transpose().cwiseProduct(semi_axes_)).norm();
  }

  /// Uniform scaling about the center.
  Ellipsoid scaled(Scalar factor) const {
    if (factor <= Scalar(0)) throw validation_error("Ellipsoid: scale factor must be positive");
    return Ellipsoid(semi_axes_ * factor, frame_, center_);
  }

  Ellipsoid translated(const VectorX<Scalar>& t) const {
    return Ellipsoid(semi_axes_, frame_, center_ + t);
  }

private:
  // Sort semi-axes non-increasing, permuting frame columns alongside.
  void canonicalize_order() {
    const Eigen::Index n = semi_axes_.size();
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), Eigen::Index(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return semi_axes_[i] > semi_axes_[j]; });
    VectorX<Scalar> axes(n);
    MatrixX<Scalar> frame(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      axes[k] = semi_axes_[order[k]];
      frame.col(k) = frame_.col(order[k]);
    }
    semi_axes_ = std::move(axes);
    frame_ = std::move(frame);
  }

  VectorX<Scalar> center_;
  MatrixX<Scalar> frame_;
  VectorX<Scalar> semi_axes_;
};

/// Axis-aligned rectangular parallelepiped with side lengths l_i.
template <typename Scalar>
struct Box {
  VectorX<Scalar> side_lengths;
  VectorX<Scalar> center;

  Box(VectorX<Scalar> sides, VectorX<Scalar> c)
      : side_lengths(std::move(sides)), center(std::move(c)) {
    if (side_lengths.size() < 1) throw validation_error("Box: dimension must be positive");
    if (center.size() != side_lengths.size()) {
      throw validation_error("Box: center dimension must match side_lengths");
    }
    if (!(side_lengths.array() > Scalar(0)).all()) {
      throw validation_error("Box: all side lengths must be strictly positive");
    }
  }

  explicit Box(const VectorX<Scalar>& sides)
      : Box(sides, VectorX<Scalar>::Zero(sides.size())) {}

  int dim() const { return static_cast<int>(side_lengths.size()); }
  Scalar volume() const { return side_lengths.prod(); }
};

/// The ellipsoid { x : |A x| = 1 } for non-singular A, centered at the
/// origin. Semi-axes are the reciprocal singular values of A; the frame
/// comes from the right singular vectors.
template <typename Scalar>
Ellipsoid<Scalar> ellipsoid_from_matrix(const MatrixX<Scalar>& A) {
  if (A.rows() != A.cols() || A.rows() < 1) {
    throw validation_error("ellipsoid_from_matrix: A must be square and nonempty");
  }
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(A, Eigen::ComputeFullV);
  const VectorX<Scalar>& sigma = svd.singularValues();
  if (sigma[sigma.size() - 1] <= Scalar(1e-12) * sigma[0]) {
    throw validation_error(
        "ellipsoid_from_matrix: A is singular or near-singular "
        "(smallest singular value <= 1e-12 * largest)");
  }
  const Eigen::Index n = A.rows();
  VectorX<Scalar> axes(n);
  MatrixX<Scalar> frame(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    axes[i] = Scalar(1) / sigma[n - 1 - i];  // reversed: largest axis first
    frame.col(i) = svd.matrixV().col(n - 1 - i);
  }
  return Ellipsoid<Scalar>(std::move(axes), std::move(frame), VectorX<Scalar>::Zero(n));
}

/// vol E = kappa_n * prod a_i.
template <typename Scalar>
Scalar ellipsoid_volume(const Ellipsoid<Scalar>& e) {
  return unit_ball_volume<Scalar>(e.dim()) * e.semi_axes().prod();
}

using Ellipsoidd = Ellipsoid<double>;
using Boxd = Box<double>;

}  // namespace quermass
