#pragma once

#include <Eigen/Dense>

#include "quermass/errors.hpp"

namespace quermass {

/// All elementary symmetric functions s_0..s_n of the entries of `values`,
/// i.e. the coefficients in prod_i (x + a_i) = sum_k x^k s_{n-k}. Computed by
/// the product-polynomial recurrence, which is subtraction-free for
/// nonnegative inputs.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> sym_elem_all(
    const Eigen::MatrixBase<Derived>& values) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = values.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> e = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n + 1);
  e[0] = Scalar(1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar a = values[i];
    for (Eigen::Index k = i + 1; k >= 1; --k) e[k] += a * e[k - 1];
  }
  return e;
}

/// s_k(values); k must lie in [0, n].
template <typename Derived>
typename Derived::Scalar sym_elem(const Eigen::MatrixBase<Derived>& values, int k) {
  if (k < 0 || k > values.size()) {
    throw validation_error("sym_elem: order k must satisfy 0 <= k <= n");
  }
  return sym_elem_all(values)[k];
}

}  // namespace quermass
