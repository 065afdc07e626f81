#include <doctest.h>

#include <cmath>
#include <numbers>
#include <quermass/constants.hpp>
#include <quermass/ellipsoid.hpp>
#include <quermass/rng.hpp>
#include <quermass/symmetric.hpp>

#include "oracles.hpp"

using namespace quermass;

TEST_CASE("dimensional constants satisfy their defining identities") {
  const auto c = DimensionalConstants<double>::up_to(12);
  for (int k = 1; k <= 12; ++k) {
    const double expected = std::pow(std::numbers::pi, k / 2.0) / std::tgamma(k / 2.0 + 1.0);
    CHECK(c.kappa[k - 1] == doctest::Approx(expected).epsilon(1e-14));
  }
  for (int k = 0; k < 12; ++k) {
    CHECK(c.omega[k] == doctest::Approx((k + 1) * c.kappa[k]).epsilon(1e-14));
  }
  CHECK(c.omega[0] == doctest::Approx(2.0));
  CHECK(c.omega[1] == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(c.omega[2] == doctest::Approx(4.0 * std::numbers::pi));
}

TEST_CASE("gamma at half-integers matches the standard library") {
  for (int t = 1; t <= 25; ++t) {
    CHECK(gamma_half<double>(t) == doctest::Approx(std::tgamma(t / 2.0)).epsilon(1e-13));
  }
}

TEST_CASE("sym_elem handles the inline examples") {
  Eigen::VectorXd v(3);
  v << 1, 2, 3;
  CHECK(sym_elem(v, 2) == doctest::Approx(11.0));
  CHECK(sym_elem(v, 0) == doctest::Approx(1.0));
  CHECK(sym_elem(v, 3) == doctest::Approx(6.0));
  CHECK_THROWS_AS(sym_elem(v, 4), validation_error);
  CHECK_THROWS_AS(sym_elem(v, -1), validation_error);
}

TEST_CASE("sym_elem agrees with brute-force subset sums") {
  CounterRng rng(101, 0);
  for (int n = 1; n <= 12; ++n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.uniform(0.01, 5.0);
    for (int k = 0; k <= n; ++k) {
      const double expect = oracles::sym_elem_bruteforce(v, k);
      CHECK(sym_elem(v, k) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("sym_elem homogeneity: s_k(lambda a) = lambda^k s_k(a)") {
  CounterRng rng(102, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform01() * 7);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.uniform(0.1, 4.0);
    const double lam = rng.uniform(0.2, 5.0);
    for (int k = 0; k <= n; ++k) {
      CHECK(sym_elem((lam * v).eval(), k) ==
            doctest::Approx(std::pow(lam, k) * sym_elem(v, k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("ellipsoid_from_matrix recovers semi-axes from singular values") {
  SUBCASE("diagonal") {
    Eigen::MatrixXd A = Eigen::Vector2d(0.5, 1.0 / 3.0).asDiagonal();
    const auto e = ellipsoid_from_matrix(A);
    CHECK(e.semi_axes()[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(e.semi_axes()[1] == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("identity gives the unit ball") {
    const auto e = ellipsoid_from_matrix(Eigen::MatrixXd::Identity(3, 3).eval());
    CHECK((e.semi_axes().array() == 1.0).all());
  }
  SUBCASE("orthogonal factors do not change the axes") {
    CounterRng rng(103, 0);
    const Eigen::MatrixXd R = rng.haar_rotation(2);
    Eigen::MatrixXd A = R * Eigen::Vector2d(0.5, 1.0 / 3.0).asDiagonal();
    const auto e = ellipsoid_from_matrix(A);
    CHECK(e.semi_axes()[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(e.semi_axes()[1] == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("near-singular input is refused") {
    Eigen::MatrixXd A = Eigen::Vector2d(1.0, 1e-13).asDiagonal();
    CHECK_THROWS_AS(ellipsoid_from_matrix(A), validation_error);
  }
}

TEST_CASE("ellipsoid volume") {
  Eigen::VectorXd a(3);
  a << 1, 2, 3;
  CHECK(ellipsoid_volume(Ellipsoidd::from_semi_axes(a)) ==
        doctest::Approx(8.0 * std::numbers::pi).epsilon(1e-14));
  CHECK(ellipsoid_volume(Ellipsoidd::ball(2, 1.0)) == doctest::Approx(std::numbers::pi));
  Eigen::VectorXd b(2);
  b << 2, 2;
  CHECK(ellipsoid_volume(Ellipsoidd::from_semi_axes(b)) ==
        doctest::Approx(4.0 * std::numbers::pi));
}

TEST_CASE("volume is invariant under frame changes and axis permutation") {
  CounterRng rng(104, 0);
  Eigen::VectorXd a(4);
  a << 3.0, 1.5, 0.8, 0.2;
  const double ref = ellipsoid_volume(Ellipsoidd::from_semi_axes(a));
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd shuffled = a;
    for (int i = 3; i > 0; --i) {
      std::swap(shuffled[i], shuffled[static_cast<int>(rng.uniform01() * (i + 1))]);
    }
    const Ellipsoidd e(shuffled, rng.haar_rotation(4), Eigen::VectorXd::Zero(4));
    CHECK(ellipsoid_volume(e) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("ellipsoid constructor enforces its invariants") {
  Eigen::VectorXd bad(2);
  bad << 1.0, 0.0;
  CHECK_THROWS_AS(Ellipsoidd::from_semi_axes(bad), validation_error);

  Eigen::VectorXd a(2);
  a << 1.0, 2.0;
  Eigen::MatrixXd skew(2, 2);
  skew << 1.0, 0.1, 0.0, 1.0;
  CHECK_THROWS_AS(Ellipsoidd(a, skew, Eigen::VectorXd::Zero(2)), validation_error);

  // axes come out sorted, with frame columns permuted alongside
  const Ellipsoidd e(a, Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2));
  CHECK(e.semi_axes()[0] == 2.0);
  CHECK(e.semi_axes()[1] == 1.0);
  CHECK(e.frame()(0, 1) == 1.0);  // first basis vector moved to second column
  Eigen::VectorXd p(2);
  p << 1.0, 0.0;  // on the boundary along the short axis
  CHECK(e.form_value(p) == doctest::Approx(1.0));
}

TEST_CASE("box constructor checks positivity") {
  Eigen::VectorXd l(3);
  l << 1.0, -2.0, 3.0;
  CHECK_THROWS_AS(Boxd(l), validation_error);
}
