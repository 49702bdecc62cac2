#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "gib/geomver.hpp"

using namespace gib;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> xs) {
  VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

MatrixXd diag(std::initializer_list<double> xs) { return vec(xs).asDiagonal(); }

VectorXd gaussian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

}  // namespace

TEST_CASE("metric_eval examples") {
  auto uhs = MetricModel::upper_half_space(1);
  CHECK(metric_eval(uhs, vec({0.0, 2.0}), vec({0, 1}), vec({0, 1})) == doctest::Approx(0.25));
  auto h1 = MetricModel::heintze(diag({1}));
  CHECK(metric_eval(h1, vec({0.0, 0.0}), vec({1, 0}), vec({1, 0})) == doctest::Approx(1.0));
  auto h2 = MetricModel::heintze(diag({1, 2}));
  CHECK(metric_eval(h2, vec({0, 0, std::log(2.0)}), vec({0, 1, 0}), vec({0, 1, 0})) == doctest::Approx(16.0));
  CHECK_THROWS_AS(metric_eval(uhs, vec({0.0, -1.0}), vec({0, 1}), vec({0, 1})), OutOfDomain);
  CHECK_THROWS_AS(metric_eval(uhs, vec({0.0, 0.0}), vec({0, 1}), vec({0, 1})), OutOfDomain);
}

TEST_CASE("metric_eval is bilinear and symmetric") {
  std::mt19937_64 rng(3);
  MatrixXd a(2, 2);
  a << 1, 0.5, 0, 2;
  for (const auto& model : {MetricModel::upper_half_space(2), MetricModel::heintze(a)}) {
    for (int rep = 0; rep < 20; ++rep) {
      VectorXd p = gaussian(rng, 3);
      p(2) = 0.5 + std::abs(p(2));
      VectorXd u = gaussian(rng, 3), w = gaussian(rng, 3), v = gaussian(rng, 3);
      const double s = 1.7;
      const double lhs = metric_eval(model, p, s * u + w, v);
      const double rhs = s * metric_eval(model, p, u, v) + metric_eval(model, p, w, v);
      CHECK(std::abs(lhs - rhs) <= 1e-13 * (1 + std::abs(lhs)));
      CHECK(metric_eval(model, p, u, v) == doctest::Approx(metric_eval(model, p, v, u)).epsilon(1e-14));
    }
  }
}

TEST_CASE("curvature of A = I2 is -1 everywhere") {
  auto r = heintze_curvature(MatrixXd::Identity(2, 2), 100, 0);
  CHECK(r.planes.size() >= 100);
  CHECK(std::abs(r.min + 1) < 1e-9);
  CHECK(std::abs(r.max + 1) < 1e-9);
}

TEST_CASE("curvature of cI is -c^2") {
  for (double c : {0.5, 2.0, 3.0}) {
    auto r = heintze_curvature(c * MatrixXd::Identity(3, 3), 50, 1);
    CHECK(std::abs(r.min + c * c) < 1e-8);
    CHECK(std::abs(r.max + c * c) < 1e-8);
  }
}

TEST_CASE("nilpotent A is not negatively curved") {
  MatrixXd a(2, 2);
  a << 0, 1, 0, 0;
  auto r = heintze_curvature(a, 100, 0);
  CHECK(r.max >= -1e-9);
}

TEST_CASE("diag(1,2) is negatively curved, between -4 and -1") {
  auto r = heintze_curvature(diag({1, 2}), 200, 9);
  CHECK(r.max < 0);
  CHECK(r.min >= -4 - 1e-9);
  CHECK(r.max <= -1 + 1e-9);
}

TEST_CASE("curvature tensor symmetries and Bianchi") {
  std::mt19937_64 rng(5);
  MatrixXd a(3, 3);
  a << 1, 0.3, 0, -0.2, 1.5, 0.4, 0, 0.1, 2;
  HeintzeAlgebra alg(a);
  for (int rep = 0; rep < 30; ++rep) {
    VectorXd u = gaussian(rng, 4), v = gaussian(rng, 4), w = gaussian(rng, 4), z = gaussian(rng, 4);
    const double r = alg.riemann(u, v, w, z);
    CHECK(std::abs(r + alg.riemann(v, u, w, z)) < 1e-9);
    CHECK(std::abs(r + alg.riemann(u, v, z, w)) < 1e-9);
    CHECK(std::abs(r - alg.riemann(w, z, u, v)) < 1e-9);
    VectorXd b = alg.curvature(u, v, w) + alg.curvature(v, w, u) + alg.curvature(w, u, v);
    CHECK(b.norm() < 1e-9);
  }
}

TEST_CASE("Koszul agrees with finite differences") {
  std::mt19937_64 rng(21);
  for (const MatrixXd& a : {MatrixXd(MatrixXd::Identity(2, 2)), diag({1, 2})}) {
    auto model = MetricModel::heintze(a);
    HeintzeAlgebra alg(a);
    for (int rep = 0; rep < 5; ++rep) {
      VectorXd p = gaussian(rng, 3) * 0.5;
      VectorXd u = gaussian(rng, 3), v = gaussian(rng, 3);
      const double fd = fd_sectional_curvature(model, p, u, v);
      const double t = p(2);
      const double kz = alg.sectional(alg.from_coordinates(t, u), alg.from_coordinates(t, v));
      CHECK(std::abs(fd - kz) < 1e-4);
    }
  }
}

TEST_CASE("upper half-space has curvature -1 in dimensions 2 to 4") {
  std::mt19937_64 rng(8);
  for (int k = 1; k <= 3; ++k) {
    auto uhs = MetricModel::upper_half_space(k);
    VectorXd p = gaussian(rng, k + 1);
    p(k) = 1.3;
    for (int rep = 0; rep < 3; ++rep) {
      VectorXd u = gaussian(rng, k + 1), v = gaussian(rng, k + 1);
      CHECK(std::abs(fd_sectional_curvature(uhs, p, u, v) + 1) < 1e-4);
    }
    auto hz = heintze_curvature(MatrixXd::Identity(k, k), 20, 2);
    CHECK(std::abs(hz.min + 1) < 1e-9);
    CHECK(std::abs(hz.max + 1) < 1e-9);
  }
}

TEST_CASE("Jacobi contraction: closed forms") {
  auto uhs = MetricModel::upper_half_space(1);
  auto j = jacobi_contraction(uhs, 1.0, vec({1}));
  CHECK(std::abs(j.ratio - std::exp(-1.0)) < 1e-6);
  CHECK(j.strictly_decreasing);

  auto z = jacobi_contraction(uhs, 0.0, vec({1}));
  CHECK(z.ratio == doctest::Approx(1.0));

  for (double alpha : {0.5, 1.0, 2.0}) {
    auto d = jacobi_contraction(diag({1, 2}), alpha, vec({0, 1}));
    CHECK(std::abs(d.ratio - std::exp(-2 * alpha)) < 1e-6);
    CHECK(d.strictly_decreasing);
  }
}

TEST_CASE("Jacobi: monotone for positive spectra, not for -I") {
  std::mt19937_64 rng(12);
  MatrixXd a(2, 2);
  a << 1, 1, 0, 1;  // Jordan block, eigenvalue 1
  MatrixXd b(3, 3);
  b << 2, -1, 0, 1, 2, 0, 0, 0, 0.5;  // complex pair with real part 2
  for (const MatrixXd& m : {a, b, diag({0.3, 4})}) {
    VectorXd d = gaussian(rng, static_cast<int>(m.rows()));
    auto r = jacobi_contraction(m, 1.0, d);
    CHECK(r.strictly_decreasing);
    CHECK(r.ratio < 1);
    CHECK(r.max_closed_form_error < 1e-6);
  }
  auto neg = jacobi_contraction(-MatrixXd::Identity(2, 2), 1.0, vec({1, 0}));
  CHECK_FALSE(neg.strictly_decreasing);
  CHECK(neg.ratio > 1);
}

TEST_CASE("pullback: identity and dilations of the upper half-space") {
  auto uhs = MetricModel::upper_half_space(2);
  AffineMap id{MatrixXd::Identity(3, 3), VectorXd::Zero(3)};
  auto r = pullback_ratio_report(uhs, id, 50, 0, {{"all", 1.0}});
  CHECK(r.all_pass());

  AffineMap dil{2.5 * MatrixXd::Identity(3, 3), vec({1, -1, 0})};
  CHECK(pullback_ratio_report(uhs, dil, 50, 0, {{"all", 1.0}}).all_pass());

  // stretching only x is not an isometry
  AffineMap stretch{diag({2, 1, 1}), VectorXd::Zero(3)};
  CHECK_FALSE(pullback_ratio_report(uhs, stretch, 50, 0).all_pass());
}

TEST_CASE("curvature csv") {
  auto r = heintze_curvature(MatrixXd::Identity(2, 2), 3, 0);
  std::string csv = curvature_csv(r);
  CHECK(csv.rfind("kind,u0,u1,u2,v0,v1,v2,curvature\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == r.planes.size() + 1);
}
