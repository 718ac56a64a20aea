#include <catch_amalgamated.hpp>

#include <random>

#include "dcov/beta2.hpp"
#include "dcov/error.hpp"
#include "dcov/estimators.hpp"
#include "dcov/population.hpp"
#include "support.hpp"

using namespace dcov;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using testsupport::scalars;

TEST_CASE("cross-covariance on hand examples", "[beta2]") {
  Matrix x(2, 1), y(2, 1);
  x(1, 0) = 1;
  y(1, 0) = 2;
  const auto c = cross_cov(euclidean_sample(x, y, 2.0));
  REQUIRE(c.rows() == 1);
  CHECK_THAT(c(0, 0), WithinAbs(0.5, 1e-15));

  std::mt19937_64 rng(3);
  const Matrix z = testsupport::gaussian_block(30, 1, rng);
  std::vector<double> zv(30);
  for (std::size_t i = 0; i < 30; ++i) zv[i] = z(i, 0);
  CHECK_THAT(cross_cov(euclidean_sample(z, z, 2.0))(0, 0), WithinRel(testsupport::sample_cov(zv, zv), 1e-13));

  const auto zero = cross_cov(euclidean_sample(testsupport::gaussian_block(30, 3, rng), Matrix(30, 2, 4.0), 2.0));
  for (double v : zero.data()) CHECK(v == 0.0);
}

TEST_CASE("closed form equals the generic estimator at beta = 2", "[beta2][property]") {
  std::mt19937_64 rng(202);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t dx = 1 + rep % 4, dy = 1 + (rep / 4) % 3;
    Matrix x = testsupport::gaussian_block(30 + rep, dx, rng);
    Matrix y = testsupport::gaussian_block(30 + rep, dy, rng);
    for (std::size_t i = 0; i < x.rows(); ++i) y(i, 0) += 0.7 * x(i, dx - 1);
    const auto s = euclidean_sample(x, y, 2.0);
    const double closed = dcov2_closed(s).value;
    CHECK_THAT(closed, WithinAbs(dcov_centered(s).value, 1e-10));
  }
}

TEST_CASE("two-point symmetric law has DC2 = 4", "[beta2]") {
  const auto spec = MetricSpec::euclidean(1, 2.0);
  const DiscreteJoint j(scalars({-1, 1}), scalars({-1, 1}), {0.5, 0.5}, spec, spec);
  CHECK_THAT(dcov2_closed(j).value, WithinAbs(4.0, 1e-15));
  CHECK_THAT(dcov_exact(j, ExactMethod::d1).value, WithinAbs(4.0, 1e-12));
}

TEST_CASE("uncorrelated but dependent: beta = 2 is blind, beta = 1 is not", "[beta2]") {
  const auto make = [](double beta) {
    const auto spec = MetricSpec::euclidean(1, beta);
    return DiscreteJoint(scalars({-1, 0, 1}), scalars({1, 0, 1}), {1.0 / 3, 1.0 / 3, 1.0 / 3}, spec, spec);
  };
  CHECK(std::abs(dcov2_closed(make(2.0)).value) <= 1e-12);
  CHECK(std::abs(dcov_exact(make(2.0), ExactMethod::d3).value) <= 1e-12);
  CHECK(dcov_exact(make(1.0), ExactMethod::d1).value > 0.01);
}

TEST_CASE("zero DC2 if and only if zero cross-covariance", "[beta2][property]") {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 10; ++rep) {
    const auto dep = testsupport::random_joint(5, 2, 2, 2.0, rng);
    const double dc = dcov_exact(dep, ExactMethod::d2).value;
    const Matrix c = cross_cov(dep);
    double fro = 0;
    for (double v : c.data()) fro += v * v;
    CHECK((dc > 1e-12) == (fro > 1e-24));
    CHECK_THAT(dc, WithinAbs(4 * fro, 1e-10));
    const auto ind = dep.product_of_marginals();
    CHECK(std::abs(dcov2_closed(ind).value) <= 1e-12);
    const Matrix ci = cross_cov(ind);
    for (double v : ci.data()) CHECK(std::abs(v) <= 1e-12);
  }
}

TEST_CASE("algebraic forms of the beta = 2 kernels", "[beta2][property]") {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> z;
  const auto spec = MetricSpec::euclidean(3, 2.0);
  const auto inner = [](std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> c[4];
    for (auto& v : c) v = {z(rng), z(rng), z(rng)};
    std::vector<double> d13(3), d42(3);
    for (int i = 0; i < 3; ++i) {
      d13[i] = c[0][i] - c[2][i];
      d42[i] = c[3][i] - c[1][i];
    }
    const double h = hhat_eval(Point::from_coords(c[0]), Point::from_coords(c[1]), Point::from_coords(c[2]),
                               Point::from_coords(c[3]), spec);
    CHECK_THAT(h, WithinAbs(2 * inner(d13, d42), 1e-12 * (1 + std::abs(h))));
  }
  const auto j = testsupport::random_joint(6, 3, 1, 2.0, rng);
  const Marginal law = j.marginal_x();
  std::vector<double> mean(3, 0.0);
  for (std::size_t k = 0; k < law.atoms.size(); ++k)
    for (int i = 0; i < 3; ++i) mean[i] += law.probs[k] * law.atoms[k].coords()[i];
  for (const auto& a : law.atoms)
    for (const auto& b : law.atoms) {
      std::vector<double> u(3), v(3);
      for (int i = 0; i < 3; ++i) {
        u[i] = a.coords()[i] - mean[i];
        v[i] = b.coords()[i] - mean[i];
      }
      CHECK_THAT(ttilde_eval(a, b, law, spec), WithinAbs(-2 * inner(u, v), 1e-12));
    }
}

TEST_CASE("closed form input checks", "[beta2]") {
  Matrix t(2, 2);
  t(0, 1) = t(1, 0) = 1;
  const auto spec = MetricSpec::table(t, 0, 2.0);
  const std::vector<Point> atoms{Point::from_atom(0), Point::from_atom(1)};
  CHECK_THROWS_AS(dcov2_closed(PairedSample(atoms, atoms, spec, spec)), InputError);
  Matrix one(1, 1);
  CHECK_THROWS_AS(cross_cov(euclidean_sample(one, one, 2.0)), InputError);
  CHECK_THROWS_AS(dcov2_closed(euclidean_sample(Matrix(3, 1), Matrix(3, 1), 1.0)), InputError);
}
