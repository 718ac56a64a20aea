#include <catch_amalgamated.hpp>

#include <random>

#include "dcov/error.hpp"
#include "dcov/estimators.hpp"
#include "dcov/parallel.hpp"
#include "dcov/population.hpp"
#include "support.hpp"

using namespace dcov;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

PairedSample gaussian_pair(std::size_t n, std::size_t dx, std::size_t dy, double beta, double coupling,
                           std::mt19937_64& rng) {
  Matrix x = testsupport::gaussian_block(n, dx, rng);
  Matrix y = testsupport::gaussian_block(n, dy, rng);
  for (std::size_t i = 0; i < n; ++i) y(i, 0) += coupling * x(i, 0) * x(i, 0);
  return euclidean_sample(x, y, beta);
}

}  // namespace

TEST_CASE("two-point sample", "[estimators]") {
  Matrix x(2, 1);
  x(1, 0) = 1;
  const auto s = euclidean_sample(x, x, 1.0);
  CHECK_THAT(dcov_plugin_d1(s).value, WithinAbs(0.25, 1e-15));
  CHECK_THAT(dcov_centered(s).value, WithinAbs(0.25, 1e-15));
  CHECK_THAT(dcov_exact(empirical_joint(s), ExactMethod::d2).value, WithinAbs(0.25, 1e-15));
}

TEST_CASE("constant y gives exactly zero", "[estimators]") {
  std::mt19937_64 rng(4);
  const Matrix x = testsupport::gaussian_block(30, 2, rng);
  const Matrix y(30, 1, 7.0);
  const auto s = euclidean_sample(x, y, 1.0);
  CHECK(dcov_plugin_d1(s).value == 0.0);
  CHECK(dcov_centered(s).value == 0.0);
  CHECK_THROWS_AS(dcor(s), DomainError);
}

TEST_CASE("duplicating every row leaves the estimate unchanged", "[estimators]") {
  std::mt19937_64 rng(6);
  const auto s = gaussian_pair(25, 2, 2, 1.0, 1.0, rng);
  Matrix x2(50, 2), y2(50, 2);
  for (std::size_t i = 0; i < 50; ++i)
    for (std::size_t c = 0; c < 2; ++c) {
      x2(i, c) = s.x()[i % 25].coords()[c];
      y2(i, c) = s.y()[i % 25].coords()[c];
    }
  const auto d = euclidean_sample(x2, y2, 1.0);
  CHECK_THAT(dcov_plugin_d1(d).value, WithinRel(dcov_plugin_d1(s).value, 1e-12));
}

TEST_CASE("plug-in estimators match independent oracles", "[estimators][property]") {
  std::mt19937_64 rng(77);
  for (double beta : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    const auto s = gaussian_pair(40, 3, 2, beta, 0.8, rng);
    const double naive = testsupport::naive_pairwise_dcov(s);
    const double d1 = dcov_plugin_d1(s).value;
    const double cen = dcov_centered(s).value;
    const double exact = dcov_exact(empirical_joint(s, false), ExactMethod::d1).value;
    CHECK_THAT(d1, WithinAbs(naive, 1e-10 * (1 + std::abs(naive))));
    CHECK_THAT(d1, WithinAbs(exact, 1e-10 * (1 + std::abs(exact))));
    CHECK_THAT(cen, WithinAbs(d1, 1e-9 * (1 + std::abs(d1))));
    if (beta <= 2) CHECK(cen >= -1e-12);
  }
}

TEST_CASE("beta = 2 on a line reduces to four squared covariances", "[estimators]") {
  std::mt19937_64 rng(12);
  const Matrix x = testsupport::gaussian_block(60, 1, rng);
  std::vector<double> xv(60);
  for (std::size_t i = 0; i < 60; ++i) xv[i] = x(i, 0);
  const double cov = testsupport::sample_cov(xv, xv);
  CHECK_THAT(dcov_centered(euclidean_sample(x, x, 2.0)).value, WithinRel(4 * cov * cov, 1e-10));
}

TEST_CASE("scaling, rigid motions and symmetry", "[estimators][property]") {
  std::mt19937_64 rng(31);
  for (double beta : {0.5, 1.0, 1.8}) {
    const Matrix x = testsupport::gaussian_block(35, 3, rng);
    Matrix y = testsupport::gaussian_block(35, 2, rng);
    for (std::size_t i = 0; i < 35; ++i) y(i, 1) += x(i, 2);
    const double base = dcov_centered(euclidean_sample(x, y, beta)).value;

    const double a = 1.7, b = 0.4;
    Matrix ix(3, 3), iy(2, 2);
    for (int i = 0; i < 3; ++i) ix(i, i) = 1;
    for (int i = 0; i < 2; ++i) iy(i, i) = 1;
    const auto xs = testsupport::transform(x, ix, {0, 0, 0}, a);
    const auto ys = testsupport::transform(y, iy, {0, 0}, b);
    CHECK_THAT(dcov_centered(euclidean_sample(xs, ys, beta)).value,
               WithinRel(std::pow(a, beta) * std::pow(b, beta) * base, 1e-10));

    const auto xr = testsupport::transform(x, testsupport::random_rotation(3, rng), {1, -2, 3});
    const auto yr = testsupport::transform(y, testsupport::random_rotation(2, rng), {-5, 0.5});
    CHECK_THAT(dcov_centered(euclidean_sample(xr, yr, beta)).value, WithinRel(base, 1e-10));

    const auto s = euclidean_sample(x, y, beta);
    CHECK(dcov_plugin_d1(s).value == dcov_plugin_d1(s.swapped()).value);
    CHECK(dcov_centered(s).value == dcov_centered(s.swapped()).value);
  }
}

TEST_CASE("metric power reduction carries over to the estimator", "[estimators][property]") {
  std::mt19937_64 rng(18);
  const Matrix x = testsupport::gaussian_block(20, 2, rng);
  const Matrix y = testsupport::gaussian_block(20, 1, rng);
  for (double beta : {0.4, 0.8, 1.0}) {
    const auto s = euclidean_sample(x, y, beta);
    const auto dx = pairwise_distances(s.x(), s.x_spec()).matrix();
    const auto dy = pairwise_distances(s.y(), s.y_spec()).matrix();
    std::vector<Point> atoms;
    for (std::size_t i = 0; i < 20; ++i) atoms.push_back(Point::from_atom(i));
    const PairedSample t(atoms, atoms, MetricSpec::table(dx, 0, 1.0), MetricSpec::table(dy, 0, 1.0));
    CHECK(dcov_plugin_d1(t).value == dcov_plugin_d1(s).value);
  }
}

TEST_CASE("distance correlation", "[estimators]") {
  std::mt19937_64 rng(40);
  const Matrix x = testsupport::gaussian_block(50, 1, rng);
  CHECK_THAT(dcor(euclidean_sample(x, x, 1.0)), WithinAbs(1.0, 1e-10));
  const Matrix a = testsupport::gaussian_block(1000, 1, rng);
  const Matrix b = testsupport::gaussian_block(1000, 1, rng);
  const double r = dcor(euclidean_sample(a, b, 1.0));
  CHECK(r >= 0.0);
  CHECK(r <= 0.2);
}

TEST_CASE("sample validation", "[estimators]") {
  Matrix one(1, 1);
  CHECK_THROWS_AS(dcov_plugin_d1(euclidean_sample(one, one, 1.0)), InputError);
  CHECK_THROWS_AS(euclidean_sample(Matrix(3, 1), Matrix(4, 1), 1.0), InputError);
  const auto spec1 = MetricSpec::euclidean(1, 1.0);
  const auto spec2 = MetricSpec::euclidean(1, 2.0);
  CHECK_THROWS_AS(PairedSample(testsupport::scalars({0, 1}), testsupport::scalars({0, 1}), spec1, spec2), InputError);
}

TEST_CASE("estimates do not depend on the worker count", "[estimators][determinism]") {
  std::mt19937_64 rng(90);
  const auto s = gaussian_pair(300, 2, 2, 1.0, 0.5, rng);
  double a, b, c, d;
  {
    ThreadScope t(1);
    a = dcov_centered(s).value;
    c = dcov_plugin_d1(s).value;
  }
  {
    ThreadScope t(8);
    b = dcov_centered(s).value;
    d = dcov_plugin_d1(s).value;
  }
  CHECK(a == b);
  CHECK(c == d);
}
