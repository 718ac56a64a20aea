#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dcov/charfn.hpp"
#include "dcov/charrv.hpp"
#include "dcov/error.hpp"
#include "dcov/estimators.hpp"
#include "dcov/parallel.hpp"
#include "dcov/population.hpp"
#include "support.hpp"

using namespace dcov;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

DiscreteJoint random_bernoulli_joint(double beta, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> p(4);
  double total = 0;
  for (double& v : p) total += (v = u(rng));
  for (double& v : p) v /= total;
  const auto spec = MetricSpec::euclidean(1, beta);
  return DiscreteJoint(testsupport::scalars({0, 0, 1, 1}), testsupport::scalars({0, 1, 0, 1}), p, spec, spec);
}

bool within_sigmas(const DcovEstimate& e, double target, double k = 3.0) {
  return std::abs(e.value - target) <= k * e.std_error.value() + 1e-12;
}

}  // namespace

TEST_CASE("characteristic random variable on simple laws", "[charrv]") {
  const Marginal zero{{Point{0.0, 0.0}}, {1.0}};
  const std::vector<double> xi2{0.3, -1.2};
  CHECK(char_rv(zero, xi2, 5.0) == std::complex<double>(1.0, 0.0));
  const Marginal sym{testsupport::scalars({-1.0, 1.0}), {0.5, 0.5}};
  for (double xi : {-1.3, 0.2, 2.0}) {
    const std::vector<double> v{xi};
    CHECK(char_rv(sym, v, 0.0) == std::complex<double>(1.0, 0.0));
    for (double r : {0.1, 1.0, 7.5}) {
      const auto c = char_rv(sym, v, r);
      CHECK_THAT(c.real(), WithinAbs(std::cos(r * xi), 1e-15));
      CHECK_THAT(c.imag(), WithinAbs(0.0, 1e-15));
    }
  }
  const auto pts = testsupport::scalars({-1.0, 1.0});
  CHECK_THAT(char_rv(pts, std::vector<double>{0.7}, 2.0).real(), WithinAbs(std::cos(1.4), 1e-15));
}

TEST_CASE("modulus bound and factorisation under independence", "[charrv][property]") {
  std::mt19937_64 rng(14);
  const auto dep = testsupport::random_joint(6, 3, 2, 1.0, rng);
  const auto ind = dep.product_of_marginals();
  const GaussianProjector proj(99, 3, 2, 50);
  for (std::size_t k = 0; k < proj.draws(); ++k) {
    const auto [xi, eta] = proj.draw(k);
    for (double r : {0.0, 0.4, 3.0}) {
      CHECK(std::abs(char_rv(dep.marginal_x(), xi, r)) <= 1 + 1e-12);
      for (double s : {0.5, 2.0}) {
        CHECK(std::abs(char_rv_joint(dep, xi, eta, r, s)) <= 1 + 1e-12);
        const auto joint = char_rv_joint(ind, xi, eta, r, s);
        const auto prod = char_rv(ind.marginal_x(), xi, r) * char_rv(ind.marginal_y(), eta, s);
        CHECK(std::abs(joint - prod) <= 1e-12);
      }
    }
  }
}

TEST_CASE("projector draws are reproducible and standard normal", "[charrv]") {
  const GaussianProjector a(5, 2, 3, 4000), b(5, 2, 3, 4000);
  CHECK(a.draw(17) == b.draw(17));
  CHECK(a.draw(17) != a.draw(18));
  double sum = 0, sq = 0;
  for (std::size_t k = 0; k < 4000; ++k) {
    const double v = a.draw(k).first[0];
    sum += v;
    sq += v * v;
  }
  CHECK(std::abs(sum / 4000) < 0.06);
  CHECK_THAT(sq / 4000, WithinAbs(1.0, 0.08));
  CHECK_THROWS_AS(GaussianProjector(1, 1, 1, 0), InputError);
}

TEST_CASE("alternating Gaussian-kernel sums", "[charrv]") {
  std::mt19937_64 rng(8);
  const auto j = testsupport::random_joint(5, 2, 2, 1.0, rng);
  for (double u : {1e-9, 0.1, 1.0, 10.0}) {
    CHECK(std::abs(lambda_fn(j.marginal_x(), u)) <= 1e-12);
  }
  const Marginal degenerate{{Point{1.0, 1.0}}, {1.0}};
  CHECK(lambda_fn(degenerate, 0.5) == 0.0);
  CHECK_THROWS_AS(lambda_fn(degenerate, 0.0), InputError);
  for (int rep = 0; rep < 1000; ++rep) {
    const auto a = testsupport::spread_point(2, rng), b = testsupport::spread_point(2, rng);
    const auto c = testsupport::spread_point(2, rng), d = testsupport::spread_point(2, rng);
    CHECK(std::abs(lambda_pointwise(a, b, c, d, 0.3)) <= 4.0);
    // Small u: Lambda ~ 2u (a - c).(b - d).
    double ac = 0, bd = 0;
    for (std::size_t i = 0; i < 2; ++i) {
      ac += (a[i] - c[i]) * (a[i] - c[i]);
      bd += (b[i] - d[i]) * (b[i] - d[i]);
    }
    CHECK(std::abs(lambda_pointwise(a, b, c, d, 1e-14)) <= 2e-14 * std::sqrt(ac * bd) * (1 + 1e-6) + 1e-15);
  }
}

TEST_CASE("squared conditional covariance: expansion, product form and Monte Carlo agree", "[charrv][property]") {
  std::mt19937_64 rng(23);
  const auto j = testsupport::random_joint(4, 2, 1, 1.0, rng);
  const GaussianProjector proj(7, 2, 1, 4000);
  for (double r : {0.3, 1.0, 2.5}) {
    for (double s : {0.5, 1.5}) {
      const double closed = sq_cov_expansion(j, r, s);
      CHECK_THAT(closed, WithinAbs(0.25 * lambda_product_expectation(j, r * r / 2, s * s / 2), 1e-12));
      const McValue mc = sq_cov_mc(j, r, s, proj);
      CHECK(std::abs(mc.mean - closed) <= 3 * mc.std_error + 1e-12);
    }
  }
  CHECK_THAT(sq_cov_expansion(j.product_of_marginals(), 1.0, 1.0), WithinAbs(0.0, 1e-14));
}

TEST_CASE("Monte Carlo definition on independent data", "[charrv]") {
  std::mt19937_64 rng(4);
  const auto ind = testsupport::random_joint(3, 2, 2, 1.0, rng).product_of_marginals();
  const auto e = dcov_charrv_mc(ind, CharRVConfig{200, 3, {}});
  CHECK(within_sigmas(e, 0.0));
  CHECK(std::abs(e.value) <= 1e-12);
}

TEST_CASE("Monte Carlo definition on the balanced Bernoulli sample", "[charrv]") {
  const auto e = dcov_charrv_mc(testsupport::bernoulli_sample(200), CharRVConfig{2000, 11, {}});
  CHECK(e.n == 200);
  CHECK(e.std_error.value() > 0);
  CHECK(within_sigmas(e, 0.25));
}

TEST_CASE("Monte Carlo definition matches the plug-in estimate in higher dimension", "[charrv]") {
  std::mt19937_64 rng(66);
  Matrix x = testsupport::gaussian_block(16, 3, rng);
  Matrix y = testsupport::gaussian_block(16, 2, rng);
  for (std::size_t i = 0; i < 16; ++i) {
    y(i, 0) += x(i, 0) + x(i, 1);
    y(i, 1) -= 0.5 * x(i, 2);
  }
  const auto s = euclidean_sample(x, y, 1.0);
  QuadConfig q;
  q.panels_per_decade = 4;
  const auto e = dcov_charrv_mc(s, CharRVConfig{400, 21, q});
  CHECK(within_sigmas(e, dcov_centered(s).value));
}

TEST_CASE("three routes agree on Bernoulli joints", "[charrv][property]") {
  std::mt19937_64 rng(100);
  for (double beta : {0.6, 1.0, 1.4}) {
    const auto j = random_bernoulli_joint(beta, rng);
    const double exact = dcov_exact(j, ExactMethod::d1).value;
    const PairedSample atoms(j.x(), j.y(), j.x_spec(), j.y_spec());
    CHECK_THAT(dcov_charfn_1d(j).value, WithinRel(exact, 1e-3));
    CHECK(within_sigmas(dcov_charrv_mc(j, CharRVConfig{3000, 5, {}}), exact));
  }
}

TEST_CASE("Monte Carlo definition preconditions", "[charrv]") {
  CHECK_THROWS_AS(dcov_charrv_mc(testsupport::bernoulli_identical(2.0), CharRVConfig{10, 1, {}}), DomainError);
  CHECK_THROWS_AS(dcov_charrv_mc(testsupport::bernoulli_identical(1.0), CharRVConfig{1, 1, {}}), InputError);
  Matrix t(2, 2);
  t(0, 1) = t(1, 0) = 1;
  const auto spec = MetricSpec::table(t, 0, 1.0);
  const std::vector<Point> atoms{Point::from_atom(0), Point::from_atom(1)};
  CHECK_THROWS_AS(dcov_charrv_mc(PairedSample(atoms, atoms, spec, spec), CharRVConfig{10, 1, {}}), InputError);
}

TEST_CASE("Monte Carlo estimate does not depend on the worker count", "[charrv][determinism]") {
  std::mt19937_64 rng(12);
  const auto j = testsupport::random_joint(5, 2, 2, 1.0, rng);
  DcovEstimate a, b;
  {
    ThreadScope t(1);
    a = dcov_charrv_mc(j, CharRVConfig{64, 9, {}});
  }
  {
    ThreadScope t(8);
    b = dcov_charrv_mc(j, CharRVConfig{64, 9, {}});
  }
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("truncated kernel", "[charrv]") {
  for (double beta : {0.5, 1.0, 1.5}) {
    for (double x : {0.0, 1e-6, 0.3, 4.0, 1e4}) {
      double last = 0.0;
      for (double M : {1e-3, 1.0, 1e3, 1e9}) {
        const double h = h_M(x, beta, M);
        CHECK(h >= 0.0);
        CHECK(h <= std::pow(x, beta / 2) * (1 + 1e-14));
        CHECK(h >= last - 1e-15);
        last = h;
      }
      // Concavity: x^b - h_M(x) = (x + M)^b - M^b <= b x M^(b - 1).
      for (double M : {1e3, 1e9, 1e15}) {
        const double gap = std::pow(x, beta / 2) - h_M(x, beta, M);
        CHECK(gap >= -1e-15 * (1 + x));
        CHECK(gap <= beta / 2 * x * std::pow(M, beta / 2 - 1) * (1 + 1e-12) + 1e-15 * (1 + x));
      }
    }
  }
  CHECK(h_M(0.0, 1.0, 1.0) == 0.0);
  CHECK_THROWS_AS(h_M(1.0, 1.0, 0.0), InputError);
}

TEST_CASE("truncated four-point sum obeys the geometric-mean bound", "[charrv][property]") {
  std::mt19937_64 rng(61);
  for (double beta : {0.5, 1.0, 1.6, 2.0}) {
    const auto spec = MetricSpec::euclidean(2, beta);
    for (int rep = 0; rep < 4000; ++rep) {
      Point p[4];
      double r[4];
      for (int i = 0; i < 4; ++i) {
        auto c = testsupport::spread_point(2, rng);
        r[i] = std::hypot(c[0], c[1]);
        p[i] = Point::from_coords(std::move(c));
      }
      const double bound = testsupport::four_point_bounds(r, beta).geometric;
      for (double M : {1e-2, 1.0, 1e2, 1e6}) {
        CHECK(std::abs(hhat_M(p[0], p[1], p[2], p[3], spec, M)) <= bound * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("truncated estimator increases to the plug-in value", "[charrv][property]") {
  std::mt19937_64 rng(73);
  for (double beta : {0.5, 1.0, 1.5}) {
    Matrix x = testsupport::gaussian_block(40, 2, rng);
    Matrix y = testsupport::gaussian_block(40, 1, rng);
    for (std::size_t i = 0; i < 40; ++i) y(i, 0) += std::abs(x(i, 0));
    const auto s = euclidean_sample(x, y, beta);
    double maxd2 = 0;
    for (std::size_t i = 0; i < 40; ++i)
      for (std::size_t k = 0; k < 40; ++k) {
        const double dx = s.x_spec().distance(s.x()[i], s.x()[k]);
        const double dy = s.y_spec().distance(s.y()[i], s.y()[k]);
        maxd2 = std::max({maxd2, dx * dx, dy * dy});
      }
    double last = -1e300;
    for (double M : {1e-2, 1e-1, 1.0, 10.0, 1e2, 1e3, 1e4}) {
      const double v = dcov_hm(s, M).value;
      CHECK(v >= last - 1e-12);
      last = v;
    }
    CHECK_THAT(dcov_hm(s, 1e16 * maxd2).value, WithinAbs(dcov_plugin_d1(s).value, 1e-3));
  }
  Matrix x(10, 1), y(10, 1, 3.0);
  for (std::size_t i = 0; i < 10; ++i) x(i, 0) = static_cast<double>(i);
  for (double M : {0.1, 10.0, 1e5}) CHECK(dcov_hm(euclidean_sample(y, x, 1.0), M).value == 0.0);
  CHECK_THROWS_AS(dcov_hm(euclidean_sample(x, x, 1.0), 0.0), InputError);
  CHECK_THROWS_AS(dcov_hm(euclidean_sample(x, x, 2.0), 1.0), DomainError);
}
