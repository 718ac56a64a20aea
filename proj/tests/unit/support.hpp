#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dcov/matrix.hpp"
#include "dcov/metric.hpp"
#include "dcov/population.hpp"
#include "dcov/sample.hpp"

namespace testsupport {

inline dcov::Matrix gaussian_block(std::size_t n, std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> z;
  dcov::Matrix m(n, d);
  for (double& v : m.data()) v = z(rng);
  return m;
}

inline std::vector<dcov::Point> scalars(std::initializer_list<double> v) {
  std::vector<dcov::Point> out;
  for (double x : v) out.push_back(dcov::Point{x});
  return out;
}

/// Random finitely supported joint with `k` atoms in R^dx x R^dy.
inline dcov::DiscreteJoint random_joint(std::size_t k, std::size_t dx, std::size_t dy, double beta,
                                        std::mt19937_64& rng) {
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<dcov::Point> xs, ys;
  std::vector<double> p(k);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> a(dx), b(dy);
    for (double& v : a) v = z(rng);
    for (double& v : b) v = z(rng);
    xs.push_back(dcov::Point::from_coords(a));
    ys.push_back(dcov::Point::from_coords(b));
    p[i] = u(rng);
    total += p[i];
  }
  for (double& v : p) v /= total;
  return dcov::DiscreteJoint(xs, ys, p, dcov::MetricSpec::euclidean(dx, beta), dcov::MetricSpec::euclidean(dy, beta));
}

/// X = Y ~ Bernoulli(1/2) on the real line.
inline dcov::DiscreteJoint bernoulli_identical(double beta = 1.0) {
  const auto spec = dcov::MetricSpec::euclidean(1, beta);
  return dcov::DiscreteJoint(scalars({0.0, 1.0}), scalars({0.0, 1.0}), {0.5, 0.5}, spec, spec);
}

/// Balanced 0/1 sample with x = y, n even.
inline dcov::PairedSample bernoulli_sample(std::size_t n, double beta = 1.0) {
  dcov::Matrix x(n, 1);
  for (std::size_t i = 0; i < n; ++i) x(i, 0) = static_cast<double>(i % 2);
  return dcov::euclidean_sample(x, x, beta);
}

/// Textbook triple-sum evaluation of the pairwise form on a sample, O(n^3),
/// sharing no code with the library estimators.
inline double naive_pairwise_dcov(const dcov::PairedSample& s) {
  const std::size_t n = s.size();
  const auto& xs = s.x();
  const auto& ys = s.y();
  auto a = [&](std::size_t i, std::size_t j) { return s.x_spec().powered(xs[i], xs[j]); };
  auto b = [&](std::size_t i, std::size_t j) { return s.y_spec().powered(ys[i], ys[j]); };
  long double t1 = 0, sa = 0, sb = 0, t3 = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      t1 += a(i, j) * b(i, j);
      sa += a(i, j);
      sb += b(i, j);
      for (std::size_t k = 0; k < n; ++k) t3 += a(i, j) * b(i, k);
    }
  const long double nn = static_cast<long double>(n);
  return static_cast<double>(t1 / (nn * nn) + (sa / (nn * nn)) * (sb / (nn * nn)) - 2 * t3 / (nn * nn * nn));
}

inline double sample_cov(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double c = 0;
  for (std::size_t i = 0; i < x.size(); ++i) c += (x[i] - mx) * (y[i] - my);
  return c / n;
}

/// Random orthogonal matrix by Gram-Schmidt on a Gaussian matrix.
inline dcov::Matrix random_rotation(std::size_t d, std::mt19937_64& rng) {
  dcov::Matrix q = gaussian_block(d, d, rng);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double dot = 0;
      for (std::size_t k = 0; k < d; ++k) dot += q(i, k) * q(j, k);
      for (std::size_t k = 0; k < d; ++k) q(i, k) -= dot * q(j, k);
    }
    double nrm = 0;
    for (std::size_t k = 0; k < d; ++k) nrm += q(i, k) * q(i, k);
    nrm = std::sqrt(nrm);
    for (std::size_t k = 0; k < d; ++k) q(i, k) /= nrm;
  }
  return q;
}

inline dcov::Matrix transform(const dcov::Matrix& x, const dcov::Matrix& rot, const std::vector<double>& shift,
                              double scale = 1.0) {
  dcov::Matrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t c = 0; c < x.cols(); ++c) {
      double v = 0;
      for (std::size_t k = 0; k < x.cols(); ++k) v += rot(c, k) * x(i, k);
      out(i, c) = scale * v + shift[c];
    }
  return out;
}

}  // namespace testsupport

namespace testsupport {

/// Right-hand sides of the three pointwise bounds on the alternating
/// four-point sum, in terms of the norms |x_1|, ..., |x_4|. Indices are cyclic.
struct FourPointBounds {
  double min_form;      // 2 sum min(|x_i|^b, |x_{i+1}|^b), for b <= 1
  double geometric;     // C sum |x_i|^(b/2) |x_{i+1}|^(b/2), for b <= 2
  double mixed;         // b 2^b sum |x_i|^(b-1) (|x_{i+1}| + |x_{i-1}|), for b >= 1
};

inline FourPointBounds four_point_bounds(const double (&r)[4], double beta) {
  FourPointBounds out{0, 0, 0};
  const double c_geo = std::max(2.0, beta * std::pow(2.0, beta));
  const double c_mix = beta * std::pow(2.0, beta);
  for (int i = 0; i < 4; ++i) {
    const double a = r[i], b = r[(i + 1) % 4], prev = r[(i + 3) % 4];
    out.min_form += 2 * std::min(std::pow(a, beta), std::pow(b, beta));
    out.geometric += c_geo * std::pow(a, beta / 2) * std::pow(b, beta / 2);
    if (a > 0 || beta == 1.0) out.mixed += c_mix * std::pow(a, beta - 1) * (b + prev);
  }
  return out;
}

/// Random point in R^d whose scale varies over several orders of magnitude.
inline std::vector<double> spread_point(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> z;
  const double scale = std::exp(2.0 * z(rng));
  std::vector<double> p(d);
  for (double& v : p) v = scale * z(rng);
  return p;
}

}  // namespace testsupport
