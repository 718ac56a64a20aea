#include "dcov/beta2.hpp"

#include <vector>

#include "dcov/error.hpp"
#include "dcov/parallel.hpp"
#include "dcov/summation.hpp"

namespace dcov {
namespace {

void require_euclidean(const MetricSpec& x, const MetricSpec& y) {
  if (!x.is_euclidean() || !y.is_euclidean()) {
    throw InputError("the beta = 2 closed form needs Euclidean coordinates on both sides");
  }
}

std::vector<double> weighted_mean(const std::vector<Point>& pts, std::span<const double> w, std::size_t dim) {
  std::vector<double> m(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    CompensatedSum s;
    for (std::size_t k = 0; k < pts.size(); ++k) s += w[k] * pts[k].coords()[c];
    m[c] = s.value();
  }
  return m;
}

Matrix weighted_cross_cov(const std::vector<Point>& x, const std::vector<Point>& y, std::span<const double> w,
                          std::size_t p, std::size_t q) {
  const auto mx = weighted_mean(x, w, p);
  const auto my = weighted_mean(y, w, q);
  Matrix c(p, q);
  parallel_for(0, p * q, [&](std::size_t cell) {
    const std::size_t i = cell / q, j = cell % q;
    CompensatedSum s;
    for (std::size_t k = 0; k < x.size(); ++k) s += w[k] * (x[k].coords()[i] - mx[i]) * (y[k].coords()[j] - my[j]);
    c(i, j) = s.value();
  });
  return c;
}

DcovEstimate closed_form(const Matrix& c, double beta, std::size_t n) {
  std::vector<double> sq(c.data().begin(), c.data().end());
  for (double& v : sq) v *= v;
  DcovEstimate est;
  est.method = "beta2";
  est.beta = beta;
  est.n = n;
  est.value = 4.0 * pairwise_sum(sq);
  return est;
}

void require_beta2(double beta) {
  if (beta != 2.0) throw InputError("the closed form applies only at beta = 2");
}

}  // namespace

Matrix cross_cov(const PairedSample& sample) {
  require_euclidean(sample.x_spec(), sample.y_spec());
  const std::size_t n = sample.size();
  if (n < 2) throw InputError("cross-covariance needs n >= 2 observations");
  const std::vector<double> w(n, 1.0 / static_cast<double>(n));
  return weighted_cross_cov(sample.x(), sample.y(), w, sample.x_spec().dim(), sample.y_spec().dim());
}

Matrix cross_cov(const DiscreteJoint& joint) {
  require_euclidean(joint.x_spec(), joint.y_spec());
  return weighted_cross_cov(joint.x(), joint.y(), joint.probs(), joint.x_spec().dim(), joint.y_spec().dim());
}

DcovEstimate dcov2_closed(const PairedSample& sample) {
  require_beta2(sample.beta());
  return closed_form(cross_cov(sample), sample.beta(), sample.size());
}

DcovEstimate dcov2_closed(const DiscreteJoint& joint) {
  require_beta2(joint.beta());
  return closed_form(cross_cov(joint), joint.beta(), joint.size());
}

}  // namespace dcov
