#include "dcov/estimators.hpp"

#include <cmath>
#include <sstream>

#include "dcov/error.hpp"
#include "dcov/parallel.hpp"
#include "dcov/summation.hpp"

namespace dcov {
namespace {

void require_estimable(std::size_t n) {
  if (n < 2) {
    std::ostringstream os;
    os << "estimation needs n >= 2 observations, got " << n;
    throw InputError(os.str());
  }
}

std::vector<double> row_means(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<double> m(n);
  parallel_for(0, n, [&](std::size_t i) { m[i] = pairwise_sum(a.row(i)) / static_cast<double>(n); });
  return m;
}

}  // namespace

PairedSample::PairedSample(std::vector<Point> x, std::vector<Point> y, MetricSpec x_spec, MetricSpec y_spec)
    : x_(std::move(x)), y_(std::move(y)), x_spec_(std::move(x_spec)), y_spec_(std::move(y_spec)) {
  if (x_.size() != y_.size()) throw InputError("x and y parts have different lengths");
  if (x_spec_.beta() != y_spec_.beta()) throw InputError("x and y metrics must share beta");
  for (const auto& p : x_) x_spec_.check(p);
  for (const auto& p : y_) y_spec_.check(p);
}

PairedSample PairedSample::with_beta(double beta) const {
  return PairedSample(x_, y_, x_spec_.with_beta(beta), y_spec_.with_beta(beta));
}

PairedSample euclidean_sample(const Matrix& x, const Matrix& y, double beta) {
  if (x.rows() != y.rows()) throw InputError("x and y blocks have different row counts");
  return PairedSample(points_from_rows(x), points_from_rows(y), MetricSpec::euclidean(x.cols(), beta),
                      MetricSpec::euclidean(y.cols(), beta));
}

SampleDistances sample_distances(const PairedSample& sample) {
  require_estimable(sample.size());
  return {pairwise_distances(sample.x(), sample.x_spec()), pairwise_distances(sample.y(), sample.y_spec())};
}

double pairwise_form(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.rows();
  std::vector<double> cross(n), ra(n), rb(n);
  parallel_for(0, n, [&](std::size_t i) {
    const auto ai = a.row(i);
    const auto bi = b.row(i);
    CompensatedSum c, sa, sb;
    for (std::size_t j = 0; j < n; ++j) {
      c += ai[j] * bi[j];
      sa += ai[j];
      sb += bi[j];
    }
    cross[i] = c.value();
    ra[i] = sa.value();
    rb[i] = sb.value();
  });
  const double nn = static_cast<double>(n);
  std::vector<double> prod(n);
  for (std::size_t i = 0; i < n; ++i) prod[i] = ra[i] * rb[i];
  const double t1 = pairwise_sum(cross) / (nn * nn);
  const double t2 = (pairwise_sum(ra) / (nn * nn)) * (pairwise_sum(rb) / (nn * nn));
  const double t3 = 2.0 * pairwise_sum(prod) / (nn * nn * nn);
  return t1 + t2 - t3;
}

Matrix double_center(const Matrix& a) {
  const std::size_t n = a.rows();
  const std::vector<double> m = row_means(a);
  const double g = pairwise_sum(m) / static_cast<double>(n);
  Matrix out(n, n);
  parallel_for(0, n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, j) - m[i] - m[j] + g;
  });
  return out;
}

DcovEstimate dcov_plugin_d1(const SampleDistances& d, double beta) {
  require_estimable(d.a.size());
  DcovEstimate est;
  est.method = "d1";
  est.beta = beta;
  est.n = d.a.size();
  est.value = pairwise_form(d.a.matrix(), d.b.matrix());
  return est;
}

DcovEstimate dcov_plugin_d1(const PairedSample& sample) {
  return dcov_plugin_d1(sample_distances(sample), sample.beta());
}

DcovEstimate dcov_centered(const SampleDistances& d, double beta) {
  const std::size_t n = d.a.size();
  require_estimable(n);
  const Matrix& a = d.a.matrix();
  const Matrix& b = d.b.matrix();
  const std::vector<double> ma = row_means(a);
  const std::vector<double> mb = row_means(b);
  const double ga = pairwise_sum(ma) / static_cast<double>(n);
  const double gb = pairwise_sum(mb) / static_cast<double>(n);
  std::vector<double> rows(n);
  parallel_for(0, n, [&](std::size_t i) {
    CompensatedSum s;
    for (std::size_t j = 0; j < n; ++j) {
      const double A = a(i, j) - ma[i] - ma[j] + ga;
      const double B = b(i, j) - mb[i] - mb[j] + gb;
      s += A * B;
    }
    rows[i] = s.value();
  });
  DcovEstimate est;
  est.method = "centered";
  est.beta = beta;
  est.n = n;
  est.value = pairwise_sum(rows) / (static_cast<double>(n) * static_cast<double>(n));
  return est;
}

DcovEstimate dcov_centered(const PairedSample& sample) {
  return dcov_centered(sample_distances(sample), sample.beta());
}

double dcor(const PairedSample& sample) {
  const SampleDistances d = sample_distances(sample);
  const double xy = dcov_centered(d, sample.beta()).value;
  const double xx = dcov_centered(SampleDistances{d.a, d.a}, sample.beta()).value;
  const double yy = dcov_centered(SampleDistances{d.b, d.b}, sample.beta()).value;
  if (!(xx > 0.0) || !(yy > 0.0)) {
    throw DomainError("distance correlation undefined: a marginal is degenerate");
  }
  return xy / std::sqrt(xx * yy);
}

}  // namespace dcov
