#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcov/metric.hpp"

namespace dcov {

/// n observation pairs (x_i, y_i). Both metrics carry the same beta.
class PairedSample {
 public:
  PairedSample(std::vector<Point> x, std::vector<Point> y, MetricSpec x_spec, MetricSpec y_spec);

  std::size_t size() const { return x_.size(); }
  double beta() const { return x_spec_.beta(); }
  const std::vector<Point>& x() const { return x_; }
  const std::vector<Point>& y() const { return y_; }
  const MetricSpec& x_spec() const { return x_spec_; }
  const MetricSpec& y_spec() const { return y_spec_; }

  /// The same pairs with y and x exchanged.
  PairedSample swapped() const { return PairedSample(y_, x_, y_spec_, x_spec_); }
  PairedSample with_beta(double beta) const;

 private:
  std::vector<Point> x_, y_;
  MetricSpec x_spec_, y_spec_;
};

/// Euclidean sample from two coordinate blocks with matching row counts.
PairedSample euclidean_sample(const Matrix& x, const Matrix& y, double beta);

/// Result of any DCbeta computation.
struct DcovEstimate {
  double value = 0.0;
  std::string method;
  double beta = 1.0;
  std::size_t n = 0;
  /// Monte Carlo standard error (JSON key "stderr").
  std::optional<double> std_error;
  /// Method-specific diagnostics (quadrature error estimate, draw counts, ...).
  std::map<std::string, double> aux;
};

}  // namespace dcov
