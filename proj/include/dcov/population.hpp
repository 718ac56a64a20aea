#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dcov/metric.hpp"
#include "dcov/sample.hpp"

namespace dcov {

/// Finitely supported law: atoms with positive probabilities.
struct Marginal {
  std::vector<Point> atoms;
  std::vector<double> probs;
};

/// Finitely supported joint law of (X, Y).
class DiscreteJoint {
 public:
  /// Probabilities must be positive and sum to 1 within 1e-12.
  DiscreteJoint(std::vector<Point> x, std::vector<Point> y, std::vector<double> probs, MetricSpec x_spec,
                MetricSpec y_spec);

  std::size_t size() const { return probs_.size(); }
  double beta() const { return x_spec_.beta(); }
  const std::vector<Point>& x() const { return x_; }
  const std::vector<Point>& y() const { return y_; }
  const std::vector<double>& probs() const { return probs_; }
  const MetricSpec& x_spec() const { return x_spec_; }
  const MetricSpec& y_spec() const { return y_spec_; }

  /// Law of X (equal atoms merged).
  Marginal marginal_x() const;
  Marginal marginal_y() const;

  /// Law of (X, Y') with Y' an independent copy of Y.
  DiscreteJoint product_of_marginals() const;
  DiscreteJoint with_beta(double beta) const;

 private:
  std::vector<Point> x_, y_;
  std::vector<double> probs_;
  MetricSpec x_spec_, y_spec_;
};

/// Empirical measure (1/n) sum delta_(x_i, y_i). With merge_ties, identical
/// pairs become one atom carrying their combined mass.
DiscreteJoint empirical_joint(const PairedSample& sample, bool merge_ties = true);

/// Alternating four-point sum d(x1,x2)^b - d(x2,x3)^b + d(x3,x4)^b - d(x4,x1)^b.
double hhat_eval(const Point& x1, const Point& x2, const Point& x3, const Point& x4, const MetricSpec& spec);

/// d(x1,x2)^b - E d(x1,X)^b - E d(x2,X)^b + E d(X,X')^b for X distributed per `law`.
double ttilde_eval(const Point& x1, const Point& x2, const Marginal& law, const MetricSpec& spec);

enum class ExactMethod { d1, d2, d3 };

struct ExactOptions {
  /// The four-fold sum is O(k^4); larger supports are refused.
  std::size_t max_support_d2 = 64;
};

/// DCbeta of a finitely supported joint by brute-force enumeration:
///   d1: pairwise form over atom triples, O(k^3)
///   d2: quarter of E[hhat_X hhat_Y] over atom quadruples, O(k^4)
///   d3: E[ttilde_X ttilde_Y] over atom pairs, O(k^2)
DcovEstimate dcov_exact(const DiscreteJoint& joint, ExactMethod method, const ExactOptions& opts = {});

struct ProjectionDemo {
  double dc_full = 0.0;
  double dc_projected = 0.0;
};

/// X = (X', X''), Y = (X', Y'') with X', X'', Y'' iid Bernoulli(1/2) on R^2 x R^2,
/// against the projection onto the first coordinates. Both values come from
/// dcov_exact (d1) on the 8-atom joint.
ProjectionDemo projection_demo(double beta = 1.0);

/// The 8-atom joint used by projection_demo.
DiscreteJoint projection_demo_joint(double beta, bool projected);

const char* to_string(ExactMethod m);

}  // namespace dcov
