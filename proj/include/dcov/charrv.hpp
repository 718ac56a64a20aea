#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dcov/population.hpp"
#include "dcov/quadrature.hpp"
#include "dcov/sample.hpp"

namespace dcov {

/// Source of iid standard normal projection vectors (xi, eta). Draw k comes
/// from its own stream keyed by (seed, k), so draws are reproducible and
/// independent of evaluation order.
class GaussianProjector {
 public:
  GaussianProjector(std::uint64_t seed, std::size_t dim_x, std::size_t dim_y, std::size_t draws);

  std::size_t draws() const { return draws_; }
  std::size_t dim_x() const { return dim_x_; }
  std::size_t dim_y() const { return dim_y_; }
  std::pair<std::vector<double>, std::vector<double>> draw(std::size_t k) const;

 private:
  std::uint64_t seed_;
  std::size_t dim_x_, dim_y_, draws_;
};

/// Characteristic random variable E(exp(i r xi.X) | xi) of a finite law.
std::complex<double> char_rv(const Marginal& law, std::span<const double> xi, double r);
/// Same for the empirical law of a point list (weights 1/n).
std::complex<double> char_rv(std::span<const Point> points, std::span<const double> xi, double r);
/// Joint version E(exp(i r xi.X + i s eta.Y) | xi, eta).
std::complex<double> char_rv_joint(const DiscreteJoint& joint, std::span<const double> xi,
                                   std::span<const double> eta, double r, double s);

struct McValue {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo average over projector draws of |Phi_(rX,sY) - Phi_rX Phi_sY|^2.
McValue sq_cov_mc(const DiscreteJoint& joint, double r, double s, const GaussianProjector& proj);

/// The same expectation in closed form through Gaussian kernels:
///   E k(X1-X3, Y1-Y3) - E k(X1-X3, Y1-Y4) - E k(X1-X3, Y2-Y3) + E k(X1-X3, Y2-Y4),
/// with k(a, b) = exp(-r^2 |a|^2 / 2 - s^2 |b|^2 / 2).
double sq_cov_expansion(const DiscreteJoint& joint, double r, double s);

/// sum_i (-1)^(i-1) exp(-u |x_i - x_(i+1)|^2), indices mod 4; |value| <= 4.
double lambda_pointwise(std::span<const double> x1, std::span<const double> x2, std::span<const double> x3,
                        std::span<const double> x4, double u);

/// E of lambda_pointwise over four iid draws from `law`. Exchangeability makes
/// this vanish identically; it is computed by enumeration (k^4 terms).
double lambda_fn(const Marginal& law, double u);

/// E[Lambda_X(u) Lambda_Y(v)] over four iid copies of (X, Y), by enumeration.
double lambda_product_expectation(const DiscreteJoint& joint, double u, double v);

struct CharRVConfig {
  std::size_t draws = 2000;
  std::uint64_t seed = 0;
  QuadConfig quad;
};

/// Gaussian-projection definition by Monte Carlo over (xi, eta). For each draw
/// the conditional covariance is exact over the (empirical) law, and the (r, s)
/// integral uses the charfn panel scheme. Each draw is paired with its
/// reflection eta -> -eta. stderr = sd over draws / sqrt(K).
/// aux: "draws", "quad_remainder".
DcovEstimate dcov_charrv_mc(const DiscreteJoint& joint, const CharRVConfig& cfg);
DcovEstimate dcov_charrv_mc(const PairedSample& sample, const CharRVConfig& cfg);

/// x^(beta/2) + M^(beta/2) - (x + M)^(beta/2); increasing in x and in M, h(0) = 0.
double h_M(double x, double beta, double M);

/// sum_i (-1)^(i-1) h_M(|x_i - x_(i+1)|^2).
double hhat_M(const Point& x1, const Point& x2, const Point& x3, const Point& x4, const MetricSpec& spec,
              double M);

/// Quarter of E[hhat_(X,M) hhat_(Y,M)] over the empirical law; tends to the
/// plug-in value as M grows.
DcovEstimate dcov_hm(const PairedSample& sample, double M);

}  // namespace dcov
