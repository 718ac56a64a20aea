#pragma once

#include <vector>

#include "dcov/population.hpp"
#include "dcov/quadrature.hpp"
#include "dcov/sample.hpp"

namespace dcov {

/// Normalising constant of the characteristic-function definition in R^ell,
///   c = beta 2^(beta-1) Gamma((ell+beta)/2) / (pi^(ell/2) Gamma(1-beta/2)),
/// the pole-free form, valid for 0 < beta < 2.
double c_const(int ell, double beta);

/// Constant of the Gaussian-projection definition, beta 2^(beta/2) / Gamma(1 - beta/2).
double c_gauss(double beta);

/// Scalar joint law reduced to distinct values: w(j,l) = P(X=xj, Y=yl) - P(X=xj) P(Y=yl).
struct ScalarJointTable {
  std::vector<double> xs;
  std::vector<double> ys;
  Matrix w;
};

ScalarJointTable scalar_joint_table(std::span<const double> x, std::span<const double> y,
                                    std::span<const double> probs);

struct SeparableIntegral {
  double value = 0.0;      // sum w(j,l) w(j',l') Gx(j,j') Gy(l,l')
  double remainder = 0.0;  // accumulated asymptotic-tail remainders, same weighting in absolute value
};

/// Integral of sum_{(j,l),(j',l')} w w' cos(t dx) cos(u dy) against
/// t^(-1-beta) u^(-1-beta) over (eps, inf)^2. This equals half the integral of
/// |phi_XY(t,u) - phi_X(t) phi_Y(u)|^2 (t u)^(-1-beta) over quadrants I and IV;
/// the tensor-product rule is evaluated in separable form.
SeparableIntegral separable_charfn_integral(const ScalarJointTable& table, double beta, const QuadConfig& q);

/// |phi_XY(t,u) - phi_X(t) phi_Y(u)|^2 / (|t|^(1+beta) |u|^(1+beta)) for a 1-D x 1-D joint.
double charfn_integrand(const DiscreteJoint& joint, double t, double u);

/// The same integral over the box [eps, T]^2 (quadrants I and IV folded, no
/// tail), by direct evaluation of the integrand on a tensor grid. Used to check
/// the separable evaluation; cost O(k N^2) for N nodes per axis.
double charfn_box_direct(const DiscreteJoint& joint, const QuadConfig& q);

/// Characteristic-function definition for a 1-D x 1-D finite-support joint,
/// by quadrature. aux: "error_estimate", "value_T_over_10", "value_10eps",
/// "tail_remainder". Throws DomainError for beta outside (0,2) or when the
/// error estimate exceeds rel_tol * |value| (plus 1e-12 absolute).
DcovEstimate dcov_charfn_1d(const DiscreteJoint& joint, const QuadConfig& q = {});

}  // namespace dcov
