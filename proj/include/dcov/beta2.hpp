#pragma once

#include "dcov/matrix.hpp"
#include "dcov/population.hpp"
#include "dcov/sample.hpp"

namespace dcov {

/// p x q plug-in cross-covariance, C(i,j) = (1/n) sum_k (x_k[i] - mean_x[i]) (y_k[j] - mean_y[j]).
Matrix cross_cov(const PairedSample& sample);

/// Cross-covariance of a finitely supported joint law.
Matrix cross_cov(const DiscreteJoint& joint);

/// 4 * sum C(i,j)^2, the beta = 2 distance covariance.
DcovEstimate dcov2_closed(const PairedSample& sample);
DcovEstimate dcov2_closed(const DiscreteJoint& joint);

}  // namespace dcov
