#pragma once

#include "dcov/metric.hpp"
#include "dcov/sample.hpp"

namespace dcov {

/// Distance matrices of both parts of a sample, computed once and shared.
struct SampleDistances {
  DistanceMatrix a;  // d(x_i, x_j)^beta
  DistanceMatrix b;  // d(y_i, y_j)^beta
};

SampleDistances sample_distances(const PairedSample& sample);

/// Plug-in (V-statistic) estimate from the pairwise form:
///   (1/n^2) sum a_ij b_ij + (sum a / n^2)(sum b / n^2) - (2/n^3) sum_i (sum_j a_ij)(sum_k b_ik).
DcovEstimate dcov_plugin_d1(const PairedSample& sample);
DcovEstimate dcov_plugin_d1(const SampleDistances& d, double beta);

/// Plug-in estimate from double-centred distance matrices: (1/n^2) sum A_ij B_ij.
DcovEstimate dcov_centered(const PairedSample& sample);
DcovEstimate dcov_centered(const SampleDistances& d, double beta);

/// Same contraction as dcov_plugin_d1 for arbitrary symmetric kernels.
double pairwise_form(const Matrix& a, const Matrix& b);

/// Double-centred copy: A_ij = a_ij - rowmean_i - colmean_j + grandmean.
Matrix double_center(const Matrix& a);

/// DC(X,Y) / sqrt(DC(X,X) DC(Y,Y)), all three from dcov_centered. Throws
/// DomainError when either marginal is degenerate.
double dcor(const PairedSample& sample);

}  // namespace dcov
