#pragma once

#include <vector>

namespace dcov {

/// Discretisation of the improper weighted integrals over (0, inf).
struct QuadConfig {
  double eps = 1e-6;            // inner cutoff
  double T = 1e3;               // outer cutoff
  int panels_per_decade = 8;    // log-spaced panels, 16 Gauss-Legendre points each
  double rel_tol = 1e-3;        // target relative tolerance for the error estimate
  bool end_corrections = true;  // series on (0, eps), asymptotics past the last panel
};

void validate(const QuadConfig& q);

/// A quadrature node t with weight w.
struct QuadNode {
  double t;
  double w;
};

/// Nodes for integrals over [lo, hi]: panels log-spaced at panels_per_decade,
/// each split further so that no sub-panel spans more than one period of a
/// cosine with angular frequency `max_freq`.
std::vector<QuadNode> log_panel_nodes(double lo, double hi, int panels_per_decade, double max_freq);

/// Asymptotic value of integral_R^inf (cos(delta t) - 1) t^(-1-beta) dt, valid
/// for |delta| R >> 1. `remainder` receives the size of the last term kept.
double cosine_kernel_tail(double delta, double beta, double R, double* remainder = nullptr);

struct KernelIntegral {
  double value = 0.0;
  double remainder = 0.0;  // size of the neglected asymptotic term
};

/// integral_0^inf (cos(delta t) - 1) t^(-1-beta) dt with cutoffs from `q`:
/// series on (0, eps), Gauss-Legendre on [eps, R] and the asymptotic tail
/// beyond R, where R is the first panel boundary past 64/|delta| capped at T.
/// Without end corrections the result is the plain integral over [eps, T].
/// Series value of integral_0^eps (cos(delta t) - 1) t^(-1-beta) dt, used when
/// |delta| eps <= 1; otherwise 0 with a crude bound in `remainder`.
double cosine_kernel_head(double delta, double beta, double eps, double* remainder = nullptr);

KernelIntegral cosine_kernel_integral(double delta, double beta, const QuadConfig& q);

}  // namespace dcov
