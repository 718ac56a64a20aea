#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dcov/population.hpp"
#include "dcov/sample.hpp"

namespace dcov {

struct PermTestResult {
  double observed = 0.0;
  double p_value = 1.0;
  std::size_t B = 0;
  std::uint64_t seed = 0;
  std::vector<double> permuted;  // statistic of each replicate, in replicate order
};

/// Permutation test of independence with the double-centred statistic.
/// p = (1 + #{permuted >= observed}) / (B + 1). Requires n >= 4 and B >= 19.
PermTestResult perm_test(const PairedSample& sample, std::size_t B, std::uint64_t seed);

enum class SweepMethod {
  empirical_exact,  // tally draws into their empirical law, evaluate it exactly (O(k^2))
  plugin_d1,        // dense plug-in on the drawn sample (O(n^2))
  centered,
};

struct ConsistencyRow {
  std::size_t n = 0;
  double estimate = 0.0;         // median over seeds
  double abs_error = 0.0;        // median over seeds of |estimate - population|
  std::vector<double> per_seed;  // estimates, in seed order
};

struct ConsistencyTrace {
  double population = 0.0;
  std::vector<std::uint64_t> seeds;
  std::vector<ConsistencyRow> rows;
};

/// For each n in the (strictly increasing) schedule and each seed, draws n iid
/// atoms from `joint` and records the estimate against dcov_exact on `joint`.
ConsistencyTrace consistency_sweep(const DiscreteJoint& joint, std::span<const std::size_t> n_schedule,
                                   std::span<const std::uint64_t> seeds,
                                   SweepMethod method = SweepMethod::empirical_exact);

/// U-statistic (2 / (n (n-1))) sum_{i<j} min(|x_i|, |x_j|)^(2 beta), with beta
/// and the base point taken from `spec`. O(n log n).
double tail_diagnostic(std::span<const Point> points, const MetricSpec& spec);

/// n iid draws on R with P(X > x) = x^-beta for x >= 2 and the remaining mass at 0.
std::vector<Point> pareto_tail_sample(std::size_t n, double beta, std::uint64_t seed);
/// n iid Uniform(0, 1) draws on R.
std::vector<Point> uniform_sample(std::size_t n, std::uint64_t seed);

/// Analyst-supplied integrability facts about (X, Y).
struct MomentFlags {
  double beta = 1.0;
  bool x_beta = true;      // E|X|^beta < inf
  bool y_beta = true;
  bool xy_product = true;  // E[|X|^beta |Y|^beta] < inf
  bool x_2beta = true;     // E|X|^(2 beta) < inf
  bool y_2beta = true;
  bool hx_L1 = true;       // alternating four-point sum of X integrable
  bool hx_L2 = true;       // ... square integrable
  bool hy_L1 = true;
  bool hy_L2 = true;
  bool identical = false;  // Y = X
};

enum class RegimeStatus { finite, plus_infinity, undefined_inf_minus_inf, ttilde_undefined, unknown };

struct DefinitionVerdict {
  RegimeStatus status = RegimeStatus::unknown;
  std::string reason;
};

struct RegimeReport {
  DefinitionVerdict def1;  // pairwise-distance expectations
  DefinitionVerdict def2;  // four-point form
  DefinitionVerdict def3;  // centred form
  bool finite_values_agree = false;  // true when at least two are finite (they then coincide)
};

/// Throws InputError when the flags contradict the implications between them.
void check_consistent(const MomentFlags& flags);
RegimeReport regime_classify(const MomentFlags& flags);

const char* to_string(RegimeStatus s);
const char* to_string(SweepMethod m);

}  // namespace dcov
