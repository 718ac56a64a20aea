#include "dcov/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "dcov/error.hpp"
#include "dcov/estimators.hpp"
#include "dcov/parallel.hpp"
#include "dcov/rng.hpp"
#include "dcov/summation.hpp"

namespace dcov {
namespace {

double permuted_statistic(const Matrix& a, const Matrix& b, std::span<const std::size_t> perm) {
  const std::size_t n = a.rows();
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ai = a.row(i);
    const auto bi = b.row(perm[i]);
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += ai[j] * bi[perm[j]];
    s += row;
  }
  return s.value() / (static_cast<double>(n) * static_cast<double>(n));
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::vector<std::size_t> draw_atoms(std::span<const double> cdf, std::size_t n, std::uint64_t seed) {
  auto rng = stream_rng(seed, n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::size_t> idx(n);
  for (auto& k : idx) {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u(rng) * cdf.back());
    k = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
  }
  return idx;
}

double estimate_from_draws(const DiscreteJoint& joint, std::span<const std::size_t> idx, SweepMethod method) {
  const std::size_t n = idx.size();
  if (method == SweepMethod::empirical_exact) {
    std::vector<std::size_t> counts(joint.size(), 0);
    for (auto k : idx) ++counts[k];
    std::vector<Point> xs, ys;
    std::vector<double> probs;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      if (counts[k] == 0) continue;
      xs.push_back(joint.x()[k]);
      ys.push_back(joint.y()[k]);
      probs.push_back(static_cast<double>(counts[k]) / static_cast<double>(n));
    }
    const DiscreteJoint law(std::move(xs), std::move(ys), std::move(probs), joint.x_spec(), joint.y_spec());
    return dcov_exact(law, ExactMethod::d3).value;
  }
  std::vector<Point> xs, ys;
  xs.reserve(n);
  ys.reserve(n);
  for (auto k : idx) {
    xs.push_back(joint.x()[k]);
    ys.push_back(joint.y()[k]);
  }
  const PairedSample sample(std::move(xs), std::move(ys), joint.x_spec(), joint.y_spec());
  return method == SweepMethod::plugin_d1 ? dcov_plugin_d1(sample).value : dcov_centered(sample).value;
}

DefinitionVerdict verdict(RegimeStatus s, std::string reason) { return {s, std::move(reason)}; }

}  // namespace

PermTestResult perm_test(const PairedSample& sample, std::size_t B, std::uint64_t seed) {
  const std::size_t n = sample.size();
  if (n < 4) throw InputError("the permutation test needs n >= 4 observations");
  if (B < 19) throw InputError("the permutation test needs B >= 19 permutations");
  const auto d = sample_distances(sample);
  const Matrix a = double_center(d.a.matrix());
  const Matrix b = double_center(d.b.matrix());

  std::vector<std::size_t> identity(n);
  std::iota(identity.begin(), identity.end(), std::size_t{0});

  PermTestResult out;
  out.B = B;
  out.seed = seed;
  out.observed = permuted_statistic(a, b, identity);
  out.permuted.assign(B, 0.0);
  parallel_for(0, B, [&](std::size_t r) {
    std::vector<std::size_t> perm = identity;
    auto rng = stream_rng(seed, r);
    std::shuffle(perm.begin(), perm.end(), rng);
    out.permuted[r] = permuted_statistic(a, b, perm);
  });
  const auto hits = std::count_if(out.permuted.begin(), out.permuted.end(),
                                  [&](double v) { return v >= out.observed; });
  out.p_value = static_cast<double>(1 + hits) / static_cast<double>(B + 1);
  return out;
}

ConsistencyTrace consistency_sweep(const DiscreteJoint& joint, std::span<const std::size_t> n_schedule,
                                   std::span<const std::uint64_t> seeds, SweepMethod method) {
  if (n_schedule.empty()) throw InputError("consistency sweep needs a non-empty schedule");
  if (seeds.empty()) throw InputError("consistency sweep needs at least one seed");
  for (std::size_t i = 0; i < n_schedule.size(); ++i) {
    if (n_schedule[i] < 2) throw InputError("consistency sweep sizes must be >= 2");
    if (i > 0 && n_schedule[i] <= n_schedule[i - 1]) {
      throw InputError("consistency sweep sizes must be strictly increasing");
    }
  }
  if (method != SweepMethod::empirical_exact && n_schedule.back() > 20000) {
    throw InputError("dense sweep limited to n <= 20000; use the empirical_exact method");
  }

  ConsistencyTrace trace;
  trace.population = dcov_exact(joint, ExactMethod::d3).value;
  trace.seeds.assign(seeds.begin(), seeds.end());

  std::vector<double> cdf(joint.size());
  std::partial_sum(joint.probs().begin(), joint.probs().end(), cdf.begin());

  for (const std::size_t n : n_schedule) {
    ConsistencyRow row;
    row.n = n;
    row.per_seed.assign(seeds.size(), 0.0);
    parallel_for(0, seeds.size(), [&](std::size_t s) {
      row.per_seed[s] = estimate_from_draws(joint, draw_atoms(cdf, n, seeds[s]), method);
    });
    std::vector<double> errs;
    for (double v : row.per_seed) errs.push_back(std::abs(v - trace.population));
    row.estimate = median(row.per_seed);
    row.abs_error = median(std::move(errs));
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

double tail_diagnostic(std::span<const Point> points, const MetricSpec& spec) {
  const std::size_t n = points.size();
  if (n < 2) throw InputError("tail diagnostic needs n >= 2 observations");
  std::vector<double> v = norms_to_base(points, spec);
  for (double& x : v) x *= x;
  std::sort(v.begin(), v.end());
  // The i-th smallest value is the minimum of the pairs it forms with every larger one.
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) s += v[i] * static_cast<double>(n - 1 - i);
  return 2.0 * s.value() / (static_cast<double>(n) * static_cast<double>(n - 1));
}

std::vector<Point> pareto_tail_sample(std::size_t n, double beta, std::uint64_t seed) {
  if (!(beta > 0)) throw InputError("beta must be positive");
  auto rng = stream_rng(seed, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::pow(1.0 - u(rng), -1.0 / beta);
    out.push_back(Point{x > 2.0 ? x : 0.0});
  }
  return out;
}

std::vector<Point> uniform_sample(std::size_t n, std::uint64_t seed) {
  auto rng = stream_rng(seed, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(Point{u(rng)});
  return out;
}

void check_consistent(const MomentFlags& f) {
  if (!(f.beta > 0) || !std::isfinite(f.beta)) throw InputError("flags: beta must be positive");
  const auto fail = [](const char* what) { throw InputError(std::string("inconsistent flags: ") + what); };
  if (f.x_2beta && !f.x_beta) fail("x_2beta requires x_beta");
  if (f.y_2beta && !f.y_beta) fail("y_2beta requires y_beta");
  if (f.hx_L2 && !f.hx_L1) fail("hx_L2 requires hx_L1");
  if (f.hy_L2 && !f.hy_L1) fail("hy_L2 requires hy_L1");
  if (f.x_beta && !f.hx_L1) fail("x_beta implies hx_L1");
  if (f.y_beta && !f.hy_L1) fail("y_beta implies hy_L1");
  if (f.beta <= 2.0) {
    if (f.x_beta && !f.hx_L2) fail("for beta <= 2, x_beta implies hx_L2");
    if (f.y_beta && !f.hy_L2) fail("for beta <= 2, y_beta implies hy_L2");
  } else {
    if (f.x_2beta && !f.hx_L2) fail("for beta > 2, x_2beta implies hx_L2");
    if (f.y_2beta && !f.hy_L2) fail("for beta > 2, y_2beta implies hy_L2");
  }
  if (f.x_2beta && f.y_2beta && !f.xy_product) fail("x_2beta and y_2beta imply xy_product");
  if (f.identical) {
    if (f.x_beta != f.y_beta || f.x_2beta != f.y_2beta || f.hx_L1 != f.hy_L1 || f.hx_L2 != f.hy_L2) {
      fail("identical requires equal x and y flags");
    }
    if (f.xy_product != f.x_2beta) fail("identical requires xy_product == x_2beta");
  }
}

RegimeReport regime_classify(const MomentFlags& f) {
  check_consistent(f);
  RegimeReport r;
  const bool sum_condition = f.x_beta && f.y_beta && f.xy_product;
  const bool both_L2 = f.hx_L2 && f.hy_L2;
  const bool both_L1 = f.hx_L1 && f.hy_L1;

  r.def1 = sum_condition
               ? verdict(RegimeStatus::finite, "beta-moments and the product moment are finite")
               : verdict(RegimeStatus::undefined_inf_minus_inf,
                         "the beta-moment sum condition fails, so the pairwise expectations give inf - inf");

  if (sum_condition || both_L2) {
    const char* why = sum_condition ? "beta-moment sum condition holds" : "both four-point sums are square integrable";
    r.def2 = verdict(RegimeStatus::finite, why);
  } else if (f.identical) {
    r.def2 = verdict(RegimeStatus::plus_infinity, "Y = X and the four-point sum is not square integrable");
  } else {
    r.def2 = verdict(RegimeStatus::unknown, "not settled by the known results for this combination");
  }

  if (!both_L1) {
    r.def3 = verdict(RegimeStatus::ttilde_undefined, "a four-point sum is not integrable, so the centred kernel is undefined");
  } else if (sum_condition || both_L2) {
    r.def3 = verdict(RegimeStatus::finite, "centred kernels are defined and the product is integrable");
  } else if (f.identical) {
    r.def3 = verdict(RegimeStatus::plus_infinity, "Y = X and the centred kernel is integrable but not square integrable");
  } else {
    r.def3 = verdict(RegimeStatus::unknown, "not settled by the known results for this combination");
  }

  const int finite = (r.def1.status == RegimeStatus::finite) + (r.def2.status == RegimeStatus::finite) +
                     (r.def3.status == RegimeStatus::finite);
  r.finite_values_agree = finite >= 2;
  return r;
}

const char* to_string(RegimeStatus s) {
  switch (s) {
    case RegimeStatus::finite: return "finite";
    case RegimeStatus::plus_infinity: return "+inf";
    case RegimeStatus::undefined_inf_minus_inf: return "undefined (inf - inf)";
    case RegimeStatus::ttilde_undefined: return "centred kernel undefined";
    case RegimeStatus::unknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(SweepMethod m) {
  switch (m) {
    case SweepMethod::empirical_exact: return "empirical_exact";
    case SweepMethod::plugin_d1: return "plugin_d1";
    case SweepMethod::centered: return "centered";
  }
  return "";
}

}  // namespace dcov
