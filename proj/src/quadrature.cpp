#include "dcov/quadrature.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "dcov/error.hpp"

namespace dcov {
namespace {

constexpr int kGaussPoints = 16;
// Beyond |delta| t = kAsymptoticStart the tail expansion takes over.
constexpr double kAsymptoticStart = 64.0;

struct Rule {
  std::array<double, kGaussPoints> x;
  std::array<double, kGaussPoints> w;
};

const Rule& gauss_rule() {
  static const Rule rule = [] {
    using G = boost::math::quadrature::gauss<double, kGaussPoints>;
    const auto& a = G::abscissa();
    const auto& w = G::weights();
    Rule r{};
    const std::size_t half = a.size();
    for (std::size_t i = 0; i < half; ++i) {
      r.x[half - 1 - i] = -a[i];
      r.w[half - 1 - i] = w[i];
      r.x[half + i] = a[i];
      r.w[half + i] = w[i];
    }
    return r;
  }();
  return rule;
}

void append_linear(std::vector<QuadNode>& out, double a, double b) {
  const Rule& g = gauss_rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int k = 0; k < kGaussPoints; ++k) out.push_back({mid + half * g.x[k], half * g.w[k]});
}

// Gauss-Legendre in v = log t, so dt = t dv.
void append_logarithmic(std::vector<QuadNode>& out, double a, double b) {
  const Rule& g = gauss_rule();
  const double la = std::log(a), lb = std::log(b);
  const double mid = 0.5 * (la + lb);
  const double half = 0.5 * (lb - la);
  for (int k = 0; k < kGaussPoints; ++k) {
    const double t = std::exp(mid + half * g.x[k]);
    out.push_back({t, half * g.w[k] * t});
  }
}

// cos(x) - 1 without cancellation.
double cosm1(double x) {
  const double s = std::sin(0.5 * x);
  return -2.0 * s * s;
}

std::vector<double> panel_boundaries(double lo, double hi, int ppd) {
  std::vector<double> b{lo};
  const double ratio = std::pow(10.0, 1.0 / ppd);
  for (int k = 1;; ++k) {
    const double next = lo * std::pow(ratio, k);
    if (next >= hi * (1 - 1e-12)) break;
    b.push_back(next);
  }
  b.push_back(hi);
  return b;
}

}  // namespace

void validate(const QuadConfig& q) {
  if (!(q.eps > 0) || !(q.T > q.eps) || !std::isfinite(q.T)) throw InputError("quadrature needs 0 < eps < T < inf");
  if (q.panels_per_decade < 1) throw InputError("quadrature needs panels_per_decade >= 1");
  if (!(q.rel_tol > 0)) throw InputError("quadrature tolerance must be positive");
}

std::vector<QuadNode> log_panel_nodes(double lo, double hi, int panels_per_decade, double max_freq) {
  std::vector<QuadNode> out;
  const auto b = panel_boundaries(lo, hi, panels_per_decade);
  for (std::size_t k = 0; k + 1 < b.size(); ++k) {
    const double a = b[k], c = b[k + 1];
    const double periods = (c - a) * std::abs(max_freq) / (2 * std::numbers::pi);
    const auto m = static_cast<std::size_t>(std::ceil(periods));
    if (m <= 1) {
      append_logarithmic(out, a, c);
    } else {
      const double h = (c - a) / static_cast<double>(m);
      for (std::size_t s = 0; s < m; ++s) append_linear(out, a + s * h, s + 1 == m ? c : a + (s + 1) * h);
    }
  }
  return out;
}

double cosine_kernel_tail(double delta, double beta, double R, double* remainder) {
  // integral_R^inf t^(-beta-1) dt
  const double flat = std::pow(R, -beta) / beta;
  if (delta == 0.0) {
    if (remainder) *remainder = 0.0;
    return 0.0;
  }
  // integral_R^inf e^{i delta t} t^-a dt = -e^{i delta R} sum_m (a)_m R^(-a-m) / (i delta)^(m+1)
  const double a = 1.0 + beta;
  const std::complex<double> idelta(0.0, delta);
  std::complex<double> sum = 0.0;
  std::complex<double> factor = 1.0 / idelta;  // (a)_m / (i delta)^(m+1)
  double rpow = std::pow(R, -a);
  double last = 0.0;
  for (int m = 0; m < 8; ++m) {
    const std::complex<double> term = -factor * rpow;
    if (m > 0 && std::abs(term) > last) break;
    sum += term;
    last = std::abs(term);
    factor *= (a + m) / idelta;
    rpow /= R;
  }
  if (remainder) *remainder = last;
  const std::complex<double> phase = std::exp(std::complex<double>(0.0, delta * R));
  return (phase * sum).real() - flat;
}

double cosine_kernel_head(double delta, double beta, double eps, double* remainder) {
  const double x = std::abs(delta) * eps;
  if (remainder) *remainder = 0.0;
  if (x == 0.0) return 0.0;
  if (x > 1.0) {
    // Too oscillatory for the series; report the crude bound instead.
    if (remainder) *remainder = 2.0 * std::pow(eps, -beta) / beta;
    return 0.0;
  }
  // sum_m (-1)^m x^(2m) eps^-beta / ((2m)! (2m - beta))
  const double scale = std::pow(eps, -beta);
  double power = 1.0;  // x^(2m) / (2m)!
  double sum = 0.0;
  for (int m = 1; m <= 30; ++m) {
    power *= x * x / ((2.0 * m - 1) * (2.0 * m));
    const double term = (m % 2 ? -1.0 : 1.0) * power / (2.0 * m - beta);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return scale * sum;
}

KernelIntegral cosine_kernel_integral(double delta, double beta, const QuadConfig& q) {
  KernelIntegral out;
  if (delta == 0.0) return out;
  const double ad = std::abs(delta);
  double R = q.T;
  if (q.end_corrections) {
    // Hand over to the tail expansion at the first panel boundary past 64/|delta|, at most T.
    const double want = std::max(kAsymptoticStart / ad, q.eps);
    const double ratio = std::pow(10.0, 1.0 / q.panels_per_decade);
    const double k = std::ceil(std::log(want / q.eps) / std::log(ratio) - 1e-9);
    R = std::min(q.T, q.eps * std::pow(ratio, std::max(1.0, k)));
  }
  double sum = 0.0;
  for (const auto& node : log_panel_nodes(q.eps, R, q.panels_per_decade, ad)) {
    sum += node.w * cosm1(delta * node.t) * std::pow(node.t, -1.0 - beta);
  }
  out.value = sum;
  if (q.end_corrections) {
    double head_rem = 0.0;
    out.value += cosine_kernel_head(delta, beta, q.eps, &head_rem);
    out.value += cosine_kernel_tail(delta, beta, R, &out.remainder);
    out.remainder += head_rem;
  }
  return out;
}

}  // namespace dcov
