#include "dcov/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <sstream>

#include "dcov/error.hpp"
#include "dcov/summation.hpp"

namespace dcov {
namespace {

void require_open_beta(double beta, const char* what) {
  if (!(beta > 0.0 && beta < 2.0)) {
    std::ostringstream os;
    os << what << " requires 0 < beta < 2 (the weighted integral diverges for beta >= 2), got beta = " << beta;
    throw DomainError(os.str());
  }
}

std::vector<double> column(const std::vector<Point>& pts) {
  std::vector<double> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    if (p.is_atom() || p.coords().size() != 1) throw InputError("expected scalar (1-D) coordinates");
    out.push_back(p.coords()[0]);
  }
  return out;
}

Matrix kernel_matrix(const std::vector<double>& v, double beta, const QuadConfig& q, double* remainder) {
  const std::size_t n = v.size();
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto k = cosine_kernel_integral(v[i] - v[j], beta, q);
      g(i, j) = g(j, i) = k.value;
      *remainder = std::max(*remainder, k.remainder);
    }
  }
  return g;
}

}  // namespace

double c_const(int ell, double beta) {
  if (ell < 1) throw InputError("dimension ell must be >= 1");
  require_open_beta(beta, "c_const");
  return beta * std::pow(2.0, beta - 1.0) * std::tgamma((ell + beta) / 2.0) /
         (std::pow(std::numbers::pi, ell / 2.0) * std::tgamma(1.0 - beta / 2.0));
}

double c_gauss(double beta) {
  require_open_beta(beta, "c_gauss");
  return beta * std::pow(2.0, beta / 2.0) / std::tgamma(1.0 - beta / 2.0);
}

ScalarJointTable scalar_joint_table(std::span<const double> x, std::span<const double> y,
                                    std::span<const double> probs) {
  std::map<double, double> px, py;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    px[x[k]] += probs[k];
    py[y[k]] += probs[k];
  }
  ScalarJointTable t;
  std::map<double, std::size_t> ix, iy;
  for (const auto& [v, p] : px) {
    ix[v] = t.xs.size();
    t.xs.push_back(v);
  }
  for (const auto& [v, p] : py) {
    iy[v] = t.ys.size();
    t.ys.push_back(v);
  }
  t.w = Matrix(t.xs.size(), t.ys.size());
  for (std::size_t j = 0; j < t.xs.size(); ++j)
    for (std::size_t l = 0; l < t.ys.size(); ++l) t.w(j, l) = -px[t.xs[j]] * py[t.ys[l]];
  for (std::size_t k = 0; k < probs.size(); ++k) t.w(ix[x[k]], iy[y[k]]) += probs[k];
  return t;
}

SeparableIntegral separable_charfn_integral(const ScalarJointTable& table, double beta, const QuadConfig& q) {
  SeparableIntegral out;
  const std::size_t nx = table.xs.size(), ny = table.ys.size();
  if (nx < 2 || ny < 2) return out;  // a degenerate marginal makes w vanish
  double rem_x = 0.0, rem_y = 0.0;
  const Matrix gx = kernel_matrix(table.xs, beta, q, &rem_x);
  const Matrix gy = kernel_matrix(table.ys, beta, q, &rem_y);
  const Matrix& w = table.w;

  // H = W Gy W^T, then value = sum Gx .* H.
  Matrix wg(nx, ny);
  for (std::size_t j = 0; j < nx; ++j)
    for (std::size_t l = 0; l < ny; ++l) {
      CompensatedSum s;
      for (std::size_t m = 0; m < ny; ++m) s += w(j, m) * gy(m, l);
      wg(j, l) = s.value();
    }
  CompensatedSum total;
  double gmax_x = 0.0, gmax_y = 0.0;
  for (std::size_t j = 0; j < nx; ++j) {
    for (std::size_t jp = 0; jp < nx; ++jp) {
      CompensatedSum h;
      for (std::size_t l = 0; l < ny; ++l) h += wg(j, l) * w(jp, l);
      total += gx(j, jp) * h.value();
      gmax_x = std::max(gmax_x, std::abs(gx(j, jp)));
    }
  }
  for (double v : gy.data()) gmax_y = std::max(gmax_y, std::abs(v));
  double wabs = 0.0;
  for (double v : w.data()) wabs += std::abs(v);
  out.value = total.value();
  // Bound on how far the neglected tail terms can move the result.
  out.remainder = wabs * wabs * (rem_x * gmax_y + rem_y * gmax_x);
  return out;
}

double charfn_integrand(const DiscreteJoint& joint, double t, double u) {
  const auto x = column(joint.x());
  const auto y = column(joint.y());
  const auto& p = joint.probs();
  std::complex<double> fxy = 0.0, fx = 0.0, fy = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    fxy += p[k] * std::exp(std::complex<double>(0.0, t * x[k] + u * y[k]));
    fx += p[k] * std::exp(std::complex<double>(0.0, t * x[k]));
    fy += p[k] * std::exp(std::complex<double>(0.0, u * y[k]));
  }
  const double beta = joint.beta();
  return std::norm(fxy - fx * fy) / (std::pow(std::abs(t), 1.0 + beta) * std::pow(std::abs(u), 1.0 + beta));
}

double charfn_box_direct(const DiscreteJoint& joint, const QuadConfig& q) {
  validate(q);
  const auto x = column(joint.x());
  const auto y = column(joint.y());
  const auto span = [](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
  };
  const auto tn = log_panel_nodes(q.eps, q.T, q.panels_per_decade, span(x));
  const auto un = log_panel_nodes(q.eps, q.T, q.panels_per_decade, span(y));
  CompensatedSum s;
  for (const auto& a : tn) {
    for (const auto& b : un) {
      s += a.w * b.w * 0.5 * (charfn_integrand(joint, a.t, b.t) + charfn_integrand(joint, a.t, -b.t));
    }
  }
  return s.value();
}

DcovEstimate dcov_charfn_1d(const DiscreteJoint& joint, const QuadConfig& q) {
  const double beta = joint.beta();
  require_open_beta(beta, "the characteristic-function method");
  validate(q);
  const auto x = column(joint.x());
  const auto y = column(joint.y());
  const ScalarJointTable table = scalar_joint_table(x, y, joint.probs());
  const double c = c_const(1, beta);
  // Integral over R^2 = 2 (quadrant I + quadrant IV) = 4 x separable integral.
  const auto at = [&](const QuadConfig& cfg) { return separable_charfn_integral(table, beta, cfg); };

  const SeparableIntegral main = at(q);
  QuadConfig short_t = q;
  short_t.T = q.T / 10.0;
  QuadConfig wide_eps = q;
  wide_eps.eps = q.eps * 10.0;
  const double scale = 4.0 * c * c;
  const double v = scale * main.value;
  const double v_t = short_t.T > q.eps ? scale * at(short_t).value : v;
  const double v_e = wide_eps.eps < q.T ? scale * at(wide_eps).value : v;
  const double err = std::abs(v - v_t) + std::abs(v - v_e) + scale * main.remainder;

  DcovEstimate est;
  est.method = "charfn";
  est.beta = beta;
  est.n = joint.size();
  est.value = v;
  est.aux["error_estimate"] = err;
  est.aux["value_T_over_10"] = v_t;
  est.aux["value_10eps"] = v_e;
  est.aux["tail_remainder"] = scale * main.remainder;
  if (err > q.rel_tol * std::abs(v) + 1e-12) {
    std::ostringstream os;
    os << "characteristic-function quadrature did not reach tolerance: value " << v << ", error estimate " << err;
    throw DomainError(os.str());
  }
  return est;
}

}  // namespace dcov
