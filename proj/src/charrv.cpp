#include "dcov/charrv.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "dcov/charfn.hpp"
#include "dcov/error.hpp"
#include "dcov/estimators.hpp"
#include "dcov/parallel.hpp"
#include "dcov/rng.hpp"
#include "dcov/summation.hpp"

namespace dcov {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void require_euclidean(const MetricSpec& spec, const char* what) {
  if (!spec.is_euclidean()) {
    throw InputError(std::string(what) + " requires Euclidean (coordinate) data");
  }
}

void check_dim(std::span<const double> v, std::size_t dim) {
  if (v.size() != dim) throw InputError("projection vector dimension does not match the data");
}

Matrix gaussian_kernel(const std::vector<Point>& pts, double scale2) {
  const std::size_t k = pts.size();
  Matrix m(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m(i, j) = std::exp(-0.5 * scale2 * sq_dist(pts[i].coords(), pts[j].coords()));
  return m;
}

}  // namespace

GaussianProjector::GaussianProjector(std::uint64_t seed, std::size_t dim_x, std::size_t dim_y, std::size_t draws)
    : seed_(seed), dim_x_(dim_x), dim_y_(dim_y), draws_(draws) {
  if (draws < 1) throw InputError("projector needs at least one draw");
  if (dim_x < 1 || dim_y < 1) throw InputError("projector dimensions must be >= 1");
}

std::pair<std::vector<double>, std::vector<double>> GaussianProjector::draw(std::size_t k) const {
  auto rng = stream_rng(seed_, k);
  std::normal_distribution<double> z;
  std::vector<double> xi(dim_x_), eta(dim_y_);
  for (auto& v : xi) v = z(rng);
  for (auto& v : eta) v = z(rng);
  return {std::move(xi), std::move(eta)};
}

std::complex<double> char_rv(const Marginal& law, std::span<const double> xi, double r) {
  std::complex<double> s = 0.0;
  for (std::size_t k = 0; k < law.atoms.size(); ++k) {
    check_dim(xi, law.atoms[k].coords().size());
    s += law.probs[k] * std::exp(std::complex<double>(0.0, r * dot(xi, law.atoms[k].coords())));
  }
  return s;
}

std::complex<double> char_rv(std::span<const Point> points, std::span<const double> xi, double r) {
  if (points.empty()) throw InputError("char_rv of an empty sample");
  std::complex<double> s = 0.0;
  for (const auto& p : points) {
    check_dim(xi, p.coords().size());
    s += std::exp(std::complex<double>(0.0, r * dot(xi, p.coords())));
  }
  return s / static_cast<double>(points.size());
}

std::complex<double> char_rv_joint(const DiscreteJoint& joint, std::span<const double> xi,
                                   std::span<const double> eta, double r, double s) {
  std::complex<double> acc = 0.0;
  for (std::size_t k = 0; k < joint.size(); ++k) {
    const double phase = r * dot(xi, joint.x()[k].coords()) + s * dot(eta, joint.y()[k].coords());
    acc += joint.probs()[k] * std::exp(std::complex<double>(0.0, phase));
  }
  return acc;
}

McValue sq_cov_mc(const DiscreteJoint& joint, double r, double s, const GaussianProjector& proj) {
  require_euclidean(joint.x_spec(), "sq_cov_mc");
  require_euclidean(joint.y_spec(), "sq_cov_mc");
  const std::size_t K = proj.draws();
  std::vector<double> vals(K);
  const Marginal mx = joint.marginal_x();
  const Marginal my = joint.marginal_y();
  parallel_for(0, K, [&](std::size_t k) {
    const auto [xi, eta] = proj.draw(k);
    const auto diff = char_rv_joint(joint, xi, eta, r, s) - char_rv(mx, xi, r) * char_rv(my, eta, s);
    vals[k] = std::norm(diff);
  });
  CompensatedSum sum;
  for (double v : vals) sum += v;
  McValue out;
  out.mean = sum.value() / static_cast<double>(K);
  if (K > 1) {
    CompensatedSum ss;
    for (double v : vals) ss += (v - out.mean) * (v - out.mean);
    out.std_error = std::sqrt(ss.value() / static_cast<double>(K - 1) / static_cast<double>(K));
  }
  return out;
}

double sq_cov_expansion(const DiscreteJoint& joint, double r, double s) {
  require_euclidean(joint.x_spec(), "sq_cov_expansion");
  require_euclidean(joint.y_spec(), "sq_cov_expansion");
  const std::size_t k = joint.size();
  const auto& p = joint.probs();
  const Matrix kx = gaussian_kernel(joint.x(), r * r);
  const Matrix ky = gaussian_kernel(joint.y(), s * s);
  std::vector<double> mx(k), my(k);
  for (std::size_t i = 0; i < k; ++i) {
    CompensatedSum a, b;
    for (std::size_t j = 0; j < k; ++j) {
      a += p[j] * kx(i, j);
      b += p[j] * ky(i, j);
    }
    mx[i] = a.value();
    my[i] = b.value();
  }
  CompensatedSum t1, t2, ex, ey;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) t1 += p[i] * p[j] * kx(i, j) * ky(i, j);
    t2 += p[i] * mx[i] * my[i];
    ex += p[i] * mx[i];
    ey += p[i] * my[i];
  }
  // The (X1-X3, Y1-Y4) and (X1-X3, Y2-Y3) terms coincide.
  return t1.value() - 2.0 * t2.value() + ex.value() * ey.value();
}

double lambda_pointwise(std::span<const double> x1, std::span<const double> x2, std::span<const double> x3,
                        std::span<const double> x4, double u) {
  return std::exp(-u * sq_dist(x1, x2)) - std::exp(-u * sq_dist(x2, x3)) + std::exp(-u * sq_dist(x3, x4)) -
         std::exp(-u * sq_dist(x4, x1));
}

double lambda_fn(const Marginal& law, double u) {
  if (!(u > 0)) throw InputError("lambda_fn needs u > 0");
  const std::size_t k = law.atoms.size();
  CompensatedSum s;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t d = 0; d < k; ++d) {
          const double w = law.probs[a] * law.probs[b] * law.probs[c] * law.probs[d];
          s += w * lambda_pointwise(law.atoms[a].coords(), law.atoms[b].coords(), law.atoms[c].coords(),
                                    law.atoms[d].coords(), u);
        }
  return s.value();
}

double lambda_product_expectation(const DiscreteJoint& joint, double u, double v) {
  const std::size_t k = joint.size();
  const auto& p = joint.probs();
  const auto& xs = joint.x();
  const auto& ys = joint.y();
  CompensatedSum s;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t d = 0; d < k; ++d) {
          const double lx =
              lambda_pointwise(xs[a].coords(), xs[b].coords(), xs[c].coords(), xs[d].coords(), u);
          const double ly =
              lambda_pointwise(ys[a].coords(), ys[b].coords(), ys[c].coords(), ys[d].coords(), v);
          s += p[a] * p[b] * p[c] * p[d] * lx * ly;
        }
  return s.value();
}

DcovEstimate dcov_charrv_mc(const DiscreteJoint& joint, const CharRVConfig& cfg) {
  const double beta = joint.beta();
  if (!(beta > 0.0 && beta < 2.0)) {
    std::ostringstream os;
    os << "the Gaussian-projection method requires 0 < beta < 2 (the integrals diverge for beta >= 2), got beta = "
       << beta;
    throw DomainError(os.str());
  }
  if (cfg.draws < 2) throw InputError("the Gaussian-projection method needs K >= 2 draws for a standard error");
  require_euclidean(joint.x_spec(), "the Gaussian-projection method");
  require_euclidean(joint.y_spec(), "the Gaussian-projection method");
  validate(cfg.quad);

  const GaussianProjector proj(cfg.seed, joint.x_spec().dim(), joint.y_spec().dim(), cfg.draws);
  const double cb = c_gauss(beta);
  const std::size_t k = joint.size();
  const std::size_t K = cfg.draws;
  std::vector<double> vals(K), rems(K);
  parallel_for(0, K, [&](std::size_t d) {
    const auto [xi, eta] = proj.draw(d);
    std::vector<double> a(k), b(k);
    for (std::size_t i = 0; i < k; ++i) {
      a[i] = dot(xi, joint.x()[i].coords());
      b[i] = dot(eta, joint.y()[i].coords());
    }
    const auto table = scalar_joint_table(a, b, joint.probs());
    const auto integral = separable_charfn_integral(table, beta, cfg.quad);
    vals[d] = cb * cb * integral.value;
    rems[d] = cb * cb * integral.remainder;
  });

  CompensatedSum sum, rem;
  for (std::size_t d = 0; d < K; ++d) {
    sum += vals[d];
    rem += rems[d];
  }
  const double mean = sum.value() / static_cast<double>(K);
  CompensatedSum ss;
  for (double v : vals) ss += (v - mean) * (v - mean);

  DcovEstimate est;
  est.method = "charrv";
  est.beta = beta;
  est.n = k;
  est.value = mean;
  est.std_error = std::sqrt(ss.value() / static_cast<double>(K - 1) / static_cast<double>(K));
  est.aux["draws"] = static_cast<double>(K);
  est.aux["quad_remainder"] = rem.value() / static_cast<double>(K);
  return est;
}

DcovEstimate dcov_charrv_mc(const PairedSample& sample, const CharRVConfig& cfg) {
  if (sample.size() < 2) throw InputError("estimation needs n >= 2 observations");
  DcovEstimate est = dcov_charrv_mc(empirical_joint(sample, true), cfg);
  est.n = sample.size();
  return est;
}

double h_M(double x, double beta, double M) {
  if (!(M > 0)) throw InputError("truncation parameter M must be positive");
  if (x <= 0.0) return 0.0;
  const double b = 0.5 * beta;
  // M^b - (x+M)^b = -M^b expm1(b log1p(x/M)), stable for x << M.
  return std::pow(x, b) - std::pow(M, b) * std::expm1(b * std::log1p(x / M));
}

double hhat_M(const Point& x1, const Point& x2, const Point& x3, const Point& x4, const MetricSpec& spec,
              double M) {
  require_euclidean(spec, "hhat_M");
  for (const Point* p : {&x1, &x2, &x3, &x4}) spec.check(*p);
  const double beta = spec.beta();
  return h_M(sq_dist(x1.coords(), x2.coords()), beta, M) - h_M(sq_dist(x2.coords(), x3.coords()), beta, M) +
         h_M(sq_dist(x3.coords(), x4.coords()), beta, M) - h_M(sq_dist(x4.coords(), x1.coords()), beta, M);
}

DcovEstimate dcov_hm(const PairedSample& sample, double M) {
  if (!(M > 0)) throw InputError("truncation parameter M must be positive");
  const double beta = sample.beta();
  if (!(beta > 0.0 && beta < 2.0)) throw DomainError("the truncated-kernel method requires 0 < beta < 2");
  require_euclidean(sample.x_spec(), "the truncated-kernel method");
  require_euclidean(sample.y_spec(), "the truncated-kernel method");
  const std::size_t n = sample.size();
  if (n < 2) throw InputError("estimation needs n >= 2 observations");

  const auto kernel = [&](const std::vector<Point>& pts) {
    Matrix m(n, n);
    parallel_for(0, n, [&](std::size_t i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = h_M(sq_dist(pts[i].coords(), pts[j].coords()), beta, M);
    });
    return m;
  };
  DcovEstimate est;
  est.method = "hm";
  est.beta = beta;
  est.n = n;
  est.value = pairwise_form(kernel(sample.x()), kernel(sample.y()));
  est.aux["M"] = M;
  return est;
}

}  // namespace dcov
