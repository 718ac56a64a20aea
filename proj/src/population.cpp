#include "dcov/population.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dcov/error.hpp"
#include "dcov/parallel.hpp"
#include "dcov/summation.hpp"

namespace dcov {
namespace {

// Atoms compared by value: coordinates lexicographically, table atoms by index.
struct PointLess {
  bool operator()(const Point& a, const Point& b) const {
    if (a.is_atom() != b.is_atom()) return a.is_atom();
    if (a.is_atom()) return a.atom_index() < b.atom_index();
    const auto ca = a.coords();
    const auto cb = b.coords();
    return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
  }
};

struct PairLess {
  bool operator()(const std::pair<Point, Point>& a, const std::pair<Point, Point>& b) const {
    PointLess less;
    if (less(a.first, b.first)) return true;
    if (less(b.first, a.first)) return false;
    return less(a.second, b.second);
  }
};

Marginal merge_atoms(const std::vector<Point>& pts, const std::vector<double>& probs) {
  std::map<Point, double, PointLess> mass;
  for (std::size_t i = 0; i < pts.size(); ++i) mass[pts[i]] += probs[i];
  Marginal m;
  for (auto& [p, w] : mass) {
    m.atoms.push_back(p);
    m.probs.push_back(w);
  }
  return m;
}

// Matrix of d(atom_i, atom_j)^beta over the atoms of a joint.
Matrix atom_distances(const std::vector<Point>& pts, const MetricSpec& spec) {
  return pairwise_distances(pts, spec).matrix();
}

// Sum over i of row_partial(i), rows computed in parallel and added in index order.
template <class F>
double ordered_row_sum(std::size_t k, F&& row_partial) {
  std::vector<double> partial(k);
  parallel_for(0, k, [&](std::size_t i) { partial[i] = row_partial(i); });
  CompensatedSum s;
  for (double v : partial) s += v;
  return s.value();
}

double exact_d1(const Matrix& a, const Matrix& b, std::span<const double> p) {
  const std::size_t k = p.size();
  // E[a12 b12]
  const double t1 = ordered_row_sum(k, [&](std::size_t i) {
    CompensatedSum s;
    for (std::size_t j = 0; j < k; ++j) s += p[i] * p[j] * a(i, j) * b(i, j);
    return s.value();
  });
  // E[a12] E[b12]
  const double ea = ordered_row_sum(k, [&](std::size_t i) {
    CompensatedSum s;
    for (std::size_t j = 0; j < k; ++j) s += p[i] * p[j] * a(i, j);
    return s.value();
  });
  const double eb = ordered_row_sum(k, [&](std::size_t i) {
    CompensatedSum s;
    for (std::size_t j = 0; j < k; ++j) s += p[i] * p[j] * b(i, j);
    return s.value();
  });
  // E[a12 b13], literal triple enumeration.
  const double t3 = ordered_row_sum(k, [&](std::size_t i) {
    CompensatedSum s;
    for (std::size_t j = 0; j < k; ++j) {
      const double pij = p[i] * p[j] * a(i, j);
      if (pij == 0.0) continue;
      for (std::size_t l = 0; l < k; ++l) s += pij * p[l] * b(i, l);
    }
    return s.value();
  });
  return t1 + ea * eb - 2.0 * t3;
}

double exact_d2(const Matrix& a, const Matrix& b, std::span<const double> p) {
  const std::size_t k = p.size();
  const double total = ordered_row_sum(k, [&](std::size_t i) {
    CompensatedSum s;
    for (std::size_t j = 0; j < k; ++j) {
      const double pij = p[i] * p[j];
      for (std::size_t l = 0; l < k; ++l) {
        const double pijl = pij * p[l];
        for (std::size_t m = 0; m < k; ++m) {
          const double hx = a(i, j) - a(j, l) + a(l, m) - a(m, i);
          const double hy = b(i, j) - b(j, l) + b(l, m) - b(m, i);
          s += pijl * p[m] * hx * hy;
        }
      }
    }
    return s.value();
  });
  return 0.25 * total;
}

// ttilde over atom pairs: a_ij - m_i - m_j + g.
Matrix ttilde_matrix(const Matrix& a, std::span<const double> p) {
  const std::size_t k = p.size();
  std::vector<double> m(k);
  for (std::size_t i = 0; i < k; ++i) {
    CompensatedSum s;
    for (std::size_t j = 0; j < k; ++j) s += p[j] * a(i, j);
    m[i] = s.value();
  }
  CompensatedSum gs;
  for (std::size_t i = 0; i < k; ++i) gs += p[i] * m[i];
  const double g = gs.value();
  Matrix t(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) t(i, j) = a(i, j) - m[i] - m[j] + g;
  return t;
}

double exact_d3(const Matrix& a, const Matrix& b, std::span<const double> p) {
  const std::size_t k = p.size();
  const Matrix ta = ttilde_matrix(a, p);
  const Matrix tb = ttilde_matrix(b, p);
  return ordered_row_sum(k, [&](std::size_t i) {
    CompensatedSum s;
    for (std::size_t j = 0; j < k; ++j) s += p[i] * p[j] * ta(i, j) * tb(i, j);
    return s.value();
  });
}

}  // namespace

DiscreteJoint::DiscreteJoint(std::vector<Point> x, std::vector<Point> y, std::vector<double> probs,
                             MetricSpec x_spec, MetricSpec y_spec)
    : x_(std::move(x)), y_(std::move(y)), probs_(std::move(probs)), x_spec_(std::move(x_spec)),
      y_spec_(std::move(y_spec)) {
  if (probs_.empty()) throw InputError("joint distribution needs at least one atom");
  if (x_.size() != probs_.size() || y_.size() != probs_.size()) {
    throw InputError("joint distribution: atom and probability counts differ");
  }
  if (x_spec_.beta() != y_spec_.beta()) throw InputError("x and y metrics must share beta");
  CompensatedSum total;
  for (double w : probs_) {
    if (!(w > 0) || !std::isfinite(w)) throw InputError("joint distribution: probabilities must be positive");
    total += w;
  }
  if (std::abs(total.value() - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "joint distribution: probabilities sum to " << total.value() << ", not 1";
    throw InputError(os.str());
  }
  for (const auto& p : x_) x_spec_.check(p);
  for (const auto& p : y_) y_spec_.check(p);
}

Marginal DiscreteJoint::marginal_x() const { return merge_atoms(x_, probs_); }
Marginal DiscreteJoint::marginal_y() const { return merge_atoms(y_, probs_); }

DiscreteJoint DiscreteJoint::product_of_marginals() const {
  const Marginal mx = marginal_x();
  const Marginal my = marginal_y();
  std::vector<Point> xs, ys;
  std::vector<double> ps;
  for (std::size_t i = 0; i < mx.atoms.size(); ++i) {
    for (std::size_t j = 0; j < my.atoms.size(); ++j) {
      xs.push_back(mx.atoms[i]);
      ys.push_back(my.atoms[j]);
      ps.push_back(mx.probs[i] * my.probs[j]);
    }
  }
  return DiscreteJoint(std::move(xs), std::move(ys), std::move(ps), x_spec_, y_spec_);
}

DiscreteJoint DiscreteJoint::with_beta(double beta) const {
  return DiscreteJoint(x_, y_, probs_, x_spec_.with_beta(beta), y_spec_.with_beta(beta));
}

DiscreteJoint empirical_joint(const PairedSample& sample, bool merge_ties) {
  const std::size_t n = sample.size();
  if (n == 0) throw InputError("empirical measure of an empty sample");
  const double w = 1.0 / static_cast<double>(n);
  if (!merge_ties) {
    std::vector<double> probs(n, w);
    // Equal weights may miss 1 by a few ulps; absorb the remainder in the last atom.
    CompensatedSum s;
    for (std::size_t i = 0; i + 1 < n; ++i) s += w;
    probs.back() = 1.0 - s.value();
    return DiscreteJoint(sample.x(), sample.y(), std::move(probs), sample.x_spec(), sample.y_spec());
  }
  std::map<std::pair<Point, Point>, std::size_t, PairLess> counts;
  for (std::size_t i = 0; i < n; ++i) ++counts[{sample.x()[i], sample.y()[i]}];
  std::vector<Point> xs, ys;
  std::vector<double> ps;
  for (const auto& [pt, c] : counts) {
    xs.push_back(pt.first);
    ys.push_back(pt.second);
    ps.push_back(static_cast<double>(c) / static_cast<double>(n));
  }
  return DiscreteJoint(std::move(xs), std::move(ys), std::move(ps), sample.x_spec(), sample.y_spec());
}

double hhat_eval(const Point& x1, const Point& x2, const Point& x3, const Point& x4, const MetricSpec& spec) {
  for (const Point* p : {&x1, &x2, &x3, &x4}) spec.check(*p);
  return spec.powered(x1, x2) - spec.powered(x2, x3) + spec.powered(x3, x4) - spec.powered(x4, x1);
}

double ttilde_eval(const Point& x1, const Point& x2, const Marginal& law, const MetricSpec& spec) {
  if (law.atoms.empty() || law.atoms.size() != law.probs.size()) {
    throw InputError("ttilde_eval needs a non-empty marginal law");
  }
  spec.check(x1);
  spec.check(x2);
  CompensatedSum e1, e2, ee;
  for (std::size_t i = 0; i < law.atoms.size(); ++i) {
    const double pi = law.probs[i];
    e1 += pi * spec.powered(x1, law.atoms[i]);
    e2 += pi * spec.powered(x2, law.atoms[i]);
    for (std::size_t j = 0; j < law.atoms.size(); ++j) {
      ee += pi * law.probs[j] * spec.powered(law.atoms[i], law.atoms[j]);
    }
  }
  return spec.powered(x1, x2) - e1.value() - e2.value() + ee.value();
}

DcovEstimate dcov_exact(const DiscreteJoint& joint, ExactMethod method, const ExactOptions& opts) {
  const std::size_t k = joint.size();
  if (method == ExactMethod::d2 && k > opts.max_support_d2) {
    std::ostringstream os;
    os << "support size " << k << " exceeds the cap " << opts.max_support_d2 << " for the four-fold sum";
    throw InputError(os.str());
  }
  const Matrix a = atom_distances(joint.x(), joint.x_spec());
  const Matrix b = atom_distances(joint.y(), joint.y_spec());
  const std::span<const double> p = joint.probs();

  DcovEstimate est;
  est.method = std::string("exact-") + to_string(method);
  est.beta = joint.beta();
  est.n = k;
  switch (method) {
    case ExactMethod::d1: est.value = exact_d1(a, b, p); break;
    case ExactMethod::d2: est.value = exact_d2(a, b, p); break;
    case ExactMethod::d3: est.value = exact_d3(a, b, p); break;
  }
  return est;
}

DiscreteJoint projection_demo_joint(double beta, bool projected) {
  const std::size_t dim = projected ? 1 : 2;
  std::vector<Point> xs, ys;
  std::vector<double> ps;
  for (int xp = 0; xp <= 1; ++xp) {
    for (int xpp = 0; xpp <= 1; ++xpp) {
      for (int ypp = 0; ypp <= 1; ++ypp) {
        if (projected) {
          xs.push_back(Point{double(xp)});
          ys.push_back(Point{double(xp)});
        } else {
          xs.push_back(Point{double(xp), double(xpp)});
          ys.push_back(Point{double(xp), double(ypp)});
        }
        ps.push_back(0.125);
      }
    }
  }
  return DiscreteJoint(std::move(xs), std::move(ys), std::move(ps), MetricSpec::euclidean(dim, beta),
                       MetricSpec::euclidean(dim, beta));
}

ProjectionDemo projection_demo(double beta) {
  ProjectionDemo out;
  out.dc_full = dcov_exact(projection_demo_joint(beta, false), ExactMethod::d1).value;
  out.dc_projected = dcov_exact(projection_demo_joint(beta, true), ExactMethod::d1).value;
  if (!(out.dc_projected > out.dc_full)) {
    throw std::logic_error("projection demo: projected value does not exceed the full value");
  }
  return out;
}

const char* to_string(ExactMethod m) {
  switch (m) {
    case ExactMethod::d1: return "d1";
    case ExactMethod::d2: return "d2";
    case ExactMethod::d3: return "d3";
  }
  return "?";
}

}  // namespace dcov
