#include "dcov/metric.hpp"

#include <cmath>
#include <sstream>

#include "dcov/error.hpp"
#include "dcov/parallel.hpp"

namespace dcov {
namespace {

std::string describe(const char* what, std::size_t i, std::size_t j) {
  std::ostringstream os;
  os << what << " at (" << i << ", " << j << ")";
  return os.str();
}

}  // namespace

std::optional<MetricViolation> validate_table_metric(const Matrix& table, double tol) {
  using K = MetricViolation::Kind;
  if (!table.square()) {
    return MetricViolation{K::not_square, table.rows(), table.cols(), 0, "table is not square"};
  }
  const std::size_t n = table.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = table(i, j);
      if (!std::isfinite(v)) return MetricViolation{K::non_finite, i, j, 0, describe("non-finite entry", i, j)};
      if (v < 0) return MetricViolation{K::negative, i, j, 0, describe("negative entry", i, j)};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (table(i, i) != 0.0) {
      return MetricViolation{K::nonzero_diagonal, i, i, 0, describe("nonzero diagonal", i, i)};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(table(i, j) - table(j, i)) > tol) {
        return MetricViolation{K::asymmetric, i, j, 0, describe("asymmetric entry", i, j)};
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (table(i, j) > table(i, k) + table(k, j) + tol) {
          std::ostringstream os;
          os << "triangle inequality fails: d(" << i << "," << j << ") = " << table(i, j) << " > d(" << i
             << "," << k << ") + d(" << k << "," << j << ") = " << table(i, k) + table(k, j);
          return MetricViolation{K::triangle, i, j, k, os.str()};
        }
      }
    }
  }
  return std::nullopt;
}

MetricSpec MetricSpec::euclidean(std::size_t dim, double beta) {
  if (dim < 1) throw InputError("Euclidean dimension must be >= 1");
  if (!(beta > 0) || !std::isfinite(beta)) throw InputError("beta must be a positive finite number");
  MetricSpec s;
  s.dim_ = dim;
  s.beta_ = beta;
  return s;
}

MetricSpec MetricSpec::table(Matrix table, std::size_t base_point, double beta, bool validate) {
  if (!(beta > 0) || !std::isfinite(beta)) throw InputError("beta must be a positive finite number");
  if (!table.square() || table.rows() == 0) throw InputError("metric table must be a non-empty square matrix");
  if (base_point >= table.rows()) throw InputError("base point index out of range");
  const auto violation = validate_table_metric(table, 0.0);
  if (violation && (validate || violation->kind != MetricViolation::Kind::triangle)) {
    throw InputError("invalid metric table: " + violation->message);
  }
  MetricSpec s;
  s.beta_ = beta;
  s.base_ = base_point;
  s.table_ = std::make_shared<const Matrix>(std::move(table));
  return s;
}

MetricSpec MetricSpec::with_beta(double beta) const {
  if (!(beta > 0) || !std::isfinite(beta)) throw InputError("beta must be a positive finite number");
  MetricSpec s = *this;
  s.beta_ = beta;
  return s;
}

void MetricSpec::check(const Point& p) const {
  if (is_euclidean()) {
    if (p.is_atom()) throw InputError("table atom given to a Euclidean metric");
    if (p.coords().size() != dim_) {
      std::ostringstream os;
      os << "dimension mismatch: point has " << p.coords().size() << " coordinates, metric expects " << dim_;
      throw InputError(os.str());
    }
    for (double c : p.coords()) {
      if (!std::isfinite(c)) throw InputError("non-finite coordinate");
    }
  } else {
    if (!p.is_atom()) throw InputError("coordinate point given to a table metric");
    if (p.atom_index() >= table_->rows()) throw InputError("table index out of range");
  }
}

double MetricSpec::distance(const Point& p, const Point& q) const {
  if (!is_euclidean()) return (*table_)(p.atom_index(), q.atom_index());
  const auto a = p.coords();
  const auto b = q.coords();
  if (dim_ == 1) return std::abs(a[0] - b[0]);
  double ss = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    const double d = a[k] - b[k];
    ss += d * d;
  }
  return std::sqrt(ss);
}

double MetricSpec::norm(const Point& p) const {
  if (!is_euclidean()) return pow_beta((*table_)(p.atom_index(), base_));
  double ss = 0.0;
  for (double c : p.coords()) ss += c * c;
  return pow_beta(std::sqrt(ss));
}

double MetricSpec::pow_beta(double d) const {
  if (d == 0.0) return 0.0;
  if (beta_ == 1.0) return d;
  if (beta_ == 2.0) return d * d;
  return std::exp(beta_ * std::log(d));
}

DistanceMatrix pairwise_distances(std::span<const Point> points, const MetricSpec& spec) {
  const std::size_t n = points.size();
  if (n == 0) throw InputError("pairwise_distances needs at least one point");
  for (const auto& p : points) spec.check(p);
  Matrix m(n, n);
  // Each entry is computed twice (once per triangle) so rows are independent.
  parallel_for(0, n, [&](std::size_t i) {
    auto row = m.row(i);
    for (std::size_t j = 0; j < n; ++j) row[j] = (i == j) ? 0.0 : spec.powered(points[i], points[j]);
  });
  return DistanceMatrix(std::move(m));
}

std::vector<double> norms_to_base(std::span<const Point> points, const MetricSpec& spec) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    spec.check(p);
    out.push_back(spec.norm(p));
  }
  return out;
}

std::vector<Point> points_from_rows(const Matrix& rows) {
  std::vector<Point> out;
  out.reserve(rows.rows());
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    const auto r = rows.row(i);
    out.push_back(Point::from_coords(std::vector<double>(r.begin(), r.end())));
  }
  return out;
}

}  // namespace dcov
