#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dcov/matrix.hpp"

namespace dcov {

/// A point of a metric space: either Euclidean coordinates or an index into the
/// ground set of a finite metric table.
class Point {
 public:
  Point() = default;
  static Point from_coords(std::vector<double> coords) { return Point(std::move(coords)); }
  static Point from_atom(std::size_t index) { return Point(index); }
  Point(std::initializer_list<double> coords) : value_(std::vector<double>(coords)) {}

  bool is_atom() const { return std::holds_alternative<std::size_t>(value_); }
  std::span<const double> coords() const { return std::get<std::vector<double>>(value_); }
  std::size_t atom_index() const { return std::get<std::size_t>(value_); }

  bool operator==(const Point&) const = default;

 private:
  explicit Point(std::vector<double> c) : value_(std::move(c)) {}
  explicit Point(std::size_t i) : value_(i) {}

  std::variant<std::vector<double>, std::size_t> value_ = std::vector<double>{};
};

/// First violation found by validate_table_metric, if any.
struct MetricViolation {
  enum class Kind { not_square, non_finite, negative, nonzero_diagonal, asymmetric, triangle };
  Kind kind;
  std::size_t i = 0, j = 0, k = 0;
  std::string message;
};

/// Checks symmetry, zero diagonal, nonnegativity and, over all triples, the
/// triangle inequality. Returns nullopt when `table` is a metric.
std::optional<MetricViolation> validate_table_metric(const Matrix& table, double tol = 0.0);

/// A metric d on a space together with the exponent beta; distances used by the
/// estimators are d(x, y)^beta. Norms are measured from the base point o
/// (the origin for Euclidean space).
class MetricSpec {
 public:
  static MetricSpec euclidean(std::size_t dim, double beta);
  /// `validate` runs the O(k^3) triangle check and throws InputError on failure;
  /// shape, symmetry, diagonal and sign are always checked.
  static MetricSpec table(Matrix table, std::size_t base_point, double beta, bool validate = false);

  bool is_euclidean() const { return table_ == nullptr; }
  std::size_t dim() const { return dim_; }
  double beta() const { return beta_; }
  std::size_t base_point() const { return base_; }
  /// Ground-set size for table metrics.
  std::size_t table_size() const { return table_ ? table_->rows() : 0; }
  const Matrix& table() const { return *table_; }

  /// Same metric, different exponent.
  MetricSpec with_beta(double beta) const;

  /// Throws InputError unless p conforms to this metric.
  void check(const Point& p) const;

  /// d(p, q), unpowered.
  double distance(const Point& p, const Point& q) const;
  /// d(p, q)^beta.
  double powered(const Point& p, const Point& q) const { return pow_beta(distance(p, q)); }
  /// d(p, o)^beta.
  double norm(const Point& p) const;

  /// x^beta with 0 mapped to 0.
  double pow_beta(double d) const;

 private:
  MetricSpec() = default;

  std::size_t dim_ = 0;
  double beta_ = 1.0;
  std::size_t base_ = 0;
  std::shared_ptr<const Matrix> table_;
};

/// Symmetric n x n matrix of d(x_i, x_j)^beta with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(Matrix m) : m_(std::move(m)) {}

  std::size_t size() const { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  std::span<const double> row(std::size_t i) const { return m_.row(i); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

/// d(points[i], points[j])^beta for all pairs. Dense O(n^2) storage; rows are
/// computed in parallel, each entry independently.
DistanceMatrix pairwise_distances(std::span<const Point> points, const MetricSpec& spec);

/// d(points[i], o)^beta.
std::vector<double> norms_to_base(std::span<const Point> points, const MetricSpec& spec);

/// Euclidean points from a row-major block of coordinates.
std::vector<Point> points_from_rows(const Matrix& rows);

}  // namespace dcov
