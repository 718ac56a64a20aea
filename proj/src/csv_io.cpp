#include "dcov/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "dcov/error.hpp"

namespace dcov {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  s = s.substr(b, e - b + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  bool quoted = false;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i < line.size() && line[i] == '"') quoted = !quoted;
    if (i == line.size() || (line[i] == ',' && !quoted)) {
      out.push_back(trim(std::string_view(line).substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

bool parse_index(const std::string& s, std::size_t& out) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

CsvTable read_csv(std::istream& in, const std::string& source) {
  CsvTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!blank(line)) break;
  }
  if (blank(line)) throw InputError(source + ": empty input (a header row is required)");
  table.header = split(line);
  const std::size_t cols = table.header.size();
  for (std::size_t c = 0; c < cols; ++c) {
    if (table.header[c].empty()) {
      std::ostringstream os;
      os << source << ": line " << lineno << ", column " << c + 1 << ": empty header name";
      throw InputError(os.str());
    }
  }

  std::vector<double> data;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    const auto fields = split(line);
    if (fields.size() != cols) {
      std::ostringstream os;
      os << source << ": line " << lineno << ": expected " << cols << " fields, found " << fields.size();
      throw InputError(os.str());
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string& f = fields[c];
      double v = 0.0;
      const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (f.empty() || res.ec != std::errc() || res.ptr != f.data() + f.size() || !std::isfinite(v)) {
        std::ostringstream os;
        os << source << ": line " << lineno << ", column " << c + 1 << " ('" << table.header[c]
           << "'): cannot parse '" << f << "' as a finite number";
        throw InputError(os.str());
      }
      data.push_back(v);
    }
    ++rows;
  }
  if (rows == 0) throw InputError(source + ": no data rows after the header");
  table.values = Matrix(rows, cols);
  std::copy(data.begin(), data.end(), table.values.data().begin());
  return table;
}

std::vector<std::size_t> select_columns(const CsvTable& table, const std::string& selection) {
  const std::size_t cols = table.header.size();
  std::vector<std::size_t> out;
  for (const auto& item : split(selection)) {
    if (item.empty()) throw InputError("empty item in column selection '" + selection + "'");
    const auto by_name = std::find(table.header.begin(), table.header.end(), item);
    if (by_name != table.header.end()) {
      out.push_back(static_cast<std::size_t>(by_name - table.header.begin()));
      continue;
    }
    std::size_t lo = 0, hi = 0;
    const auto dash = item.find('-');
    const bool ok = dash == std::string::npos
                        ? parse_index(item, lo) && (hi = lo, true)
                        : parse_index(item.substr(0, dash), lo) && parse_index(item.substr(dash + 1), hi);
    if (!ok) throw InputError("unknown column '" + item + "'");
    if (lo < 1 || hi < lo || hi > cols) {
      std::ostringstream os;
      os << "column range '" << item << "' outside 1-" << cols;
      throw InputError(os.str());
    }
    for (std::size_t c = lo; c <= hi; ++c) out.push_back(c - 1);
  }
  if (out.empty()) throw InputError("column selection '" + selection + "' is empty");
  return out;
}

Matrix take_columns(const CsvTable& table, const std::vector<std::size_t>& columns) {
  const std::size_t n = table.values.rows();
  Matrix m(n, columns.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < columns.size(); ++c) m(i, c) = table.values(i, columns[c]);
  return m;
}

DiscreteJoint joint_from_csv(const CsvTable& table, double beta) {
  const auto find = [&](const std::string& name) -> std::ptrdiff_t {
    const auto it = std::find(table.header.begin(), table.header.end(), name);
    return it == table.header.end() ? -1 : it - table.header.begin();
  };
  const auto block = [&](char prefix) {
    std::vector<std::size_t> cols;
    for (std::size_t k = 1;; ++k) {
      const auto c = find(std::string(1, prefix) + "_" + std::to_string(k));
      if (c < 0) break;
      cols.push_back(static_cast<std::size_t>(c));
    }
    if (cols.empty()) throw InputError(std::string("joint CSV: missing column ") + prefix + "_1");
    return cols;
  };
  const auto xc = block('x');
  const auto yc = block('y');
  const auto pc = find("prob");
  if (pc < 0) throw InputError("joint CSV: missing column prob");

  const Matrix xs = take_columns(table, xc);
  const Matrix ys = take_columns(table, yc);
  std::vector<double> probs(table.values.rows());
  for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = table.values(i, static_cast<std::size_t>(pc));
  return DiscreteJoint(points_from_rows(xs), points_from_rows(ys), std::move(probs),
                       MetricSpec::euclidean(xc.size(), beta), MetricSpec::euclidean(yc.size(), beta));
}

Matrix metric_table_from_csv(const CsvTable& table) {
  if (table.values.rows() != table.values.cols()) {
    std::ostringstream os;
    os << "metric table must be square, got " << table.values.rows() << " rows and " << table.values.cols()
       << " columns";
    throw InputError(os.str());
  }
  return table.values;
}

}  // namespace dcov
