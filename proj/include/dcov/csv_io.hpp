#pragma once

#include <istream>
#include <string>
#include <vector>

#include "dcov/matrix.hpp"
#include "dcov/population.hpp"

namespace dcov {

/// Numeric CSV with a mandatory header row.
struct CsvTable {
  std::vector<std::string> header;
  Matrix values;  // one row per data line
};

/// Parses comma-separated numeric data. Blank lines are skipped; fields may be
/// wrapped in double quotes. Errors carry the line number and column name.
CsvTable read_csv(std::istream& in, const std::string& source = "<input>");

/// Resolves a column selection against the header: comma-separated items, each
/// a column name, a 1-based index, or a 1-based inclusive range "a-b".
std::vector<std::size_t> select_columns(const CsvTable& table, const std::string& selection);

Matrix take_columns(const CsvTable& table, const std::vector<std::size_t>& columns);

/// Joint law from columns x_1..x_p, y_1..y_q and prob (any order).
DiscreteJoint joint_from_csv(const CsvTable& table, double beta);

/// Square table of pairwise distances: header row of labels, then one row per
/// ground-set element.
Matrix metric_table_from_csv(const CsvTable& table);

}  // namespace dcov
