#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "minimax/population.hpp"

namespace minimax {

/// Shortest string that round-trips the double (std::to_chars).
std::string format_double(double value);

/// Parsed bounds file. Columns: id,a,b with optional y (observed value)
/// and optional s (sample membership, 0/1). Lines starting with '#' are
/// comments. UTF-8, '.' decimal point.
struct BoundsCsv {
  std::vector<BoundsRecord> records;
  std::vector<std::optional<double>> y;
  std::vector<std::optional<int>> membership;
  bool has_y = false;
  bool has_membership = false;
};

BoundsCsv read_bounds_csv(std::istream& in);
BoundsCsv read_bounds_csv_file(const std::string& path);

void write_bounds_csv(std::ostream& out, const PopulationBounds& bounds);

/// Two-column CSV keyed by unit id: header "id,<value_column>".
std::vector<std::pair<std::string, double>> read_keyed_csv(std::istream& in,
                                                           const std::string& value_column);
std::vector<std::pair<std::string, double>> read_keyed_csv_file(const std::string& path,
                                                                const std::string& value_column);

/// Orders keyed values by the bounds' unit order; every unit must appear
/// exactly once.
std::vector<double> align_to_units(const PopulationBounds& bounds,
                                   const std::vector<std::pair<std::string, double>>& keyed,
                                   const std::string& what);

}  // namespace minimax
