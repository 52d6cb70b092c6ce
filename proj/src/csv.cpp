#include "minimax/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace minimax {

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, std::size_t line_no) {
  const std::string t = trim(text);
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": cannot parse number '" + text + "'");
  }
  return out;
}

}  // namespace

BoundsCsv read_bounds_csv(std::istream& in) {
  BoundsCsv out;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  int y_col = -1, s_col = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    auto fields = split_fields(line);
    if (!header_seen) {
      if (fields.size() < 3 || trim(fields[0]) != "id" || trim(fields[1]) != "a" ||
          trim(fields[2]) != "b") {
        throw ParseError("line " + std::to_string(line_no) + ": expected header id,a,b[,y][,s]");
      }
      for (std::size_t c = 3; c < fields.size(); ++c) {
        if (fields[c] == "y") {
          y_col = static_cast<int>(c);
        } else if (fields[c] == "s") {
          s_col = static_cast<int>(c);
        } else {
          throw ParseError("line " + std::to_string(line_no) + ": unknown column '" + fields[c] +
                           "'");
        }
      }
      out.has_y = y_col >= 0;
      out.has_membership = s_col >= 0;
      header_seen = true;
      continue;
    }
    if (fields.size() < 3) {
      throw ParseError("line " + std::to_string(line_no) + ": expected at least 3 fields");
    }
    BoundsRecord rec;
    rec.id = fields[0];
    rec.lower = parse_double(fields[1], line_no);
    rec.upper = parse_double(fields[2], line_no);
    out.records.push_back(std::move(rec));
    auto optional_field = [&](int col) -> std::optional<std::string> {
      if (col < 0 || static_cast<std::size_t>(col) >= fields.size()) return std::nullopt;
      if (fields[static_cast<std::size_t>(col)].empty()) return std::nullopt;
      return fields[static_cast<std::size_t>(col)];
    };
    if (auto f = optional_field(y_col)) {
      out.y.emplace_back(parse_double(*f, line_no));
    } else {
      out.y.emplace_back(std::nullopt);
    }
    if (auto f = optional_field(s_col)) {
      const double v = parse_double(*f, line_no);
      if (v != 0.0 && v != 1.0) {
        throw ParseError("line " + std::to_string(line_no) + ": membership must be 0 or 1");
      }
      out.membership.emplace_back(static_cast<int>(v));
    } else {
      out.membership.emplace_back(std::nullopt);
    }
  }
  if (!header_seen) throw ParseError("bounds file has no header row");
  return out;
}

BoundsCsv read_bounds_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open '" + path + "'");
  return read_bounds_csv(in);
}

void write_bounds_csv(std::ostream& out, const PopulationBounds& bounds) {
  out << "id,a,b\n";
  for (int i = 0; i < bounds.units(); ++i) {
    out << bounds.ids()[i] << ',' << format_double(bounds.lower()[i]) << ','
        << format_double(bounds.upper()[i]) << '\n';
  }
}

std::vector<std::pair<std::string, double>> read_keyed_csv(std::istream& in,
                                                           const std::string& value_column) {
  std::vector<std::pair<std::string, double>> out;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    auto fields = split_fields(line);
    if (!header_seen) {
      if (fields.size() != 2 || fields[0] != "id" || fields[1] != value_column) {
        throw ParseError("line " + std::to_string(line_no) + ": expected header id," +
                         value_column);
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 2) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 2 fields");
    }
    out.emplace_back(fields[0], parse_double(fields[1], line_no));
  }
  if (!header_seen) throw ParseError("keyed file has no header row");
  return out;
}

std::vector<std::pair<std::string, double>> read_keyed_csv_file(const std::string& path,
                                                                const std::string& value_column) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open '" + path + "'");
  return read_keyed_csv(in, value_column);
}

std::vector<double> align_to_units(const PopulationBounds& bounds,
                                   const std::vector<std::pair<std::string, double>>& keyed,
                                   const std::string& what) {
  std::unordered_map<std::string, double> by_id;
  for (const auto& [id, value] : keyed) {
    if (!by_id.emplace(id, value).second) throw DuplicateId(id);
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(bounds.units()));
  for (const auto& id : bounds.ids()) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw ParseError(what + ": no entry for unit '" + id + "'");
    out.push_back(it->second);
  }
  return out;
}

}  // namespace minimax
