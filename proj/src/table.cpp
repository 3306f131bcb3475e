#include "ctorque/table.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "ctorque/errors.hpp"

namespace ctorque::cli {

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_fields(const std::string& line, int lineno) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw Error("CSV line " + std::to_string(lineno) + ": unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

Cell parse_cell(const std::string& s) {
  double x = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec == std::errc() && ptr == last && !s.empty()) return x;
  return s;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const Table& table) {
  for (const auto& line : table.preamble) out << "# " << line << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << quote(table.columns[i]);
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const double* d = std::get_if<double>(&row[i])) {
        out << format_number(*d);
      } else {
        out << quote(std::get<std::string>(row[i]));
      }
    }
    out << '\n';
  }
}

Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  bool header_seen = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header_seen && !line.empty() && line.front() == '#') {
      t.preamble.push_back(line.size() >= 2 && line[1] == ' ' ? line.substr(2) : line.substr(1));
      continue;
    }
    if (!header_seen) {
      t.columns = split_fields(line, lineno);
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    std::vector<Cell> row;
    for (auto& f : split_fields(line, lineno)) row.push_back(parse_cell(f));
    if (row.size() != t.columns.size()) {
      throw Error("CSV line " + std::to_string(lineno) + ": expected " + std::to_string(t.columns.size()) +
                  " fields, got " + std::to_string(row.size()));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table read_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_csv(in);
}

}  // namespace ctorque::cli
