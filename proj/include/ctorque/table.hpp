#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ctorque::cli {

using Cell = std::variant<double, std::string>;

/// A CSV table with a `#`-prefixed comment preamble.
struct Table {
  std::vector<std::string> preamble;  // without the leading "# "
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  bool operator==(const Table&) const = default;
};

/// 17 significant digits, locale independent; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double x);

/// Writes preamble, header and rows; fields containing ',' or '"' are quoted.
void write_csv(std::ostream& out, const Table& table);

/// Inverse of write_csv. Fields that parse completely as numbers become doubles.
Table read_csv(std::istream& in);
Table read_csv(std::string_view text);

}  // namespace ctorque::cli
