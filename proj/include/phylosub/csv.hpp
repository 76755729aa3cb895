#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace phylosub::csv {

// Shortest representation that parses back to the exact same double, so
// parse-and-rewrite is byte-stable. Non-finite values print as nan/inf.
std::string format_double(double value);
std::string format_u64(std::uint64_t value);

// Exact inverse of format_double; throws std::invalid_argument on junk.
double parse_double(const std::string& text);
std::uint64_t parse_u64(const std::string& text);

struct Table {
  std::vector<std::string> comments;  // '#' lines, in order, without newline
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by header name; throws std::out_of_range if absent.
  std::size_t column(const std::string& name) const;
};

// Reads comment lines, one header row, then data rows. Fields never contain
// commas in this project's files, so no quoting is supported.
Table read_csv(std::istream& in);
Table read_csv_file(const std::string& path);

std::string join_row(const std::vector<std::string>& fields);

}  // namespace phylosub::csv
