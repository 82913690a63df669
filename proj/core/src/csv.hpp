#pragma once

// Minimal CSV support for the fixed, comma-only formats this library reads
// and writes. Fields never contain commas or quotes.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace gridshock::csv {

struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;

  /// Column index of `name`; throws MalformedRow if absent.
  std::size_t column(std::string_view name) const;
};

Table read(const std::filesystem::path& path);
Table parse(std::istream& in, const std::string& source);

std::vector<std::string> split(std::string_view line);

double to_double(std::string_view field, const std::string& where);
long long to_int(std::string_view field, const std::string& where);

/// Shortest representation that parses back to the identical double.
std::string exact(double v);
/// Fixed 15-significant-digit representation used by the report exports.
std::string sig15(double v);

std::ofstream open_for_write(const std::filesystem::path& path);

}  // namespace gridshock::csv
