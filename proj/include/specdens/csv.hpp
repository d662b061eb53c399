#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace specdens {

// Formats a double so that a round-trip through text is exact. The +inf
// sentinel is serialized as the literal token "inf".
std::string fmt_double(double v);

// Parses a field produced by fmt_double ("inf" maps back to +infinity).
double parse_double(const std::string& field);

std::vector<std::string> split_csv_line(const std::string& line);

// Writes content to path atomically (temp file + rename). Creates parent
// directories as needed.
void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content);

// Reads all lines; '#'-prefixed lines are returned separately from data rows.
struct CsvFile {
  std::vector<std::string> meta;  // '#' lines, prefix stripped
  std::vector<std::vector<std::string>> rows;
};
CsvFile read_csv_file(const std::filesystem::path& path);

// Standard one-line metadata header used by every CSV the tool emits.
std::string seed_header(std::uint64_t seed);

}  // namespace specdens
