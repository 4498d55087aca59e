#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hospsim {

/// Shortest-stable text for a value: %.12g, "NA" for NaN.
std::string format_number(double v);
/// Inverse of format_number; "NA" gives NaN. Throws std::invalid_argument on junk.
double parse_number(std::string_view text);

/// Fields of one line, split on ','. No quoting: none of the emitted files need it.
std::vector<std::string> split_csv_line(std::string_view line);
std::string join_csv(const std::vector<std::string>& fields);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(std::string_view name) const;
  /// Numeric column; throws std::invalid_argument when missing or unparsable.
  std::vector<double> numbers(std::string_view name) const;
};

/// Reads a header line plus rows; lines starting with '#' are skipped.
/// Throws std::runtime_error when unreadable or a row has the wrong width.
CsvTable read_csv(const std::filesystem::path& path);

/// Writes the whole file; creates parent directories.
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace hospsim
