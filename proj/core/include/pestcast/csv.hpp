#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pestcast::csv {

/// One parsed CSV row plus its 1-based line number in the source file.
struct Row {
    std::vector<std::string> fields;
    size_t line = 0;
};

/// Reads a whole CSV file. Verifies the header matches `expected_header`
/// exactly (throws ParseError otherwise) and returns the data rows.
/// Fields are split on commas; the formats written by this project never
/// quote or embed commas.
std::vector<Row> read_file(const std::filesystem::path& path,
                           const std::vector<std::string>& expected_header);

/// Splits a single line on commas. Empty fields are preserved.
std::vector<std::string> split_line(std::string_view line);

std::string join_fields(const std::vector<std::string>& fields);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

/// Empty string for missing values (the CSV missing-field convention).
std::string format_optional(const std::optional<double>& value);

/// Strict double parse of a full field; nullopt on failure.
std::optional<double> parse_double(std::string_view field);

std::optional<long long> parse_int(std::string_view field);

void write_file(const std::filesystem::path& path, const std::string& contents);

} // namespace pestcast::csv
