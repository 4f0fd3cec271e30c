#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace tvgc::csv {

struct Row {
    std::size_t line_number = 0; // 1-based, for error messages
    std::vector<std::string> fields;
};

struct Table {
    std::vector<std::pair<std::string, std::string>> meta; // leading "# key=value" lines
    std::vector<std::string> header;
    std::vector<Row> rows;
};

/// Reads a headered CSV. Leading lines starting with '#' are parsed as
/// "key=value" metadata. Throws ValidationError citing the line number on
/// malformed rows or a missing header.
Table read_file(const std::filesystem::path& path);

/// Parses a double, rejecting NaN/inf and trailing junk; `context` ends up
/// in the error message (typically "file:line").
double parse_double(const std::string& field, const std::string& context);

/// Formats a double so that reading it back reproduces the bits ("%.17g").
std::string format_double(double value);

} // namespace tvgc::csv
