#include "tvgc/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "tvgc/errors.hpp"

namespace tvgc::csv {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else if (c != '\r') {
            current.push_back(c);
        }
    }
    fields.push_back(current);
    return fields;
}

} // namespace

Table read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open '" + path.string() + "'");
    }
    Table table;
    std::string line;
    std::size_t line_number = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!have_header && line.front() == '#') {
            std::string body = line.substr(1);
            while (!body.empty() && body.front() == ' ') body.erase(body.begin());
            const auto eq = body.find('=');
            if (eq != std::string::npos) {
                table.meta.emplace_back(body.substr(0, eq), body.substr(eq + 1));
            }
            continue;
        }
        if (!have_header) {
            table.header = split_fields(line);
            have_header = true;
            continue;
        }
        Row row;
        row.line_number = line_number;
        row.fields = split_fields(line);
        if (row.fields.size() != table.header.size()) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "%s:%zu: expected %zu fields, got %zu",
                          path.string().c_str(), line_number, table.header.size(),
                          row.fields.size());
            throw ValidationError(buf);
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header) {
        throw ValidationError("'" + path.string() + "' has no header row");
    }
    return table;
}

double parse_double(const std::string& field, const std::string& context) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ValidationError(context + ": invalid numeric value '" + field + "'");
    }
    return value;
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

} // namespace tvgc::csv
