#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace compmotion::csv {

/// A parsed CSV file: header plus rows of fields (RFC-4180 quoting,
/// CRLF tolerated, UTF-8 passed through).
struct Table {
    std::string path;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    /// 1-based line number of each row in the source file.
    std::vector<std::size_t> line_numbers;

    /// Column index by name; -1 when absent.
    int column(const std::string& name) const;
};

Table read_file(const std::string& path);
Table parse(const std::string& text, const std::string& path_for_errors = "<string>");

std::string escape_field(const std::string& field);
std::string format_row(const std::vector<std::string>& fields);

/// Fixed-format double for deterministic output, %.*g.
std::string format_double(double v, int significant_digits = 12);

}  // namespace compmotion::csv
