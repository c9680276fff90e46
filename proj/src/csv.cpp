#include "compmotion/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "compmotion/errors.hpp"

namespace compmotion::csv {

int Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

Table read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

Table parse(const std::string& text, const std::string& path_for_errors) {
    Table table;
    table.path = path_for_errors;

    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool row_has_content = false;
    std::size_t line = 1;
    std::size_t row_start_line = 1;

    auto end_field = [&] {
        fields.push_back(field);
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        if (table.header.empty()) {
            table.header = fields;
        } else {
            if (fields.size() != table.header.size())
                throw MalformedRowError(path_for_errors, row_start_line,
                                        "expected " + std::to_string(table.header.size()) +
                                            " field(s), got " + std::to_string(fields.size()));
            table.rows.push_back(fields);
            table.line_numbers.push_back(row_start_line);
        }
        fields.clear();
        row_has_content = false;
        row_start_line = line;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (ch == '\n') ++line;
                field.push_back(ch);
            }
            continue;
        }
        switch (ch) {
            case '"':
                in_quotes = true;
                row_has_content = true;
                break;
            case ',':
                end_field();
                row_has_content = true;
                break;
            case '\r':
                break;
            case '\n':
                ++line;
                if (row_has_content || !field.empty() || !fields.empty()) end_row();
                else row_start_line = line;
                break;
            default:
                field.push_back(ch);
                row_has_content = true;
                break;
        }
    }
    if (in_quotes) throw MalformedRowError(path_for_errors, row_start_line, "unterminated quoted field");
    if (row_has_content || !field.empty() || !fields.empty()) end_row();
    return table;
}

std::string escape_field(const std::string& field) {
    const bool needs_quotes = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string format_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += escape_field(fields[i]);
    }
    out.push_back('\n');
    return out;
}

std::string format_double(double v, int significant_digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, v);
    return buf;
}

}  // namespace compmotion::csv
