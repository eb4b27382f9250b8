#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "fourrank/error.hpp"

namespace fourrank::csv {

/// Shortest round-trip text for a double: 17 significant digits.
inline std::string format_double(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Quotes a field when it contains a separator, quote or line break.
inline std::string escape(const std::string& field)
{
    if (field.find_first_of(",\"\r\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

inline void write_row(std::ostream& os, const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i)
        os << (i ? "," : "") << escape(fields[i]);
    os << '\n';
}

/// Splits one line into fields, honouring double quotes.
inline std::vector<std::string> parse_line(const std::string& line)
{
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    out.back() += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                out.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.emplace_back();
        } else if (c != '\r') {
            out.back() += c;
        }
    }
    if (quoted)
        throw domain_error("csv: unterminated quote in line: " + line);
    return out;
}

/// All non-empty lines of the stream as rows.
inline std::vector<std::vector<std::string>> read_rows(std::istream& is)
{
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(is, line))
        if (!line.empty() && line != "\r")
            rows.push_back(parse_line(line));
    return rows;
}

} // namespace fourrank::csv
