#pragma once

// Line-oriented `[section]` / `key = value` text shared by the config and
// summary formats.

#include <string>
#include <string_view>
#include <vector>

namespace grover::cli {

struct Entry {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
};

struct Document {
    std::vector<Entry> entries;
    std::vector<Entry> headers;  // section openings; only `section` and `line` are set
    std::vector<std::string> errors;  // "line N: ..." for lines that are neither
};

/// Strips `#` comments outside double quotes and surrounding whitespace.
Document parse_document(std::string_view text);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// 17 significant digits, so the value re-parses to the same double.
std::string format_number(double x);

}  // namespace grover::cli
