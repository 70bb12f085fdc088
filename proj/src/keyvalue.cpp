#include "grover/cli/keyvalue.hpp"

#include <cstdio>

namespace grover::cli {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

namespace {

std::string_view strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

}  // namespace

Document parse_document(std::string_view text) {
    Document doc;
    std::string section;
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        const auto raw = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        ++number;
        const std::string line = trim(strip_comment(raw));
        if (!line.empty()) {
            if (line.front() == '[' && line.back() == ']') {
                section = trim(std::string_view(line).substr(1, line.size() - 2));
                doc.headers.push_back({section, {}, {}, number});
            } else if (const auto eq = line.find('='); eq != std::string::npos) {
                doc.entries.push_back({section, trim(std::string_view(line).substr(0, eq)),
                                       trim(std::string_view(line).substr(eq + 1)), number});
            } else {
                doc.errors.push_back("line " + std::to_string(number) + ": expected `key = value` or `[section]`");
            }
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return doc;
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace grover::cli
