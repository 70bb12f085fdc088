#pragma once

// Typed `[section]` / `key = value` records: the format of summary.txt and
// strategy.txt. Numbers carry 17 significant digits, complex values are
// written `re,im`, strings are double-quoted.

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace grover::cli {

using Value = std::variant<bool, std::int64_t, double, std::complex<double>, std::string>;

struct Field {
    std::string key;
    Value value;
    friend bool operator==(const Field&, const Field&) = default;
};

struct Section {
    std::string name;
    std::vector<Field> fields;

    Section& set(std::string key, Value v);
    friend bool operator==(const Section&, const Section&) = default;
};

struct Summary {
    std::vector<Section> sections;

    Section& add(std::string name);
    /// nullptr when absent.
    const Value* find(std::string_view section, std::string_view key) const;
    friend bool operator==(const Summary&, const Summary&) = default;
};

std::string format_value(const Value& v);
std::string format_summary(const Summary& s);

/// Throws ConfigError on lines that do not parse.
Summary parse_summary(std::string_view text);

}  // namespace grover::cli
