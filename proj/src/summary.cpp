#include "grover/cli/summary.hpp"
#include "grover/cli/config.hpp"
#include "grover/cli/keyvalue.hpp"

#include <charconv>
#include <stdexcept>

namespace grover::cli {

Section& Section::set(std::string key, Value v) {
    if (const auto* s = std::get_if<std::string>(&v); s && s->find('"') != std::string::npos) {
        throw std::invalid_argument("summary strings cannot contain double quotes");
    }
    fields.push_back({std::move(key), std::move(v)});
    return *this;
}

Section& Summary::add(std::string name) {
    sections.push_back({std::move(name), {}});
    return sections.back();
}

const Value* Summary::find(std::string_view section, std::string_view key) const {
    for (const auto& s : sections) {
        if (s.name != section) continue;
        for (const auto& f : s.fields)
            if (f.key == key) return &f.value;
    }
    return nullptr;
}

std::string format_value(const Value& v) {
    struct Visitor {
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        // A trailing ".0" keeps integral reals from reading back as integers.
        std::string operator()(double d) const {
            std::string t = format_number(d);
            if (t.find_first_of(".eni") == std::string::npos) t += ".0";
            return t;
        }
        std::string operator()(const std::complex<double>& z) const {
            return format_number(z.real()) + "," + format_number(z.imag());
        }
        std::string operator()(const std::string& s) const { return '"' + s + '"'; }
    };
    return std::visit(Visitor{}, v);
}

std::string format_summary(const Summary& s) {
    std::string out;
    for (const auto& section : s.sections) {
        if (!out.empty()) out += '\n';
        out += '[' + section.name + "]\n";
        for (const auto& f : section.fields) out += f.key + " = " + format_value(f.value) + '\n';
    }
    return out;
}

namespace {

bool parse_real(std::string_view s, double& out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return !s.empty() && ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_value(const std::string& text, Value& out) {
    if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
        out = text.substr(1, text.size() - 2);
        return true;
    }
    if (text == "true" || text == "false") {
        out = text == "true";
        return true;
    }
    if (const auto comma = text.find(','); comma != std::string::npos) {
        double re = 0, im = 0;
        if (!parse_real(std::string_view(text).substr(0, comma), re) ||
            !parse_real(std::string_view(text).substr(comma + 1), im))
            return false;
        out = std::complex<double>(re, im);
        return true;
    }
    std::int64_t i = 0;
    if (const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), i);
        !text.empty() && ec == std::errc{} && ptr == text.data() + text.size()) {
        out = i;
        return true;
    }
    double d = 0;
    if (!parse_real(text, d)) return false;
    out = d;
    return true;
}

}  // namespace

Summary parse_summary(std::string_view text) {
    Document doc = parse_document(text);
    std::vector<std::string> errors = std::move(doc.errors);
    Summary s;
    std::size_t h = 0;
    for (const Entry& e : doc.entries) {
        while (h < doc.headers.size() && doc.headers[h].line < e.line) s.add(doc.headers[h++].section);
        Value v;
        if (s.sections.empty()) {
            errors.push_back("line " + std::to_string(e.line) + ": field outside any section");
        } else if (!parse_value(e.value, v)) {
            errors.push_back("line " + std::to_string(e.line) + ": " + e.key + ": malformed value '" + e.value + "'");
        } else {
            s.sections.back().fields.push_back({e.key, std::move(v)});
        }
    }
    while (h < doc.headers.size()) s.add(doc.headers[h++].section);
    if (!errors.empty()) throw ConfigError(std::move(errors));
    return s;
}

}  // namespace grover::cli
