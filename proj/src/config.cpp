#include "grover/cli/config.hpp"
#include "grover/cli/keyvalue.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace grover::cli {

namespace {

std::string join(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) out += (out.empty() ? "" : "\n") + l;
    return out;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::optional<double> parse_double(std::string_view s) {
    double v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::string strip_brackets(std::string_view s) {
    std::string t = trim(s);
    if (t.size() >= 2 && t.front() == '[' && t.back() == ']') t = trim(std::string_view(t).substr(1, t.size() - 2));
    return t;
}

/// "a, b, c", "[a, b]" or, for integers, "lo..hi".
template <typename Int>
std::optional<std::vector<Int>> parse_int_list(std::string_view s) {
    const std::string body = strip_brackets(s);
    std::vector<Int> out;
    if (const auto dots = body.find(".."); dots != std::string::npos) {
        const auto lo = parse_int<Int>(trim(std::string_view(body).substr(0, dots)));
        const auto hi = parse_int<Int>(trim(std::string_view(body).substr(dots + 2)));
        if (!lo || !hi || *hi < *lo || *hi - *lo > 100000) return std::nullopt;
        for (Int v = *lo; v <= *hi; ++v) out.push_back(v);
        return out;
    }
    if (body.empty()) return std::nullopt;
    for (const auto& item : split(body, ',')) {
        const auto v = parse_int<Int>(item);
        if (!v) return std::nullopt;
        out.push_back(*v);
    }
    return out;
}

std::optional<std::vector<Angle>> parse_angle_list(std::string_view s) {
    const std::string body = strip_brackets(s);
    if (body.empty()) return std::nullopt;
    std::vector<Angle> out;
    for (const auto& item : split(body, ',')) {
        auto a = parse_angle(item);
        if (!a) return std::nullopt;
        out.push_back(std::move(*a));
    }
    return out;
}

template <typename T>
std::string list_text(const std::vector<T>& v) {
    std::string out;
    for (const auto& x : v) {
        if (!out.empty()) out += ", ";
        if constexpr (std::is_same_v<T, Angle>)
            out += x.text;
        else
            out += std::to_string(x);
    }
    return out;
}

bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

const std::set<std::pair<std::string, std::string>>& known_keys() {
    static const std::set<std::pair<std::string, std::string>> keys = {
        {"system", "n"},   {"system", "N"},     {"system", "marked"}, {"angles", "beta"},  {"angles", "gamma"},
        {"eta", "source"}, {"eta", "file"},     {"eta", "s"},         {"initial", "source"}, {"initial", "file"},
        {"run", "t_end"},  {"run", "seed"},     {"run", "workers"},   {"run", "t1"},       {"sweep", "n"},
        {"sweep", "r"},    {"sweep", "beta"},   {"sweep", "gamma"},   {"sweep", "seed"},
    };
    return keys;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

std::optional<Angle> parse_angle(std::string_view text) {
    const std::string t = trim(text);
    std::string_view body = t;
    double sign = 1;
    if (!body.empty() && body.front() == '-') {
        sign = -1;
        body.remove_prefix(1);
    }
    constexpr double pi = std::numbers::pi;
    static const std::map<std::string, double, std::less<>> symbolic = {
        {"pi", pi}, {"pi/2", pi / 2}, {"pi/3", pi / 3}, {"pi/4", pi / 4}};
    if (const auto it = symbolic.find(body); it != symbolic.end()) return Angle{t, sign * it->second};
    if (const auto v = parse_double(t)) return Angle{t, *v};
    return std::nullopt;
}

const char* to_string(EtaKind k) {
    switch (k) {
        case EtaKind::hadamard: return "hadamard";
        case EtaKind::vector: return "vector";
        case EtaKind::unitary: return "unitary";
        case EtaKind::random: return "random";
    }
    return "?";
}

const char* to_string(InitialKind k) {
    switch (k) {
        case InitialKind::eta_image: return "eta-image";
        case InitialKind::vector: return "vector";
        case InitialKind::random: return "random";
        case InitialKind::uniform: return "uniform";
    }
    return "?";
}

bool SweepAxes::empty() const {
    return qubits.empty() && r.empty() && beta.empty() && gamma.empty() && seed.empty();
}

std::size_t SweepAxes::point_count() const {
    auto len = [](std::size_t n) { return n == 0 ? std::size_t{1} : n; };
    return len(qubits.size()) * len(r.size()) * len(beta.size()) * len(gamma.size()) * len(seed.size());
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    return a.qubits == b.qubits && a.dimension == b.dimension && a.marked == b.marked && a.beta == b.beta &&
           a.gamma == b.gamma && a.eta == b.eta && a.eta_file == b.eta_file && a.eta_column == b.eta_column &&
           a.initial == b.initial && a.initial_file == b.initial_file && a.t_end == b.t_end && a.seed == b.seed &&
           a.workers == b.workers && a.t1 == b.t1 && a.sweep == b.sweep;
}

std::filesystem::path ExperimentConfig::resolve(const std::string& file) const {
    const std::filesystem::path p(file);
    return p.is_absolute() ? p : base_dir / p;
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    Document doc = parse_document(text);
    std::vector<std::string> errors = std::move(doc.errors);
    std::map<std::pair<std::string, std::string>, Entry> seen;

    for (const auto& e : doc.entries) {
        const auto id = std::make_pair(e.section, e.key);
        const std::string where = "line " + std::to_string(e.line) + ": ";
        if (!known_keys().count(id)) {
            errors.push_back(where + "unknown key '" + e.key + "'" +
                             (e.section.empty() ? " outside any section" : " in [" + e.section + "]"));
        } else if (seen.count(id)) {
            errors.push_back(where + "duplicate key '" + e.key + "' (first set on line " +
                             std::to_string(seen.at(id).line) + ")");
        } else {
            seen.emplace(id, e);
        }
    }

    auto find = [&](const char* section, const char* key) -> const Entry* {
        const auto it = seen.find({section, key});
        return it == seen.end() ? nullptr : &it->second;
    };
    auto fail = [&](const Entry& e, const std::string& what) {
        errors.push_back("line " + std::to_string(e.line) + ": " + e.key + ": " + what);
    };
    auto missing = [&](const char* section, const char* key) {
        errors.push_back("missing required key '" + std::string(key) + "' in [" + section + "]");
    };

    ExperimentConfig c;
    c.base_dir = base_dir;

    // Size.
    const Entry* n_entry = find("system", "n");
    const Entry* N_entry = find("system", "N");
    if (n_entry && N_entry) {
        fail(*N_entry, "give either n (qubits) or N (states), not both");
    } else if (n_entry) {
        const auto q = parse_int<int>(n_entry->value);
        if (!q || *q < 1 || *q > 24)
            fail(*n_entry, "expected an integer qubit count in 1..24, got '" + n_entry->value + "'");
        else {
            c.qubits = *q;
            c.dimension = Index{1} << *q;
        }
    } else if (N_entry) {
        const auto n = parse_int<Index>(N_entry->value);
        if (!n || *n < 2 || *n > (Index{1} << 24))
            fail(*N_entry, "expected an integer state count in 2..2^24, got '" + N_entry->value + "'");
        else
            c.dimension = *n;
    } else {
        missing("system", "n");
    }

    if (const Entry* e = find("system", "marked")) {
        const auto list = parse_int_list<Index>(e->value);
        if (!list) {
            fail(*e, "expected a list of indices, got '" + e->value + "'");
        } else {
            c.marked = *list;
            for (Index i : c.marked) {
                if (c.dimension > 0 && (i < 0 || i >= c.dimension)) {
                    fail(*e, "index out of range (" + std::to_string(i) + " not in [0, " +
                                 std::to_string(c.dimension) + "))");
                    break;
                }
            }
        }
    } else {
        missing("system", "marked");
    }

    for (auto [key, target] : {std::pair{"beta", &c.beta}, std::pair{"gamma", &c.gamma}}) {
        if (const Entry* e = find("angles", key)) {
            if (auto a = parse_angle(e->value))
                *target = std::move(*a);
            else
                fail(*e, "expected a decimal angle or pi, pi/2, pi/3, pi/4, got '" + e->value + "'");
        } else {
            missing("angles", key);
        }
    }

    auto check_file = [&](const Entry* e, std::string& target) {
        if (!e) return false;
        target = e->value;
        if (!std::filesystem::exists(c.resolve(target))) fail(*e, "file not found: " + c.resolve(target).string());
        return true;
    };

    if (const Entry* e = find("eta", "source")) {
        static const std::map<std::string, EtaKind> kinds = {{"hadamard", EtaKind::hadamard},
                                                             {"vector", EtaKind::vector},
                                                             {"unitary", EtaKind::unitary},
                                                             {"random", EtaKind::random}};
        if (const auto it = kinds.find(e->value); it == kinds.end()) {
            fail(*e, "expected hadamard, vector, unitary or random, got '" + e->value + "'");
        } else {
            c.eta = it->second;
            const Entry* file = find("eta", "file");
            const bool wants_file = c.eta == EtaKind::vector || c.eta == EtaKind::unitary;
            if (wants_file && !check_file(file, c.eta_file)) missing("eta", "file");
            if (!wants_file && file) fail(*file, std::string("no file is read for eta source ") + to_string(c.eta));
            const Entry* s = find("eta", "s");
            if (c.eta == EtaKind::unitary && s) {
                const auto col = parse_int<Index>(s->value);
                if (!col || *col < 0 || (c.dimension > 0 && *col >= c.dimension))
                    fail(*s, "expected a column index in [0, N), got '" + s->value + "'");
                else
                    c.eta_column = *col;
            } else if (s && c.eta != EtaKind::unitary) {
                fail(*s, "only a unitary eta source takes a column");
            }
            if (c.eta == EtaKind::hadamard && c.dimension > 0 && !is_power_of_two(c.dimension))
                fail(*e, "hadamard needs N to be a power of two");
        }
    } else {
        missing("eta", "source");
    }

    if (const Entry* e = find("initial", "source")) {
        static const std::map<std::string, InitialKind> kinds = {{"eta-image", InitialKind::eta_image},
                                                                 {"vector", InitialKind::vector},
                                                                 {"random", InitialKind::random},
                                                                 {"uniform", InitialKind::uniform}};
        if (const auto it = kinds.find(e->value); it == kinds.end()) {
            fail(*e, "expected eta-image, vector, random or uniform, got '" + e->value + "'");
        } else {
            c.initial = it->second;
            const Entry* file = find("initial", "file");
            if (c.initial == InitialKind::vector && !check_file(file, c.initial_file)) missing("initial", "file");
            if (c.initial != InitialKind::vector && file) fail(*file, "only a vector initial state reads a file");
        }
    } else {
        missing("initial", "source");
    }

    if (const Entry* e = find("run", "t_end")) {
        const auto t = parse_int<std::int64_t>(e->value);
        if (!t || *t < 0 || *t > 10'000'000)
            fail(*e, "expected an integer step count in 0..10^7, got '" + e->value + "'");
        else
            c.t_end = *t;
    } else {
        missing("run", "t_end");
    }
    if (const Entry* e = find("run", "seed")) {
        if (const auto s = parse_int<std::uint64_t>(e->value))
            c.seed = *s;
        else
            fail(*e, "expected a non-negative integer, got '" + e->value + "'");
    }
    if (const Entry* e = find("run", "workers")) {
        const auto w = parse_int<int>(e->value);
        if (!w || *w < 1 || *w > 256)
            fail(*e, "expected a worker count in 1..256, got '" + e->value + "'");
        else
            c.workers = *w;
    }
    if (const Entry* e = find("run", "t1")) {
        const auto v = parse_double(e->value);
        if (!v || *v < 0)
            fail(*e, "expected a non-negative decimal, got '" + e->value + "'");
        else
            c.t1 = *v;
    }

    // Sweep axes.
    if (const Entry* e = find("sweep", "n")) {
        const auto v = parse_int_list<int>(e->value);
        if (!v)
            fail(*e, "expected a list or range of qubit counts, got '" + e->value + "'");
        else if (std::any_of(v->begin(), v->end(), [](int q) { return q < 1 || q > 24; }))
            fail(*e, "qubit counts must lie in 1..24");
        else if (c.eta == EtaKind::vector || c.eta == EtaKind::unitary || c.initial == InitialKind::vector)
            fail(*e, "cannot sweep the size with file-based vectors");
        else
            c.sweep.qubits = *v;
    }
    if (const Entry* e = find("sweep", "r")) {
        const auto v = parse_int_list<Index>(e->value);
        if (!v) {
            fail(*e, "expected a list or range of marked counts, got '" + e->value + "'");
        } else {
            Index smallest = c.dimension;
            for (int q : c.sweep.qubits) smallest = std::min(smallest, Index{1} << q);
            if (std::any_of(v->begin(), v->end(), [&](Index r) { return r < 1 || (smallest > 0 && r > smallest); }))
                fail(*e, "marked counts must lie in 1..N for every swept size");
            else
                c.sweep.r = *v;
        }
    }
    if (const Entry* e = find("sweep", "beta")) {
        if (auto v = parse_angle_list(e->value))
            c.sweep.beta = std::move(*v);
        else
            fail(*e, "expected a list of angles, got '" + e->value + "'");
    }
    if (const Entry* e = find("sweep", "gamma")) {
        if (e->value == "beta") {
            c.sweep.gamma_follows_beta = true;
        } else if (auto v = parse_angle_list(e->value)) {
            c.sweep.gamma = std::move(*v);
        } else {
            fail(*e, "expected a list of angles or 'beta', got '" + e->value + "'");
        }
    }
    if (const Entry* e = find("sweep", "seed")) {
        if (auto v = parse_int_list<std::uint64_t>(e->value))
            c.sweep.seed = std::move(*v);
        else
            fail(*e, "expected a list or range of seeds, got '" + e->value + "'");
    }
    if (!errors.empty()) throw ConfigError(std::move(errors));
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot read config " + file.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), file.parent_path());
}

std::string serialize_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "[system]\n";
    if (c.qubits)
        out << "n = " << *c.qubits << '\n';
    else
        out << "N = " << c.dimension << '\n';
    out << "marked = " << list_text(c.marked) << "\n\n";
    out << "[angles]\nbeta = " << c.beta.text << "\ngamma = " << c.gamma.text << "\n\n";
    out << "[eta]\nsource = " << to_string(c.eta) << '\n';
    if (c.eta == EtaKind::vector || c.eta == EtaKind::unitary) out << "file = " << c.eta_file << '\n';
    if (c.eta == EtaKind::unitary) out << "s = " << c.eta_column << '\n';
    out << "\n[initial]\nsource = " << to_string(c.initial) << '\n';
    if (c.initial == InitialKind::vector) out << "file = " << c.initial_file << '\n';
    out << "\n[run]\nt_end = " << c.t_end << "\nseed = " << c.seed << "\nworkers = " << c.workers
        << "\nt1 = " << format_number(c.t1) << '\n';
    if (!c.sweep.empty() || c.sweep.gamma_follows_beta) {
        out << "\n[sweep]\n";
        if (!c.sweep.qubits.empty()) out << "n = " << list_text(c.sweep.qubits) << '\n';
        if (!c.sweep.r.empty()) out << "r = " << list_text(c.sweep.r) << '\n';
        if (!c.sweep.beta.empty()) out << "beta = " << list_text(c.sweep.beta) << '\n';
        if (c.sweep.gamma_follows_beta)
            out << "gamma = beta\n";
        else if (!c.sweep.gamma.empty())
            out << "gamma = " << list_text(c.sweep.gamma) << '\n';
        if (!c.sweep.seed.empty()) out << "seed = " << list_text(c.sweep.seed) << '\n';
    }
    return out.str();
}

}  // namespace grover::cli
