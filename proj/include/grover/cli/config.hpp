#pragma once

#include "grover/types.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace grover::cli {

/// Every problem found in a config, each prefixed with its line number.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An angle keeps the text it was written as, so `pi/2` serializes back as `pi/2`.
struct Angle {
    std::string text;
    double value = 0;
    friend bool operator==(const Angle&, const Angle&) = default;
};

/// Accepts decimals and the tokens pi, pi/2, pi/3, pi/4 (optionally negated).
std::optional<Angle> parse_angle(std::string_view text);

enum class EtaKind { hadamard, vector, unitary, random };
enum class InitialKind { eta_image, vector, random, uniform };

const char* to_string(EtaKind k);
const char* to_string(InitialKind k);

/// Values along the swept axes; an empty axis is not swept.
struct SweepAxes {
    std::vector<int> qubits;
    std::vector<Index> r;
    std::vector<Angle> beta;
    std::vector<Angle> gamma;
    bool gamma_follows_beta = false;
    std::vector<std::uint64_t> seed;
    friend bool operator==(const SweepAxes&, const SweepAxes&) = default;

    bool empty() const;
    std::size_t point_count() const;
};

struct ExperimentConfig {
    std::optional<int> qubits;  // set when the size was given as n
    Index dimension = 0;
    std::vector<Index> marked;
    Angle beta, gamma;
    EtaKind eta = EtaKind::hadamard;
    std::string eta_file;  // as written in the config
    Index eta_column = 0;
    InitialKind initial = InitialKind::eta_image;
    std::string initial_file;
    std::int64_t t_end = 0;
    std::uint64_t seed = 1;
    int workers = 1;
    double t1 = 0;
    SweepAxes sweep;
    std::filesystem::path base_dir;  // where relative file names resolve; not serialized

    friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

    std::filesystem::path resolve(const std::string& file) const;
};

/// Parses and validates; throws ConfigError listing every problem found.
/// `base_dir` anchors relative file names and is where their existence is checked.
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& file);

/// Canonical text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& c);

}  // namespace grover::cli
