#pragma once

#include "grover/cli/config.hpp"
#include "grover/cli/summary.hpp"
#include "grover/grover.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace grover::cli {

enum class Command { simulate, analyze, compare, sweep, strategy };

std::optional<Command> parse_command(std::string_view name);
const char* to_string(Command c);

inline constexpr double kNormGuard = 1e-8;

struct OutputFile {
    std::string name;
    std::string content;
};

struct Report {
    Command command = Command::simulate;
    std::vector<OutputFile> files;
    std::vector<std::string> warnings;
    double max_norm_drift = 0;  // over every simulated state

    bool norm_guard_tripped() const { return max_norm_drift > kNormGuard; }
    const OutputFile* file(std::string_view name) const;
};

struct Experiment {
    AlgorithmParams<double> params;
    QuantumState<double> state0;
};

/// `re im` per line, exactly `count` entries. Throws IoError when unreadable
/// and ConfigError when malformed.
StateVector<double> read_vector_file(const std::filesystem::path& file, Index count);

/// Builds eta, the marked set and the initial state. Eta is drawn with the run
/// seed and a random initial state with seed + 1.
Experiment build_experiment(const ExperimentConfig& c);

/// The base config with one sweep point applied, in output order.
std::vector<ExperimentConfig> sweep_points(const ExperimentConfig& c);

Report run_command(const ExperimentConfig& c, Command command);

/// Writes every report file under `dir`, creating it if needed; throws IoError.
void emit_outputs(const Report& report, const std::filesystem::path& dir);

}  // namespace grover::cli
