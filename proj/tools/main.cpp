// grover <simulate|analyze|compare|sweep|strategy> --config FILE [--out DIR]
//
// Exit codes: 0 success, 1 config error, 2 norm drift above 1e-8, 3 I/O.

#include "grover/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

enum Exit { ok = 0, config_error = 1, numeric_guard = 2, io_error = 3 };

}  // namespace

int main(int argc, char** argv) {
    using namespace grover::cli;

    CLI::App app{"Generalized Grover search: simulation against the analytic solution"};
    app.require_subcommand(1, 1);
    std::string config_path;
    std::string out_dir = ".";
    std::optional<int> workers;
    std::optional<std::int64_t> t_end;
    std::optional<std::uint64_t> seed;
    for (Command c : {Command::simulate, Command::analyze, Command::compare, Command::sweep, Command::strategy}) {
        auto* sub = app.add_subcommand(to_string(c));
        sub->add_option("--config", config_path, "experiment config")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--workers", workers, "sweep worker threads")->check(CLI::Range(1, 256));
        sub->add_option("--t-end", t_end, "override run.t_end")->check(CLI::Range(std::int64_t{0}, std::int64_t{10'000'000}));
        sub->add_option("--seed", seed, "override run.seed");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : config_error;
    }
    const Command command = *parse_command(app.get_subcommands().front()->get_name());

    try {
        ExperimentConfig config = load_config(config_path);
        if (workers) config.workers = *workers;
        if (t_end) config.t_end = *t_end;
        if (seed) config.seed = *seed;

        const Report report = run_command(config, command);
        emit_outputs(report, out_dir);
        for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
        if (report.norm_guard_tripped()) {
            std::cerr << "error: norm drift " << report.max_norm_drift << " exceeds " << kNormGuard << '\n';
            return numeric_guard;
        }
        return ok;
    } catch (const ConfigError& e) {
        for (const auto& p : e.problems()) std::cerr << "config error: " << p << '\n';
        return config_error;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return io_error;
    } catch (const grover::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return config_error;
    }
}
