#include "grover/cli/commands.hpp"
#include "grover/cli/keyvalue.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

namespace grover::cli {

std::optional<Command> parse_command(std::string_view name) {
    for (Command c : {Command::simulate, Command::analyze, Command::compare, Command::sweep, Command::strategy})
        if (name == to_string(c)) return c;
    return std::nullopt;
}

const char* to_string(Command c) {
    switch (c) {
        case Command::simulate: return "simulate";
        case Command::analyze: return "analyze";
        case Command::compare: return "compare";
        case Command::sweep: return "sweep";
        case Command::strategy: return "strategy";
    }
    return "?";
}

const OutputFile* Report::file(std::string_view name) const {
    for (const auto& f : files)
        if (f.name == name) return &f;
    return nullptr;
}

StateVector<double> read_vector_file(const std::filesystem::path& file, Index count) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot read " + file.string());
    std::vector<Complex<double>> values;
    std::vector<std::string> errors;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string body = trim(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        std::istringstream fields(body);
        double re = 0, im = 0;
        std::string extra;
        if (!(fields >> re >> im) || (fields >> extra) || !std::isfinite(re) || !std::isfinite(im)) {
            errors.push_back(file.string() + " line " + std::to_string(number) + ": expected `re im`, got '" + body + "'");
            continue;
        }
        values.emplace_back(re, im);
    }
    if (errors.empty() && static_cast<Index>(values.size()) != count) {
        errors.push_back(file.string() + ": expected " + std::to_string(count) + " entries, found " +
                         std::to_string(values.size()));
    }
    if (!errors.empty()) throw ConfigError(std::move(errors));
    return Eigen::Map<const StateVector<double>>(values.data(), count);
}

Experiment build_experiment(const ExperimentConfig& c) {
    const Index n = c.dimension;
    EtaVector<double> eta;
    switch (c.eta) {
        case EtaKind::hadamard: {
            int q = 0;
            while ((Index{1} << q) < n) ++q;
            eta = make_eta_hadamard(q);
            break;
        }
        case EtaKind::vector: {
            auto v = read_vector_file(c.resolve(c.eta_file), n);
            validate_state(v);
            eta = make_eta_from_vector(normalized(std::move(v)));
            break;
        }
        case EtaKind::unitary: {
            const auto entries = read_vector_file(c.resolve(c.eta_file), n * n);
            const DenseOperator<double> u =
                Eigen::Map<const Eigen::Matrix<Complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
                    entries.data(), n, n);
            eta = make_eta_from_unitary(u, c.eta_column);
            eta.values = normalized(eta.values);
            break;
        }
        case EtaKind::random: eta = make_eta_random(c.seed, n); break;
    }

    QuantumState<double> state0;
    switch (c.initial) {
        case InitialKind::eta_image: state0 = eta.values; break;
        case InitialKind::vector: {
            auto v = read_vector_file(c.resolve(c.initial_file), n);
            validate_state(v);
            state0 = normalized(std::move(v));
            break;
        }
        case InitialKind::random: state0 = random_state(c.seed + 1, n); break;
        case InitialKind::uniform:
            state0 = QuantumState<double>::Constant(n, Complex<double>(1 / std::sqrt(static_cast<double>(n)), 0));
            break;
    }
    return {AlgorithmParams<double>(c.beta.value, c.gamma.value, std::move(eta), MarkedSet(c.marked, n)),
            std::move(state0)};
}

std::vector<ExperimentConfig> sweep_points(const ExperimentConfig& c) {
    const auto& s = c.sweep;
    auto axis = [](const auto& values, const auto& fallback) {
        using T = std::decay_t<decltype(fallback)>;
        return values.empty() ? std::vector<T>{fallback} : std::vector<T>(values.begin(), values.end());
    };
    const auto qubits = s.qubits.empty() ? std::vector<std::optional<int>>{c.qubits}
                                         : std::vector<std::optional<int>>(s.qubits.begin(), s.qubits.end());
    const auto rs = s.r.empty() ? std::vector<std::optional<Index>>{std::nullopt}
                                : std::vector<std::optional<Index>>(s.r.begin(), s.r.end());
    const auto betas = axis(s.beta, c.beta);
    const auto gammas = axis(s.gamma, c.gamma);
    const auto seeds = axis(s.seed, c.seed);

    std::vector<ExperimentConfig> points;
    points.reserve(s.point_count());
    for (const auto& q : qubits)
        for (const auto& r : rs)
            for (const auto& beta : betas)
                for (const auto& gamma : gammas)
                    for (const auto seed : seeds) {
                        ExperimentConfig p = c;
                        p.sweep = {};
                        if (q) {
                            p.qubits = q;
                            p.dimension = Index{1} << *q;
                        }
                        if (r) {
                            p.marked.clear();
                            for (Index i = 0; i < *r; ++i) p.marked.push_back(i);
                        }
                        p.beta = beta;
                        p.gamma = s.gamma_follows_beta ? beta : gamma;
                        p.seed = seed;
                        points.push_back(std::move(p));
                    }
    return points;
}

namespace {

std::string csv_row(std::initializer_list<std::string> cells) {
    std::string out;
    for (const auto& c : cells) out += (out.empty() ? "" : ",") + c;
    return out + '\n';
}

void describe(Summary& s, const ExperimentConfig& c, Command command) {
    auto& e = s.add("experiment");
    e.set("command", std::string(to_string(command)));
    e.set("N", static_cast<std::int64_t>(c.dimension));
    e.set("r", static_cast<std::int64_t>(MarkedSet(c.marked, c.dimension).size()));
    e.set("beta", c.beta.value);
    e.set("gamma", c.gamma.value);
    e.set("eta_source", std::string(to_string(c.eta)));
    e.set("initial_source", std::string(to_string(c.initial)));
    e.set("seed", static_cast<std::int64_t>(c.seed));
    e.set("t_end", static_cast<std::int64_t>(c.t_end));
}

void describe(Summary& s, const AnalyticSolution<double>& sol) {
    const auto& m = sol.moments();
    s.add("weights").set("W_k", m.W_k).set("W_l", m.W_l);
    s.add("moments")
        .set("kbar0", m.kbar0)
        .set("lbar0", m.lbar0)
        .set("sigma_k2", m.sigma_k2)
        .set("sigma_l2", m.sigma_l2)
        .set("frozen_marked_prob", m.frozen_marked_prob)
        .set("frozen_unmarked_prob", m.frozen_unmarked_prob);
    const auto& e = sol.spectrum();
    s.add("spectrum")
        .set("lambda_plus", e.lambda_plus)
        .set("lambda_minus", e.lambda_minus)
        .set("omega", e.omega)
        .set("degenerate", e.degenerate);
}

void describe(Summary& s, const OscillationProfile<double>& p) {
    s.add("profile").set("omega", p.omega).set("phi", p.phi).set("P_av", p.P_av).set("Delta_P", p.Delta_P);
}

struct Simulated {
    std::string trace;
    std::string compare;
    double max_norm_drift = 0;
    std::int64_t best_t = 0;
    double best_p = -1;
};

/// Streams the simulator against the analytic model; compare rows are built
/// only when asked for.
Simulated simulate(const Experiment& ex, const AnalyticSolution<double>& sol, std::int64_t t_end, bool with_compare) {
    Simulated out;
    out.trace = "t,P_marked_sim,P_marked_analytic,abs_err,norm_drift\n";
    if (with_compare) out.compare = "t,max_amplitude_err,abs_err\n";
    run_streaming(ex.state0, ex.params, t_end, [&](std::int64_t t, const QuantumState<double>& s) {
        const double p_sim = marked_probability(s, ex.params.marked);
        const double p_an = sol.marked_probability_at(t);
        const double err = std::abs(p_sim - p_an);
        const double drift = std::abs(std::sqrt(squared_norm(s)) - 1);
        out.max_norm_drift = std::max(out.max_norm_drift, drift);
        if (p_sim > out.best_p) {
            out.best_p = p_sim;
            out.best_t = t;
        }
        const std::string ts = std::to_string(t);
        out.trace += csv_row({ts, format_number(p_sim), format_number(p_an), format_number(err), format_number(drift)});
        if (with_compare) {
            const double amp = (sol.state_at(t) - s).cwiseAbs().maxCoeff();
            out.compare += csv_row({ts, format_number(amp), format_number(err)});
        }
    });
    return out;
}

std::string fallback_warning(std::int64_t t_end) {
    return "degenerate spectrum: no single-sinusoid profile; simulated t = 0.." + std::to_string(t_end) + " instead";
}

void add_fallback(Report& report, Summary& s, const Experiment& ex, const AnalyticSolution<double>& sol,
                  std::int64_t t_end) {
    const auto sim = simulate(ex, sol, t_end, false);
    report.max_norm_drift = std::max(report.max_norm_drift, sim.max_norm_drift);
    report.warnings.push_back(fallback_warning(t_end));
    s.add("simulated").set("T_best", sim.best_t).set("P_best", sim.best_p).set("max_norm_drift", sim.max_norm_drift);
    s.add("warnings").set("warning", report.warnings.back());
    report.files.push_back({"trace.csv", sim.trace});
}

Report analyze(const ExperimentConfig& c) {
    Report report{Command::analyze, {}, {}, 0};
    const auto ex = build_experiment(c);
    const AnalyticSolution<double> sol(ex.params, ex.state0);
    Summary s;
    describe(s, c, Command::analyze);
    describe(s, sol);
    const auto& m = sol.moments();
    const auto regime = classify_regime(ex.params.beta, ex.params.gamma, m.W_k);
    if (sol.has_closed_form()) {
        const auto prof = oscillation_profile(sol);
        describe(s, prof);
        const auto plan = optimal_time(prof, regime.regime);
        s.add("plan")
            .set("regime", std::string(to_string(regime.regime)))
            .set("delta_p_order", std::string(regime.delta_p_order))
            .set("T_real", plan.T_real)
            .set("T_int", plan.T_int)
            .set("P_at_T", plan.P_at_T)
            .set("P_max", plan.P_max)
            .set("discreteness_loss", plan.discreteness_loss);
        if (regime.regime == Regime::equal_angles && m.lbar_defined) {
            const auto cf = p_max_closed_form(m, ex.params.beta, ex.params.gamma);
            s.add("closed_form").set("P_max_approx", cf.value).set("ceiling", cf.ceiling);
        }
    }
    if (m.W_k > 0 && m.W_l > 0) {
        const auto b = appendix_bounds(m, ex.params.marked.size());
        s.add("bounds")
            .set("kbar_abs", b.kbar_abs)
            .set("kbar_bound", b.kbar_bound)
            .set("kbar_ok", b.kbar_ok)
            .set("lbar_abs", b.lbar_abs)
            .set("lbar_bound", b.lbar_bound)
            .set("lbar_ok", b.lbar_ok);
    }
    if (!sol.has_closed_form()) add_fallback(report, s, ex, sol, c.t_end);
    report.files.insert(report.files.begin(), {"summary.txt", format_summary(s)});
    return report;
}

Report strategy(const ExperimentConfig& c) {
    Report report{Command::strategy, {}, {}, 0};
    const auto ex = build_experiment(c);
    const AnalyticSolution<double> sol(ex.params, ex.state0);
    const auto regime = classify_regime(ex.params.beta, ex.params.gamma, sol.moments().W_k);
    if (regime.regime != Regime::equal_angles) throw RegimeError("strategy needs beta == gamma");
    Summary s;
    describe(s, c, Command::strategy);
    if (sol.has_closed_form()) {
        const auto prof = oscillation_profile(sol);
        describe(s, prof);
        const auto st = two_point_strategy(prof, regime.regime, c.t1);
        s.add("strategy")
            .set("T1", st.T1)
            .set("T2", st.T2)
            .set("P1", st.P1)
            .set("P2", st.P2)
            .set("P_max", prof.P_av + prof.Delta_P + prof.frozen_marked_prob)
            .set("guarantee_ok", st.guarantee_ok)
            .set("T1_int", st.T1_int)
            .set("T2_int", st.T2_int)
            .set("P1_int", st.P1_int)
            .set("P2_int", st.P2_int)
            .set("integer_loss", st.integer_loss);
    } else {
        add_fallback(report, s, ex, sol, c.t_end);
    }
    report.files.insert(report.files.begin(), {"strategy.txt", format_summary(s)});
    return report;
}

Report trace(const ExperimentConfig& c, Command command) {
    Report report{command, {}, {}, 0};
    const auto ex = build_experiment(c);
    const AnalyticSolution<double> sol(ex.params, ex.state0);
    auto sim = simulate(ex, sol, c.t_end, command == Command::compare);
    report.max_norm_drift = sim.max_norm_drift;
    report.files.push_back({"trace.csv", std::move(sim.trace)});
    if (command == Command::compare) report.files.push_back({"compare.csv", std::move(sim.compare)});
    return report;
}

struct SweepRow {
    std::string text;
    std::string warning;
    double max_norm_drift = 0;
};

SweepRow sweep_row(const ExperimentConfig& p) {
    SweepRow row;
    const auto ex = build_experiment(p);
    const AnalyticSolution<double> sol(ex.params, ex.state0);
    const auto& m = sol.moments();
    const auto regime = classify_regime(ex.params.beta, ex.params.gamma, m.W_k);
    const std::string n = p.qubits ? std::to_string(*p.qubits) : "";
    std::string profile_cells;
    if (sol.has_closed_form()) {
        const auto prof = oscillation_profile(sol);
        const auto plan = optimal_time(prof, regime.regime);
        profile_cells = format_number(prof.P_av) + ',' + format_number(prof.Delta_P) + ',' +
                        format_number(plan.T_real) + ',' + std::to_string(plan.T_int) + ',' +
                        format_number(plan.P_at_T) + ',' + format_number(plan.P_max);
    } else {
        const auto sim = simulate(ex, sol, p.t_end, false);
        row.max_norm_drift = sim.max_norm_drift;
        row.warning = "point N=" + std::to_string(p.dimension) + " beta=" + p.beta.text + " gamma=" + p.gamma.text +
                      ": " + fallback_warning(p.t_end);
        profile_cells = ",,," + std::to_string(sim.best_t) + ',' + format_number(sim.best_p) + ',' +
                        format_number(sim.best_p);
    }
    row.text = csv_row({n, std::to_string(p.dimension), std::to_string(ex.params.marked.size()), p.beta.text,
                        p.gamma.text, std::to_string(p.seed), format_number(m.W_k),
                        format_number(sol.spectrum().omega), profile_cells, to_string(regime.regime),
                        sol.spectrum().degenerate ? "true" : "false"});
    return row;
}

Report sweep(const ExperimentConfig& c) {
    const auto points = sweep_points(c);
    std::vector<SweepRow> rows(points.size());
    std::vector<std::exception_ptr> failures(points.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < points.size();) {
            try {
                rows[i] = sweep_row(points[i]);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const auto workers = static_cast<std::size_t>(std::max(1, c.workers));
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < std::min(workers, points.size()); ++w) pool.emplace_back(work);
    work();
    pool.clear();
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    Report report{Command::sweep, {}, {}, 0};
    std::string csv = "n,N,r,beta,gamma,seed,W_k,omega,P_av,Delta_P,T_real,T_int,P_at_T,P_max,regime,degenerate\n";
    for (const auto& r : rows) {
        csv += r.text;
        report.max_norm_drift = std::max(report.max_norm_drift, r.max_norm_drift);
        if (!r.warning.empty()) report.warnings.push_back(r.warning);
    }
    report.files.push_back({"sweep.csv", std::move(csv)});
    return report;
}

}  // namespace

Report run_command(const ExperimentConfig& c, Command command) {
    switch (command) {
        case Command::simulate:
        case Command::compare: return trace(c, command);
        case Command::analyze: return analyze(c);
        case Command::strategy: return strategy(c);
        case Command::sweep: return sweep(c);
    }
    throw std::logic_error("unknown command");
}

void emit_outputs(const Report& report, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    for (const auto& f : report.files) {
        const auto path = dir / f.name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + path.string());
        out << f.content;
        if (!out.flush()) throw IoError("write failed: " + path.string());
    }
}

}  // namespace grover::cli
