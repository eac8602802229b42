#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "aps/eigen_scan.hpp"
#include "aps/engine.hpp"
#include "aps/instance.hpp"
#include "aps/io.hpp"
#include "aps/metrics.hpp"

namespace aps::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char *kBitOrderNote =
    "Bitstrings are written most-significant work bit first: the string "
    "y0 y1 ... y(n-1) has y0 as its leftmost character, and y_l selects "
    "subset-sum element l or max-cut vertex l.";

struct OutputOptions {
    std::string path = "-";
    std::string format = "csv";

    [[nodiscard]] bool to_stdout() const { return path == "-"; }
};

/// Human-readable summary goes to stdout when the data goes to a file, and to
/// stderr when stdout carries the data.
std::ostream &summary_stream(const OutputOptions &o, std::ostream &out, std::ostream &err) {
    return o.to_stdout() ? err : out;
}

void write_text(const OutputOptions &o, std::ostream &out, const std::string &text) {
    if (o.to_stdout()) {
        out << text;
        return;
    }
    std::ofstream file(o.path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot write " + o.path);
    }
    file << text;
}

void write_side_file(const fs::path &path, const std::string &text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot write " + path.string());
    }
    file << text;
}

fs::path sibling_path(const std::string &path, const std::string &suffix) {
    fs::path p(path);
    p.replace_extension(suffix);
    return p;
}

void add_output_options(CLI::App *cmd, OutputOptions &o) {
    cmd->add_option("--out", o.path, "Output path ('-' for stdout)")->capture_default_str();
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

std::string csv_of(const Histogram &h) {
    std::ostringstream s;
    write_histogram_csv(s, h);
    return s.str();
}

// ---------------------------------------------------------------- grover

struct GroverOptions {
    unsigned n = 0;
    std::vector<std::string> marked;
    std::optional<std::size_t> iterations;
    OutputOptions output;
};

int cmd_grover(const GroverOptions &opt, std::ostream &out, std::ostream &err) {
    const RegisterLayout layout(opt.n, 0, max_qubits_from_env());
    std::set<std::size_t> marked;
    for (const auto &bits : opt.marked) {
        if (bits.size() != opt.n) {
            throw std::invalid_argument("marked state '" + bits + "' is not " +
                                        std::to_string(opt.n) + " bits wide");
        }
        marked.insert(parse_bitstring(bits));
    }
    const auto space = layout.work_dimension();
    const std::size_t iterations = opt.iterations.value_or(static_cast<std::size_t>(
        std::floor(std::numbers::pi / 4.0 *
                   std::sqrt(static_cast<double>(space) / static_cast<double>(marked.size())))));

    const auto dist = run_grover_baseline(opt.n, marked, iterations, max_qubits_from_env());
    double p_marked = 0.0;
    for (auto x : marked) {
        p_marked += dist[x];
    }
    const double predicted = grover_success_probability(marked.size(), space, iterations);
    const auto histogram = Histogram::exact(dist);

    if (opt.output.format == "json") {
        json doc{{"command", "grover"},
                 {"n", opt.n},
                 {"marked", opt.marked},
                 {"iterations", iterations},
                 {"p_marked", p_marked},
                 {"closed_form", predicted},
                 {"histogram", histogram_to_json(histogram)}};
        write_text(opt.output, out, doc.dump(2) + "\n");
    } else {
        write_text(opt.output, out, csv_of(histogram));
    }
    summary_stream(opt.output, out, err)
        << fmt::format("iterations={} P(marked)={:.10f} closed_form={:.10f}\n", iterations,
                       p_marked, predicted);
    return kExitOk;
}

// ---------------------------------------------------------------- aps

struct ApsOptions {
    std::string instance;
    std::optional<unsigned> n;
    std::optional<unsigned> m;
    std::optional<std::size_t> pre_reps;
    std::optional<std::size_t> main_reps;
    std::uint64_t shots = 0;
    std::optional<std::uint64_t> seed;
    std::string phase_map = "linear";
    std::optional<double> target;
    std::string trace;
    OutputOptions output;
};

RegisterLayout resolve_layout(const ProblemInstance &inst, std::optional<unsigned> n,
                              std::optional<unsigned> m) {
    const unsigned work = inst.work_qubits();
    if (n && *n != work) {
        throw std::invalid_argument("--n " + std::to_string(*n) + " does not match the " +
                                    std::to_string(work) + "-qubit instance");
    }
    return RegisterLayout(work, m.value_or(work), max_qubits_from_env());
}

std::uint64_t resolve_seed(std::uint64_t shots, std::optional<std::uint64_t> seed) {
    if (shots > 0 && !seed) {
        throw std::invalid_argument("--shots requires --seed");
    }
    return seed.value_or(0);
}

Schedule resolve_schedule(const RegisterLayout &layout, std::optional<std::size_t> pre,
                          std::optional<std::size_t> main) {
    auto s = default_schedule(layout.work_qubits(), layout.ancilla_qubits());
    if (pre) {
        s.preprocessing_reps = *pre;
    }
    if (main) {
        s.main_reps = *main;
    }
    return s;
}

json trace_to_json(const std::vector<TraceEntry> &trace) {
    json rounds = json::array();
    for (const auto &t : trace) {
        json amps = json::array();
        for (const auto &a : t.amplitudes) {
            amps.push_back({a.real(), a.imag()});
        }
        rounds.push_back({{"stage", t.preprocessing ? "preprocessing" : "main"},
                          {"iteration", t.iteration},
                          {"amplitudes", std::move(amps)}});
    }
    return rounds;
}

int cmd_aps(const ApsOptions &opt, std::ostream &out, std::ostream &err) {
    const auto inst = load_instance(opt.instance);
    const auto layout = resolve_layout(inst, opt.n, opt.m);
    const auto seed = resolve_seed(opt.shots, opt.seed);
    if (opt.target && *opt.target == 0.0) {
        throw std::invalid_argument("--target must be non-zero");
    }
    const double target = opt.target.value_or(inst.default_target());
    const auto kind = parse_phase_map_kind(opt.phase_map);
    const auto costs = inst.hamiltonian();

    RunConfig config{layout, resolve_schedule(layout, opt.pre_reps, opt.main_reps), opt.shots,
                     seed, !opt.trace.empty()};
    const auto table = build_phase_table(costs.diagonal(), PhaseMap{kind, target});
    const auto run = run_aps(config, table);
    const auto &histogram = run.histogram;
    const double divergence = kld_vs_uniform(histogram.probabilities());

    json states = json::array();
    for (const auto &[x, p] : histogram.ranked()) {
        states.push_back({{"bitstring", format_bitstring(x, layout.work_qubits())},
                          {"probability", p},
                          {"cost", costs[x]},
                          {"deviation", std::abs(costs[x] - target)}});
    }
    json meta{{"command", "aps"},
              {"instance", json::parse(instance_to_json(inst))},
              {"work_qubits", layout.work_qubits()},
              {"ancilla_qubits", layout.ancilla_qubits()},
              {"schedule",
               {{"preprocessing_reps", config.schedule.preprocessing_reps},
                {"main_reps", config.schedule.main_reps}}},
              {"phase_map", to_string(kind)},
              {"target", target},
              {"shots", opt.shots},
              {"seed", seed},
              {"kld_vs_uniform", divergence},
              {"states", states}};

    if (opt.output.format == "json") {
        json doc = meta;
        doc["histogram"] = histogram_to_json(histogram);
        write_text(opt.output, out, doc.dump(2) + "\n");
    } else {
        write_text(opt.output, out, csv_of(histogram));
        if (!opt.output.to_stdout()) {
            write_side_file(sibling_path(opt.output.path, ".meta.json"), meta.dump(2) + "\n");
        }
    }
    if (!opt.trace.empty()) {
        write_side_file(opt.trace, trace_to_json(run.trace).dump() + "\n");
    }

    auto &summary = summary_stream(opt.output, out, err);
    summary << fmt::format("schedule=({}, {}) target={} kld={:.6f}\n",
                           config.schedule.preprocessing_reps, config.schedule.main_reps,
                           format_number(target), divergence);
    const auto ranked = histogram.ranked();
    for (std::size_t i = 0; i < std::min<std::size_t>(5, ranked.size()); ++i) {
        const auto [x, p] = ranked[i];
        summary << fmt::format("  {} cost={} p={:.6f}\n", format_bitstring(x, layout.work_qubits()),
                               format_number(costs[x]), p);
    }
    return kExitOk;
}

// ---------------------------------------------------------------- eigen-scan

struct ScanOptions {
    std::string instance;
    std::optional<unsigned> n;
    std::optional<unsigned> m;
    std::optional<std::size_t> pre_reps;
    std::optional<std::size_t> main_reps;
    std::string policy = "adaptive";
    std::uint64_t shots = 0;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> phase_map;
    std::optional<double> lambda_min;
    std::optional<double> lambda_max;
    double lambda_step = kDefaultLambdaStep;
    double min_prominence = kDefaultPeakProminence;
    double degeneracy_tol = kDefaultDegeneracyTolerance;
    bool full_register_space = false;
    unsigned threads = 1;
    OutputOptions output;
};

int cmd_eigen_scan(const ScanOptions &opt, std::ostream &out, std::ostream &err) {
    const auto inst = load_instance(opt.instance);
    const auto layout = resolve_layout(inst, opt.n, opt.m);
    const auto seed = resolve_seed(opt.shots, opt.seed);
    const auto h = inst.hamiltonian();

    SweepConfig sweep = default_sweep(h);
    sweep.base = RunConfig{layout, resolve_schedule(layout, opt.pre_reps, opt.main_reps),
                           opt.shots, seed};
    sweep.lambda_min = opt.lambda_min.value_or(sweep.lambda_min);
    sweep.lambda_max = opt.lambda_max.value_or(sweep.lambda_max);
    sweep.step = opt.lambda_step;
    sweep.policy = parse_schedule_policy(opt.policy);
    sweep.degeneracy_tolerance = opt.degeneracy_tol;
    if (opt.phase_map) {
        sweep.phase_map = parse_phase_map_kind(*opt.phase_map);
    }
    sweep.full_register_search_space = opt.full_register_space;
    sweep.threads = opt.threads;
    if (opt.min_prominence < 0.0) {
        throw std::invalid_argument("--min-prominence must be non-negative");
    }

    const auto result = scan_lambda(h, sweep);
    std::vector<std::size_t> peak_indices;
    if (result.records.size() >= 3) {
        peak_indices = find_peak_indices(result, opt.min_prominence);
    }

    json peaks = json::array();
    for (auto i : peak_indices) {
        const auto &r = result.records[i];
        peaks.push_back({{"lambda", r.lambda},
                         {"top_state", format_bitstring(r.top_state, result.work_qubits)},
                         {"cost", h[r.top_state]},
                         {"degeneracy", degeneracy(h, h[r.top_state], opt.degeneracy_tol)},
                         {"kld", r.kld}});
    }

    if (opt.output.format == "json") {
        json doc = sweep_to_json(result);
        doc["peaks"] = peaks;
        write_text(opt.output, out, doc.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        write_sweep_csv(csv, result);
        write_text(opt.output, out, csv.str());
        if (!opt.output.to_stdout()) {
            write_side_file(sibling_path(opt.output.path, ".peaks.json"),
                            json{{"peaks", peaks}}.dump(2) + "\n");
        }
    }

    auto &summary = summary_stream(opt.output, out, err);
    summary << fmt::format("phase_map={} policy={} grid_points={}\n", to_string(result.phase_map),
                           to_string(result.policy), result.records.size());
    if (peak_indices.empty()) {
        err << "warning: no KLD peaks detected\n";
    }
    for (auto i : peak_indices) {
        const auto &r = result.records[i];
        summary << fmt::format("peak lambda={} kld={:.6f} top_state={} cost={}\n",
                               format_number(r.lambda), r.kld,
                               format_bitstring(r.top_state, result.work_qubits),
                               format_number(h[r.top_state]));
    }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{std::string("Approximate phase search simulator.\n") + kBitOrderNote, "aps-sim"};
    app.require_subcommand(1);

    GroverOptions grover;
    auto *g = app.add_subcommand("grover", "Phase-matched Grover baseline on marked states");
    g->add_option("--n", grover.n, "Work qubits")->required()->check(CLI::PositiveNumber);
    g->add_option("--marked", grover.marked, "Marked bitstrings (MSB first)")->required();
    g->add_option("-r,--iterations", grover.iterations,
                  "Oracle + diffusion rounds (default floor(pi/4 sqrt(N/k)))");
    add_output_options(g, grover.output);

    ApsOptions aps;
    auto *a = app.add_subcommand("aps", "Approximate phase search on a problem instance");
    a->add_option("--instance", aps.instance, "Problem instance JSON")->required();
    a->add_option("--n", aps.n, "Work qubits (must match the instance)");
    a->add_option("--m", aps.m, "Ancilla qubits (default n)");
    a->add_option("--pre-reps", aps.pre_reps, "Preprocessing rounds");
    a->add_option("--main-reps", aps.main_reps, "Main-loop rounds");
    a->add_option("--shots", aps.shots, "Sampled shots (0 = exact probabilities)");
    a->add_option("--seed", aps.seed, "Sampling seed (required with --shots)");
    a->add_option("--phase-map", aps.phase_map, "Cost-to-phase map")
        ->check(CLI::IsMember({"linear", "triangular"}))
        ->capture_default_str();
    a->add_option("--target", aps.target,
                  "Target cost c0 / lambda (default: instance target, or total edge weight)");
    a->add_option("--trace", aps.trace, "Write the per-round amplitude trace to this JSON file");
    add_output_options(a, aps.output);

    ScanOptions scan;
    auto *s = app.add_subcommand("eigen-scan", "Sweep lambda and locate KLD peaks");
    s->add_option("--instance", scan.instance, "Problem instance JSON")->required();
    s->add_option("--n", scan.n, "Work qubits (must match the instance)");
    s->add_option("--m", scan.m, "Ancilla qubits (default n)");
    s->add_option("--pre-reps", scan.pre_reps, "Preprocessing rounds");
    s->add_option("--main-reps", scan.main_reps, "Main-loop rounds for --policy fixed");
    s->add_option("--policy", scan.policy, "Main-loop schedule policy")
        ->check(CLI::IsMember({"fixed", "adaptive"}))
        ->capture_default_str();
    s->add_option("--shots", scan.shots, "Sampled shots (0 = exact probabilities)");
    s->add_option("--seed", scan.seed, "Sampling seed (required with --shots)");
    s->add_option("--phase-map", scan.phase_map, "Cost-to-phase map (default: automatic)")
        ->check(CLI::IsMember({"linear", "triangular"}));
    s->add_option("--lambda-min", scan.lambda_min, "First lambda (default 0.5)");
    s->add_option("--lambda-max", scan.lambda_max, "Last lambda (default max cost + 0.5)");
    s->add_option("--lambda-step", scan.lambda_step, "Grid step")->capture_default_str();
    s->add_option("--min-prominence", scan.min_prominence, "Peak prominence threshold (nats)")
        ->capture_default_str();
    s->add_option("--degeneracy-tol", scan.degeneracy_tol, "Eigenvalue matching tolerance")
        ->capture_default_str();
    s->add_flag("--full-register-space", scan.full_register_space,
                "Use N = 2^(n+m) instead of 2^n in sqrt(N/k)");
    s->add_option("--threads", scan.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
    add_output_options(s, scan.output);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitInvalid;
    }

    try {
        if (g->parsed()) {
            return cmd_grover(grover, out, err);
        }
        if (a->parsed()) {
            return cmd_aps(aps, out, err);
        }
        return cmd_eigen_scan(scan, out, err);
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

} // namespace aps::cli
