#include "aps/eigen_scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "aps/metrics.hpp"

namespace aps {

namespace {

double snap(double value) { return std::nearbyint(value * 1e12) / 1e12; }

SweepRecord best_run_at(const DiagonalHamiltonian &h, const SweepConfig &sweep,
                        PhaseMapKind map_kind, std::size_t space, double lambda,
                        std::uint64_t seed) {
    const auto table = build_phase_table(h.diagonal(), PhaseMap{map_kind, lambda});

    std::vector<std::size_t> candidates;
    if (sweep.policy == SchedulePolicy::Fixed) {
        candidates.push_back(sweep.base.schedule.main_reps);
    } else {
        candidates = iteration_candidates(
            space, scheduling_degeneracy(h, lambda, sweep.degeneracy_tolerance));
    }

    SweepRecord best{lambda, -1.0, 0, 0, 0.0};
    for (auto reps : candidates) {
        RunConfig config = sweep.base;
        config.schedule.main_reps = reps;
        config.seed = seed;
        config.record_trace = false;
        const auto run = run_aps(config, table);
        const auto probs = run.histogram.probabilities();
        const double divergence = kld_vs_uniform(probs);
        if (divergence > best.kld) {
            const auto top = std::max_element(probs.begin(), probs.end());
            best.kld = divergence;
            best.iterations = reps;
            best.top_state = static_cast<std::size_t>(top - probs.begin());
            best.top_prob = *top;
        }
    }
    return best;
}

} // namespace

const char *to_string(SchedulePolicy policy) noexcept {
    return policy == SchedulePolicy::Fixed ? "fixed" : "adaptive";
}

SchedulePolicy parse_schedule_policy(const std::string &name) {
    if (name == "fixed") {
        return SchedulePolicy::Fixed;
    }
    if (name == "adaptive") {
        return SchedulePolicy::DegeneracyAdaptive;
    }
    throw std::invalid_argument("unknown schedule policy '" + name + "'");
}

SweepConfig default_sweep(const DiagonalHamiltonian &h) {
    const auto n = h.qubits();
    const RegisterLayout layout(n, n);
    SweepConfig sweep{.base = RunConfig{layout, default_schedule(n, n)}};
    sweep.lambda_min = 0.5;
    sweep.lambda_max = *std::max_element(h.diagonal().begin(), h.diagonal().end()) + 0.5;
    return sweep;
}

std::size_t degeneracy(const DiagonalHamiltonian &h, double lambda, double tol) {
    if (tol < 0.0) {
        throw std::invalid_argument("degeneracy tolerance must be non-negative");
    }
    return static_cast<std::size_t>(std::count_if(
        h.diagonal().begin(), h.diagonal().end(),
        [&](double e) { return std::abs(e - lambda) <= tol; }));
}

std::size_t scheduling_degeneracy(const DiagonalHamiltonian &h, double lambda, double tol) {
    return std::max<std::size_t>(degeneracy(h, lambda, tol), 1);
}

std::vector<std::size_t> iteration_candidates(std::size_t space, std::size_t degeneracy) {
    if (degeneracy == 0 || degeneracy > space) {
        throw std::invalid_argument("degeneracy must lie in [1, N]");
    }
    const auto centre = static_cast<std::size_t>(
        std::llround(std::sqrt(static_cast<double>(space) / static_cast<double>(degeneracy))));
    std::vector<std::size_t> out;
    if (centre > 0) {
        out.push_back(centre - 1);
    }
    if (out.empty() || out.back() != centre) {
        out.push_back(centre);
    }
    out.push_back(centre + 1);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> lambda_grid(double lambda_min, double lambda_max, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw std::invalid_argument("lambda step must be positive");
    }
    if (!std::isfinite(lambda_min) || !std::isfinite(lambda_max) || lambda_max < lambda_min) {
        throw std::invalid_argument("lambda range must satisfy min <= max");
    }
    if (lambda_min <= 0.0 && lambda_max >= 0.0) {
        throw std::invalid_argument("lambda range must exclude 0 (the oracle is singular there)");
    }
    const auto count =
        static_cast<std::size_t>(std::floor((lambda_max - lambda_min) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = snap(lambda_min + static_cast<double>(i) * step);
    }
    return grid;
}

PhaseMapKind default_scan_phase_map(const DiagonalHamiltonian &h,
                                    const std::vector<double> &grid) {
    if (grid.empty()) {
        return PhaseMapKind::Linear;
    }
    const double lambda_max = grid.back();
    for (double cost : h.diagonal()) {
        if (cost > lambda_max) {
            return PhaseMapKind::Triangular;
        }
        for (double lambda : grid) {
            if (cost / lambda >= 3.0 - 1e-12) {
                return PhaseMapKind::Triangular;
            }
        }
    }
    return PhaseMapKind::Linear;
}

SweepResult scan_lambda(const DiagonalHamiltonian &h, const SweepConfig &sweep) {
    const auto &layout = sweep.base.layout;
    if (layout.work_qubits() != h.qubits()) {
        throw std::invalid_argument("sweep register has " + std::to_string(layout.work_qubits()) +
                                    " work qubits but the Hamiltonian acts on " +
                                    std::to_string(h.qubits()));
    }
    if (layout.ancilla_qubits() < 2) {
        throw std::invalid_argument("approximate phase search needs at least two ancillae");
    }
    const auto grid = lambda_grid(sweep.lambda_min, sweep.lambda_max, sweep.step);

    SweepResult result;
    result.work_qubits = layout.work_qubits();
    result.ancilla_qubits = layout.ancilla_qubits();
    result.phase_map = sweep.phase_map.value_or(default_scan_phase_map(h, grid));
    result.policy = sweep.policy;
    result.preprocessing_reps = sweep.base.schedule.preprocessing_reps;
    result.search_space =
        sweep.full_register_search_space ? layout.dimension() : layout.work_dimension();
    result.shots = sweep.base.shots;
    result.seed = sweep.base.seed;
    result.records.resize(grid.size());

    unsigned workers = sweep.threads == 0 ? std::thread::hardware_concurrency() : sweep.threads;
    workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(grid.size()));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            try {
                result.records[i] = best_run_at(h, sweep, result.phase_map, result.search_space,
                                                grid[i], sweep.base.seed + i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return result;
}

std::vector<std::size_t> find_peak_indices(const SweepResult &result, double min_prominence) {
    const auto &records = result.records;
    if (records.size() < 3) {
        throw std::invalid_argument("peak detection needs at least three sweep records");
    }
    std::vector<std::size_t> peaks;
    for (std::size_t i = 1; i + 1 < records.size(); ++i) {
        const double here = records[i].kld;
        const double left = records[i - 1].kld;
        const double right = records[i + 1].kld;
        if (here > left && here > right && here - std::max(left, right) >= min_prominence) {
            peaks.push_back(i);
        }
    }
    return peaks;
}

std::vector<double> find_peaks(const SweepResult &result, double min_prominence) {
    std::vector<double> lambdas;
    for (auto i : find_peak_indices(result, min_prominence)) {
        lambdas.push_back(result.records[i].lambda);
    }
    return lambdas;
}

} // namespace aps
