#include "aps/engine.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aps {

Schedule default_schedule(unsigned n_work, unsigned m_ancilla) {
    if (m_ancilla < 2) {
        throw std::invalid_argument("approximate phase search needs at least two ancillae");
    }
    const double ancilla_space = std::ldexp(1.0, static_cast<int>(m_ancilla));
    const double work_space = std::ldexp(1.0, static_cast<int>(n_work));
    Schedule s;
    s.preprocessing_reps =
        static_cast<std::size_t>(std::floor(std::numbers::pi / 4.0 * std::sqrt(ancilla_space)));
    s.main_reps = static_cast<std::size_t>(std::floor(std::sqrt(work_space)));
    return s;
}

RunResult run_aps(const RunConfig &config, const PhaseTable &table) {
    const auto &layout = config.layout;
    if (layout.ancilla_qubits() < 2) {
        throw std::invalid_argument("approximate phase search needs at least two ancillae");
    }
    if (table.size() != layout.work_dimension()) {
        throw std::invalid_argument("phase table does not match the work register");
    }

    StateVector state = init_uniform(layout);
    std::vector<TraceEntry> trace;
    auto record = [&](bool preprocessing, std::size_t iteration) {
        if (config.record_trace) {
            const auto amps = state.amplitudes();
            trace.push_back({preprocessing, iteration, {amps.begin(), amps.end()}});
        }
    };

    for (std::size_t i = 0; i < config.schedule.preprocessing_reps; ++i) {
        apply_controlled_phase_oracle(state, table);
        apply_local_diffusion(state);
        record(true, i);
    }
    for (std::size_t i = 0; i < config.schedule.main_reps; ++i) {
        apply_controlled_phase_oracle(state, table);
        apply_global_diffusion(state);
        record(false, i);
    }

    auto distribution = marginal_work_distribution(state);
    auto histogram = sample(distribution, config.shots, config.seed);
    return RunResult{std::move(state), std::move(distribution), std::move(histogram),
                     std::move(trace)};
}

double preprocessing_amplitude(const RunConfig &config, const PhaseTable &table) {
    const auto &layout = config.layout;
    if (layout.ancilla_qubits() < 2) {
        throw std::invalid_argument("approximate phase search needs at least two ancillae");
    }
    if (table.size() != layout.work_dimension()) {
        throw std::invalid_argument("phase table does not match the work register");
    }
    std::size_t target = table.size();
    for (std::size_t x = 0; x < table.size(); ++x) {
        if (std::abs(table[x] - std::numbers::pi) < 1e-12) {
            target = x;
            break;
        }
    }
    if (target == table.size()) {
        throw std::invalid_argument("phase table has no entry equal to pi");
    }

    StateVector state = init_uniform(layout);
    for (std::size_t i = 0; i < config.schedule.preprocessing_reps; ++i) {
        apply_controlled_phase_oracle(state, table);
        apply_local_diffusion(state);
    }
    return std::abs(state.at(target, layout.ancilla_all_ones()));
}

std::vector<double> run_grover_baseline(unsigned n_work, const std::set<std::size_t> &marked,
                                        std::size_t iterations, unsigned max_qubits) {
    const RegisterLayout layout(n_work, 0, max_qubits);
    if (marked.empty()) {
        throw std::invalid_argument("Grover search needs at least one marked state");
    }
    if (*marked.rbegin() >= layout.work_dimension()) {
        throw std::invalid_argument("marked state " + std::to_string(*marked.rbegin()) +
                                    " is outside a " + std::to_string(n_work) +
                                    "-qubit register");
    }
    std::vector<double> phases(layout.work_dimension(), 0.0);
    for (auto x : marked) {
        phases[x] = std::numbers::pi;
    }
    const PhaseTable oracle(std::move(phases));

    StateVector state = init_uniform(layout);
    for (std::size_t i = 0; i < iterations; ++i) {
        apply_phase_oracle(state, oracle);
        apply_global_diffusion(state);
    }
    return marginal_work_distribution(state);
}

double grover_success_probability(std::size_t marked, std::size_t space,
                                  std::size_t iterations) {
    if (space == 0 || marked > space) {
        throw std::invalid_argument("marked count must not exceed the search space");
    }
    const double theta =
        std::asin(std::sqrt(static_cast<double>(marked) / static_cast<double>(space)));
    const double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * theta);
    return s * s;
}

} // namespace aps
