#pragma once

/**
 * @file engine.hpp
 * Drivers for approximate phase search and the phase-matched Grover baseline.
 *
 * An APS run is: uniform superposition over work + ancilla qubits, then
 * `preprocessing_reps` rounds of (controlled oracle, local diffusion), then
 * `main_reps` rounds of (controlled oracle, global diffusion), and finally
 * measurement of the work register with the ancillae marginalized out.
 */

#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "aps/histogram.hpp"
#include "aps/state.hpp"

namespace aps {

struct Schedule {
    std::size_t preprocessing_reps = 0;
    std::size_t main_reps = 0;

    friend bool operator==(const Schedule &, const Schedule &) = default;
};

/// preprocessing = floor(pi/4 * sqrt(2^m)), main = floor(sqrt(2^n)).
/// Throws std::invalid_argument when m < 2.
[[nodiscard]] Schedule default_schedule(unsigned n_work, unsigned m_ancilla);

struct RunConfig {
    RegisterLayout layout;
    Schedule schedule;
    /// 0 selects exact marginal probabilities.
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    /// Keep a copy of the amplitudes after every oracle + diffusion round.
    bool record_trace = false;
};

/// Amplitudes after one round, tagged with its phase of the run.
struct TraceEntry {
    bool preprocessing = false;
    std::size_t iteration = 0;
    std::vector<complex_t> amplitudes;
};

struct RunResult {
    StateVector state;
    std::vector<double> distribution;
    Histogram histogram;
    std::vector<TraceEntry> trace;
};

/// Throws std::invalid_argument when m < 2 or the table does not match the
/// work register.
[[nodiscard]] RunResult run_aps(const RunConfig &config, const PhaseTable &table);

/// Runs only the preprocessing loop and returns |amp(x*, all-ones)| for the
/// first work value x* whose phase is pi (within 1e-12). Throws when no entry
/// of the table equals pi.
[[nodiscard]] double preprocessing_amplitude(const RunConfig &config, const PhaseTable &table);

/// r rounds of (pi-phase oracle on `marked`, global diffusion) on n work
/// qubits with no ancillae. Returns the exact work distribution.
[[nodiscard]] std::vector<double> run_grover_baseline(unsigned n_work,
                                                      const std::set<std::size_t> &marked,
                                                      std::size_t iterations,
                                                      unsigned max_qubits = kDefaultMaxQubits);

/// sin^2((2r+1) asin(sqrt(k/N))): success probability of phase-matched
/// Grover search with k of N states marked.
[[nodiscard]] double grover_success_probability(std::size_t marked, std::size_t space,
                                                std::size_t iterations);

} // namespace aps
