#pragma once

/**
 * @file eigen_scan.hpp
 * Eigenvalue search for diagonal cost Hamiltonians by sweeping the parameter
 * lambda of the oracle exp(i pi H / lambda). At lambda equal to an eigenvalue
 * the matching eigenstates receive phase pi, get amplified, and the KL
 * divergence of the output from uniform peaks.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aps/engine.hpp"
#include "aps/problems.hpp"

namespace aps {

enum class SchedulePolicy {
    /// Use base.schedule.main_reps at every grid point.
    Fixed,
    /// Try round(sqrt(N/k)) - 1, +0, +1 main rounds, k the degeneracy of lambda,
    /// and keep the run with the largest KLD.
    DegeneracyAdaptive,
};

[[nodiscard]] const char *to_string(SchedulePolicy policy) noexcept;
/// Accepts "fixed" or "adaptive".
[[nodiscard]] SchedulePolicy parse_schedule_policy(const std::string &name);

inline constexpr double kDefaultDegeneracyTolerance = 1e-9;
inline constexpr double kDefaultLambdaStep = 0.1;
inline constexpr double kDefaultPeakProminence = 0.01;

struct SweepConfig {
    double lambda_min = 0.5;
    double lambda_max = 1.5;
    double step = kDefaultLambdaStep;
    SchedulePolicy policy = SchedulePolicy::DegeneracyAdaptive;
    /// Layout, preprocessing reps, fixed main reps, shots and seed.
    RunConfig base;
    double degeneracy_tolerance = kDefaultDegeneracyTolerance;
    /// Unset picks via default_scan_phase_map.
    std::optional<PhaseMapKind> phase_map{};
    /// Take N = 2^(n+m) instead of 2^n in sqrt(N/k).
    bool full_register_search_space = false;
    /// Worker threads over grid points; 0 means hardware concurrency.
    unsigned threads = 1;
};

/// Grid of [0.5, max(diag) + 0.5] in steps of 0.1 on an m = n register with
/// the default schedule.
[[nodiscard]] SweepConfig default_sweep(const DiagonalHamiltonian &h);

struct SweepRecord {
    double lambda = 0.0;
    double kld = 0.0;
    std::size_t iterations = 0;
    std::size_t top_state = 0;
    double top_prob = 0.0;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    unsigned work_qubits = 0;
    unsigned ancilla_qubits = 0;
    PhaseMapKind phase_map = PhaseMapKind::Linear;
    SchedulePolicy policy = SchedulePolicy::DegeneracyAdaptive;
    std::size_t preprocessing_reps = 0;
    std::size_t search_space = 0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};

/// Number of basis states whose eigenvalue lies within `tol` of lambda.
[[nodiscard]] std::size_t degeneracy(const DiagonalHamiltonian &h, double lambda, double tol);

/// degeneracy clamped to at least 1, for iteration scheduling.
[[nodiscard]] std::size_t scheduling_degeneracy(const DiagonalHamiltonian &h, double lambda,
                                                double tol);

/// Ascending, de-duplicated {round(sqrt(N/k)) - 1, round(sqrt(N/k)), +1},
/// clamped at zero. Throws when k == 0 or k > N.
[[nodiscard]] std::vector<std::size_t> iteration_candidates(std::size_t space,
                                                            std::size_t degeneracy);

/// lambda_min, lambda_min + step, ... up to lambda_max (inclusive within
/// 1e-9 steps), each rounded to 1e-12. Throws when the interval contains 0.
[[nodiscard]] std::vector<double> lambda_grid(double lambda_min, double lambda_max,
                                              double step);

/// Triangular when the linear map would alias: some cost exceeds lambda_max,
/// or some cost reaches three times a grid value (the first odd harmonic).
[[nodiscard]] PhaseMapKind default_scan_phase_map(const DiagonalHamiltonian &h,
                                                  const std::vector<double> &grid);

[[nodiscard]] SweepResult scan_lambda(const DiagonalHamiltonian &h, const SweepConfig &sweep);

/// Indices of interior records whose KLD exceeds both neighbours by at least
/// `min_prominence` (measured against the higher neighbour).
[[nodiscard]] std::vector<std::size_t> find_peak_indices(const SweepResult &result,
                                                         double min_prominence);

/// Lambda values at find_peak_indices, ascending. Throws with fewer than three
/// records.
[[nodiscard]] std::vector<double> find_peaks(const SweepResult &result,
                                             double min_prominence = kDefaultPeakProminence);

} // namespace aps
