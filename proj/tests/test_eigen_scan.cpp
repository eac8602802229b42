#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "aps/eigen_scan.hpp"
#include "oracles.hpp"

using namespace aps;
namespace t = aps::testing;

namespace {

DiagonalHamiltonian ones(unsigned k) {
    return subset_sum_hamiltonian({std::vector<double>(k, 1.0), 1.0});
}

SweepConfig sweep_over(const DiagonalHamiltonian &h, double lo, double hi, double step) {
    SweepConfig sweep = default_sweep(h);
    sweep.lambda_min = lo;
    sweep.lambda_max = hi;
    sweep.step = step;
    return sweep;
}

const SweepRecord &record_at(const SweepResult &r, double lambda) {
    const auto it = std::find_if(r.records.begin(), r.records.end(),
                                 [&](const SweepRecord &rec) { return std::abs(rec.lambda - lambda) < 1e-9; });
    REQUIRE(it != r.records.end());
    return *it;
}

} // namespace

TEST_CASE("degeneracy") {
    const auto seven = ones(7);
    CHECK(degeneracy(seven, 3.0, 1e-9) == 35);
    CHECK(degeneracy(seven, 2.5, 1e-9) == 0);
    CHECK(scheduling_degeneracy(seven, 2.5, 1e-9) == 1);
    CHECK(degeneracy(ones(4), 2.0, 1e-9) == 6);
    CHECK_THROWS_AS((void)degeneracy(seven, 1.0, -1.0), std::invalid_argument);

    // distinct eigenvalues partition the basis
    const auto h = subset_sum_hamiltonian({{1.0, 2.5, 4.0, 0.25, 7.0}, 1.0});
    std::map<double, int> spectrum;
    for (double e : h.diagonal()) {
        ++spectrum[e];
    }
    std::size_t total = 0;
    for (const auto &[e, _] : spectrum) {
        total += degeneracy(h, e, 1e-9);
    }
    CHECK(total == 32);
}

TEST_CASE("iteration candidates") {
    CHECK(iteration_candidates(16, 1) == std::vector<std::size_t>{3, 4, 5});
    // sqrt(128/35) = 1.91
    CHECK(iteration_candidates(128, 35) == std::vector<std::size_t>{1, 2, 3});
    CHECK(iteration_candidates(9, 9) == std::vector<std::size_t>{0, 1, 2});
    CHECK_THROWS_AS((void)iteration_candidates(4, 5), std::invalid_argument);
    CHECK_THROWS_AS((void)iteration_candidates(4, 0), std::invalid_argument);

    for (std::size_t n = 1; n <= 1024; n *= 2)
        for (std::size_t k = 1; k <= n; ++k) {
            const auto c = iteration_candidates(n, k);
            CHECK(c.size() == 3);
            CHECK(std::is_sorted(c.begin(), c.end()));
            CHECK(c[1] == static_cast<std::size_t>(std::llround(std::sqrt(double(n) / k))));
        }
}

TEST_CASE("lambda grid") {
    const auto grid = lambda_grid(0.5, 1.0, 0.1);
    REQUIRE(grid.size() == 6);
    CHECK(grid[3] == 0.8);
    CHECK(grid.back() == 1.0);
    CHECK(lambda_grid(-3.0, -1.0, 0.5).size() == 5);
    CHECK_THROWS_AS((void)lambda_grid(-1.0, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS((void)lambda_grid(0.0, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS((void)lambda_grid(1.0, 2.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)lambda_grid(2.0, 1.0, 0.1), std::invalid_argument);
}

TEST_CASE("automatic phase map") {
    const auto h = ones(4);
    CHECK(default_scan_phase_map(h, lambda_grid(0.5, 4.5, 0.1)) == PhaseMapKind::Triangular);
    CHECK(default_scan_phase_map(h, lambda_grid(2.0, 4.5, 0.1)) == PhaseMapKind::Linear);
    CHECK(default_scan_phase_map(h, lambda_grid(2.0, 3.5, 0.1)) == PhaseMapKind::Triangular);
}

TEST_CASE("zero Hamiltonian gives zero KLD everywhere") {
    const DiagonalHamiltonian zero(std::vector<double>(8, 0.0));
    const auto result = scan_lambda(zero, sweep_over(zero, 0.5, 3.0, 0.25));
    REQUIRE(result.records.size() == 11);
    for (const auto &r : result.records) {
        CHECK(std::abs(r.kld) < 1e-10);
    }
    CHECK(find_peaks(result).empty());
}

TEST_CASE("coarse sweep over four unit elements peaks at eigenvalues") {
    const auto h = ones(4);
    const auto result = scan_lambda(h, sweep_over(h, 0.5, 3.5, 0.5));
    REQUIRE(result.records.size() == 7);
    for (double j : {1.0, 2.0, 3.0}) {
        CAPTURE(j);
        const auto &at = record_at(result, j);
        CHECK(at.kld > record_at(result, j - 0.5).kld);
        CHECK(at.kld > record_at(result, j + 0.5).kld);
        CHECK(h[at.top_state] == j);
    }
    CHECK(result.search_space == 16);
    CHECK(result.policy == SchedulePolicy::DegeneracyAdaptive);
}

TEST_CASE("fine sweep reports one peak per eigenvalue") {
    const auto h = ones(4);
    const auto sweep = sweep_over(h, 0.5, 4.5, 0.1);
    const auto result = scan_lambda(h, sweep);
    const auto peaks = find_peaks(result);
    REQUIRE(peaks.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(peaks[i] - static_cast<double>(i + 1)) <= 0.1 + 1e-9);
    }
    for (auto i : find_peak_indices(result, kDefaultPeakProminence)) {
        const auto &r = result.records[i];
        CHECK(std::abs(h[r.top_state] - r.lambda) <= sweep.step + sweep.degeneracy_tolerance);
    }
}

TEST_CASE("scans are deterministic regardless of thread count") {
    const auto h = ones(4);
    auto sweep = sweep_over(h, 0.5, 4.5, 0.1);
    const auto serial = scan_lambda(h, sweep);
    sweep.threads = 4;
    const auto parallel = scan_lambda(h, sweep);
    REQUIRE(serial.records.size() == parallel.records.size());
    for (std::size_t i = 0; i < serial.records.size(); ++i) {
        CHECK(serial.records[i].lambda == parallel.records[i].lambda);
        CHECK(serial.records[i].kld == parallel.records[i].kld);
        CHECK(serial.records[i].iterations == parallel.records[i].iterations);
        CHECK(serial.records[i].top_state == parallel.records[i].top_state);
    }
    CHECK(std::is_sorted(serial.records.begin(), serial.records.end(),
                         [](const auto &a, const auto &b) { return a.lambda < b.lambda; }));

    sweep.base.shots = 4000;
    sweep.base.seed = 3;
    const auto sampled_a = scan_lambda(h, sweep);
    sweep.threads = 1;
    const auto sampled_b = scan_lambda(h, sweep);
    for (std::size_t i = 0; i < sampled_a.records.size(); ++i) {
        CHECK(sampled_a.records[i].kld == sampled_b.records[i].kld);
    }
}

TEST_CASE("fixed policy and search-space override") {
    const auto h = ones(3);
    auto sweep = sweep_over(h, 0.5, 2.0, 0.5);
    sweep.policy = SchedulePolicy::Fixed;
    sweep.base.schedule.main_reps = 2;
    for (const auto &r : scan_lambda(h, sweep).records) {
        CHECK(r.iterations == 2);
    }

    sweep.policy = SchedulePolicy::DegeneracyAdaptive;
    sweep.full_register_search_space = true;
    const auto wide = scan_lambda(h, sweep);
    CHECK(wide.search_space == 64);
    // lambda = 1 has k = 3: round(sqrt(64/3)) = 5, candidates {4,5,6}
    const auto &at_one = record_at(wide, 1.0);
    CHECK(at_one.iterations >= 4);
    CHECK(at_one.iterations <= 6);
}

TEST_CASE("scan input validation") {
    const auto h = ones(3);
    auto sweep = sweep_over(h, -1.0, 1.0, 0.5);
    CHECK_THROWS_AS((void)scan_lambda(h, sweep), std::invalid_argument);
    sweep = sweep_over(h, 0.5, 1.0, 0.5);
    sweep.base.layout = RegisterLayout(4, 4);
    CHECK_THROWS_AS((void)scan_lambda(h, sweep), std::invalid_argument);
}

TEST_CASE("find_peaks") {
    SweepResult result;
    auto with = [&](std::vector<double> klds) {
        result.records.clear();
        for (std::size_t i = 0; i < klds.size(); ++i) {
            result.records.push_back({static_cast<double>(i), klds[i], 0, 0, 0.0});
        }
    };
    with({0.1, 0.2, 0.3, 0.4, 0.5});
    CHECK(find_peaks(result, 0.0).empty());
    with({0, 1, 0, 2, 0});
    CHECK(find_peak_indices(result, 0.5) == std::vector<std::size_t>{1, 3});
    CHECK(find_peaks(result, 0.5) == std::vector<double>{1.0, 3.0});
    CHECK(find_peaks(result, 1.5) == std::vector<double>{3.0});
    with({0, 1, 1, 0});
    CHECK(find_peaks(result, 0.0).empty());
    with({0, 1});
    CHECK_THROWS_AS((void)find_peaks(result), std::invalid_argument);
}
