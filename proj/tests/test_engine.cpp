#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "aps/engine.hpp"
#include "aps/problems.hpp"
#include "oracles.hpp"

using namespace aps;
namespace t = aps::testing;

namespace {

constexpr double pi = std::numbers::pi;

RunConfig config_for(unsigned n, unsigned m, Schedule schedule) {
    return RunConfig{RegisterLayout(n, m), schedule};
}

PhaseTable single_pi(std::size_t size, std::size_t marked) {
    std::vector<double> phases(size, 0.0);
    phases[marked] = pi;
    return PhaseTable(phases);
}

} // namespace

TEST_CASE("default schedule") {
    CHECK(default_schedule(2, 2) == Schedule{1, 2});
    CHECK(default_schedule(4, 4) == Schedule{3, 4});
    // floor(pi/4 * sqrt(128)) = floor(8.886) = 8, sqrt(128) = 11.31
    CHECK(default_schedule(7, 7) == Schedule{8, 11});
    CHECK(default_schedule(3, 3) == Schedule{2, 2});
    CHECK_THROWS_AS((void)default_schedule(3, 1), std::invalid_argument);
}

TEST_CASE("run_aps leaves the uniform state alone when nothing is marked") {
    const auto run = run_aps(config_for(3, 3, default_schedule(3, 3)), PhaseTable(std::vector<double>(8, 0.0)));
    for (double p : run.distribution) {
        CHECK(std::abs(p - 1.0 / 8.0) < 1e-10);
    }
    CHECK(run.histogram.is_exact());
}

TEST_CASE("run_aps on the four-element subset-sum example") {
    const SubsetSumInstance inst{{2, 3, 4, 8}, 9};
    const auto h = subset_sum_hamiltonian(inst);
    const auto table = build_phase_table(h.diagonal(), {PhaseMapKind::Linear, 9.0});
    const auto run = run_aps(config_for(4, 4, default_schedule(4, 4)), table);
    const auto ranked = run.histogram.ranked();
    CHECK(ranked[0].first == parse_bitstring("1110"));
    CHECK(h[ranked[1].first] == 10.0);
    CHECK(h[ranked[2].first] == 8.0);
    CHECK(ranked[0].second > ranked[1].second);
}

TEST_CASE("run_aps validates its inputs") {
    CHECK_THROWS_AS((void)run_aps(config_for(2, 1, {1, 1}), PhaseTable(std::vector<double>(4, 0.0))),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)run_aps(config_for(2, 2, {1, 1}), PhaseTable(std::vector<double>(8, 0.0))),
                    std::invalid_argument);
}

TEST_CASE("run_aps with shots samples the exact distribution") {
    const auto table = single_pi(4, 2);
    RunConfig config = config_for(2, 2, default_schedule(2, 2));
    config.shots = 20000;
    config.seed = 7;
    const auto a = run_aps(config, table);
    const auto b = run_aps(config, table);
    CHECK(std::equal(a.histogram.counts().begin(), a.histogram.counts().end(),
                     b.histogram.counts().begin()));
    for (std::size_t x = 0; x < 4; ++x) {
        CHECK(std::abs(a.histogram.probability(x) - a.distribution[x]) < 0.02);
    }
}

TEST_CASE("trace records every round") {
    RunConfig config = config_for(2, 2, {2, 3});
    config.record_trace = true;
    const auto run = run_aps(config, single_pi(4, 1));
    REQUIRE(run.trace.size() == 5);
    CHECK(run.trace[0].preprocessing);
    CHECK(run.trace[1].iteration == 1);
    CHECK_FALSE(run.trace[2].preprocessing);
    const auto last = run.trace.back().amplitudes;
    CHECK(std::equal(last.begin(), last.end(), run.state.amplitudes().begin()));

    config.record_trace = false;
    CHECK(run_aps(config, single_pi(4, 1)).trace.empty());
}

TEST_CASE("preprocessing amplitude") {
    SUBCASE("n = m = 4 lifts the marked amplitude to nearly 2^(-n/2)") {
        const auto value = preprocessing_amplitude(config_for(4, 4, {3, 0}), single_pi(16, 9));
        CHECK(value >= 0.8 * 0.25);
        CHECK(value <= 1.05 * 0.25);
    }
    SUBCASE("no rounds leaves the uniform amplitude") {
        CHECK(preprocessing_amplitude(config_for(4, 4, {0, 0}), single_pi(16, 9)) ==
              std::pow(2.0, -4.0));
    }
    SUBCASE("hand-simulated single round") {
        // block x=0 is (1,1,1,-1)/sqrt8 after the oracle; 2 mu - a gives (0,0,0,2)/sqrt8
        const auto value = preprocessing_amplitude(config_for(1, 2, {1, 0}), single_pi(2, 0));
        CHECK(value == doctest::Approx(2.0 / std::sqrt(8.0)).epsilon(1e-14));
    }
    CHECK_THROWS_AS((void)preprocessing_amplitude(config_for(2, 2, {1, 0}),
                                                  PhaseTable(std::vector<double>(4, 1.0))),
                    std::invalid_argument);
}

TEST_CASE("Grover baseline") {
    const auto p = [](unsigned n, std::set<std::size_t> marked, std::size_t r) {
        const auto dist = run_grover_baseline(n, marked, r);
        double total = 0.0;
        for (auto x : marked) {
            total += dist[x];
        }
        return total;
    };
    CHECK(p(2, {3}, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(p(3, {5}, 2) - 0.94531) < 1e-5);
    CHECK(p(4, {1, 6}, 0) == doctest::Approx(2.0 / 16.0).epsilon(1e-12));

    CHECK_THROWS_AS((void)run_grover_baseline(3, {}, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)run_grover_baseline(3, {8}, 1), std::invalid_argument);

    for (unsigned n = 1; n <= 6; ++n)
        for (std::size_t k = 1; k <= std::min<std::size_t>(3, std::size_t{1} << n); ++k)
            for (std::size_t r = 0; r <= 10; ++r) {
                std::set<std::size_t> marked;
                for (std::size_t j = 0; j < k; ++j) {
                    marked.insert((j * 5 + 1) % (std::size_t{1} << n));
                }
                if (marked.size() != k) {
                    continue;
                }
                const double expected = t::grover_closed_form(k, std::size_t{1} << n, r);
                CHECK(std::abs(p(n, marked, r) - expected) < 1e-9);
                CHECK(std::abs(grover_success_probability(k, std::size_t{1} << n, r) - expected) <
                      1e-12);
            }
}

TEST_CASE("binary phase table reduces APS to a Grover-like search") {
    for (std::size_t marked = 0; marked < 4; ++marked) {
        const auto run = run_aps(config_for(2, 2, default_schedule(2, 2)), single_pi(4, marked));
        for (std::size_t x = 0; x < 4; ++x) {
            if (x != marked) {
                CHECK(run.distribution[marked] > run.distribution[x]);
            }
        }
    }
}

TEST_CASE("exact runs are bit-identical") {
    const auto h = subset_sum_hamiltonian({{1.5, 2, 3.25, 0.5, 1}, 4});
    const auto table = build_phase_table(h.diagonal(), {PhaseMapKind::Linear, 4.0});
    const auto config = config_for(5, 5, default_schedule(5, 5));
    CHECK(run_aps(config, table).distribution == run_aps(config, table).distribution);
}

TEST_CASE("relabeling work qubits permutes the output") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    const unsigned n = 4;
    std::vector<unsigned> perm{2, 0, 3, 1};
    auto permute = [&](std::size_t x) {
        std::size_t y = 0;
        for (unsigned b = 0; b < n; ++b) {
            if ((x >> b) & 1U) {
                y |= std::size_t{1} << perm[b];
            }
        }
        return y;
    };
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> phases(16), permuted(16);
        for (std::size_t x = 0; x < 16; ++x) {
            phases[x] = angle(rng);
        }
        for (std::size_t x = 0; x < 16; ++x) {
            permuted[permute(x)] = phases[x];
        }
        const auto config = config_for(n, 3, {2, 3});
        const auto a = run_aps(config, PhaseTable(phases)).distribution;
        const auto b = run_aps(config, PhaseTable(permuted)).distribution;
        for (std::size_t x = 0; x < 16; ++x) {
            CHECK(std::abs(a[x] - b[permute(x)]) < 1e-12);
        }
    }
}
