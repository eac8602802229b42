#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "aps/metrics.hpp"

using namespace aps;

TEST_CASE("kld examples") {
    const std::vector<double> uniform4(4, 0.25);
    CHECK(kld(uniform4, uniform4) == 0.0);

    const std::vector<double> one_hot{0.0, 0.0, 1.0, 0.0};
    CHECK(kld(one_hot, uniform4) == doctest::Approx(std::log(4.0)).epsilon(1e-14));

    const std::vector<double> half{0.5, 0.5, 0.0, 0.0};
    CHECK(kld(half, uniform4) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

    const std::vector<double> gap{0.5, 0.0, 0.5, 0.0};
    CHECK_THROWS_AS((void)kld(uniform4, gap), std::invalid_argument);
    CHECK_THROWS_AS((void)kld(half, std::vector<double>(3, 1.0 / 3)), std::invalid_argument);
    // zero-mass outcomes of P never need Q
    CHECK(kld(half, std::vector<double>{0.5, 0.5, 0.0, 0.0}) == 0.0);
}

TEST_CASE("kld against uniform") {
    for (unsigned n = 1; n <= 10; ++n) {
        const std::size_t size = std::size_t{1} << n;
        CHECK(kld_vs_uniform(std::vector<double>(size, 1.0 / static_cast<double>(size))) ==
              doctest::Approx(0.0));
        std::vector<double> one_hot(size, 0.0);
        one_hot[size / 3] = 1.0;
        CHECK(std::abs(kld_vs_uniform(one_hot) - n * std::log(2.0)) < 1e-12);

        double previous = INFINITY;
        for (std::size_t k = 1; k <= size; ++k) {
            std::vector<double> spread(size, 0.0);
            std::fill(spread.begin(), spread.begin() + static_cast<long>(k),
                      1.0 / static_cast<double>(k));
            const double d = kld_vs_uniform(spread);
            CHECK(d == doctest::Approx(std::log(static_cast<double>(size) / k)).epsilon(1e-12));
            CHECK(d < previous);
            previous = d;
        }
    }
}

TEST_CASE("Gibbs inequality and permutation invariance on random distributions") {
    std::mt19937_64 rng(9);
    std::exponential_distribution<double> mass(1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t size = std::size_t{1} << (1 + trial % 8);
        std::vector<double> p(size), q(size);
        double sp = 0.0, sq = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            p[i] = (i % 3 == 0 && trial % 2 == 0) ? 0.0 : mass(rng);
            q[i] = mass(rng) + 1e-3;
            sp += p[i];
            sq += q[i];
        }
        for (std::size_t i = 0; i < size; ++i) {
            p[i] /= sp;
            q[i] /= sq;
        }
        CHECK(kld(p, q) >= -1e-12);
        CHECK(std::abs(kld(p, p)) < 1e-12);

        const double before = kld_vs_uniform(p);
        std::shuffle(p.begin(), p.end(), rng);
        CHECK(kld_vs_uniform(p) == doctest::Approx(before).epsilon(1e-12));
        CHECK(kld_vs_uniform(p) ==
              doctest::Approx(kld(p, std::vector<double>(size, 1.0 / size))).epsilon(1e-12));
    }
}
