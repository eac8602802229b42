#include "aps/histogram.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace aps {

namespace {

unsigned bits_for(std::size_t size) {
    if (size == 0 || !std::has_single_bit(size)) {
        throw std::invalid_argument("histogram size must be a power of two");
    }
    return static_cast<unsigned>(std::countr_zero(size));
}

// 53 random mantissa bits; avoids the implementation-defined
// std::uniform_real_distribution so draws match across standard libraries.
double unit_draw(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

Histogram Histogram::exact(std::vector<double> probabilities) {
    Histogram h;
    h.bits_ = bits_for(probabilities.size());
    h.probs_ = std::move(probabilities);
    return h;
}

Histogram Histogram::from_counts(std::vector<std::uint64_t> counts) {
    Histogram h;
    h.bits_ = bits_for(counts.size());
    h.shots_ = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    if (h.shots_ == 0) {
        throw std::invalid_argument("sampled histogram needs at least one shot");
    }
    h.probs_.resize(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        h.probs_[i] = static_cast<double>(counts[i]) / static_cast<double>(h.shots_);
    }
    h.counts_ = std::move(counts);
    return h;
}

std::vector<std::pair<std::size_t, double>> Histogram::ranked() const {
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(probs_.size());
    for (std::size_t x = 0; x < probs_.size(); ++x) {
        out.emplace_back(x, probs_[x]);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto &a, const auto &b) { return a.second > b.second; });
    return out;
}

Histogram sample(std::span<const double> dist, std::uint64_t shots, std::uint64_t seed) {
    double total = 0.0;
    for (double p : dist) {
        if (!std::isfinite(p) || p < 0.0) {
            throw std::invalid_argument("distribution has a negative or non-finite entry");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-6) {
        throw std::invalid_argument("distribution does not sum to 1");
    }
    if (shots == 0) {
        return Histogram::exact({dist.begin(), dist.end()});
    }

    std::vector<double> cumulative(dist.size());
    std::partial_sum(dist.begin(), dist.end(), cumulative.begin());
    // Outcomes with zero mass must stay unreachable.
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist[i] > 0.0) {
            last_nonzero = i;
        }
    }

    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> counts(dist.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = unit_draw(rng) * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        auto idx = static_cast<std::size_t>(it - cumulative.begin());
        if (idx > last_nonzero) {
            idx = last_nonzero;
        }
        ++counts[idx];
    }
    return Histogram::from_counts(std::move(counts));
}

} // namespace aps
