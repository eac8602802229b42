#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace aps {

/// Measured distribution over the 2^n work strings. Exact histograms carry
/// probabilities only; sampled ones also keep the raw counts.
class Histogram {
  public:
    Histogram() = default;

    /// Takes a probability vector of power-of-two length as-is.
    [[nodiscard]] static Histogram exact(std::vector<double> probabilities);
    [[nodiscard]] static Histogram from_counts(std::vector<std::uint64_t> counts);

    [[nodiscard]] unsigned bits() const noexcept { return bits_; }
    [[nodiscard]] std::size_t size() const noexcept { return probs_.size(); }
    /// 0 for exact histograms.
    [[nodiscard]] std::uint64_t shots() const noexcept { return shots_; }
    [[nodiscard]] bool is_exact() const noexcept { return shots_ == 0; }

    [[nodiscard]] double probability(std::size_t x) const { return probs_.at(x); }
    [[nodiscard]] std::span<const double> probabilities() const noexcept { return probs_; }
    [[nodiscard]] std::span<const std::uint64_t> counts() const noexcept { return counts_; }

    /// (work value, probability) pairs by descending probability; ties keep
    /// ascending work value.
    [[nodiscard]] std::vector<std::pair<std::size_t, double>> ranked() const;

  private:
    unsigned bits_ = 0;
    std::uint64_t shots_ = 0;
    std::vector<double> probs_;
    std::vector<std::uint64_t> counts_;
};

/// Draws `shots` outcomes from `dist`. shots == 0 returns `dist` itself as an
/// exact histogram. The same seed always yields the same counts.
///
/// Throws std::invalid_argument on negative or non-finite entries, or when
/// `dist` does not sum to 1 within 1e-6.
[[nodiscard]] Histogram sample(std::span<const double> dist, std::uint64_t shots,
                               std::uint64_t seed);

} // namespace aps
