#pragma once

/**
 * @file io.hpp
 * CSV and JSON forms of histograms and sweep results.
 *
 * Histogram CSV:  bitstring,probability   (rows by descending probability)
 * Sweep CSV:      lambda,kld,iterations,top_state,top_prob
 *
 * Bitstrings are written most-significant work bit first. Numbers use the
 * shortest representation that reads back to the same double.
 */

#include <iosfwd>

#include <json.hpp>

#include "aps/eigen_scan.hpp"
#include "aps/histogram.hpp"

namespace aps {

void write_histogram_csv(std::ostream &out, const Histogram &histogram);
/// Outcomes absent from the file get probability 0. Throws
/// std::invalid_argument on malformed input.
[[nodiscard]] Histogram read_histogram_csv(std::istream &in);

[[nodiscard]] nlohmann::json histogram_to_json(const Histogram &histogram);
[[nodiscard]] Histogram histogram_from_json(const nlohmann::json &doc);

void write_sweep_csv(std::ostream &out, const SweepResult &result);
/// Records only; run metadata is not part of the CSV form.
[[nodiscard]] SweepResult read_sweep_csv(std::istream &in);

[[nodiscard]] nlohmann::json sweep_to_json(const SweepResult &result);
[[nodiscard]] SweepResult sweep_from_json(const nlohmann::json &doc);

/// Shortest round-trip decimal form of a double.
[[nodiscard]] std::string format_number(double value);

} // namespace aps
