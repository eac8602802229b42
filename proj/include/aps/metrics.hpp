#pragma once

#include <span>

namespace aps {

/// Kullback-Leibler divergence sum_j P_j ln(P_j / Q_j), in nats. Outcomes with
/// P_j == 0 contribute nothing.
///
/// Throws std::invalid_argument on length mismatch, negative entries, or
/// Q_j == 0 where P_j > 0.
[[nodiscard]] double kld(std::span<const double> p, std::span<const double> q);

/// kld(P, uniform) over the support of P; equals ln(size) - H(P).
[[nodiscard]] double kld_vs_uniform(std::span<const double> p);

} // namespace aps
