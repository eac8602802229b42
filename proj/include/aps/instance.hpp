#pragma once

/**
 * @file instance.hpp
 * Problem instances as read from JSON:
 *
 *   {"type":"subset-sum","elements":[...],"target":S}
 *   {"type":"maxcut","vertices":k,"edges":[[j,l,w],...]}
 *   {"type":"diagonal","diag":[...]}
 *
 * maxcut and diagonal documents may also carry an optional "target".
 */

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "aps/problems.hpp"

namespace aps {

class ProblemInstance {
  public:
    using Problem = std::variant<SubsetSumInstance, Graph, DiagonalHamiltonian>;

    explicit ProblemInstance(Problem problem, std::optional<double> target = std::nullopt);

    [[nodiscard]] const Problem &problem() const noexcept { return problem_; }
    /// "subset-sum", "maxcut" or "diagonal".
    [[nodiscard]] std::string type_name() const;
    [[nodiscard]] unsigned work_qubits() const;

    /// Per-basis-state costs.
    [[nodiscard]] DiagonalHamiltonian hamiltonian() const;

    [[nodiscard]] std::optional<double> explicit_target() const noexcept { return target_; }

    /// Target cost c0 used for the oracle: S for subset-sum; the explicit target
    /// or the total edge weight for max-cut (1 when the graph has no edges,
    /// where every phase is zero anyway); the explicit target for diagonal.
    /// Throws std::invalid_argument when no usable target exists.
    [[nodiscard]] double default_target() const;

  private:
    Problem problem_;
    std::optional<double> target_;
};

/// Throws std::invalid_argument on malformed documents.
[[nodiscard]] ProblemInstance parse_instance(std::string_view json_text);
[[nodiscard]] ProblemInstance load_instance(const std::filesystem::path &path);
[[nodiscard]] std::string instance_to_json(const ProblemInstance &instance);

} // namespace aps
