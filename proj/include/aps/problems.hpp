#pragma once

/**
 * @file problems.hpp
 * Cost models for subset-sum and max-cut, diagonal cost Hamiltonians, and the
 * maps that turn costs into oracle phases.
 *
 * Bit convention: a work string x_j = y_0 y_1 ... y_{n-1} is read with y_0 as
 * the most significant bit. y_l selects element s_l (subset-sum) or places
 * vertex l in V1 (max-cut).
 */

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "aps/state.hpp"

namespace aps {

struct SubsetSumInstance {
    std::vector<double> elements;
    double target = 0.0;

    /// Throws std::invalid_argument when empty or holding non-finite values.
    void validate() const;
    [[nodiscard]] unsigned size() const noexcept {
        return static_cast<unsigned>(elements.size());
    }
};

struct Edge {
    unsigned u = 0;
    unsigned v = 0;
    double weight = 1.0;
};

/// Undirected weighted graph without self-loops or parallel edges.
class Graph {
  public:
    explicit Graph(unsigned vertices) : vertices_(vertices) {}
    Graph(unsigned vertices, std::vector<Edge> edges);

    /// Throws std::invalid_argument on self-loops, out-of-range endpoints,
    /// non-positive weights or a repeated unordered pair.
    void add_edge(unsigned u, unsigned v, double weight = 1.0);

    [[nodiscard]] unsigned vertices() const noexcept { return vertices_; }
    [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }
    [[nodiscard]] double total_weight() const noexcept;

  private:
    unsigned vertices_;
    std::vector<Edge> edges_;
};

/// Diagonal of a cost Hamiltonian in the computational basis; its entries are
/// the eigenvalues and the basis states are the eigenvectors.
class DiagonalHamiltonian {
  public:
    /// Throws std::invalid_argument unless the length is a power of two and
    /// every entry is finite.
    explicit DiagonalHamiltonian(std::vector<double> diag);

    [[nodiscard]] std::span<const double> diagonal() const noexcept { return diag_; }
    [[nodiscard]] std::size_t size() const noexcept { return diag_.size(); }
    [[nodiscard]] unsigned qubits() const noexcept { return qubits_; }
    [[nodiscard]] double operator[](std::size_t x) const { return diag_[x]; }

  private:
    std::vector<double> diag_;
    unsigned qubits_ = 0;
};

[[nodiscard]] double subset_sum_cost(const SubsetSumInstance &inst, std::size_t x);

/// Sum of weights of edges whose endpoints carry different bits; each
/// unordered edge counts once. Throws if `work_bits` != vertex count.
[[nodiscard]] double maxcut_cost(const Graph &g, std::size_t x, unsigned work_bits);
[[nodiscard]] double maxcut_cost(const Graph &g, std::size_t x);

[[nodiscard]] DiagonalHamiltonian subset_sum_hamiltonian(const SubsetSumInstance &inst);
[[nodiscard]] DiagonalHamiltonian maxcut_hamiltonian(const Graph &g);

/// (pi * cost / target) mod 2pi. Costs at odd multiples of the target also
/// land on pi.
[[nodiscard]] double linear_phase_map(double cost, double target);

/// pi * max(0, 1 - |cost - target| / |target|). Only cost == target reaches pi,
/// which removes the odd-harmonic aliasing of the linear map.
[[nodiscard]] double triangular_phase_map(double cost, double target);

/// Phase of the parameterized oracle exp(i pi H / lambda) on an eigenvalue.
[[nodiscard]] double hamiltonian_phase_map(double cost, double lambda);

enum class PhaseMapKind { Linear, Triangular };

struct PhaseMap {
    PhaseMapKind kind = PhaseMapKind::Linear;
    /// Target cost (subset-sum S) or oracle parameter lambda.
    double reference = 1.0;

    [[nodiscard]] double operator()(double cost) const;
};

[[nodiscard]] const char *to_string(PhaseMapKind kind) noexcept;
/// Accepts "linear" or "triangular".
[[nodiscard]] PhaseMapKind parse_phase_map_kind(const std::string &name);

[[nodiscard]] PhaseTable build_phase_table(std::span<const double> costs, const PhaseMap &map);

} // namespace aps
