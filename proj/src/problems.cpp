#include "aps/problems.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aps {

namespace {

constexpr double pi = std::numbers::pi;
constexpr unsigned kMaxCostBits = 30;

bool bit_of(std::size_t x, unsigned position, unsigned width) {
    return ((x >> (width - 1 - position)) & 1U) != 0;
}

void require_nonzero(double value, const char *what) {
    if (value == 0.0 || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(what) + " must be finite and non-zero");
    }
}

} // namespace

void SubsetSumInstance::validate() const {
    if (elements.empty()) {
        throw std::invalid_argument("subset-sum instance needs at least one element");
    }
    for (double s : elements) {
        if (!std::isfinite(s)) {
            throw std::invalid_argument("subset-sum element is not finite");
        }
    }
    if (!std::isfinite(target)) {
        throw std::invalid_argument("subset-sum target is not finite");
    }
}

Graph::Graph(unsigned vertices, std::vector<Edge> edges) : vertices_(vertices) {
    for (const auto &e : edges) {
        add_edge(e.u, e.v, e.weight);
    }
}

void Graph::add_edge(unsigned u, unsigned v, double weight) {
    if (u >= vertices_ || v >= vertices_) {
        throw std::invalid_argument("edge endpoint out of range");
    }
    if (u == v) {
        throw std::invalid_argument("self-loops are not allowed");
    }
    if (!(weight > 0.0) || !std::isfinite(weight)) {
        throw std::invalid_argument("edge weights must be positive");
    }
    const auto lo = std::min(u, v);
    const auto hi = std::max(u, v);
    for (const auto &e : edges_) {
        if (std::min(e.u, e.v) == lo && std::max(e.u, e.v) == hi) {
            throw std::invalid_argument("duplicate edge (" + std::to_string(lo) + ", " +
                                        std::to_string(hi) + ")");
        }
    }
    edges_.push_back({u, v, weight});
}

double Graph::total_weight() const noexcept {
    double sum = 0.0;
    for (const auto &e : edges_) {
        sum += e.weight;
    }
    return sum;
}

DiagonalHamiltonian::DiagonalHamiltonian(std::vector<double> diag) : diag_(std::move(diag)) {
    if (diag_.empty() || !std::has_single_bit(diag_.size()) || diag_.size() < 2) {
        throw std::invalid_argument("Hamiltonian diagonal length must be a power of two >= 2");
    }
    for (double d : diag_) {
        if (!std::isfinite(d)) {
            throw std::invalid_argument("Hamiltonian diagonal has a non-finite entry");
        }
    }
    qubits_ = static_cast<unsigned>(std::countr_zero(diag_.size()));
}

double subset_sum_cost(const SubsetSumInstance &inst, std::size_t x) {
    const unsigned n = inst.size();
    double cost = 0.0;
    for (unsigned l = 0; l < n; ++l) {
        if (bit_of(x, l, n)) {
            cost += inst.elements[l];
        }
    }
    return cost;
}

double maxcut_cost(const Graph &g, std::size_t x, unsigned work_bits) {
    if (work_bits != g.vertices()) {
        throw std::invalid_argument("work register has " + std::to_string(work_bits) +
                                    " qubits but the graph has " +
                                    std::to_string(g.vertices()) + " vertices");
    }
    return maxcut_cost(g, x);
}

double maxcut_cost(const Graph &g, std::size_t x) {
    const unsigned n = g.vertices();
    double cost = 0.0;
    for (const auto &e : g.edges()) {
        if (bit_of(x, e.u, n) != bit_of(x, e.v, n)) {
            cost += e.weight;
        }
    }
    return cost;
}

DiagonalHamiltonian subset_sum_hamiltonian(const SubsetSumInstance &inst) {
    inst.validate();
    if (inst.size() > kMaxCostBits) {
        throw std::invalid_argument("subset-sum instance too large to enumerate");
    }
    std::vector<double> diag(std::size_t{1} << inst.size());
    for (std::size_t x = 0; x < diag.size(); ++x) {
        diag[x] = subset_sum_cost(inst, x);
    }
    return DiagonalHamiltonian(std::move(diag));
}

DiagonalHamiltonian maxcut_hamiltonian(const Graph &g) {
    if (g.vertices() == 0) {
        throw std::invalid_argument("graph needs at least one vertex");
    }
    if (g.vertices() > kMaxCostBits) {
        throw std::invalid_argument("graph too large to enumerate");
    }
    std::vector<double> diag(std::size_t{1} << g.vertices());
    for (std::size_t x = 0; x < diag.size(); ++x) {
        diag[x] = maxcut_cost(g, x);
    }
    return DiagonalHamiltonian(std::move(diag));
}

double linear_phase_map(double cost, double target) {
    require_nonzero(target, "target cost");
    return wrap_phase(pi * cost / target);
}

double triangular_phase_map(double cost, double target) {
    require_nonzero(target, "target cost");
    return pi * std::max(0.0, 1.0 - std::abs(cost - target) / std::abs(target));
}

double hamiltonian_phase_map(double cost, double lambda) {
    require_nonzero(lambda, "lambda");
    return wrap_phase(pi * cost / lambda);
}

double PhaseMap::operator()(double cost) const {
    switch (kind) {
    case PhaseMapKind::Linear:
        return linear_phase_map(cost, reference);
    case PhaseMapKind::Triangular:
        return triangular_phase_map(cost, reference);
    }
    throw std::logic_error("unknown phase map");
}

const char *to_string(PhaseMapKind kind) noexcept {
    return kind == PhaseMapKind::Linear ? "linear" : "triangular";
}

PhaseMapKind parse_phase_map_kind(const std::string &name) {
    if (name == "linear") {
        return PhaseMapKind::Linear;
    }
    if (name == "triangular") {
        return PhaseMapKind::Triangular;
    }
    throw std::invalid_argument("unknown phase map '" + name + "'");
}

PhaseTable build_phase_table(std::span<const double> costs, const PhaseMap &map) {
    require_nonzero(map.reference, "phase map reference");
    std::vector<double> phases(costs.size());
    std::transform(costs.begin(), costs.end(), phases.begin(), map);
    return PhaseTable(std::move(phases));
}

} // namespace aps
