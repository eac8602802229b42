#include "aps/state.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aps {

namespace {

complex_t mean_of(std::span<const complex_t> values) {
    complex_t sum{0.0, 0.0};
    for (const auto &v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

void reflect_about_mean(std::span<complex_t> values) {
    const complex_t twice_mean = 2.0 * mean_of(values);
    for (auto &v : values) {
        v = twice_mean - v;
    }
}

void check_table(const StateVector &state, const PhaseTable &table) {
    if (table.size() != state.layout().work_dimension()) {
        throw std::invalid_argument("phase table has " + std::to_string(table.size()) +
                                    " entries, work register needs " +
                                    std::to_string(state.layout().work_dimension()));
    }
}

} // namespace

RegisterLayout::RegisterLayout(unsigned n_work, unsigned m_ancilla, unsigned max_qubits)
    : n_work_(n_work), m_ancilla_(m_ancilla) {
    if (n_work == 0) {
        throw std::invalid_argument("register needs at least one work qubit");
    }
    if (max_qubits > 62) {
        max_qubits = 62;
    }
    if (n_work + m_ancilla > max_qubits) {
        throw std::invalid_argument("register of " + std::to_string(n_work + m_ancilla) +
                                    " qubits exceeds the cap of " +
                                    std::to_string(max_qubits));
    }
}

unsigned max_qubits_from_env() {
    const char *raw = std::getenv("APS_SIM_MAX_QUBITS");
    if (raw == nullptr || *raw == '\0') {
        return kDefaultMaxQubits;
    }
    const std::string text{raw};
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
        throw std::invalid_argument("APS_SIM_MAX_QUBITS must be a positive integer, got '" +
                                    text + "'");
    }
    return value;
}

double wrap_phase(double phase) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(phase, two_pi);
    if (r < 0.0) {
        r += two_pi;
    }
    // fmod of a tiny negative value plus 2pi can round up to exactly 2pi
    if (r >= two_pi) {
        r = 0.0;
    }
    return r;
}

PhaseTable::PhaseTable(std::vector<double> phases) : phases_(std::move(phases)) {
    const auto n = phases_.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("phase table length must be a power of two, got " +
                                    std::to_string(n));
    }
    for (auto &p : phases_) {
        if (!std::isfinite(p)) {
            throw std::invalid_argument("phase table contains a non-finite entry");
        }
        p = wrap_phase(p);
    }
}

StateVector::StateVector(RegisterLayout layout)
    : layout_(layout), amps_(layout.dimension(), complex_t{0.0, 0.0}) {}

StateVector::StateVector(RegisterLayout layout, std::vector<complex_t> amplitudes)
    : layout_(layout), amps_(std::move(amplitudes)) {
    if (amps_.size() != layout_.dimension()) {
        throw std::invalid_argument("amplitude count does not match register dimension");
    }
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const auto &a : amps_) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

StateVector init_uniform(const RegisterLayout &layout) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(layout.dimension()));
    return StateVector(layout, std::vector<complex_t>(layout.dimension(), complex_t{amp, 0.0}));
}

void apply_phase_oracle(StateVector &state, const PhaseTable &table) {
    check_table(state, table);
    const auto &layout = state.layout();
    const auto block = layout.ancilla_dimension();
    auto amps = state.amplitudes();
    for (std::size_t x = 0; x < layout.work_dimension(); ++x) {
        if (table[x] == 0.0) {
            continue;
        }
        const complex_t factor = std::polar(1.0, table[x]);
        for (auto &a : amps.subspan(x * block, block)) {
            a *= factor;
        }
    }
}

void apply_controlled_phase_oracle(StateVector &state, const PhaseTable &table) {
    const auto &layout = state.layout();
    if (layout.ancilla_qubits() == 0) {
        throw std::invalid_argument(
            "controlled oracle needs at least one ancilla; use apply_phase_oracle");
    }
    check_table(state, table);
    const auto ones = layout.ancilla_all_ones();
    for (std::size_t x = 0; x < layout.work_dimension(); ++x) {
        if (table[x] == 0.0) {
            continue;
        }
        state.at(x, ones) *= std::polar(1.0, table[x]);
    }
}

void apply_local_diffusion(StateVector &state) {
    const auto &layout = state.layout();
    if (layout.ancilla_qubits() < 2) {
        throw std::invalid_argument("local diffusion needs at least two ancillae");
    }
    const auto block = layout.ancilla_dimension();
    auto amps = state.amplitudes();
    for (std::size_t x = 0; x < layout.work_dimension(); ++x) {
        reflect_about_mean(amps.subspan(x * block, block));
    }
}

void apply_global_diffusion(StateVector &state) { reflect_about_mean(state.amplitudes()); }

std::vector<double> marginal_work_distribution(const StateVector &state) {
    const auto &layout = state.layout();
    const auto block = layout.ancilla_dimension();
    const auto amps = state.amplitudes();
    std::vector<double> dist(layout.work_dimension(), 0.0);
    for (std::size_t x = 0; x < dist.size(); ++x) {
        double p = 0.0;
        for (const auto &a : amps.subspan(x * block, block)) {
            p += std::norm(a);
        }
        dist[x] = p;
    }
    return dist;
}

std::string format_bitstring(std::size_t value, unsigned bits) {
    std::string out(bits, '0');
    for (unsigned b = 0; b < bits; ++b) {
        if ((value >> (bits - 1 - b)) & 1U) {
            out[b] = '1';
        }
    }
    return out;
}

std::size_t parse_bitstring(const std::string &text) {
    if (text.empty() || text.size() > 62) {
        throw std::invalid_argument("bitstring must have 1..62 characters");
    }
    std::size_t value = 0;
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("invalid bitstring '" + text + "'");
        }
        value = (value << 1) | static_cast<std::size_t>(c == '1');
    }
    return value;
}

} // namespace aps
