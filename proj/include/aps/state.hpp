#pragma once

/**
 * @file state.hpp
 * Dense statevector over a joint (work, ancilla) register and the unitary
 * primitives used by approximate phase search.
 *
 * Index convention: the joint basis index of work value x and ancilla value a
 * is i = x * 2^m + a, i.e. the ancillae occupy the least significant bits.
 * Every work value therefore owns a contiguous block of 2^m amplitudes.
 */

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace aps {

using complex_t = std::complex<double>;

inline constexpr unsigned kDefaultMaxQubits = 26;

/// Work and ancilla register sizes.
class RegisterLayout {
  public:
    /// Throws std::invalid_argument if n_work == 0 or n_work + m_ancilla
    /// exceeds max_qubits.
    RegisterLayout(unsigned n_work, unsigned m_ancilla,
                   unsigned max_qubits = kDefaultMaxQubits);

    [[nodiscard]] unsigned work_qubits() const noexcept { return n_work_; }
    [[nodiscard]] unsigned ancilla_qubits() const noexcept { return m_ancilla_; }
    [[nodiscard]] unsigned total_qubits() const noexcept {
        return n_work_ + m_ancilla_;
    }

    [[nodiscard]] std::size_t work_dimension() const noexcept {
        return std::size_t{1} << n_work_;
    }
    [[nodiscard]] std::size_t ancilla_dimension() const noexcept {
        return std::size_t{1} << m_ancilla_;
    }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return std::size_t{1} << total_qubits();
    }

    [[nodiscard]] std::size_t index(std::size_t work, std::size_t ancilla) const noexcept {
        return (work << m_ancilla_) | ancilla;
    }

    /// Ancilla value with every ancilla qubit set.
    [[nodiscard]] std::size_t ancilla_all_ones() const noexcept {
        return ancilla_dimension() - 1;
    }

    friend bool operator==(const RegisterLayout &, const RegisterLayout &) = default;

  private:
    unsigned n_work_;
    unsigned m_ancilla_;
};

/// Cap on total qubits, taken from APS_SIM_MAX_QUBITS when set.
[[nodiscard]] unsigned max_qubits_from_env();

/// Per-work-state phases, reduced into [0, 2pi).
class PhaseTable {
  public:
    PhaseTable() = default;
    /// Throws std::invalid_argument on non-finite entries or a length that is
    /// not a power of two.
    explicit PhaseTable(std::vector<double> phases);

    [[nodiscard]] std::span<const double> phases() const noexcept { return phases_; }
    [[nodiscard]] std::size_t size() const noexcept { return phases_.size(); }
    [[nodiscard]] double operator[](std::size_t x) const { return phases_[x]; }

  private:
    std::vector<double> phases_;
};

/// Reduces an angle into [0, 2pi).
[[nodiscard]] double wrap_phase(double phase);

class StateVector {
  public:
    /// All-zero amplitudes; callers fill them or use init_uniform.
    explicit StateVector(RegisterLayout layout);
    StateVector(RegisterLayout layout, std::vector<complex_t> amplitudes);

    [[nodiscard]] const RegisterLayout &layout() const noexcept { return layout_; }
    [[nodiscard]] std::span<complex_t> amplitudes() noexcept { return amps_; }
    [[nodiscard]] std::span<const complex_t> amplitudes() const noexcept { return amps_; }

    [[nodiscard]] complex_t &at(std::size_t work, std::size_t ancilla) {
        return amps_[layout_.index(work, ancilla)];
    }
    [[nodiscard]] const complex_t &at(std::size_t work, std::size_t ancilla) const {
        return amps_[layout_.index(work, ancilla)];
    }

    [[nodiscard]] double norm() const;

  private:
    RegisterLayout layout_;
    std::vector<complex_t> amps_;
};

/// Equal superposition over all 2^(n+m) basis states.
[[nodiscard]] StateVector init_uniform(const RegisterLayout &layout);

/// Multiplies every amplitude (x, a) by e^{i phi(x)}, regardless of a.
void apply_phase_oracle(StateVector &state, const PhaseTable &table);

/// Multiplies amplitude (x, a) by e^{i phi(x)} only on the all-ones ancilla
/// slice. Requires at least one ancilla.
void apply_controlled_phase_oracle(StateVector &state, const PhaseTable &table);

/// Reflection about the ancilla uniform state inside each work block:
/// amp(x, a) <- 2 mean_a(amp(x, .)) - amp(x, a). Requires m >= 2.
void apply_local_diffusion(StateVector &state);

/// Reflection about the uniform state of the whole register.
void apply_global_diffusion(StateVector &state);

/// P(x) = sum_a |amp(x, a)|^2.
[[nodiscard]] std::vector<double> marginal_work_distribution(const StateVector &state);

/// Work value formatted most-significant bit first, `bits` characters wide.
[[nodiscard]] std::string format_bitstring(std::size_t value, unsigned bits);

/// Inverse of format_bitstring. Throws std::invalid_argument on characters
/// other than '0' or '1', or an empty string.
[[nodiscard]] std::size_t parse_bitstring(const std::string &text);

} // namespace aps
