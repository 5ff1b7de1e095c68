#pragma once

// Random benchmark circuits: Clifford+T with measurements, and classical
// parity logic. Both draw from std::mt19937_64, whose output sequence is fixed
// by the standard; the mapping to integers/doubles below avoids the
// implementation-defined std distributions so runs are bit-reproducible.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "zxg/circuit.hpp"

namespace zxg {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, n), rejection-sampled.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below(0)");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Two distinct values in [0, n).
    std::pair<std::uint64_t, std::uint64_t> distinct_pair(std::uint64_t n) {
        const auto a = below(n);
        auto b = below(n - 1);
        if (b >= a) ++b;
        return {a, b};
    }

private:
    std::mt19937_64 engine_;
};

enum class CliffordTKind { cnot, s, hsh, t, meas };

/// Gate kinds with P(CNOT)=P(S)=P(HSH)=0.2 and the remaining 0.4 split between
/// T (p_t) and Meas (p_meas). Meas is a measurement into the qubit's scratch bit
/// immediately followed by re-preparation from it. Scratch bits are added on a
/// qubit's first measurement, so unmeasured qubits leave no idle bit wires.
inline HybridCircuit gen_clifford_t_meas(std::size_t n_qubits, std::size_t n_gates, double p_t, double p_meas,
                                         std::uint64_t seed) {
    if (n_qubits < 2) throw std::invalid_argument("gen_clifford_t_meas: need at least 2 qubits");
    if (p_t < 0 || p_meas < 0 || std::abs(p_t + p_meas - 0.4) > 1e-12)
        throw std::invalid_argument("gen_clifford_t_meas: p_t + p_meas must equal 0.4");
    HybridCircuit c = HybridCircuit::make(n_qubits);
    c.name = "clifford_t_meas";
    std::vector<std::optional<std::size_t>> scratch(n_qubits);
    Rng rng(seed);
    for (std::size_t i = 0; i < n_gates; ++i) {
        const double u = rng.unit();
        if (u < 0.2) {
            const auto [a, b] = rng.distinct_pair(n_qubits);
            c.gates.push_back(Gate::cnot(a, b));
        } else if (u < 0.4) {
            c.gates.push_back(Gate::z(rng.below(n_qubits), Phase::half_pi()));
        } else if (u < 0.6) {
            c.gates.push_back(Gate::x(rng.below(n_qubits), Phase::half_pi()));
        } else if (u < 0.6 + p_t) {
            c.gates.push_back(Gate::z(rng.below(n_qubits), Phase(1, 4)));
        } else {
            const auto q = rng.below(n_qubits);
            if (!scratch[q]) scratch[q] = c.add_wire(WireType::classical);
            c.gates.push_back(Gate::measure(q, *scratch[q]));
            c.gates.push_back(Gate::prepare(*scratch[q], q));
        }
    }
    return c;
}

/// Random NOT / XOR / FANOUT circuit with probabilities 0.3 / 0.3 / 0.4.
/// FANOUT always writes to a freshly allocated classical wire.
inline HybridCircuit gen_parity(std::size_t n_bits, std::size_t n_gates, std::uint64_t seed) {
    if (n_bits < 2) throw std::invalid_argument("gen_parity: need at least 2 bits");
    HybridCircuit c = HybridCircuit::make(0, n_bits);
    c.name = "parity";
    Rng rng(seed);
    for (std::size_t i = 0; i < n_gates; ++i) {
        const double u = rng.unit();
        const std::size_t n = c.wires.size();
        if (u < 0.3) {
            c.gates.push_back(Gate::bit_not(rng.below(n)));
        } else if (u < 0.6) {
            const auto [a, b] = rng.distinct_pair(n);
            c.gates.push_back(Gate::bit_xor(a, b));
        } else {
            const auto src = rng.below(n);
            c.gates.push_back(Gate::fanout(src, c.add_wire(WireType::classical)));
        }
    }
    return c;
}

}  // namespace zxg
