#pragma once

// The full optimizer (translate, simplify, extract, classicalize) and the
// benchmark sweeps comparing it with the pure-Clifford baseline.

#include <cstdint>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zxg/circuit.hpp"
#include "zxg/classicalize.hpp"
#include "zxg/extract.hpp"
#include "zxg/generators.hpp"
#include "zxg/gflow.hpp"
#include "zxg/semantics.hpp"
#include "zxg/simplify.hpp"
#include "zxg/translate.hpp"

namespace zxg {

namespace detail {

inline bool gate_touches(const Gate& g, std::size_t w) {
    for (std::size_t s = 0; s < g.arity(); ++s)
        if (gate_operand(g, s) == w) return true;
    return false;
}

inline bool self_inverse_pair(const Gate& a, const Gate& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case GateKind::h:
        case GateKind::bit_not: return a.a == b.a;
        case GateKind::cnot:
        case GateKind::bit_xor:
        case GateKind::ctrl_x:
        case GateKind::ctrl_z: return a.a == b.a && a.b == b.b;
        case GateKind::cz:
        case GateKind::swap:
        case GateKind::swap_bits: return (a.a == b.a && a.b == b.b) || (a.a == b.b && a.b == b.a);
        default: return false;
    }
}

}  // namespace detail

/// Cancels adjacent self-inverse pairs and merges adjacent rotations about the
/// same axis. Two gates are adjacent when no gate in between touches their wires.
inline HybridCircuit peephole(const HybridCircuit& c) {
    HybridCircuit r = c;
    r.gates.clear();
    for (const Gate& g : c.gates) {
        // last kept gate sharing a wire with g
        std::optional<std::size_t> prev;
        for (std::size_t i = r.gates.size(); i-- > 0;) {
            bool shares = false;
            for (std::size_t s = 0; s < g.arity(); ++s) shares |= detail::gate_touches(r.gates[i], gate_operand(g, s));
            if (shares) {
                prev = i;
                break;
            }
        }
        if (prev) {
            Gate& p = r.gates[*prev];
            // p must not touch wires outside g either, or the pair is not adjacent
            bool inside = true;
            for (std::size_t s = 0; s < p.arity(); ++s) inside &= detail::gate_touches(g, gate_operand(p, s));
            if (inside && detail::self_inverse_pair(p, g)) {
                r.gates.erase(r.gates.begin() + static_cast<std::ptrdiff_t>(*prev));
                continue;
            }
            if (inside && p.kind == g.kind && (g.kind == GateKind::zphase || g.kind == GateKind::xphase)) {
                p.phase = p.phase + g.phase;
                if (p.phase.is_zero()) r.gates.erase(r.gates.begin() + static_cast<std::ptrdiff_t>(*prev));
                continue;
            }
        }
        if ((g.kind == GateKind::zphase || g.kind == GateKind::xphase) && g.phase.is_zero()) continue;
        r.gates.push_back(g);
    }
    return r;
}

struct OptimizeConfig {
    bool ground_rules = true;
    bool peephole = true;  // cancel H-H pairs and merge rotations in the extracted circuit
    bool instrumented = false;  // gFlow after translation, every rewrite and every extraction step
    bool verify = false;        // compare channels when the oracle can handle the size
    double tolerance = 1e-8;
    SemanticsLimits limits{};
};

struct OptimizeResult {
    HybridCircuit circuit;
    SimplifyStats simplify;
    bool simplified = false;  // is_simplified on the diagram handed to extraction
    std::size_t extract_steps = 0;
    ClassicalizeResult labels;
    std::size_t classical_gates = 0;
    std::optional<EquivResult> check;  // set when verification ran
};

inline void require_gflow(const Diagram& d, const char* where) {
    if (!find_focused_gflow(underlying_open_graph(d)))
        throw InvariantError(std::string("no focused gFlow after ") + where);
}

/// Whether the oracle can compare the channels of c.
inline bool oracle_fits(const HybridCircuit& c, const SemanticsLimits& lim) {
    return c.input_wires().size() <= lim.max_inputs && c.output_wires().size() <= lim.max_outputs;
}

inline OptimizeResult optimize(const HybridCircuit& c, const OptimizeConfig& cfg = {}) {
    OptimizeResult r;
    Diagram d = circuit_to_diagram(c);
    if (cfg.instrumented) require_gflow(d, "translation");
    r.simplify = simplify(d, SimplifyConfig{cfg.ground_rules, cfg.instrumented});
    r.simplified = is_simplified(d);
    auto ex = extract_with_trace(d, ExtractConfig{cfg.instrumented});
    r.circuit = cfg.peephole ? peephole(ex.circuit) : std::move(ex.circuit);
    r.circuit.name = c.name;
    r.extract_steps = ex.steps;
    r.labels = classicalize(r.circuit);
    for (bool b : r.labels.classical_gate) r.classical_gates += b;
    if (cfg.verify && oracle_fits(c, cfg.limits))
        r.check = equiv_up_to_scalar(circuit_superoperator(c, {}, cfg.limits),
                                     circuit_superoperator(r.circuit, {}, cfg.limits), cfg.tolerance);
    return r;
}

// ---- benchmarks ----

struct BenchRow {
    std::uint64_t seed;
    std::size_t n_qubits;  // 0 for parity circuits
    std::size_t n_gates;
    double p_meas;         // unused for parity circuits
    std::size_t spiders_naive, spiders_ours, grounds_ours;
};

inline BenchRow bench_one(const HybridCircuit& c, std::uint64_t seed, std::size_t nq, std::size_t ng, double pm) {
    Diagram ours = circuit_to_diagram(c);
    Diagram naive = ours;
    const auto so = simplify(ours, SimplifyConfig{true, false});
    const auto sn = simplify(naive, SimplifyConfig{false, false});
    return {seed, nq, ng, pm, sn.spiders_after, so.spiders_after, so.grounds_after};
}

/// p_meas in {0, 0.04, ..., 0.2}, with p_t = 0.4 - p_meas.
inline std::vector<double> p_meas_grid() { return {0.0, 0.04, 0.08, 0.12, 0.16, 0.2}; }

inline std::vector<BenchRow> bench_clifford(std::size_t n_qubits, std::size_t n_gates, std::size_t seeds,
                                            std::uint64_t seed0 = 0) {
    std::vector<BenchRow> rows;
    for (double pm : p_meas_grid())
        for (std::uint64_t s = seed0; s < seed0 + seeds; ++s)
            rows.push_back(
                bench_one(gen_clifford_t_meas(n_qubits, n_gates, 0.4 - pm, pm, s), s, n_qubits, n_gates, pm));
    return rows;
}

inline std::vector<BenchRow> bench_parity(std::size_t n_bits, const std::vector<std::size_t>& gate_counts,
                                          std::size_t seeds, std::uint64_t seed0 = 0) {
    std::vector<BenchRow> rows;
    for (std::size_t ng : gate_counts)
        for (std::uint64_t s = seed0; s < seed0 + seeds; ++s)
            rows.push_back(bench_one(gen_parity(n_bits, ng, s), s, 0, ng, 0.0));
    return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows, bool parity) {
    std::ostringstream o;
    if (parity) {
        o << "seed,n_gates,spiders_naive,spiders_ours,grounds_ours\n";
        for (const auto& r : rows)
            o << r.seed << ',' << r.n_gates << ',' << r.spiders_naive << ',' << r.spiders_ours << ','
              << r.grounds_ours << '\n';
    } else {
        o << "seed,n_qubits,n_gates,p_meas,spiders_naive,spiders_ours,grounds_ours\n";
        for (const auto& r : rows) {
            char pm[16];
            std::snprintf(pm, sizeof pm, "%.2f", r.p_meas);
            o << r.seed << ',' << r.n_qubits << ',' << r.n_gates << ',' << pm << ',' << r.spiders_naive << ','
              << r.spiders_ours << ',' << r.grounds_ours << '\n';
        }
    }
    return o.str();
}

}  // namespace zxg
