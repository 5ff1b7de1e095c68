#pragma once

// Test-side oracles: dense matrices built directly from their definitions,
// independent of the contraction engine.

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "zxg/circuit.hpp"
#include "zxg/diagram.hpp"
#include "zxg/semantics.hpp"

namespace zxg::test {

using Matrix = std::vector<std::vector<cplx>>;

inline Matrix zeros(std::size_t r, std::size_t c) { return Matrix(r, std::vector<cplx>(c, 0)); }

/// Matrix of the map |x> -> amp(x) |f(x)> on n qubits (qubit k = bit k).
inline Matrix basis_map(std::size_t n, const std::function<std::size_t(std::size_t)>& f,
                        const std::function<cplx(std::size_t)>& amp) {
    Matrix m = zeros(std::size_t{1} << n, std::size_t{1} << n);
    for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) m[f(x)][x] += amp(x);
    return m;
}

inline Matrix one_qubit(std::size_t n, std::size_t q, cplx a, cplx b, cplx c, cplx d) {
    Matrix m = zeros(std::size_t{1} << n, std::size_t{1} << n);
    const cplx u[2][2] = {{a, b}, {c, d}};
    for (std::size_t x = 0; x < (std::size_t{1} << n); ++x)
        for (std::size_t bit = 0; bit < 2; ++bit) {
            const std::size_t y = (x & ~(std::size_t{1} << q)) | (bit << q);
            m[y][x] += u[bit][(x >> q) & 1u];
        }
    return m;
}

inline Matrix hadamard_on(std::size_t n, std::size_t q) {
    const double r = 1 / std::sqrt(2.0);
    return one_qubit(n, q, r, r, r, -r);
}

inline Matrix cnot_on(std::size_t n, std::size_t c, std::size_t t) {
    return basis_map(n, [=](std::size_t x) { return x ^ (((x >> c) & 1u) << t); }, [](std::size_t) { return cplx(1.0); });
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    Matrix r = zeros(a.size(), b[0].size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

/// Superoperator of rho -> sum_k K rho K^dagger.
inline Superoperator kraus_channel(const std::vector<Matrix>& ks, std::size_t n_in, std::size_t n_out) {
    Superoperator s(n_in, n_out);
    const std::size_t di = std::size_t{1} << n_in, dout = std::size_t{1} << n_out;
    for (const auto& k : ks)
        for (std::size_t io = 0; io < dout; ++io)
            for (std::size_t jo = 0; jo < dout; ++jo)
                for (std::size_t ii = 0; ii < di; ++ii)
                    for (std::size_t ji = 0; ji < di; ++ji)
                        s.at(io + dout * jo, ii + di * ji) += k[io][ii] * std::conj(k[jo][ji]);
    return s;
}

inline Superoperator unitary_channel(const Matrix& u, std::size_t n) { return kraus_channel({u}, n, n); }

/// Measurement in the computational basis on qubit q of n.
inline Superoperator dephasing_channel(std::size_t n, std::size_t q) {
    std::vector<Matrix> ks;
    for (std::size_t b = 0; b < 2; ++b)
        ks.push_back(basis_map(n, [](std::size_t x) { return x; },
                               [=](std::size_t x) { return cplx(((x >> q) & 1u) == b ? 1.0 : 0.0); }));
    return kraus_channel(ks, n, n);
}

inline bool same_channel(const Superoperator& a, const Superoperator& b, double tol = 1e-9) {
    return equiv_up_to_scalar(a, b, tol).equivalent;
}

/// Random small diagram: spiders with Clifford+T phases, random grounds and
/// plain/Hadamard edges, boundaries attached to random spiders.
inline Diagram random_diagram(std::mt19937_64& rng, std::size_t n_in, std::size_t n_out, std::size_t spiders,
                              double p_edge = 0.4, double p_ground = 0.15) {
    Diagram d;
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<VertexId> s;
    for (std::size_t i = 0; i < spiders; ++i)
        s.push_back(d.add_spider(Phase(static_cast<std::int64_t>(rng() % 8), 4), u(rng) < p_ground));
    for (std::size_t i = 0; i < spiders; ++i)
        for (std::size_t j = i + 1; j < spiders; ++j)
            if (u(rng) < p_edge) d.add_edge(s[i], s[j], rng() % 3 ? EdgeKind::hadamard : EdgeKind::plain);
    for (std::size_t i = 0; i < n_in; ++i)
        d.add_edge(d.add_input(), s[rng() % spiders], rng() % 2 ? EdgeKind::hadamard : EdgeKind::plain);
    for (std::size_t i = 0; i < n_out; ++i)
        d.add_edge(d.add_output(), s[rng() % spiders], rng() % 2 ? EdgeKind::hadamard : EdgeKind::plain);
    return d;
}

/// Random valid circuit over every gate kind, tracking which wires are live.
inline HybridCircuit random_hybrid_circuit(std::mt19937_64& rng, std::size_t nq, std::size_t nc, std::size_t gates) {
    HybridCircuit c = HybridCircuit::make(nq, nc);
    std::vector<bool> live(nq + nc, true);
    auto pick = [&](WireType t, bool want_live) -> std::optional<std::size_t> {
        std::vector<std::size_t> ws;
        for (std::size_t w = 0; w < c.wires.size(); ++w)
            if (c.wires[w] == t && live[w] == want_live) ws.push_back(w);
        if (ws.empty()) return std::nullopt;
        return ws[rng() % ws.size()];
    };
    auto pick2 = [&](WireType t) -> std::optional<std::pair<std::size_t, std::size_t>> {
        std::vector<std::size_t> ws;
        for (std::size_t w = 0; w < c.wires.size(); ++w)
            if (c.wires[w] == t && live[w]) ws.push_back(w);
        if (ws.size() < 2) return std::nullopt;
        const std::size_t i = rng() % ws.size();
        std::size_t j = rng() % (ws.size() - 1);
        if (j >= i) ++j;
        return std::pair{ws[i], ws[j]};
    };
    std::size_t tries = 0;
    while (c.gates.size() < gates && tries++ < 50 * gates + 50) {
        const auto kind = static_cast<GateKind>(rng() % 17);
        const Phase ph(static_cast<std::int64_t>(rng() % 8), 4);
        std::optional<Gate> g;
        using K = GateKind;
        switch (kind) {
            case K::h:
            case K::zphase:
            case K::xphase:
            case K::qterm:
                if (auto q = pick(WireType::quantum, true)) g = Gate{kind, *q, 0, ph};
                break;
            case K::qinit:
                if (auto q = pick(WireType::quantum, false)) g = Gate::qinit(*q);
                break;
            case K::cnot:
            case K::cz:
            case K::swap:
                if (auto p = pick2(WireType::quantum)) g = Gate{kind, p->first, p->second};
                break;
            case K::bit_not:
            case K::discard:
                if (auto b = pick(WireType::classical, true)) g = Gate{kind, *b};
                break;
            case K::bit_xor:
            case K::swap_bits:
                if (auto p = pick2(WireType::classical)) g = Gate{kind, p->first, p->second};
                break;
            case K::fanout: {
                auto a = pick(WireType::classical, true), b = pick(WireType::classical, false);
                if (a && b) g = Gate::fanout(*a, *b);
                break;
            }
            case K::measure: {
                auto a = pick(WireType::quantum, true), b = pick(WireType::classical, false);
                if (a && b) g = Gate::measure(*a, *b);
                break;
            }
            case K::prepare: {
                auto a = pick(WireType::classical, true), b = pick(WireType::quantum, false);
                if (a && b) g = Gate::prepare(*a, *b);
                break;
            }
            case K::ctrl_x:
            case K::ctrl_z: {
                auto a = pick(WireType::classical, true), b = pick(WireType::quantum, true);
                if (a && b) g = Gate{kind, *a, *b};
                break;
            }
        }
        if (!g) continue;
        for (std::size_t s = 0; s < g->arity(); ++s) {
            const auto e = slot_effect(g->kind, s);
            if (e == SlotEffect::create) live[gate_operand(*g, s)] = true;
            if (e == SlotEffect::kill) live[gate_operand(*g, s)] = false;
        }
        c.gates.push_back(*g);
    }
    return c;
}

}  // namespace zxg::test
