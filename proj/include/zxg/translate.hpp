#pragma once

// Circuit -> ZX-ground diagram. Gates are placed left to right. Each wire
// keeps its current end vertex and whether a Hadamard is pending on it; an
// X-spider is stored as a Z-spider whose incident edges are all toggled.

#include <cstddef>
#include <vector>

#include "zxg/circuit.hpp"
#include "zxg/diagram.hpp"
#include "zxg/error.hpp"

namespace zxg {

namespace detail {

class DiagramBuilder {
public:
    explicit DiagramBuilder(const HybridCircuit& c) : c_(c), end_(c.wires.size()), pend_(c.wires.size(), false) {
        for (std::size_t w : c.input_wires()) end_[w] = d_.add_input(c.wires[w] == WireType::classical);
    }

    Diagram finish() {
        for (std::size_t w : c_.output_wires()) {
            const VertexId o = d_.add_output(c_.wires[w] == WireType::classical);
            d_.add_edge(end_[w], o, pend_[w] ? EdgeKind::hadamard : EdgeKind::plain);
        }
        return std::move(d_);
    }

    void z_on(std::size_t w, VertexId s) { attach(w, s, false); }
    void x_on(std::size_t w, VertexId s) { attach(w, s, true); }

    VertexId spider(Phase p = {}, bool grounded = false) { return d_.add_spider(p, grounded); }

    void apply(const Gate& g) {
        using K = GateKind;
        switch (g.kind) {
            case K::h: pend_[g.a] = !pend_[g.a]; break;
            case K::zphase: z_on(g.a, spider(g.phase)); break;
            case K::xphase: x_on(g.a, spider(g.phase)); break;
            case K::bit_not: x_on(g.a, spider(Phase::pi())); break;
            case K::cnot:
            case K::bit_xor:
            case K::ctrl_x: {
                const VertexId zc = spider(), xt = spider();
                z_on(g.a, zc);
                x_on(g.b, xt);
                d_.add_edge(zc, xt, EdgeKind::hadamard);
                break;
            }
            case K::cz:
            case K::ctrl_z: {
                const VertexId za = spider(), zb = spider();
                z_on(g.a, za);
                z_on(g.b, zb);
                d_.add_edge(za, zb, EdgeKind::hadamard);
                break;
            }
            case K::swap:
            case K::swap_bits:
                std::swap(end_[g.a], end_[g.b]);
                std::swap(pend_[g.a], pend_[g.b]);
                break;
            case K::qinit: {
                // |0> is a one-legged X-spider.
                end_[g.a] = spider();
                pend_[g.a] = true;
                break;
            }
            case K::qterm:
            case K::discard: z_on(g.a, spider({}, true)); break;
            case K::fanout: {
                const VertexId s = spider({}, true);
                z_on(g.a, s);
                end_[g.b] = s;
                pend_[g.b] = false;
                break;
            }
            case K::measure:
            case K::prepare: {
                const VertexId s = spider({}, true);
                z_on(g.a, s);
                end_[g.b] = s;
                pend_[g.b] = false;
                break;
            }
        }
    }

private:
    void attach(std::size_t w, VertexId s, bool x_spider) {
        const bool h = pend_[w] != x_spider;
        d_.add_edge(end_[w], s, h ? EdgeKind::hadamard : EdgeKind::plain);
        end_[w] = s;
        pend_[w] = x_spider;
    }

    const HybridCircuit& c_;
    Diagram d_;
    std::vector<VertexId> end_;
    std::vector<bool> pend_;
};

}  // namespace detail

/// Overwrites the classical flags of d's boundaries with c's wire types.
inline Diagram record_boundary_types(const HybridCircuit& c, Diagram d) {
    const auto ins = c.input_wires();
    const auto outs = c.output_wires();
    if (ins.size() != d.inputs().size() || outs.size() != d.outputs().size())
        throw PreconditionError("record_boundary_types: boundary count does not match the circuit");
    for (std::size_t i = 0; i < ins.size(); ++i) d.set_input_classical(i, c.wires[ins[i]] == WireType::classical);
    for (std::size_t i = 0; i < outs.size(); ++i) d.set_output_classical(i, c.wires[outs[i]] == WireType::classical);
    return d;
}

/// Translation without the final strictification.
inline Diagram circuit_to_weak_diagram(const HybridCircuit& c) {
    c.validate();
    detail::DiagramBuilder b(c);
    for (const auto& g : c.gates) b.apply(g);
    Diagram d = b.finish();
    normalize_in_place(d);
    return record_boundary_types(c, std::move(d));
}

inline Diagram circuit_to_diagram(const HybridCircuit& c) {
    Diagram d = circuit_to_weak_diagram(c);
    to_strict_graph_like_in_place(d);
    return d;
}

}  // namespace zxg
