#pragma once

// Wire labels marking which parts of a circuit can run classically.
// Labels: Q (anything), X/Y/Z (diagonal in that basis), Bot (maximally mixed).

#include <array>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "zxg/circuit.hpp"
#include "zxg/error.hpp"
#include "zxg/semantics.hpp"

namespace zxg {

enum class Label { Q, X, Y, Z, Bot };

inline const char* label_name(Label l) {
    switch (l) {
        case Label::Q: return "Q";
        case Label::X: return "X";
        case Label::Y: return "Y";
        case Label::Z: return "Z";
        case Label::Bot: return "Bot";
    }
    return "?";
}

/// Partial order: Q above X, Y, Z, which are above Bot.
inline bool label_leq(Label a, Label b) {
    if (a == b || b == Label::Q || a == Label::Bot) return true;
    return false;
}

/// Combination of two wires through a phaseless green spider.
inline Label star(Label a, Label b) {
    using L = Label;
    if (a == L::Z || b == L::Z) return L::Z;
    if (a == L::X) return b;
    if (b == L::X) return a;
    // a, b in {Y, Q, Bot}
    if (a == L::Y && b == L::Y) return L::X;
    if (a == L::Bot && b == L::Bot) return L::Bot;
    if (a == L::Bot || b == L::Bot) return (a == L::Q || b == L::Q) ? L::Z : L::Bot;
    return L::Q;
}

/// Z rotation by alpha.
inline Label rot(Phase alpha, Label a) {
    if (a != Label::X && a != Label::Y) return a;
    if (alpha.is_pauli()) return a;
    if (alpha.is_proper_clifford()) return a == Label::X ? Label::Y : Label::X;
    return Label::Q;
}

inline Label hlabel(Label a) {
    if (a == Label::X) return Label::Z;
    if (a == Label::Z) return Label::X;
    return a;
}

/// Greatest lower bound.
inline Label meet(Label a, Label b) {
    if (label_leq(a, b)) return a;
    if (label_leq(b, a)) return b;
    return Label::Bot;
}

/// A position on a circuit wire: just before gate `before_gate` (or after the
/// last gate when it equals the gate count).
struct WireSegment {
    std::size_t wire;
    std::size_t before_gate;
    bool operator==(const WireSegment&) const = default;
};

struct LabelNode {
    enum class Kind { spider, hbox, input, output, ground };
    Kind kind;
    Phase phase{};
    std::optional<std::size_t> gate;  // the circuit gate this node belongs to
};

struct LabelEdge {
    std::size_t a, b;
    Label at_a = Label::Q, at_b = Label::Q;  // label drawn at each end
    std::optional<WireSegment> segment;     // set for wires between gates
    bool classical() const { return at_a != Label::Q || at_b != Label::Q; }
};

struct Labelling {
    std::vector<LabelNode> nodes;
    std::vector<LabelEdge> edges;
    std::vector<std::vector<std::size_t>> incident;  // node -> edges
    std::size_t changes = 0;

    std::size_t endpoints() const { return 2 * edges.size(); }
    const LabelEdge* segment(const WireSegment& s) const {
        for (const auto& e : edges)
            if (e.segment == s) return &e;
        return nullptr;
    }
};

struct ClassicalizeResult {
    Labelling labelling;
    std::vector<bool> classical_gate;
};

namespace detail {

/// Green-spider diagram of a circuit with explicit Hadamard boxes.
class LabelGraphBuilder {
public:
    explicit LabelGraphBuilder(const HybridCircuit& c) : c_(c), tail_(c.wires.size()) {}

    Labelling build() {
        c_.validate();
        for (std::size_t w : c_.input_wires()) {
            const std::size_t n = node(LabelNode::Kind::input, {}, std::nullopt);
            tail_[w] = n;
            if (c_.wires[w] == WireType::classical) pending_boundary_.push_back(n);
        }
        for (gi_ = 0; gi_ < c_.gates.size(); ++gi_) apply(c_.gates[gi_]);
        for (std::size_t w : c_.output_wires()) {
            const std::size_t n = node(LabelNode::Kind::output, {}, std::nullopt);
            seg(w, n);
            if (c_.wires[w] == WireType::classical) pending_boundary_.push_back(n);
        }
        L_.incident.assign(L_.nodes.size(), {});
        for (std::size_t e = 0; e < L_.edges.size(); ++e) {
            L_.incident[L_.edges[e].a].push_back(e);
            L_.incident[L_.edges[e].b].push_back(e);
        }
        for (std::size_t n : pending_boundary_)
            for (std::size_t e : L_.incident[n]) set_end(e, n, Label::Z);
        for (std::size_t n = 0; n < L_.nodes.size(); ++n)
            if (L_.nodes[n].kind == LabelNode::Kind::ground)
                for (std::size_t e : L_.incident[n]) set_end(e, n, Label::Bot);
        return std::move(L_);
    }

private:
    using K = LabelNode::Kind;

    std::size_t node(K k, Phase p, std::optional<std::size_t> gate) {
        L_.nodes.push_back({k, p, gate});
        return L_.nodes.size() - 1;
    }
    std::size_t gnode(K k, Phase p = {}) { return node(k, p, gi_); }
    void edge(std::size_t a, std::size_t b, std::optional<WireSegment> s = std::nullopt) {
        L_.edges.push_back({a, b, Label::Q, Label::Q, s});
    }
    /// Closes the segment of wire w at node n.
    void seg(std::size_t w, std::size_t n) {
        if (!tail_[w]) throw InvariantError("classicalize: wire used while dead");
        edge(*tail_[w], n, WireSegment{w, gi_});
        tail_[w].reset();
    }
    void set_end(std::size_t e, std::size_t n, Label l) {
        auto& x = L_.edges[e];
        (x.a == n ? x.at_a : x.at_b) = l;
    }

    /// Puts an X-spider (green with Hadamard boxes on the wire legs) on w.
    std::size_t x_spider(std::size_t w, Phase p) {
        const std::size_t h1 = gnode(K::hbox), s = gnode(K::spider, p), h2 = gnode(K::hbox);
        seg(w, h1);
        edge(h1, s);
        edge(s, h2);
        tail_[w] = h2;
        return s;
    }
    std::size_t z_spider(std::size_t w, Phase p) {
        const std::size_t s = gnode(K::spider, p);
        seg(w, s);
        tail_[w] = s;
        return s;
    }
    void h_link(std::size_t a, std::size_t b) {
        const std::size_t h = gnode(K::hbox);
        edge(a, h);
        edge(h, b);
    }
    std::size_t grounded_spider(std::size_t w) {
        const std::size_t s = gnode(K::spider), g = gnode(K::ground);
        seg(w, s);
        edge(s, g);
        return s;
    }

    void apply(const Gate& g) {
        using GK = GateKind;
        switch (g.kind) {
            case GK::h: {
                const std::size_t h = gnode(K::hbox);
                seg(g.a, h);
                tail_[g.a] = h;
                break;
            }
            case GK::zphase: z_spider(g.a, g.phase); break;
            case GK::xphase: x_spider(g.a, g.phase); break;
            case GK::bit_not: x_spider(g.a, Phase::pi()); break;
            case GK::cnot:
            case GK::bit_xor:
            case GK::ctrl_x: {
                const std::size_t c = z_spider(g.a, {});
                const std::size_t t = x_spider(g.b, {});
                h_link(c, t);
                break;
            }
            case GK::cz:
            case GK::ctrl_z: h_link(z_spider(g.a, {}), z_spider(g.b, {})); break;
            case GK::swap:
            case GK::swap_bits: std::swap(tail_[g.a], tail_[g.b]); break;
            case GK::qinit: {
                const std::size_t s = gnode(K::spider), h = gnode(K::hbox);
                edge(s, h);
                tail_[g.a] = h;
                break;
            }
            case GK::qterm:
            case GK::discard: {
                const std::size_t gr = gnode(K::ground);
                seg(g.a, gr);
                break;
            }
            case GK::measure:
            case GK::prepare: tail_[g.b] = grounded_spider(g.a); break;
            case GK::fanout: {
                const std::size_t s = grounded_spider(g.a);
                tail_[g.a] = s;
                tail_[g.b] = s;
                break;
            }
        }
    }

    const HybridCircuit& c_;
    Labelling L_;
    std::vector<std::optional<std::size_t>> tail_;
    std::vector<std::size_t> pending_boundary_;
    std::size_t gi_ = 0;
};

inline Label& end_label(LabelEdge& e, std::size_t n) { return e.a == n ? e.at_a : e.at_b; }
inline Label far_label(const LabelEdge& e, std::size_t n) { return e.a == n ? e.at_b : e.at_a; }
inline std::size_t far_node(const LabelEdge& e, std::size_t n) { return e.a == n ? e.b : e.a; }

/// Runs rules (ch) and (cz) to a fixpoint with a FIFO worklist.
inline void propagate(Labelling& L) {
    std::deque<std::size_t> work;
    std::vector<bool> queued(L.nodes.size(), false);
    auto push = [&](std::size_t n) {
        if (!queued[n]) {
            queued[n] = true;
            work.push_back(n);
        }
    };
    for (std::size_t n = 0; n < L.nodes.size(); ++n) push(n);
    while (!work.empty()) {
        const std::size_t n = work.front();
        work.pop_front();
        queued[n] = false;
        const auto& node = L.nodes[n];
        const auto& inc = L.incident[n];
        std::vector<Label> want;
        if (node.kind == LabelNode::Kind::hbox) {
            if (inc.size() != 2) throw InvariantError("classicalize: Hadamard box without two wires");
            want = {hlabel(far_label(L.edges[inc[1]], n)), hlabel(far_label(L.edges[inc[0]], n))};
        } else if (node.kind == LabelNode::Kind::spider) {
            for (std::size_t i = 0; i < inc.size(); ++i) {
                Label acc = Label::X;
                for (std::size_t j = 0; j < inc.size(); ++j)
                    if (j != i) acc = star(acc, far_label(L.edges[inc[j]], n));
                want.push_back(rot(node.phase, acc));
            }
        } else {
            continue;
        }
        for (std::size_t i = 0; i < inc.size(); ++i) {
            Label& cur = end_label(L.edges[inc[i]], n);
            const Label next = meet(cur, want[i]);
            if (next == cur) continue;
            cur = next;
            ++L.changes;
            push(far_node(L.edges[inc[i]], n));
        }
    }
}

}  // namespace detail

inline ClassicalizeResult classicalize(const HybridCircuit& c) {
    ClassicalizeResult r;
    r.labelling = detail::LabelGraphBuilder(c).build();
    detail::propagate(r.labelling);
    const auto& L = r.labelling;
    r.classical_gate.assign(c.gates.size(), true);
    std::vector<bool> touched(c.gates.size(), false);
    for (const auto& e : L.edges) {
        for (std::size_t n : {e.a, e.b}) {
            const auto& g = L.nodes[n].gate;
            if (!g) continue;
            touched[*g] = true;
            if (!e.classical()) r.classical_gate[*g] = false;
        }
    }
    // Swaps have no nodes; they are classical when both incoming wires are.
    for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
        if (touched[gi]) continue;
        const Gate& g = c.gates[gi];
        bool all = true;
        for (std::size_t s = 0; s < g.arity(); ++s) {
            const std::size_t w = gate_operand(g, s);
            bool found = false;
            for (const auto& e : L.edges)
                if (e.segment && e.segment->wire == w && e.segment->before_gate == gi) {
                    found = true;
                    all = all && e.classical();
                }
            if (!found) all = false;
        }
        r.classical_gate[gi] = all;
    }
    return r;
}

struct LabelCheck {
    WireSegment segment;
    Label label;
    bool ok;
};

/// Checks every non-Q label on a circuit wire segment against the channel
/// semantics: dephasing in the label's basis (or replacing the wire by a
/// maximally mixed state for Bot) must leave the superoperator unchanged.
inline std::vector<LabelCheck> validate_labelling(const HybridCircuit& c, const Labelling& L, double tol = 1e-8,
                                                  const SemanticsLimits& lim = {}) {
    if (c.wires.size() > 5) throw SizeLimitError("validate_labelling: more than 5 wires");
    const auto base = circuit_superoperator(c, {}, lim);
    std::vector<LabelCheck> out;
    for (const auto& e : L.edges) {
        if (!e.segment) continue;
        for (Label l : {e.at_a, e.at_b}) {
            if (l == Label::Q) continue;
            InsertKind k = InsertKind::dephase_z;
            if (l == Label::X) k = InsertKind::dephase_x;
            if (l == Label::Y) k = InsertKind::dephase_y;
            if (l == Label::Bot) k = InsertKind::replace_mixed;
            const auto s = circuit_superoperator(c, {Insertion{e.segment->before_gate, e.segment->wire, k}}, lim);
            out.push_back({*e.segment, l, equiv_up_to_scalar(base, s, tol).equivalent});
        }
    }
    return out;
}

}  // namespace zxg
