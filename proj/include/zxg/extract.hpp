#pragma once

// Circuit extraction from strictly graph-like diagrams with a focused gFlow.
// The diagram is consumed from the outputs backwards. Every frontier spider
// owns a line; lines are turned into typed circuit wires at the end.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zxg/circuit.hpp"
#include "zxg/diagram.hpp"
#include "zxg/error.hpp"
#include "zxg/gf2.hpp"
#include "zxg/gflow.hpp"

namespace zxg {

struct ExtractConfig {
    bool check_invariants = false;  // gFlow after every loop iteration
};

/// One operation on extraction lines, before wire assignment.
struct LineOp {
    enum class Kind { h, z, cz, cnot, dephase, discard, init_plus, bind };
    Kind kind;
    std::size_t a = 0, b = 0;  // lines; for bind, b is the input position
    Phase phase{};
};

struct Frontier {
    std::set<VertexId> members;
    std::map<VertexId, std::size_t> qubit_of;
};

namespace detail {

class Extractor {
public:
    Extractor(Diagram d, const ExtractConfig& cfg) : d_(std::move(d)), cfg_(cfg) {}

    std::vector<LineOp> run() {
        // Every output becomes a line; its boundary vertex stays in the
        // diagram so that gFlow checks see the frontier as sinks.
        const auto outs = d_.outputs();
        for (std::size_t i = 0; i < outs.size(); ++i) {
            const auto nb = d_.boundary_neighbor(outs[i].id);
            if (!nb || !d_.is_spider(nb->first)) throw PreconditionError("extract: output not attached to a spider");
            const VertexId v = nb->first;
            const std::size_t q = new_line(outs[i].id);
            if (nb->second == EdgeKind::hadamard) {
                emit({LineOp::Kind::h, q});
                d_.set_edge_kind(outs[i].id, v, EdgeKind::plain);
            }
            f_.members.insert(v);
            f_.qubit_of[v] = q;
        }
        clean_frontier();
        std::size_t guard = d_.vertices().size() + 1;
        while (d_.num_spiders() > 0) {
            if (guard-- == 0) throw InvariantError("extract: no progress");
            step();
            clean_frontier();
            if (cfg_.check_invariants && !find_focused_gflow(underlying_open_graph(d_)))
                throw InvariantError("extract: gFlow lost after step " + std::to_string(steps_));
        }
        std::reverse(ops_.begin(), ops_.end());
        return ops_;
    }

    std::size_t lines() const { return line_boundary_.size(); }
    std::size_t steps() const { return steps_; }

private:
    std::size_t new_line(VertexId boundary) {
        line_boundary_.push_back(boundary);
        return line_boundary_.size() - 1;
    }
    void emit(LineOp op) { ops_.push_back(op); }

    std::size_t input_position(VertexId b) const {
        const auto& ins = d_.inputs();
        for (std::size_t j = 0; j < ins.size(); ++j)
            if (ins[j].id == b) return j;
        throw InvariantError("extract: unknown input");
    }

    VertexId line_end(VertexId v) const { return line_boundary_.at(f_.qubit_of.at(v)); }

    void clean_frontier() {
        bool again = true;
        while (again) {
            again = false;
            for (VertexId v : std::vector<VertexId>(f_.members.begin(), f_.members.end())) {
                const std::size_t q = f_.qubit_of.at(v);
                if (d_.grounded(v)) {
                    d_.set_grounded(v, false);
                    emit({LineOp::Kind::dephase, q});
                }
                if (!d_.phase(v).is_zero()) {
                    emit({LineOp::Kind::z, q, 0, d_.phase(v)});
                    d_.set_phase(v, {});
                }
                std::vector<VertexId> fr;
                for (const auto& [w, k] : d_.neighbors(v))
                    if (f_.members.count(w)) fr.push_back(w);
                for (VertexId w : fr) {
                    if (d_.edge(v, w) != EdgeKind::hadamard) throw InvariantError("extract: plain edge inside the frontier");
                    emit({LineOp::Kind::cz, q, f_.qubit_of.at(w)});
                    d_.remove_edge(v, w);
                }
                // Left with its line and possibly its input.
                std::optional<std::pair<VertexId, EdgeKind>> input;
                std::size_t others = 0;
                for (const auto& [w, k] : d_.neighbors(v)) {
                    if (w == line_end(v)) continue;
                    if (d_.is_boundary(w) && d_.is_input(w)) input = std::make_pair(w, k);
                    else ++others;
                }
                if (others > 0) continue;
                if (input) {
                    if (input->second == EdgeKind::hadamard) emit({LineOp::Kind::h, q});
                    emit({LineOp::Kind::bind, q, input_position(input->first)});
                    bound_inputs_.insert(input->first);
                } else {
                    emit({LineOp::Kind::init_plus, q});
                }
                remove_frontier(v);
                again = true;
            }
        }
    }

    void remove_frontier(VertexId v) {
        f_.members.erase(v);
        f_.qubit_of.erase(v);
        d_.remove_vertex(v);
    }

    void step() {
        ++steps_;
        // Rows: frontier spiders off the inputs. Columns: their other neighbours.
        std::vector<VertexId> rows;
        std::set<VertexId> colset;
        for (VertexId v : f_.members) {
            if (d_.is_input_spider(v)) continue;
            rows.push_back(v);
            for (const auto& [w, k] : d_.neighbors(v))
                if (d_.is_spider(w) && !f_.members.count(w)) colset.insert(w);
        }
        const std::vector<VertexId> cols(colset.begin(), colset.end());
        std::map<VertexId, std::size_t> col_of;
        for (std::size_t c = 0; c < cols.size(); ++c) col_of[cols[c]] = c;
        Gf2Matrix m(rows.size(), cols.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (const auto& [w, k] : d_.neighbors(rows[r])) {
                auto it = col_of.find(w);
                if (it != col_of.end()) m.set(r, it->second, true);
            }
        const auto red = rref_with_ops(m);
        std::vector<VertexId> order = rows;
        for (const auto& op : red.ops) {
            if (op.kind == RowOp::Kind::swap) {
                std::swap(order[op.a], order[op.b]);
                continue;
            }
            // row(target) += row(source)
            const VertexId src = order[op.a], tgt = order[op.b];
            for (const auto& [w, k] : std::map<VertexId, EdgeKind>(d_.neighbors(src))) {
                if (!col_of.count(w)) continue;
                if (d_.connected(tgt, w)) d_.remove_edge(tgt, w);
                else d_.add_edge(tgt, w, EdgeKind::hadamard);
            }
            emit({LineOp::Kind::cnot, f_.qubit_of.at(tgt), f_.qubit_of.at(src)});
        }
        const auto units = unit_rows(red.reduced);
        if (!units.empty()) {
            const auto [r, c] = units.front();
            promote(order[r], cols[c]);
            return;
        }
        // No unit row: open a new line on a ground-spider, preferring
        // neighbours of the frontier.
        std::optional<VertexId> g;
        for (VertexId c : cols)
            if (d_.grounded(c)) {
                g = c;
                break;
            }
        if (!g)
            for (VertexId v : d_.spiders())
                if (d_.grounded(v) && !f_.members.count(v)) {
                    g = v;
                    break;
                }
        if (!g) throw InvariantError("extract: no unit row and no ground-spider at step " + std::to_string(steps_));
        const VertexId b = d_.add_output();
        d_.add_edge(b, *g, EdgeKind::plain);
        const std::size_t q = new_line(b);
        emit({LineOp::Kind::discard, q});
        f_.members.insert(*g);
        f_.qubit_of[*g] = q;
    }

    /// Frontier spider v whose only other neighbour is u hands its line to u.
    void promote(VertexId v, VertexId u) {
        const std::size_t q = f_.qubit_of.at(v);
        const VertexId b = line_boundary_.at(q);
        if (d_.edge(v, u) == EdgeKind::hadamard) emit({LineOp::Kind::h, q});
        const EdgeKind k = EdgeKind::plain;
        remove_frontier(v);
        d_.add_edge(b, u, k);
        f_.members.insert(u);
        f_.qubit_of[u] = q;
    }

    Diagram d_;
    const ExtractConfig& cfg_;
    Frontier f_;
    std::vector<VertexId> line_boundary_;
    std::set<VertexId> bound_inputs_;
    std::vector<LineOp> ops_;
    std::size_t steps_ = 0;
};

/// Turns line operations into a typed circuit. Inputs keep their positions
/// and types; outputs are reordered at the end when needed.
class Lowering {
public:
    Lowering(const Diagram& d, std::size_t lines) : d_(d), line_(lines) {}

    HybridCircuit run(const std::vector<LineOp>& ops, const std::vector<std::size_t>& output_lines) {
        for (std::size_t j = 0; j < d_.inputs().size(); ++j)
            wire(d_.inputs()[j].classical ? WireType::classical : WireType::quantum, static_cast<int>(j), -1);
        for (const auto& op : ops) apply(op);
        for (std::size_t i = 0; i < output_lines.size(); ++i) {
            const std::size_t l = output_lines[i];
            if (d_.outputs()[i].classical) to_classical(l);
            else to_quantum(l);
            wires_[line_[l].current].out_rank = static_cast<int>(i);
        }
        return assemble();
    }

private:
    struct AbstractWire {
        WireType type;
        int in_rank = -1, out_rank = -1;
    };
    struct Line {
        std::size_t current = SIZE_MAX;      // abstract wire holding the line now
        std::size_t qwire = SIZE_MAX, cwire = SIZE_MAX;
    };
    struct AGate {
        GateKind kind;
        std::size_t a, b;
        Phase phase;
    };

    std::size_t wire(WireType t, int in_rank, int out_rank) {
        wires_.push_back({t, in_rank, out_rank});
        return wires_.size() - 1;
    }
    void gate(GateKind k, std::size_t a, std::size_t b = 0, Phase p = {}) { gates_.push_back({k, a, b, p}); }

    bool is_quantum(std::size_t l) const { return wires_[line_[l].current].type == WireType::quantum; }

    void to_quantum(std::size_t l) {
        Line& ln = line_[l];
        if (is_quantum(l)) return;
        if (ln.qwire == SIZE_MAX) ln.qwire = wire(WireType::quantum, -1, -1);
        gate(GateKind::prepare, ln.current, ln.qwire);
        ln.current = ln.qwire;
    }
    void to_classical(std::size_t l) {
        Line& ln = line_[l];
        if (!is_quantum(l)) return;
        if (ln.cwire == SIZE_MAX) ln.cwire = wire(WireType::classical, -1, -1);
        gate(GateKind::measure, ln.current, ln.cwire);
        ln.current = ln.cwire;
    }

    void apply(const LineOp& op) {
        using K = LineOp::Kind;
        switch (op.kind) {
            case K::bind: {
                Line& ln = line_[op.a];
                ln.current = op.b;
                (wires_[op.b].type == WireType::quantum ? ln.qwire : ln.cwire) = op.b;
                break;
            }
            case K::init_plus: {
                Line& ln = line_[op.a];
                ln.qwire = ln.current = wire(WireType::quantum, -1, -1);
                gate(GateKind::qinit, ln.current);
                gate(GateKind::h, ln.current);
                break;
            }
            case K::h:
                to_quantum(op.a);
                gate(GateKind::h, line_[op.a].current);
                break;
            case K::z:
                // A Z phase of pi on a bit is a no-op after dephasing, but the
                // line may be read coherently later; keep it quantum.
                to_quantum(op.a);
                gate(GateKind::zphase, line_[op.a].current, 0, op.phase);
                break;
            case K::cz:
                to_quantum(op.a);
                to_quantum(op.b);
                gate(GateKind::cz, line_[op.a].current, line_[op.b].current);
                break;
            case K::cnot:
                to_quantum(op.a);
                to_quantum(op.b);
                gate(GateKind::cnot, line_[op.a].current, line_[op.b].current);
                break;
            case K::dephase: to_classical(op.a); break;
            case K::discard: {
                const std::size_t w = line_[op.a].current;
                gate(is_quantum(op.a) ? GateKind::qterm : GateKind::discard, w);
                break;
            }
        }
    }

    /// Orders the wires of one type: inputs by rank, outputs by rank. A wire
    /// that is both and would break the output order gets its output moved to
    /// a fresh wire.
    std::vector<std::size_t> order_block(WireType t) {
        std::vector<std::size_t> by_in, by_out;
        for (std::size_t w = 0; w < wires_.size(); ++w) {
            if (wires_[w].type != t) continue;
            if (wires_[w].in_rank >= 0) by_in.push_back(w);
        }
        std::sort(by_in.begin(), by_in.end(), [&](auto x, auto y) { return wires_[x].in_rank < wires_[y].in_rank; });
        int last_out = -1;
        for (std::size_t w : by_in) {
            if (wires_[w].out_rank < 0) continue;
            if (wires_[w].out_rank > last_out) {
                last_out = wires_[w].out_rank;
                continue;
            }
            relocate(w);
        }
        for (std::size_t w = 0; w < wires_.size(); ++w)
            if (wires_[w].type == t && wires_[w].out_rank >= 0) by_out.push_back(w);
        std::sort(by_out.begin(), by_out.end(), [&](auto x, auto y) { return wires_[x].out_rank < wires_[y].out_rank; });
        // Merge the two chains; wires in both appear in the same relative order.
        std::vector<std::size_t> out;
        std::size_t i = 0, j = 0;
        while (i < by_in.size() || j < by_out.size()) {
            if (i < by_in.size() && wires_[by_in[i]].out_rank < 0) {
                out.push_back(by_in[i++]);
            } else if (j < by_out.size() && wires_[by_out[j]].in_rank < 0) {
                out.push_back(by_out[j++]);
            } else {
                // Both heads are the same wire.
                out.push_back(by_in[i]);
                ++i;
                ++j;
            }
        }
        for (std::size_t w = 0; w < wires_.size(); ++w)
            if (wires_[w].type == t && wires_[w].in_rank < 0 && wires_[w].out_rank < 0) out.push_back(w);
        return out;
    }

    void relocate(std::size_t w) {
        const int rank = wires_[w].out_rank;
        wires_[w].out_rank = -1;
        const std::size_t f = wire(wires_[w].type, -1, rank);
        if (wires_[w].type == WireType::quantum) {
            gate(GateKind::qinit, f);
            gate(GateKind::swap, w, f);
            gate(GateKind::qterm, w);
        } else {
            gate(GateKind::fanout, w, f);
            gate(GateKind::discard, w);
        }
    }

    HybridCircuit assemble() {
        const auto q = order_block(WireType::quantum);
        const auto c = order_block(WireType::classical);
        std::vector<std::size_t> index(wires_.size());
        HybridCircuit out;
        for (std::size_t w : q) {
            index[w] = out.wires.size();
            out.wires.push_back(WireType::quantum);
        }
        for (std::size_t w : c) {
            index[w] = out.wires.size();
            out.wires.push_back(WireType::classical);
        }
        for (const auto& g : gates_) {
            Gate x{g.kind, index[g.a], 0, g.phase};
            if (Gate{g.kind, 0, 0}.arity() == 2) x.b = index[g.b];
            out.gates.push_back(x);
        }
        return out;
    }

    const Diagram& d_;
    std::vector<Line> line_;
    std::vector<AbstractWire> wires_;
    std::vector<AGate> gates_;
};

}  // namespace detail

struct ExtractResult {
    HybridCircuit circuit;
    std::vector<LineOp> line_ops;
    std::size_t steps = 0;
};

inline ExtractResult extract_with_trace(const Diagram& d, const ExtractConfig& cfg = {}) {
    const auto r = check_graph_like(d, true);
    if (!r.ok()) throw PreconditionError("extract: diagram is not strictly graph-like: " + r.violations.front());
    for (const auto& list : {d.inputs(), d.outputs()})
        for (std::size_t i = 1; i < list.size(); ++i)
            if (list[i - 1].classical && !list[i].classical)
                throw PreconditionError("extract: quantum boundaries must precede classical ones");
    if (!find_focused_gflow(underlying_open_graph(d))) throw PreconditionError("extract: diagram has no focused gFlow");
    detail::Extractor ex(d, cfg);
    ExtractResult res;
    res.line_ops = ex.run();
    res.steps = ex.steps();
    std::vector<std::size_t> output_lines;
    for (std::size_t i = 0; i < d.outputs().size(); ++i) output_lines.push_back(i);
    detail::Lowering low(d, ex.lines());
    res.circuit = low.run(res.line_ops, output_lines);
    res.circuit.validate();
    return res;
}

inline HybridCircuit extract_circuit(const Diagram& d, const ExtractConfig& cfg = {}) {
    return extract_with_trace(d, cfg).circuit;
}

}  // namespace zxg
