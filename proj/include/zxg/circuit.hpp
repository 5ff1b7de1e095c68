#pragma once

// Hybrid quantum-classical circuit IR and its line-based text format.
//
// Wires are a fixed list; quantum wires come first, then classical ones. A
// wire is "live" while it carries data. Creator gates (qinit, the target of
// measure/prepare/fanout) need a dead wire and make it live; terminator gates
// (qterm, discard, the source of measure/prepare) kill it. A wire whose first
// touching gate is a creator starts dead, every other wire is a circuit input.
// Wires live after the last gate are circuit outputs.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zxg/error.hpp"
#include "zxg/phase.hpp"

namespace zxg {

enum class WireType { quantum, classical };

enum class GateKind {
    cnot,       // (control q, target q)
    cz,         // (q, q)
    h,          // (q)
    zphase,     // (q) with phase
    xphase,     // (q) with phase
    swap,       // (q, q)
    qinit,      // (q) |0> preparation
    qterm,      // (q) ancilla termination: the qubit is discarded
    bit_not,    // (c)
    bit_xor,    // (source c, target c): target ^= source
    fanout,     // (source c, fresh c)
    swap_bits,  // (c, c)
    measure,    // (q -> c)
    prepare,    // (c -> q)
    ctrl_x,     // (control c, target q)
    ctrl_z,     // (control c, target q)
    discard,    // (c)
};

struct Gate {
    GateKind kind;
    std::size_t a = 0;
    std::size_t b = 0;
    Phase phase{};

    bool operator==(const Gate&) const = default;

    std::size_t arity() const {
        switch (kind) {
            case GateKind::h:
            case GateKind::zphase:
            case GateKind::xphase:
            case GateKind::qinit:
            case GateKind::qterm:
            case GateKind::bit_not:
            case GateKind::discard: return 1;
            default: return 2;
        }
    }

    static Gate cnot(std::size_t c, std::size_t t) { return {GateKind::cnot, c, t}; }
    static Gate cz(std::size_t x, std::size_t y) { return {GateKind::cz, x, y}; }
    static Gate hadamard(std::size_t q) { return {GateKind::h, q}; }
    static Gate z(std::size_t q, Phase p) { return {GateKind::zphase, q, 0, p}; }
    static Gate x(std::size_t q, Phase p) { return {GateKind::xphase, q, 0, p}; }
    static Gate swap(std::size_t x, std::size_t y) { return {GateKind::swap, x, y}; }
    static Gate qinit(std::size_t q) { return {GateKind::qinit, q}; }
    static Gate qterm(std::size_t q) { return {GateKind::qterm, q}; }
    static Gate bit_not(std::size_t c) { return {GateKind::bit_not, c}; }
    static Gate bit_xor(std::size_t src, std::size_t tgt) { return {GateKind::bit_xor, src, tgt}; }
    static Gate fanout(std::size_t src, std::size_t fresh) { return {GateKind::fanout, src, fresh}; }
    static Gate swap_bits(std::size_t x, std::size_t y) { return {GateKind::swap_bits, x, y}; }
    static Gate measure(std::size_t q, std::size_t c) { return {GateKind::measure, q, c}; }
    static Gate prepare(std::size_t c, std::size_t q) { return {GateKind::prepare, c, q}; }
    static Gate ctrl_x(std::size_t c, std::size_t q) { return {GateKind::ctrl_x, c, q}; }
    static Gate ctrl_z(std::size_t c, std::size_t q) { return {GateKind::ctrl_z, c, q}; }
    static Gate discard(std::size_t c) { return {GateKind::discard, c}; }
};

/// Wire types expected by each operand slot.
inline WireType operand_type(GateKind k, std::size_t slot) {
    switch (k) {
        case GateKind::bit_not:
        case GateKind::bit_xor:
        case GateKind::fanout:
        case GateKind::swap_bits:
        case GateKind::discard: return WireType::classical;
        case GateKind::measure: return slot == 0 ? WireType::quantum : WireType::classical;
        case GateKind::prepare:
        case GateKind::ctrl_x:
        case GateKind::ctrl_z: return slot == 0 ? WireType::classical : WireType::quantum;
        default: return WireType::quantum;
    }
}

/// Liveness effect of an operand slot.
enum class SlotEffect { use, create, kill };

inline SlotEffect slot_effect(GateKind k, std::size_t slot) {
    switch (k) {
        case GateKind::qinit: return SlotEffect::create;
        case GateKind::qterm:
        case GateKind::discard: return SlotEffect::kill;
        case GateKind::measure:
        case GateKind::prepare: return slot == 0 ? SlotEffect::kill : SlotEffect::create;
        case GateKind::fanout: return slot == 0 ? SlotEffect::use : SlotEffect::create;
        default: return SlotEffect::use;
    }
}

inline std::size_t gate_operand(const Gate& g, std::size_t slot) { return slot == 0 ? g.a : g.b; }

struct HybridCircuit {
    std::vector<WireType> wires;
    std::vector<Gate> gates;
    std::string name;

    bool operator==(const HybridCircuit& o) const { return wires == o.wires && gates == o.gates; }

    static HybridCircuit make(std::size_t qubits, std::size_t bits = 0) {
        HybridCircuit c;
        c.wires.assign(qubits, WireType::quantum);
        c.wires.insert(c.wires.end(), bits, WireType::classical);
        return c;
    }

    std::size_t num_qubits() const {
        std::size_t n = 0;
        for (auto w : wires) n += w == WireType::quantum;
        return n;
    }
    std::size_t num_bits() const { return wires.size() - num_qubits(); }
    /// Global index of the i-th quantum / classical wire.
    std::size_t qubit(std::size_t i) const { return nth(WireType::quantum, i); }
    std::size_t bit(std::size_t i) const { return nth(WireType::classical, i); }

    std::size_t add_wire(WireType t) {
        if (t == WireType::quantum && num_bits() > 0)
            throw Error("HybridCircuit: quantum wires must precede classical ones");
        wires.push_back(t);
        return wires.size() - 1;
    }

    /// Whether each wire is live before the first gate.
    std::vector<bool> initial_liveness() const {
        std::vector<bool> live(wires.size(), true), seen(wires.size(), false);
        for (const auto& g : gates) {
            for (std::size_t s = 0; s < g.arity(); ++s) {
                const std::size_t w = gate_operand(g, s);
                if (w >= wires.size() || seen[w]) continue;
                seen[w] = true;
                live[w] = slot_effect(g.kind, s) != SlotEffect::create;
            }
        }
        return live;
    }

    std::vector<bool> final_liveness() const {
        auto live = initial_liveness();
        for (const auto& g : gates) {
            for (std::size_t s = 0; s < g.arity(); ++s) {
                const auto e = slot_effect(g.kind, s);
                if (e == SlotEffect::create) live[gate_operand(g, s)] = true;
                if (e == SlotEffect::kill) live[gate_operand(g, s)] = false;
            }
        }
        return live;
    }

    std::vector<std::size_t> input_wires() const { return indices_of(initial_liveness()); }
    std::vector<std::size_t> output_wires() const { return indices_of(final_liveness()); }

    /// Throws TypeError on operand type mismatches and liveness violations.
    void validate() const {
        for (std::size_t i = 1; i < wires.size(); ++i)
            if (wires[i - 1] == WireType::classical && wires[i] == WireType::quantum)
                throw TypeError("quantum wires must precede classical wires");
        auto live = initial_liveness();
        for (std::size_t gi = 0; gi < gates.size(); ++gi) {
            const Gate& g = gates[gi];
            if (g.arity() == 2 && g.a == g.b)
                throw TypeError(describe(gi) + ": repeated operand");
            for (std::size_t s = 0; s < g.arity(); ++s) {
                const std::size_t w = gate_operand(g, s);
                if (w >= wires.size()) throw TypeError(describe(gi) + ": wire out of range");
                if (wires[w] != operand_type(g.kind, s))
                    throw TypeError(describe(gi) + ": operand " + std::to_string(s) + " expects a " +
                                    (operand_type(g.kind, s) == WireType::quantum ? "quantum" : "classical") +
                                    " wire");
                const auto e = slot_effect(g.kind, s);
                if (e == SlotEffect::create && live[w])
                    throw TypeError(describe(gi) + ": target wire is already live");
                if (e != SlotEffect::create && !live[w])
                    throw TypeError(describe(gi) + ": wire is not live");
            }
            for (std::size_t s = 0; s < g.arity(); ++s) {
                const auto e = slot_effect(g.kind, s);
                if (e == SlotEffect::create) live[gate_operand(g, s)] = true;
                if (e == SlotEffect::kill) live[gate_operand(g, s)] = false;
            }
        }
    }

    std::string describe(std::size_t gate_index) const;

private:
    std::size_t nth(WireType t, std::size_t i) const {
        for (std::size_t w = 0; w < wires.size(); ++w)
            if (wires[w] == t && i-- == 0) return w;
        throw std::out_of_range("HybridCircuit: no such wire");
    }
    static std::vector<std::size_t> indices_of(const std::vector<bool>& v) {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i]) out.push_back(i);
        return out;
    }
};

// ---------------------------------------------------------------------------
// Text format

namespace detail {

struct Mnemonic {
    GateKind kind;
    const char* text;
    WireType first;
};

inline constexpr Mnemonic mnemonics[] = {
    {GateKind::cnot, "cnot", WireType::quantum},     {GateKind::cz, "cz", WireType::quantum},
    {GateKind::h, "h", WireType::quantum},           {GateKind::zphase, "rz", WireType::quantum},
    {GateKind::xphase, "rx", WireType::quantum},     {GateKind::swap, "swap", WireType::quantum},
    {GateKind::qinit, "qinit", WireType::quantum},   {GateKind::qterm, "qterm", WireType::quantum},
    {GateKind::bit_not, "not", WireType::classical}, {GateKind::bit_xor, "xor", WireType::classical},
    {GateKind::fanout, "fanout", WireType::classical}, {GateKind::swap_bits, "swapc", WireType::classical},
    {GateKind::measure, "measure", WireType::quantum}, {GateKind::prepare, "prepare", WireType::classical},
    {GateKind::ctrl_x, "cx", WireType::classical},   {GateKind::ctrl_z, "cz", WireType::classical},
    {GateKind::discard, "discard", WireType::classical},
};

inline const char* mnemonic(GateKind k) {
    for (const auto& m : mnemonics)
        if (m.kind == k) return m.text;
    return "?";
}

inline std::string wire_name(const HybridCircuit& c, std::size_t w) {
    if (w >= c.wires.size()) return "w" + std::to_string(w);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < w; ++i) idx += c.wires[i] == c.wires[w];
    return (c.wires[w] == WireType::quantum ? "q" : "c") + std::to_string(idx);
}

}  // namespace detail

inline std::string HybridCircuit::describe(std::size_t gi) const {
    const Gate& g = gates[gi];
    std::string s = std::string("gate ") + std::to_string(gi) + " '" + detail::mnemonic(g.kind);
    for (std::size_t k = 0; k < g.arity(); ++k) s += " " + detail::wire_name(*this, gate_operand(g, k));
    return s + "'";
}

inline std::string serialize_circuit(const HybridCircuit& c) {
    std::ostringstream os;
    if (!c.name.empty()) os << "# " << c.name << "\n";
    os << "qubits " << c.num_qubits() << "\n";
    if (c.num_bits() > 0) os << "bits " << c.num_bits() << "\n";
    for (const auto& g : c.gates) {
        os << detail::mnemonic(g.kind);
        if (g.kind == GateKind::zphase || g.kind == GateKind::xphase) os << " " << g.phase.to_string();
        os << " " << detail::wire_name(c, g.a);
        if (g.arity() == 2) {
            os << ((g.kind == GateKind::measure || g.kind == GateKind::prepare) ? " -> " : " ");
            os << detail::wire_name(c, g.b);
        }
        os << "\n";
    }
    return os.str();
}

inline HybridCircuit parse_circuit(const std::string& text) {
    HybridCircuit c;
    std::optional<std::size_t> qubits, bits;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    bool built = false;
    auto build = [&]() {
        if (built) return;
        const std::string name = c.name;
        c = HybridCircuit::make(*qubits, bits.value_or(0));
        c.name = name;
        built = true;
    };

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            if (lineno == 1 && c.name.empty()) {
                auto n = line.substr(hash + 1);
                while (!n.empty() && n.front() == ' ') n.erase(n.begin());
                c.name = n;
            }
            line = line.substr(0, hash);
        }
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;

        auto parse_count = [&](const std::string& s) -> std::size_t {
            try {
                std::size_t used = 0;
                const long long v = std::stoll(s, &used);
                if (used != s.size() || v < 0) throw std::invalid_argument(s);
                return static_cast<std::size_t>(v);
            } catch (const std::logic_error&) {
                throw ParseError(lineno, "bad count '" + s + "'");
            }
        };

        if (tok[0] == "qubits" || tok[0] == "bits") {
            if (tok.size() != 2) throw ParseError(lineno, "expected '" + tok[0] + " N'");
            if (built) throw ParseError(lineno, "header after gates");
            auto& slot = tok[0] == "qubits" ? qubits : bits;
            if (slot) throw ParseError(lineno, "duplicate '" + tok[0] + "' header");
            slot = parse_count(tok[1]);
            continue;
        }
        if (!qubits) throw ParseError(lineno, "missing 'qubits N' header");
        build();

        std::vector<std::string> args(tok.begin() + 1, tok.end());
        if ((tok[0] == "measure" || tok[0] == "prepare")) {
            if (args.size() != 3 || args[1] != "->")
                throw ParseError(lineno, "expected '" + tok[0] + " X -> Y'");
            args.erase(args.begin() + 1);
        }
        std::optional<Phase> phase;
        if (tok[0] == "rz" || tok[0] == "rx") {
            if (args.empty()) throw ParseError(lineno, "missing phase");
            try {
                phase = Phase::parse(args[0]);
            } catch (const std::invalid_argument& e) {
                throw ParseError(lineno, e.what());
            }
            args.erase(args.begin());
        }

        struct Ref {
            WireType type;
            std::size_t index;
        };
        std::vector<Ref> refs;
        for (const auto& a : args) {
            if (a.size() < 2 || (a[0] != 'q' && a[0] != 'c')) throw ParseError(lineno, "bad wire '" + a + "'");
            refs.push_back({a[0] == 'q' ? WireType::quantum : WireType::classical, parse_count(a.substr(1))});
        }

        const detail::Mnemonic* m = nullptr;
        for (const auto& cand : detail::mnemonics) {
            if (tok[0] != cand.text) continue;
            if (!m || (!refs.empty() && refs[0].type == cand.first)) m = &cand;
        }
        if (!m) throw ParseError(lineno, "unknown gate '" + tok[0] + "'");

        Gate g{m->kind};
        if (refs.size() != g.arity())
            throw ParseError(lineno, "'" + tok[0] + "' takes " + std::to_string(g.arity()) + " wires");
        std::size_t ids[2] = {0, 0};
        for (std::size_t s = 0; s < refs.size(); ++s) {
            const std::size_t limit = refs[s].type == WireType::quantum ? *qubits : bits.value_or(0);
            if (refs[s].index >= limit) throw ParseError(lineno, "wire '" + args[s] + "' out of range");
            ids[s] = refs[s].type == WireType::quantum ? refs[s].index : *qubits + refs[s].index;
            if (refs[s].type != operand_type(g.kind, s))
                throw TypeError("line " + std::to_string(lineno) + ": '" + tok[0] + "' operand " + args[s] +
                                " has the wrong wire type");
        }
        g.a = ids[0];
        g.b = ids[1];
        if (phase) g.phase = *phase;
        c.gates.push_back(g);
    }
    if (!qubits) throw ParseError(lineno, "missing 'qubits N' header");
    build();
    c.validate();
    return c;
}

}  // namespace zxg
