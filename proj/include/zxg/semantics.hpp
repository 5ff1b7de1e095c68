#pragma once

// Mixed-state semantics. A superoperator acts on column-vectorised density
// matrices: vec(rho)[i + 2^n j] = rho[i][j], and qubit k is bit k of i.
// Diagrams are interpreted by doubling them into a ket copy and a conjugated
// bra copy, with grounds tying both copies of a spider together. Circuits are
// interpreted gate by gate from their matrices and Kraus operators. Both
// routes share the contraction engine and nothing else.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "zxg/circuit.hpp"
#include "zxg/diagram.hpp"
#include "zxg/error.hpp"
#include "zxg/tensor.hpp"

namespace zxg {

struct Superoperator {
    std::size_t n_in = 0;
    std::size_t n_out = 0;
    std::vector<cplx> data;  // column-major, rows() x cols()

    Superoperator() = default;
    Superoperator(std::size_t in, std::size_t out)
        : n_in(in), n_out(out), data(rows_for(out) * rows_for(in), cplx{0}) {}

    static std::size_t rows_for(std::size_t wires) { return std::size_t{1} << (2 * wires); }
    std::size_t rows() const { return rows_for(n_out); }
    std::size_t cols() const { return rows_for(n_in); }
    cplx& at(std::size_t r, std::size_t c) { return data[r + rows() * c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return data[r + rows() * c]; }

    double norm() const {
        double s = 0;
        for (const auto& z : data) s += std::norm(z);
        return std::sqrt(s);
    }
};

inline Superoperator identity_channel(std::size_t n) {
    Superoperator s(n, n);
    for (std::size_t r = 0; r < s.rows(); ++r) s.at(r, r) = 1;
    return s;
}

/// S2 after S1.
inline Superoperator compose(const Superoperator& s2, const Superoperator& s1) {
    if (s2.n_in != s1.n_out) throw PreconditionError("compose: wire count mismatch");
    Superoperator r(s1.n_in, s2.n_out);
    for (std::size_t c = 0; c < r.cols(); ++c)
        for (std::size_t k = 0; k < s1.rows(); ++k) {
            const cplx x = s1.at(k, c);
            if (x == cplx{0}) continue;
            for (std::size_t row = 0; row < r.rows(); ++row) r.at(row, c) += s2.at(row, k) * x;
        }
    return r;
}

namespace detail {
// vec index over n wires -> (ket, bra)
inline std::pair<std::size_t, std::size_t> split_vec(std::size_t idx, std::size_t n) {
    const std::size_t mask = (std::size_t{1} << n) - 1;
    return {idx & mask, idx >> n};
}
}  // namespace detail

/// Parallel composition; the wires of s1 come first.
inline Superoperator tensor_product(const Superoperator& s1, const Superoperator& s2) {
    Superoperator r(s1.n_in + s2.n_in, s1.n_out + s2.n_out);
    for (std::size_t c = 0; c < r.cols(); ++c) {
        const auto [ci, cj] = detail::split_vec(c, r.n_in);
        const std::size_t c1 = (ci & ((1u << s1.n_in) - 1)) + ((cj & ((1u << s1.n_in) - 1)) << s1.n_in);
        const std::size_t c2 = (ci >> s1.n_in) + ((cj >> s1.n_in) << s2.n_in);
        for (std::size_t row = 0; row < r.rows(); ++row) {
            const auto [ri, rj] = detail::split_vec(row, r.n_out);
            const std::size_t r1 = (ri & ((1u << s1.n_out) - 1)) + ((rj & ((1u << s1.n_out) - 1)) << s1.n_out);
            const std::size_t r2 = (ri >> s1.n_out) + ((rj >> s1.n_out) << s2.n_out);
            r.at(row, c) = s1.at(r1, c1) * s2.at(r2, c2);
        }
    }
    return r;
}

/// Composes computational dephasing onto the flagged inputs and outputs.
inline Superoperator dephase_boundaries(Superoperator s, const std::vector<bool>& in_flags,
                                        const std::vector<bool>& out_flags) {
    auto off_diagonal = [](std::size_t idx, std::size_t n, const std::vector<bool>& flags) {
        const auto [i, j] = detail::split_vec(idx, n);
        for (std::size_t k = 0; k < n; ++k)
            if (flags[k] && (((i ^ j) >> k) & 1u)) return true;
        return false;
    };
    for (std::size_t c = 0; c < s.cols(); ++c)
        for (std::size_t r = 0; r < s.rows(); ++r)
            if (off_diagonal(c, s.n_in, in_flags) || off_diagonal(r, s.n_out, out_flags)) s.at(r, c) = 0;
    return s;
}

struct SemanticsLimits {
    std::size_t max_inputs = 5;
    std::size_t max_outputs = 5;
};

namespace detail {

inline Superoperator from_open_tensor(const TensorNetwork& net, const std::vector<int>& out_ket,
                                      const std::vector<int>& out_bra, const std::vector<int>& in_ket,
                                      const std::vector<int>& in_bra) {
    std::vector<int> open;
    open.insert(open.end(), out_ket.begin(), out_ket.end());
    open.insert(open.end(), out_bra.begin(), out_bra.end());
    open.insert(open.end(), in_ket.begin(), in_ket.end());
    open.insert(open.end(), in_bra.begin(), in_bra.end());
    Superoperator s(in_ket.size(), out_ket.size());
    s.data = net.contract(open);
    return s;
}

inline void check_limits(std::size_t in, std::size_t out, const SemanticsLimits& lim) {
    if (in > lim.max_inputs || out > lim.max_outputs)
        throw SizeLimitError("semantics: " + std::to_string(in) + " inputs / " + std::to_string(out) +
                             " outputs exceed the oracle limit");
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Interpretation of a diagram. Classical-flagged boundaries are dephased
/// unless `dephase_classical` is false.
inline Superoperator diagram_superoperator(const Diagram& d, bool dephase_classical = true,
                                           const SemanticsLimits& lim = {}) {
    detail::check_limits(d.inputs().size(), d.outputs().size(), lim);
    const std::size_t n = d.next_id();
    // Slot 2v is the ket copy of v, 2v + 1 the bra copy.
    detail::UnionFind uf(2 * n);
    for (const auto& [v, data] : d.vertices()) {
        if (data.kind == VertexKind::z_spider && data.grounded) uf.unite(2 * v, 2 * v + 1);
        for (const auto& [w, k] : d.neighbors(v)) {
            if (w < v || k != EdgeKind::plain) continue;
            uf.unite(2 * v, 2 * w);
            uf.unite(2 * v + 1, 2 * w + 1);
        }
    }
    TensorNetwork net;
    std::vector<int> var(2 * n, -1);
    auto var_of = [&](std::size_t slot) {
        const std::size_t r = uf.find(slot);
        if (var[r] < 0) var[r] = net.new_var();
        return var[r];
    };
    const double s = 1.0;
    for (const auto& [v, data] : d.vertices()) {
        if (data.kind == VertexKind::boundary) {
            if (d.degree(v) != 1) throw InvariantError("boundary vertex " + std::to_string(v) + " has degree != 1");
        } else if (!data.phase.is_zero() && !data.grounded) {
            const cplx e = std::polar(1.0, data.phase.radians());
            net.add_unary(var_of(2 * v), 1, e);
            net.add_unary(var_of(2 * v + 1), 1, std::conj(e));
        }
        for (const auto& [w, k] : d.neighbors(v)) {
            if (w < v || k != EdgeKind::hadamard) continue;
            net.add_matrix(var_of(2 * v), var_of(2 * w), s, s, s, -s);
            net.add_matrix(var_of(2 * v + 1), var_of(2 * w + 1), s, s, s, -s);
        }
    }
    std::vector<int> ik, ib, ok, ob;
    std::vector<bool> in_flags, out_flags;
    for (const auto& b : d.inputs()) {
        ik.push_back(var_of(2 * b.id));
        ib.push_back(var_of(2 * b.id + 1));
        in_flags.push_back(b.classical);
    }
    for (const auto& b : d.outputs()) {
        ok.push_back(var_of(2 * b.id));
        ob.push_back(var_of(2 * b.id + 1));
        out_flags.push_back(b.classical);
    }
    Superoperator out = detail::from_open_tensor(net, ok, ob, ik, ib);
    if (dephase_classical) out = dephase_boundaries(std::move(out), in_flags, out_flags);
    return out;
}

// ---------------------------------------------------------------------------
// Circuits

/// A channel spliced into a circuit wire, used to test wire labellings.
enum class InsertKind { dephase_z, dephase_x, dephase_y, replace_mixed };

struct Insertion {
    std::size_t before_gate;  // gates.size() means after the last gate
    std::size_t wire;
    InsertKind kind;
};

namespace detail {

using Mat2 = std::array<cplx, 4>;  // row-major

inline Mat2 hadamard_matrix() {
    const double r = 1 / std::sqrt(2.0);
    return {r, r, r, -r};
}

class CircuitNet {
public:
    TensorNetwork net;
    std::vector<int> ket, bra;  // -1 when dead

    explicit CircuitNet(std::size_t wires) : ket(wires, -1), bra(wires, -1) {}

    void unitary1(std::size_t w, const Mat2& u) {
        const int ik = ket[w], ib = bra[w];
        const int ok = net.new_var(), ob = net.new_var();
        net.add_matrix(ok, ik, u[0], u[1], u[2], u[3]);
        net.add_matrix(ob, ib, std::conj(u[0]), std::conj(u[1]), std::conj(u[2]), std::conj(u[3]));
        ket[w] = ok;
        bra[w] = ob;
    }
    /// Two-wire unitary given as a function on basis states: |x, y> -> phase |f(x,y)>.
    template <class F>
    void unitary2(std::size_t a, std::size_t b, F f) {
        for (int copy = 0; copy < 2; ++copy) {
            auto& reg = copy == 0 ? ket : bra;
            const int ia = reg[a], ib = reg[b];
            const int oa = net.new_var(), ob = net.new_var();
            std::vector<cplx> data(16, 0);
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y) {
                    auto [ox, oy, amp] = f(x, y);
                    if (copy == 1) amp = std::conj(amp);
                    data[ox | (oy << 1) | (x << 2) | (y << 3)] = amp;
                }
            net.add_factor({oa, ob, ia, ib}, data);
            reg[a] = oa;
            reg[b] = ob;
        }
    }
    void dephase(std::size_t w) { net.add_delta(ket[w], bra[w]); bra[w] = ket[w]; }
    /// Traces out the wire.
    void kill(std::size_t w) {
        net.add_delta(ket[w], bra[w]);
        ket[w] = bra[w] = -1;
    }
    void fresh_zero(std::size_t w) {
        ket[w] = net.new_var();
        bra[w] = net.new_var();
        net.add_unary(ket[w], 1, 0);
        net.add_unary(bra[w], 1, 0);
    }
    void insert(const Insertion& ins) {
        const std::size_t w = ins.wire;
        if (ket[w] < 0) throw PreconditionError("insertion on a dead wire");
        const Mat2 h = hadamard_matrix();
        const double r = 1 / std::sqrt(2.0);
        // Maps the Y eigenbasis onto the computational basis.
        const Mat2 y_to_z = {r, cplx(0, -r), r, cplx(0, r)};
        const Mat2 z_to_y = {r, r, cplx(0, r), cplx(0, -r)};
        switch (ins.kind) {
            case InsertKind::dephase_z: dephase(w); break;
            case InsertKind::dephase_x:
                unitary1(w, h);
                dephase(w);
                unitary1(w, h);
                break;
            case InsertKind::dephase_y:
                unitary1(w, y_to_z);
                dephase(w);
                unitary1(w, z_to_y);
                break;
            case InsertKind::replace_mixed: {
                kill(w);
                const int v = net.new_var();
                ket[w] = bra[w] = v;
                break;
            }
        }
    }
};

inline void apply_gate(CircuitNet& cn, const Gate& g) {
    using K = GateKind;
    const Mat2 h = hadamard_matrix();
    switch (g.kind) {
        case K::h: cn.unitary1(g.a, h); break;
        case K::zphase: cn.unitary1(g.a, {1, 0, 0, std::polar(1.0, g.phase.radians())}); break;
        case K::xphase: {
            const cplx e = std::polar(1.0, g.phase.radians());
            cn.unitary1(g.a, {(1.0 + e) / 2.0, (1.0 - e) / 2.0, (1.0 - e) / 2.0, (1.0 + e) / 2.0});
            break;
        }
        case K::bit_not: cn.unitary1(g.a, {0, 1, 1, 0}); break;
        case K::cnot:
        case K::bit_xor:
        case K::ctrl_x:
            cn.unitary2(g.a, g.b, [](int x, int y) { return std::tuple{x, y ^ x, cplx{1}}; });
            break;
        case K::cz:
        case K::ctrl_z:
            cn.unitary2(g.a, g.b, [](int x, int y) { return std::tuple{x, y, cplx{(x & y) ? -1.0 : 1.0}}; });
            break;
        case K::swap:
        case K::swap_bits:
            std::swap(cn.ket[g.a], cn.ket[g.b]);
            std::swap(cn.bra[g.a], cn.bra[g.b]);
            break;
        case K::qinit: cn.fresh_zero(g.a); break;
        case K::qterm:
        case K::discard: cn.kill(g.a); break;
        case K::fanout:
            // |x> -> |x>|x> on a classical value.
            cn.dephase(g.a);
            cn.ket[g.b] = cn.bra[g.b] = cn.ket[g.a];
            break;
        case K::measure: {
            cn.dephase(g.a);
            const int v = cn.ket[g.a];
            cn.ket[g.a] = cn.bra[g.a] = -1;
            cn.ket[g.b] = cn.bra[g.b] = v;
            break;
        }
        case K::prepare: {
            cn.dephase(g.a);
            const int v = cn.ket[g.a];
            cn.ket[g.a] = cn.bra[g.a] = -1;
            cn.ket[g.b] = cn.bra[g.b] = v;
            break;
        }
    }
}

}  // namespace detail

/// Channel of a circuit from its initially live wires to its finally live
/// wires (in wire order). Classical inputs and outputs are dephased.
inline Superoperator circuit_superoperator(const HybridCircuit& c, const std::vector<Insertion>& insertions = {},
                                           const SemanticsLimits& lim = {}) {
    c.validate();
    const auto ins_w = c.input_wires();
    const auto outs_w = c.output_wires();
    detail::check_limits(ins_w.size(), outs_w.size(), lim);
    detail::CircuitNet cn(c.wires.size());
    std::vector<int> ik, ib;
    for (std::size_t w : ins_w) {
        cn.ket[w] = cn.net.new_var();
        cn.bra[w] = cn.net.new_var();
        ik.push_back(cn.ket[w]);
        ib.push_back(cn.bra[w]);
    }
    auto splice = [&](std::size_t t) {
        for (const auto& ins : insertions)
            if (ins.before_gate == t) cn.insert(ins);
    };
    for (std::size_t t = 0; t < c.gates.size(); ++t) {
        splice(t);
        detail::apply_gate(cn, c.gates[t]);
    }
    splice(c.gates.size());
    std::vector<int> ok, ob;
    for (std::size_t w : outs_w) {
        ok.push_back(cn.ket[w]);
        ob.push_back(cn.bra[w]);
    }
    Superoperator s = detail::from_open_tensor(cn.net, ok, ob, ik, ib);
    std::vector<bool> fi, fo;
    for (std::size_t w : ins_w) fi.push_back(c.wires[w] == WireType::classical);
    for (std::size_t w : outs_w) fo.push_back(c.wires[w] == WireType::classical);
    return dephase_boundaries(std::move(s), fi, fo);
}

struct EquivResult {
    bool equivalent = false;
    bool zero_norm = false;  // one operand is the zero map
    cplx scale{0};
    double residual = 0;
};

/// Whether s2 = c * s1 for a real positive c.
inline EquivResult equiv_up_to_scalar(const Superoperator& s1, const Superoperator& s2, double tol) {
    if (s1.n_in != s2.n_in || s1.n_out != s2.n_out) throw PreconditionError("equiv_up_to_scalar: shape mismatch");
    EquivResult r;
    const double n1 = s1.norm(), n2 = s2.norm();
    if (n1 == 0 || n2 == 0) {
        r.zero_norm = true;
        r.residual = (n1 == 0 && n2 == 0) ? 0 : 1;
        return r;
    }
    cplx inner = 0;
    for (std::size_t i = 0; i < s1.data.size(); ++i) inner += std::conj(s1.data[i]) * s2.data[i];
    r.scale = inner / (n1 * n1);
    double diff = 0;
    for (std::size_t i = 0; i < s1.data.size(); ++i) diff += std::norm(r.scale * s1.data[i] - s2.data[i]);
    r.residual = std::sqrt(diff) / n2;
    const bool positive = r.scale.real() > 0 && std::abs(r.scale.imag()) <= tol * std::abs(r.scale);
    r.equivalent = positive && r.residual <= tol;
    return r;
}

}  // namespace zxg
