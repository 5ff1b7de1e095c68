#pragma once

// Rewrite rules for graph-like diagrams and the simplification driver.
// Every rule keeps the diagram graph-like and preserves the channel up to a
// positive scalar.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zxg/diagram.hpp"
#include "zxg/error.hpp"
#include "zxg/gf2.hpp"
#include "zxg/gflow.hpp"

namespace zxg {

namespace detail {

/// Adds a Hadamard edge between two spiders, or removes the existing one.
inline void complement_edge(Diagram& d, VertexId a, VertexId b) {
    const auto e = d.edge(a, b);
    if (!e) d.add_edge(a, b, EdgeKind::hadamard);
    else if (*e == EdgeKind::hadamard) d.remove_edge(a, b);
    else throw InvariantError("complement_edge: plain edge between spiders");
}

inline std::vector<VertexId> spider_neighbors(const Diagram& d, VertexId v) {
    std::vector<VertexId> out;
    for (const auto& [w, k] : d.neighbors(v))
        if (d.is_spider(w)) out.push_back(w);
    return out;
}

inline void require_hadamard(const Diagram& d, VertexId u, VertexId v, const char* rule) {
    if (d.edge(u, v) != EdgeKind::hadamard) throw PreconditionError(std::string(rule) + ": spiders not joined by a Hadamard edge");
}

/// Pivot along u-v where both are Pauli spiders. Phases and edges of the
/// neighbourhood are updated; u and v are left in place with their edges.
struct PivotSets {
    std::vector<VertexId> only_u, only_v, both;
};

inline PivotSets pivot_sets(const Diagram& d, VertexId u, VertexId v) {
    PivotSets s;
    std::set<VertexId> nu, nv;
    for (VertexId w : spider_neighbors(d, u))
        if (w != v) nu.insert(w);
    for (VertexId w : spider_neighbors(d, v))
        if (w != u) nv.insert(w);
    for (VertexId w : nu) (nv.count(w) ? s.both : s.only_u).push_back(w);
    for (VertexId w : nv)
        if (!nu.count(w)) s.only_v.push_back(w);
    return s;
}

inline void pivot_neighbourhood(Diagram& d, const PivotSets& s, Phase pu, Phase pv) {
    for (VertexId a : s.only_u)
        for (VertexId b : s.only_v) complement_edge(d, a, b);
    for (VertexId a : s.only_u)
        for (VertexId b : s.both) complement_edge(d, a, b);
    for (VertexId a : s.only_v)
        for (VertexId b : s.both) complement_edge(d, a, b);
    for (VertexId w : s.only_u) d.add_to_phase(w, pv);
    for (VertexId w : s.only_v) d.add_to_phase(w, pu);
    for (VertexId w : s.both) d.add_to_phase(w, pu + pv + Phase::pi());
}

}  // namespace detail

/// A non-grounded spider with phase 0 or pi.
inline bool is_pauli_spider(const Diagram& d, VertexId v) {
    return d.is_spider(v) && !d.grounded(v) && d.phase(v).is_pauli();
}
inline bool is_proper_clifford_spider(const Diagram& d, VertexId v) {
    return d.is_spider(v) && !d.grounded(v) && d.phase(v).is_proper_clifford();
}

// ---------------------------------------------------------------------------
// Pure rules

/// Local complementation removing an interior proper Clifford spider.
inline void lc_simp(Diagram& d, VertexId v) {
    if (!d.contains(v) || !is_proper_clifford_spider(d, v) || !d.is_interior(v))
        throw PreconditionError("lc_simp: need an interior, non-grounded spider with phase pi/2 or 3pi/2");
    const Phase a = d.phase(v);
    const auto ns = detail::spider_neighbors(d, v);
    for (VertexId w : ns) detail::require_hadamard(d, v, w, "lc_simp");
    for (std::size_t i = 0; i < ns.size(); ++i)
        for (std::size_t j = i + 1; j < ns.size(); ++j) detail::complement_edge(d, ns[i], ns[j]);
    for (VertexId w : ns) d.add_to_phase(w, -a);
    d.remove_vertex(v);
    clean_grounds(d);
}

/// Pivot removing two adjacent interior Pauli spiders.
inline void pivot_simp(Diagram& d, VertexId u, VertexId v) {
    if (u == v || !d.contains(u) || !d.contains(v) || !is_pauli_spider(d, u) || !is_pauli_spider(d, v) ||
        !d.is_interior(u) || !d.is_interior(v))
        throw PreconditionError("pivot_simp: need two distinct interior, non-grounded Pauli spiders");
    detail::require_hadamard(d, u, v, "pivot_simp");
    for (VertexId x : {u, v})
        for (VertexId w : detail::spider_neighbors(d, x)) detail::require_hadamard(d, x, w, "pivot_simp");
    detail::pivot_neighbourhood(d, detail::pivot_sets(d, u, v), d.phase(u), d.phase(v));
    d.remove_vertex(u);
    d.remove_vertex(v);
    clean_grounds(d);
}

/// Pivot of interior Pauli u with a boundary spider v whose phase is Pauli.
/// v's boundary wire is first routed through a fresh spider, which stays
/// behind as the new boundary spider.
inline VertexId pivot_boundary(Diagram& d, VertexId u, VertexId v) {
    if (u == v || !d.contains(u) || !d.contains(v) || !is_pauli_spider(d, u) || !d.is_interior(u) ||
        !is_pauli_spider(d, v) || d.boundary_count(v) != 1)
        throw PreconditionError("pivot_boundary: need an interior Pauli spider and a Pauli spider on one boundary");
    detail::require_hadamard(d, u, v, "pivot_boundary");
    VertexId b = 0;
    for (const auto& [w, k] : d.neighbors(v))
        if (d.is_boundary(w)) b = w;
    // b -k- v  ==  b -k'- s -H- v
    const EdgeKind k = *d.edge(b, v);
    d.remove_edge(b, v);
    const VertexId s = d.add_spider();
    d.add_edge(b, s, toggled(k));
    d.add_edge(s, v, EdgeKind::hadamard);
    pivot_simp(d, u, v);
    return s;
}

// ---------------------------------------------------------------------------
// Ground rules

/// Local complementation about a ground-spider: its neighbours are pairwise
/// complemented and lose pi/2. Does not shrink the diagram.
inline void lc_gnd(Diagram& d, VertexId v) {
    if (!d.contains(v) || !d.is_spider(v) || !d.grounded(v)) throw PreconditionError("lc_gnd: need a ground-spider");
    const auto ns = detail::spider_neighbors(d, v);
    for (VertexId w : ns) detail::require_hadamard(d, v, w, "lc_gnd");
    for (std::size_t i = 0; i < ns.size(); ++i)
        for (std::size_t j = i + 1; j < ns.size(); ++j) detail::complement_edge(d, ns[i], ns[j]);
    for (VertexId w : ns) d.add_to_phase(w, -Phase::half_pi());
    clean_grounds(d);
}

/// Pauli spider u next to ground-spider v: u is removed and v is left
/// grounded, adjacent to exactly N(u) minus v.
inline void pauli_pivot_gnd(Diagram& d, VertexId u, VertexId v) {
    if (u == v || !d.contains(u) || !d.contains(v) || !is_pauli_spider(d, u) || !d.is_interior(u) || !d.is_spider(v) ||
        !d.grounded(v))
        throw PreconditionError("pauli_pivot_gnd: need an interior Pauli spider next to a ground-spider");
    detail::require_hadamard(d, u, v, "pauli_pivot_gnd");
    for (VertexId x : {u, v})
        for (VertexId w : detail::spider_neighbors(d, x)) detail::require_hadamard(d, x, w, "pauli_pivot_gnd");
    // The ground of v is split off into a fresh leaf that survives the pivot.
    const auto sets = detail::pivot_sets(d, u, v);
    detail::pivot_neighbourhood(d, sets, d.phase(u), Phase{});
    for (VertexId w : detail::spider_neighbors(d, v)) d.remove_edge(v, w);
    for (VertexId w : sets.only_u) d.add_edge(v, w, EdgeKind::hadamard);
    for (VertexId w : sets.both) d.add_edge(v, w, EdgeKind::hadamard);
    d.remove_vertex(u);
    d.set_phase(v, {});
    clean_grounds(d);
}

/// Deletes an isolated ground-spider, or one whose single neighbour is an
/// interior spider; that neighbour becomes grounded.
inline void gnd_discard(Diagram& d, VertexId g) {
    if (!d.contains(g) || !d.is_spider(g) || !d.grounded(g) || d.degree(g) > 1)
        throw PreconditionError("gnd_discard: need a ground-spider of degree 0 or 1");
    if (d.degree(g) == 1) {
        const VertexId w = d.neighbors(g).begin()->first;
        if (!d.is_spider(w) || !d.is_interior(w))
            throw PreconditionError("gnd_discard: neighbour is attached to an input or output");
        d.set_grounded(w, true);
    }
    d.remove_vertex(g);
    clean_grounds(d);
}

/// Ground-spider g whose only neighbour w sits on a boundary, with w
/// adjacent to an interior Pauli spider u. g is discarded into w, w's boundary
/// wire is re-routed through a fresh spider, and u is pivoted away.
inline void gnd_discard_boundary(Diagram& d, VertexId g, VertexId u) {
    if (!d.contains(g) || !d.is_spider(g) || !d.grounded(g) || d.degree(g) != 1)
        throw PreconditionError("gnd_discard_boundary: need a ground-spider of degree 1");
    const VertexId w = d.neighbors(g).begin()->first;
    if (!d.is_spider(w) || d.boundary_count(w) != 1 || d.grounded(w))
        throw PreconditionError("gnd_discard_boundary: neighbour must be a spider on exactly one boundary");
    if (!d.contains(u) || !is_pauli_spider(d, u) || !d.is_interior(u) || !d.connected(u, w))
        throw PreconditionError("gnd_discard_boundary: need an interior Pauli neighbour");
    VertexId b = 0;
    for (const auto& [x, k] : d.neighbors(w))
        if (d.is_boundary(x)) b = x;
    d.remove_vertex(g);
    d.set_grounded(w, true);
    const EdgeKind k = *d.edge(b, w);
    d.remove_edge(b, w);
    const VertexId s = d.add_spider();
    d.add_edge(b, s, toggled(k));
    d.add_edge(s, w, EdgeKind::hadamard);
    clean_grounds(d);
    pauli_pivot_gnd(d, u, w);
}

/// N(v) := N(v) xor N(u) for two ground-spiders.
inline void row_sum_gnd(Diagram& d, VertexId u, VertexId v) {
    if (u == v || !d.contains(u) || !d.contains(v) || !d.is_spider(u) || !d.is_spider(v) || !d.grounded(u) ||
        !d.grounded(v))
        throw PreconditionError("row_sum_gnd: need two distinct ground-spiders");
    for (VertexId w : detail::spider_neighbors(d, u)) detail::complement_edge(d, v, w);
    clean_grounds(d);
}

struct GroundCut {
    Gf2Matrix m;
    std::vector<VertexId> rows;  // ground-spiders, ascending
    std::vector<VertexId> cols;  // other spiders, ascending
};

inline GroundCut ground_cut_matrix(const Diagram& d) {
    GroundCut gc;
    for (VertexId v : d.spiders()) (d.grounded(v) ? gc.rows : gc.cols).push_back(v);
    std::map<VertexId, std::size_t> col;
    for (std::size_t c = 0; c < gc.cols.size(); ++c) col[gc.cols[c]] = c;
    gc.m = Gf2Matrix(gc.rows.size(), gc.cols.size());
    for (std::size_t r = 0; r < gc.rows.size(); ++r)
        for (const auto& [w, k] : d.neighbors(gc.rows[r])) {
            auto it = col.find(w);
            if (it != col.end()) gc.m.set(r, it->second, true);
        }
    return gc;
}

// ---------------------------------------------------------------------------
// Driver

struct SimplifyConfig {
    bool ground_rules = true;      // false: only lc and pivots
    bool check_invariants = false;  // graph-like form and gFlow after every rewrite
};

struct SimplifyStats {
    std::size_t spiders_before = 0, spiders_after = 0;
    std::size_t grounds_before = 0, grounds_after = 0;
    std::size_t iterations = 0;
    std::map<std::string, std::size_t> rules;
    std::size_t total_rewrites() const {
        std::size_t n = 0;
        for (const auto& [k, c] : rules) n += c;
        return n;
    }
};

namespace detail {

class Simplifier {
public:
    Simplifier(Diagram& d, const SimplifyConfig& cfg, SimplifyStats& st) : d_(d), cfg_(cfg), st_(st) {}

    void note(const char* rule) {
        ++st_.rules[rule];
        if (!cfg_.check_invariants) return;
        const auto r = check_graph_like(d_, true);
        if (!r.ok()) throw InvariantError(std::string("after ") + rule + ": " + r.violations.front());
        if (!find_focused_gflow(underlying_open_graph(d_))) throw InvariantError(std::string("after ") + rule + ": gFlow lost");
    }

    /// lc and pivots until none applies. Returns whether anything fired.
    bool pure() {
        bool any = false;
        while (pure_step()) any = true;
        return any;
    }

    /// One pass of the ground loop. Returns whether a node-removing rule fired.
    bool ground_pass() {
        bool fired = false;
        // Gaussian elimination on the ground-cut, replayed on the diagram.
        GroundCut gc = ground_cut_matrix(d_);
        const auto red = rref_with_ops(gc.m);
        std::vector<VertexId> rows = gc.rows;
        for (const auto& op : red.ops) {
            if (op.kind == RowOp::Kind::swap) {
                std::swap(rows[op.a], rows[op.b]);
                continue;
            }
            row_sum_gnd(d_, rows[op.a], rows[op.b]);
            note("row_sum_gnd");
        }
        for (std::size_t r : zero_rows(red.reduced)) {
            gnd_discard(d_, rows[r]);
            note("gnd_remove");
            fired = true;
        }
        for (const auto& [r, c] : unit_rows(red.reduced)) fired |= unit_row(rows[r]);
        while (pauli_ground_step()) fired = true;
        fired |= pure();
        return fired;
    }

private:
    bool pure_step() {
        for (VertexId v : d_.spiders()) {
            if (is_proper_clifford_spider(d_, v) && d_.is_interior(v) && all_hadamard(v)) {
                lc_simp(d_, v);
                note("lc");
                return true;
            }
        }
        for (VertexId u : d_.spiders()) {
            if (!is_pauli_spider(d_, u) || !d_.is_interior(u) || !all_hadamard(u)) continue;
            for (const auto& [w, k] : d_.neighbors(u)) {
                if (!is_pauli_spider(d_, w) || !all_hadamard_to_spiders(w)) continue;
                if (d_.is_interior(w)) {
                    pivot_simp(d_, u, w);
                    note("pivot");
                    return true;
                }
            }
            for (const auto& [w, k] : d_.neighbors(u)) {
                if (!is_pauli_spider(d_, w) || !all_hadamard_to_spiders(w)) continue;
                if (d_.boundary_count(w) == 1) {
                    pivot_boundary(d_, u, w);
                    note("pivot_boundary");
                    return true;
                }
            }
        }
        return false;
    }

    bool unit_row(VertexId g) {
        if (!d_.contains(g) || !d_.grounded(g)) return false;
        if (d_.degree(g) == 0) {
            gnd_discard(d_, g);
            note("gnd_remove");
            return true;
        }
        if (d_.degree(g) != 1) return false;
        const VertexId w = d_.neighbors(g).begin()->first;
        if (d_.is_interior(w)) {
            gnd_discard(d_, g);
            note("gnd_discard");
            return true;
        }
        if (d_.grounded(w) || d_.boundary_count(w) != 1) return false;
        for (const auto& [u, k] : d_.neighbors(w)) {
            if (u != g && is_pauli_spider(d_, u) && d_.is_interior(u) && all_hadamard(u)) {
                gnd_discard_boundary(d_, g, u);
                note("gnd_discard_boundary");
                return true;
            }
        }
        return false;
    }

    bool pauli_ground_step() {
        for (VertexId u : d_.spiders()) {
            if (!is_pauli_spider(d_, u) || !d_.is_interior(u) || !all_hadamard(u)) continue;
            for (const auto& [v, k] : d_.neighbors(u)) {
                if (d_.grounded(v) && all_hadamard(v)) {
                    pauli_pivot_gnd(d_, u, v);
                    note("pauli_pivot_gnd");
                    return true;
                }
            }
        }
        return false;
    }

    bool all_hadamard(VertexId v) const {
        for (const auto& [w, k] : d_.neighbors(v))
            if (k != EdgeKind::hadamard) return false;
        return true;
    }
    bool all_hadamard_to_spiders(VertexId v) const {
        for (const auto& [w, k] : d_.neighbors(v))
            if (d_.is_spider(w) && k != EdgeKind::hadamard) return false;
        return true;
    }

    Diagram& d_;
    const SimplifyConfig& cfg_;
    SimplifyStats& st_;
};

}  // namespace detail

/// Deletes every connected component that has no input or output.
inline std::size_t remove_closed_components(Diagram& d) {
    std::set<VertexId> seen;
    std::vector<VertexId> stack;
    for (const auto& list : {d.inputs(), d.outputs()})
        for (const auto& b : list)
            if (seen.insert(b.id).second) stack.push_back(b.id);
    while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        for (const auto& [w, k] : d.neighbors(v))
            if (seen.insert(w).second) stack.push_back(w);
    }
    std::vector<VertexId> drop;
    for (const auto& [v, data] : d.vertices())
        if (!seen.count(v)) drop.push_back(v);
    for (VertexId v : drop) d.remove_vertex(v);
    return drop.size();
}

inline SimplifyStats simplify(Diagram& d, const SimplifyConfig& cfg = {}) {
    const auto r = check_graph_like(d, true);
    if (!r.ok()) throw PreconditionError("simplify: diagram is not strictly graph-like: " + r.violations.front());
    SimplifyStats st;
    st.spiders_before = d.num_spiders();
    st.grounds_before = d.num_grounds();
    detail::Simplifier s(d, cfg, st);
    s.pure();
    if (cfg.ground_rules) {
        const std::size_t cap = d.num_spiders() + 1;
        while (st.iterations < cap) {
            ++st.iterations;
            if (!s.ground_pass()) break;
        }
    }
    if (remove_closed_components(d) > 0) s.note("remove_component");
    st.spiders_after = d.num_spiders();
    st.grounds_after = d.num_grounds();
    return st;
}

/// The six patterns a simplified diagram must avoid, as messages.
inline std::vector<std::string> simplified_violations(const Diagram& d) {
    std::vector<std::string> out;
    auto name = [](VertexId v) { return "spider " + std::to_string(v); };
    for (VertexId v : d.spiders()) {
        const bool interior = d.is_interior(v);
        if (interior && is_proper_clifford_spider(d, v)) out.push_back(name(v) + ": interior proper Clifford");
        if (interior && is_pauli_spider(d, v)) {
            for (const auto& [w, k] : d.neighbors(v)) {
                if (!d.is_spider(w)) continue;
                if (w > v && d.is_interior(w) && is_pauli_spider(d, w))
                    out.push_back(name(v) + ": adjacent interior Pauli " + std::to_string(w));
                if (d.boundary_count(w) == 1 && is_pauli_spider(d, w))
                    out.push_back(name(v) + ": interior Pauli next to boundary spider " + std::to_string(w));
                if (d.grounded(w)) out.push_back(name(v) + ": interior Pauli next to ground-spider " + std::to_string(w));
            }
        }
        if (d.grounded(v) && d.degree(v) == 1 && d.is_interior(d.neighbors(v).begin()->first))
            out.push_back(name(v) + ": degree-1 ground-spider off the boundary");
    }
    Diagram copy = d;
    if (remove_closed_components(copy) > 0) out.push_back("component without inputs or outputs");
    return out;
}

inline bool is_simplified(const Diagram& d) { return simplified_violations(d).empty(); }

}  // namespace zxg
