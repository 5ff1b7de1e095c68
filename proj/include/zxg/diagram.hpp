#pragma once

// ZX-ground diagrams made of phased Z-spiders, ground flags, plain/Hadamard
// edges and ordered boundary vertices. The graph stores at most one edge per
// vertex pair: adding a parallel edge between two Z-spiders immediately
// resolves it (two Hadamard edges cancel, a Hadamard edge next to a plain one
// becomes a pi phase once the pair is fused).

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zxg/error.hpp"
#include "zxg/phase.hpp"

namespace zxg {

using VertexId = std::size_t;

enum class VertexKind { boundary, z_spider };
enum class EdgeKind { plain, hadamard };

inline EdgeKind toggled(EdgeKind k) { return k == EdgeKind::plain ? EdgeKind::hadamard : EdgeKind::plain; }

struct VertexData {
    VertexKind kind = VertexKind::z_spider;
    Phase phase{};
    bool grounded = false;
};

struct BoundaryRef {
    VertexId id;
    bool classical = false;
    bool operator==(const BoundaryRef&) const = default;
};

class Diagram {
public:
    using Neighbors = std::map<VertexId, EdgeKind>;

    VertexId add_spider(Phase phase = {}, bool grounded = false) {
        const VertexId v = next_id_++;
        vertices_[v] = {VertexKind::z_spider, phase, grounded};
        adj_[v];
        return v;
    }

    VertexId add_input(bool classical = false) {
        const VertexId v = add_boundary_vertex();
        inputs_.push_back({v, classical});
        return v;
    }
    VertexId add_output(bool classical = false) {
        const VertexId v = add_boundary_vertex();
        outputs_.push_back({v, classical});
        return v;
    }

    /// Adds an edge, resolving parallel edges and self-loops between Z-spiders.
    void add_edge(VertexId u, VertexId v, EdgeKind k) {
        require(u);
        require(v);
        if (u == v) {
            if (is_boundary(u)) throw InvariantError("self-loop on a boundary vertex");
            if (k == EdgeKind::hadamard) vertices_[u].phase += Phase::pi();
            return;
        }
        auto& nu = adj_[u];
        auto it = nu.find(v);
        if (it == nu.end()) {
            nu[v] = k;
            adj_[v][u] = k;
            return;
        }
        if (is_boundary(u) || is_boundary(v)) throw InvariantError("parallel edge at a boundary vertex");
        const EdgeKind old = it->second;
        if (old == EdgeKind::hadamard && k == EdgeKind::hadamard) {
            remove_edge(u, v);
        } else if (old != k) {
            set_edge_kind(u, v, EdgeKind::plain);
            vertices_[u].phase += Phase::pi();
        }
    }

    void remove_edge(VertexId u, VertexId v) {
        adj_.at(u).erase(v);
        adj_.at(v).erase(u);
    }

    void set_edge_kind(VertexId u, VertexId v, EdgeKind k) {
        adj_.at(u).at(v) = k;
        adj_.at(v).at(u) = k;
    }

    /// Adds a Hadamard edge if absent, removes it if present.
    void toggle_hadamard(VertexId u, VertexId v) {
        if (u == v) return;
        auto e = edge(u, v);
        if (!e) {
            add_edge(u, v, EdgeKind::hadamard);
        } else if (*e == EdgeKind::hadamard) {
            remove_edge(u, v);
        } else {
            throw InvariantError("toggle_hadamard on a plain edge");
        }
    }

    void remove_vertex(VertexId v) {
        require(v);
        for (const auto& [w, k] : adj_.at(v)) adj_.at(w).erase(v);
        adj_.erase(v);
        vertices_.erase(v);
        std::erase_if(inputs_, [v](const BoundaryRef& b) { return b.id == v; });
        std::erase_if(outputs_, [v](const BoundaryRef& b) { return b.id == v; });
    }

    bool contains(VertexId v) const { return vertices_.count(v) != 0; }
    std::optional<EdgeKind> edge(VertexId u, VertexId v) const {
        const auto& n = adj_.at(u);
        auto it = n.find(v);
        if (it == n.end()) return std::nullopt;
        return it->second;
    }
    bool connected(VertexId u, VertexId v) const { return edge(u, v).has_value(); }
    const Neighbors& neighbors(VertexId v) const { return adj_.at(v); }
    std::size_t degree(VertexId v) const { return adj_.at(v).size(); }

    const VertexData& data(VertexId v) const { return vertices_.at(v); }
    bool is_boundary(VertexId v) const { return vertices_.at(v).kind == VertexKind::boundary; }
    bool is_spider(VertexId v) const { return vertices_.at(v).kind == VertexKind::z_spider; }
    Phase phase(VertexId v) const { return vertices_.at(v).phase; }
    void set_phase(VertexId v, Phase p) { vertices_.at(v).phase = p; }
    void add_to_phase(VertexId v, Phase p) { vertices_.at(v).phase += p; }
    bool grounded(VertexId v) const { return vertices_.at(v).grounded; }
    void set_grounded(VertexId v, bool g) { vertices_.at(v).grounded = g; }

    const std::map<VertexId, VertexData>& vertices() const { return vertices_; }
    const std::vector<BoundaryRef>& inputs() const { return inputs_; }
    const std::vector<BoundaryRef>& outputs() const { return outputs_; }
    void set_input_classical(std::size_t i, bool c) { inputs_.at(i).classical = c; }
    void set_output_classical(std::size_t i, bool c) { outputs_.at(i).classical = c; }

    std::vector<VertexId> spiders() const {
        std::vector<VertexId> out;
        for (const auto& [v, d] : vertices_)
            if (d.kind == VertexKind::z_spider) out.push_back(v);
        return out;
    }
    std::size_t num_spiders() const {
        std::size_t n = 0;
        for (const auto& [v, d] : vertices_) n += d.kind == VertexKind::z_spider;
        return n;
    }
    std::size_t num_grounds() const {
        std::size_t n = 0;
        for (const auto& [v, d] : vertices_) n += d.kind == VertexKind::z_spider && d.grounded;
        return n;
    }
    std::size_t num_edges() const {
        std::size_t n = 0;
        for (const auto& [v, ns] : adj_) n += ns.size();
        return n / 2;
    }

    bool is_input(VertexId v) const { return find_boundary(inputs_, v).has_value(); }
    bool is_output(VertexId v) const { return find_boundary(outputs_, v).has_value(); }

    /// Number of boundary vertices adjacent to spider v.
    std::size_t boundary_count(VertexId v) const {
        std::size_t n = 0;
        for (const auto& [w, k] : adj_.at(v)) n += is_boundary(w);
        return n;
    }
    /// A spider adjacent to at least one input or output.
    bool is_boundary_spider(VertexId v) const { return is_spider(v) && boundary_count(v) > 0; }
    bool is_interior(VertexId v) const { return is_spider(v) && boundary_count(v) == 0; }
    bool is_input_spider(VertexId v) const {
        for (const auto& [w, k] : adj_.at(v))
            if (is_boundary(w) && is_input(w)) return true;
        return false;
    }
    bool is_output_spider(VertexId v) const {
        for (const auto& [w, k] : adj_.at(v))
            if (is_boundary(w) && is_output(w)) return true;
        return false;
    }

    /// The single neighbour of a boundary vertex.
    std::optional<std::pair<VertexId, EdgeKind>> boundary_neighbor(VertexId b) const {
        const auto& n = adj_.at(b);
        if (n.size() != 1) return std::nullopt;
        return *n.begin();
    }

    VertexId next_id() const { return next_id_; }

    /// Adds a boundary vertex that is neither input nor output yet; used by
    /// deserialisation which restores the ordered lists afterwards.
    VertexId add_boundary_vertex(std::optional<VertexId> id = std::nullopt) {
        const VertexId v = id.value_or(next_id_);
        if (vertices_.count(v)) throw InvariantError("duplicate vertex id");
        next_id_ = std::max(next_id_, v + 1);
        vertices_[v] = {VertexKind::boundary, {}, false};
        adj_[v];
        return v;
    }
    VertexId add_spider_with_id(VertexId id, Phase phase, bool grounded) {
        if (vertices_.count(id)) throw InvariantError("duplicate vertex id");
        next_id_ = std::max(next_id_, id + 1);
        vertices_[id] = {VertexKind::z_spider, phase, grounded};
        adj_[id];
        return id;
    }
    void append_input(VertexId v, bool classical) { inputs_.push_back({v, classical}); }
    void append_output(VertexId v, bool classical) { outputs_.push_back({v, classical}); }

private:
    void require(VertexId v) const {
        if (!vertices_.count(v)) throw InvariantError("unknown vertex " + std::to_string(v));
    }
    static std::optional<std::size_t> find_boundary(const std::vector<BoundaryRef>& list, VertexId v) {
        for (std::size_t i = 0; i < list.size(); ++i)
            if (list[i].id == v) return i;
        return std::nullopt;
    }

    VertexId next_id_ = 0;
    std::map<VertexId, VertexData> vertices_;
    std::map<VertexId, Neighbors> adj_;
    std::vector<BoundaryRef> inputs_;
    std::vector<BoundaryRef> outputs_;
};

// ---------------------------------------------------------------------------
// Normal forms

/// Merges spider v into u along their plain edge.
inline void fuse_spiders(Diagram& d, VertexId u, VertexId v) {
    if (!d.is_spider(u) || !d.is_spider(v) || d.edge(u, v) != EdgeKind::plain)
        throw PreconditionError("fuse_spiders: need two spiders joined by a plain edge");
    d.add_to_phase(u, d.phase(v));
    if (d.grounded(v)) d.set_grounded(u, true);
    const auto ns = d.neighbors(v);
    d.remove_vertex(v);
    for (const auto& [w, k] : ns)
        if (w != u) d.add_edge(u, w, k);
}

/// Zeroes grounded phases and drops edges between grounded spiders.
inline void clean_grounds(Diagram& d) {
    for (VertexId v : d.spiders()) {
        if (!d.grounded(v)) continue;
        d.set_phase(v, {});
        std::vector<VertexId> drop;
        for (const auto& [w, k] : d.neighbors(v))
            if (d.is_spider(w) && d.grounded(w)) drop.push_back(w);
        for (VertexId w : drop) d.remove_edge(v, w);
    }
}

inline void normalize_in_place(Diagram& d) {
    for (;;) {
        std::optional<std::pair<VertexId, VertexId>> hit;
        for (VertexId u : d.spiders()) {
            for (const auto& [w, k] : d.neighbors(u)) {
                if (k == EdgeKind::plain && d.is_spider(w)) {
                    hit = {u, w};
                    break;
                }
            }
            if (hit) break;
        }
        if (!hit) break;
        fuse_spiders(d, hit->first, hit->second);
    }
    clean_grounds(d);
}

inline Diagram normalize(Diagram d) {
    normalize_in_place(d);
    return d;
}

/// Number of input, output and ground connections of a spider.
inline std::size_t attachment_count(const Diagram& d, VertexId v) {
    return d.boundary_count(v) + (d.grounded(v) ? 1 : 0);
}

/// Re-routes a boundary edge b -k- v through two fresh spiders:
/// b -k- s2 -H- s1 -H- v.
inline void insert_identity_chain(Diagram& d, VertexId boundary, VertexId v) {
    const EdgeKind k = *d.edge(boundary, v);
    d.remove_edge(boundary, v);
    const VertexId s1 = d.add_spider();
    const VertexId s2 = d.add_spider();
    d.add_edge(v, s1, EdgeKind::hadamard);
    d.add_edge(s1, s2, EdgeKind::hadamard);
    d.add_edge(s2, boundary, k);
}

inline void strictify_spider(Diagram& d, VertexId v) {
    std::vector<VertexId> bs;
    for (const auto& [w, k] : d.neighbors(v))
        if (d.is_boundary(w)) bs.push_back(w);
    for (VertexId b : bs) insert_identity_chain(d, b, v);
}

inline void to_strict_graph_like_in_place(Diagram& d) {
    for (VertexId v : d.spiders())
        if (attachment_count(d, v) >= 2) strictify_spider(d, v);
    // Bare wires between two boundaries.
    for (const auto& in : std::vector<BoundaryRef>(d.inputs())) {
        auto nb = d.boundary_neighbor(in.id);
        if (nb && d.is_boundary(nb->first)) {
            const VertexId out = nb->first;
            const EdgeKind k = nb->second;
            d.remove_edge(in.id, out);
            const VertexId s1 = d.add_spider();
            const VertexId s2 = d.add_spider();
            d.add_edge(in.id, s1, k);
            d.add_edge(s1, s2, EdgeKind::hadamard);
            d.add_edge(s2, out, EdgeKind::hadamard);
        }
    }
}

inline Diagram to_strict_graph_like(Diagram d) {
    to_strict_graph_like_in_place(d);
    return d;
}

struct GraphLikeReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks the graph-like conditions. Strict form allows at most one input,
/// output or ground per spider in total; weak form allows at most one input
/// and at most one ground (any number of outputs).
inline GraphLikeReport check_graph_like(const Diagram& d, bool strict) {
    GraphLikeReport r;
    auto add = [&](const std::string& s) { r.violations.push_back(s); };
    for (const auto& [v, data] : d.vertices()) {
        const std::string name = "vertex " + std::to_string(v);
        if (data.kind == VertexKind::boundary) {
            if (!d.is_input(v) && !d.is_output(v)) add(name + ": dangling boundary vertex");
            if (d.degree(v) != 1) {
                add(name + ": boundary degree " + std::to_string(d.degree(v)));
                continue;
            }
            if (!d.is_spider(d.neighbors(v).begin()->first)) add(name + ": boundary not attached to a spider");
            continue;
        }
        std::size_t ins = 0, outs = 0;
        for (const auto& [w, k] : d.neighbors(v)) {
            if (d.is_boundary(w)) {
                ins += d.is_input(w);
                outs += d.is_output(w);
                continue;
            }
            if (w < v) continue;
            if (k != EdgeKind::hadamard) add(name + ": plain edge to spider " + std::to_string(w));
            if (data.grounded && d.grounded(w)) add(name + ": connected ground-spiders with " + std::to_string(w));
        }
        if (data.grounded && !data.phase.is_zero()) add(name + ": ground-spider with nonzero phase");
        const std::size_t gnd = data.grounded ? 1 : 0;
        if (strict) {
            if (ins + outs + gnd > 1) add(name + ": more than one input/output/ground");
        } else {
            if (ins > 1) add(name + ": more than one input");
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Open graphs

struct OpenGraph {
    std::vector<VertexId> vertices;                    // sorted
    std::vector<std::pair<VertexId, VertexId>> edges;  // u < v
    std::set<VertexId> sources;
    std::set<VertexId> sinks;
};

/// Spiders, their Hadamard edges, input-spiders as sources, and output- plus
/// ground-spiders as sinks.
inline OpenGraph underlying_open_graph(const Diagram& d) {
    OpenGraph g;
    for (VertexId v : d.spiders()) {
        g.vertices.push_back(v);
        for (const auto& [w, k] : d.neighbors(v)) {
            if (d.is_boundary(w)) {
                if (d.is_input(w)) g.sources.insert(v);
                if (d.is_output(w)) g.sinks.insert(v);
            } else if (v < w) {
                g.edges.emplace_back(v, w);
            }
        }
        if (d.grounded(v)) g.sinks.insert(v);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Composition

namespace detail {

/// Copies every vertex and edge of `src` into `dst`; returns the id map.
inline std::map<VertexId, VertexId> import_vertices(Diagram& dst, const Diagram& src) {
    std::map<VertexId, VertexId> m;
    for (const auto& [v, data] : src.vertices())
        m[v] = data.kind == VertexKind::boundary ? dst.add_boundary_vertex() : dst.add_spider(data.phase, data.grounded);
    for (const auto& [v, data] : src.vertices())
        for (const auto& [w, k] : src.neighbors(v))
            if (v < w) dst.add_edge(m[v], m[w], k);
    return m;
}

/// Removes the boundary vertices a and b and joins their neighbours.
inline void splice_boundaries(Diagram& d, VertexId a, VertexId b) {
    const auto na = d.boundary_neighbor(a), nb = d.boundary_neighbor(b);
    if (!na || !nb) throw InvariantError("splice: boundary without a neighbour");
    if (na->first == b) {  // a and b joined directly: a closed loop
        d.remove_vertex(a);
        d.remove_vertex(b);
        return;
    }
    const EdgeKind k = na->second == nb->second ? EdgeKind::plain : EdgeKind::hadamard;
    d.remove_vertex(a);
    d.remove_vertex(b);
    d.add_edge(na->first, nb->first, k);
}

}  // namespace detail

/// d2 after d1: the outputs of d1 are plugged into the inputs of d2.
inline Diagram compose_diagrams(const Diagram& d1, const Diagram& d2) {
    if (d1.outputs().size() != d2.inputs().size()) throw PreconditionError("compose_diagrams: arity mismatch");
    Diagram r;
    const auto m1 = detail::import_vertices(r, d1);
    const auto m2 = detail::import_vertices(r, d2);
    for (const auto& b : d1.inputs()) r.append_input(m1.at(b.id), b.classical);
    for (const auto& b : d2.outputs()) r.append_output(m2.at(b.id), b.classical);
    for (std::size_t i = 0; i < d1.outputs().size(); ++i)
        detail::splice_boundaries(r, m1.at(d1.outputs()[i].id), m2.at(d2.inputs()[i].id));
    return r;
}

/// Side by side; the boundaries of d1 come first.
inline Diagram tensor_diagrams(const Diagram& d1, const Diagram& d2) {
    Diagram r;
    const auto m1 = detail::import_vertices(r, d1);
    const auto m2 = detail::import_vertices(r, d2);
    for (const auto& b : d1.inputs()) r.append_input(m1.at(b.id), b.classical);
    for (const auto& b : d2.inputs()) r.append_input(m2.at(b.id), b.classical);
    for (const auto& b : d1.outputs()) r.append_output(m1.at(b.id), b.classical);
    for (const auto& b : d2.outputs()) r.append_output(m2.at(b.id), b.classical);
    return r;
}

}  // namespace zxg
