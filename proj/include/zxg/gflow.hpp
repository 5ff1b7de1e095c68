#pragma once

// Focused gFlow: g(u) ⊆ V∖S for every non-sink u, with Odd(g(u)) ∩ T̄ = {u}
// and every v in g(u) strictly later than u.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "zxg/diagram.hpp"
#include "zxg/error.hpp"
#include "zxg/gf2.hpp"

namespace zxg {

struct FocusedGflow {
    std::map<VertexId, std::set<VertexId>> g;
    std::map<VertexId, std::size_t> order;  // larger = later; sinks are latest
};

namespace detail {

struct IndexedGraph {
    std::vector<VertexId> ids;
    std::map<VertexId, std::size_t> index;
    std::vector<std::vector<std::size_t>> adj;
    std::vector<bool> source, sink;

    explicit IndexedGraph(const OpenGraph& og) : ids(og.vertices) {
        std::sort(ids.begin(), ids.end());
        for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;
        adj.resize(ids.size());
        source.assign(ids.size(), false);
        sink.assign(ids.size(), false);
        for (const auto& [a, b] : og.edges) {
            const std::size_t i = index.at(a), j = index.at(b);
            adj[i].push_back(j);
            adj[j].push_back(i);
        }
        for (VertexId v : og.sources) source[index.at(v)] = true;
        for (VertexId v : og.sinks) sink[index.at(v)] = true;
    }
    std::size_t size() const { return ids.size(); }
};

}  // namespace detail

/// Layer-by-layer construction: starting from the sinks, a vertex joins the
/// next layer as soon as a correction set inside the already placed,
/// non-source vertices exists. Solvability only grows with the placed set, so
/// this decides existence.
inline std::optional<FocusedGflow> find_focused_gflow(const OpenGraph& og) {
    const detail::IndexedGraph G(og);
    const std::size_t n = G.size();
    std::vector<bool> placed = G.sink;
    std::vector<std::size_t> nonsinks;
    for (std::size_t i = 0; i < n; ++i)
        if (!G.sink[i]) nonsinks.push_back(i);
    std::vector<std::size_t> row_of(n, SIZE_MAX);
    for (std::size_t r = 0; r < nonsinks.size(); ++r) row_of[nonsinks[r]] = r;

    std::vector<std::size_t> layer(n, 0);
    std::map<std::size_t, std::vector<std::size_t>> corr;
    std::size_t remaining = nonsinks.size();
    std::size_t level = 0;
    while (remaining > 0) {
        ++level;
        std::vector<std::size_t> cand, todo;
        for (std::size_t i = 0; i < n; ++i) {
            if (placed[i] && !G.source[i]) cand.push_back(i);
            if (!placed[i]) todo.push_back(i);
        }
        // [A | e_u for each u in todo], rows = non-sinks, A[w][k] = w ~ cand[k].
        Gf2Matrix m(nonsinks.size(), cand.size() + todo.size());
        for (std::size_t k = 0; k < cand.size(); ++k)
            for (std::size_t w : G.adj[cand[k]])
                if (row_of[w] != SIZE_MAX) m.flip(row_of[w], k);
        for (std::size_t t = 0; t < todo.size(); ++t) m.set(row_of[todo[t]], cand.size() + t, true);
        const auto red = rref_with_ops(m, cand.size());
        std::vector<std::size_t> solved;
        for (std::size_t t = 0; t < todo.size(); ++t) {
            const std::size_t col = cand.size() + t;
            bool ok = true;
            for (std::size_t r = red.rank(); r < m.rows() && ok; ++r)
                if (red.reduced.get(r, col)) ok = false;
            if (!ok) continue;
            std::vector<std::size_t> k;
            for (std::size_t r = 0; r < red.rank(); ++r)
                if (red.reduced.get(r, col)) k.push_back(cand[red.pivot_cols[r]]);
            corr[todo[t]] = std::move(k);
            solved.push_back(todo[t]);
        }
        if (solved.empty()) return std::nullopt;
        for (std::size_t u : solved) {
            placed[u] = true;
            layer[u] = level;
        }
        remaining -= solved.size();
    }
    FocusedGflow f;
    for (std::size_t i = 0; i < n; ++i) {
        f.order[G.ids[i]] = G.sink[i] ? level : level - layer[i];
    }
    for (const auto& [u, k] : corr) {
        auto& s = f.g[G.ids[u]];
        for (std::size_t v : k) s.insert(G.ids[v]);
    }
    return f;
}

inline bool verify_focused_gflow(const OpenGraph& og, const FocusedGflow& f) {
    const detail::IndexedGraph G(og);
    for (std::size_t u = 0; u < G.size(); ++u) {
        if (G.sink[u]) continue;
        const VertexId uid = G.ids[u];
        auto it = f.g.find(uid);
        auto ou = f.order.find(uid);
        if (it == f.g.end() || ou == f.order.end()) return false;
        std::vector<int> parity(G.size(), 0);
        for (VertexId v : it->second) {
            auto iv = G.index.find(v);
            if (iv == G.index.end()) return false;
            if (G.source[iv->second]) return false;
            auto ov = f.order.find(v);
            if (ov == f.order.end() || ov->second <= ou->second) return false;
            for (std::size_t w : G.adj[iv->second]) parity[w] ^= 1;
        }
        for (std::size_t w = 0; w < G.size(); ++w) {
            if (G.sink[w]) continue;
            if (parity[w] != (w == u ? 1 : 0)) return false;
        }
    }
    return true;
}

/// Exhaustive search: for each non-sink, every subset of V∖S whose odd
/// neighbourhood meets the non-sinks exactly in that vertex; then a
/// backtracking choice of one subset per vertex with an acyclic "corrects"
/// relation.
inline bool brute_force_gflow_exists(const OpenGraph& og) {
    const detail::IndexedGraph G(og);
    const std::size_t n = G.size();
    std::vector<std::size_t> nonsinks;
    for (std::size_t i = 0; i < n; ++i)
        if (!G.sink[i]) nonsinks.push_back(i);
    if (nonsinks.size() > 12 || n > 20) throw SizeLimitError("brute_force_gflow_exists: graph too large");
    if (nonsinks.empty()) return true;
    std::vector<std::uint32_t> nbr(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : G.adj[i]) nbr[i] |= 1u << j;
    std::uint32_t sources = 0, nonsink_mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (G.source[i]) sources |= 1u << i;
        if (!G.sink[i]) nonsink_mask |= 1u << i;
    }
    std::vector<std::vector<std::uint32_t>> options(nonsinks.size());
    for (std::size_t a = 0; a < nonsinks.size(); ++a) {
        const std::size_t u = nonsinks[a];
        for (std::uint32_t k = 0; k < (1u << n); ++k) {
            if (k & sources) continue;
            if (k & (1u << u)) continue;  // u would have to precede itself
            std::uint32_t odd = 0;
            for (std::size_t v = 0; v < n; ++v)
                if (k & (1u << v)) odd ^= nbr[v];
            if ((odd & nonsink_mask) == (1u << u)) options[a].push_back(k);
        }
        if (options[a].empty()) return false;
    }
    std::vector<std::uint32_t> succ(n, 0);  // u -> members of g(u)
    auto acyclic = [&]() {
        std::vector<int> state(n, 0);
        auto dfs = [&](auto&& self, std::size_t v) -> bool {
            state[v] = 1;
            for (std::size_t w = 0; w < n; ++w) {
                if (!(succ[v] & (1u << w))) continue;
                if (state[w] == 1) return false;
                if (state[w] == 0 && !self(self, w)) return false;
            }
            state[v] = 2;
            return true;
        };
        for (std::size_t v = 0; v < n; ++v)
            if (state[v] == 0 && !dfs(dfs, v)) return false;
        return true;
    };
    auto search = [&](auto&& self, std::size_t a) -> bool {
        if (a == nonsinks.size()) return true;
        for (std::uint32_t k : options[a]) {
            succ[nonsinks[a]] = k;
            if (acyclic() && self(self, a + 1)) return true;
        }
        succ[nonsinks[a]] = 0;
        return false;
    };
    return search(search, 0);
}

}  // namespace zxg
