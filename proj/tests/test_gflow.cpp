#include <gtest/gtest.h>

#include <random>

#include "zxg/gflow.hpp"

using namespace zxg;

namespace {

OpenGraph graph(std::size_t n, std::vector<std::pair<VertexId, VertexId>> edges, std::set<VertexId> s,
                std::set<VertexId> t) {
    OpenGraph og;
    for (VertexId v = 0; v < n; ++v) og.vertices.push_back(v);
    og.edges = std::move(edges);
    og.sources = std::move(s);
    og.sinks = std::move(t);
    return og;
}

// Graph number `code` on n vertices: bit k of code selects the k-th pair.
OpenGraph graph_from_code(std::size_t n, std::uint32_t code, std::uint32_t s, std::uint32_t t) {
    std::vector<std::pair<VertexId, VertexId>> e;
    std::size_t k = 0;
    for (VertexId a = 0; a < n; ++a)
        for (VertexId b = a + 1; b < n; ++b, ++k)
            if (code >> k & 1u) e.emplace_back(a, b);
    std::set<VertexId> ss, tt;
    for (VertexId v = 0; v < n; ++v) {
        if (s >> v & 1u) ss.insert(v);
        if (t >> v & 1u) tt.insert(v);
    }
    return graph(n, e, ss, tt);
}

void expect_agreement(const OpenGraph& og) {
    const auto f = find_focused_gflow(og);
    const bool truth = brute_force_gflow_exists(og);
    ASSERT_EQ(f.has_value(), truth);
    if (f) ASSERT_TRUE(verify_focused_gflow(og, *f));
}

}  // namespace

TEST(Gflow, PathGraph) {
    const auto og = graph(3, {{0, 1}, {1, 2}}, {0}, {2});
    const auto f = find_focused_gflow(og);
    ASSERT_TRUE(f);
    EXPECT_EQ(f->g.at(1), std::set<VertexId>{2});
    EXPECT_EQ(f->g.at(0), std::set<VertexId>{1});
    EXPECT_TRUE(verify_focused_gflow(og, *f));
}

TEST(Gflow, AllBoundary) {
    const auto og = graph(3, {{0, 1}, {1, 2}}, {0, 1, 2}, {0, 1, 2});
    const auto f = find_focused_gflow(og);
    ASSERT_TRUE(f);
    EXPECT_TRUE(f->g.empty());
    EXPECT_TRUE(verify_focused_gflow(og, *f));
}

TEST(Gflow, FourCycleHasNone) {
    const auto og = graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {0}, {2});
    EXPECT_FALSE(find_focused_gflow(og));
    EXPECT_FALSE(brute_force_gflow_exists(og));
}

TEST(Gflow, TrivialGraphs) {
    EXPECT_TRUE(brute_force_gflow_exists(graph(0, {}, {}, {})));
    EXPECT_TRUE(find_focused_gflow(graph(0, {}, {}, {})));
    EXPECT_FALSE(brute_force_gflow_exists(graph(1, {}, {}, {})));
    EXPECT_FALSE(find_focused_gflow(graph(1, {}, {}, {})));
}

TEST(Gflow, VerifierRejectsBrokenWitnesses) {
    const auto og = graph(3, {{0, 1}, {1, 2}}, {0}, {2});
    const auto f = *find_focused_gflow(og);
    auto emptied = f;
    emptied.g.at(0).clear();
    EXPECT_FALSE(verify_focused_gflow(og, emptied));
    auto flat = f;
    for (auto& [v, o] : flat.order) o = 0;
    EXPECT_FALSE(verify_focused_gflow(og, flat));
    auto from_source = f;
    from_source.g.at(1) = {0, 2};
    EXPECT_FALSE(verify_focused_gflow(og, from_source));
}

TEST(Gflow, BruteForceSizeGuard) {
    EXPECT_THROW(brute_force_gflow_exists(graph(13, {}, {}, {})), SizeLimitError);
}

TEST(Gflow, AgreesWithBruteForceUpToFourVertices) {
    for (std::size_t n = 1; n <= 4; ++n) {
        const std::uint32_t pairs = static_cast<std::uint32_t>(n * (n - 1) / 2);
        for (std::uint32_t code = 0; code < (1u << pairs); ++code)
            for (std::uint32_t s = 0; s < (1u << n); ++s)
                for (std::uint32_t t = 0; t < (1u << n); ++t) {
                    SCOPED_TRACE(::testing::Message() << n << " " << code << " " << s << " " << t);
                    expect_agreement(graph_from_code(n, code, s, t));
                }
    }
}

TEST(Gflow, AgreesWithBruteForceOnFiveVertices) {
    std::mt19937_64 rng(11);
    std::size_t checked = 0;
    for (std::uint32_t code = 0; code < (1u << 10); ++code)
        for (int k = 0; k < 4; ++k) {
            const std::uint32_t s = rng() % 32, t = rng() % 32;
            SCOPED_TRACE(::testing::Message() << code << " " << s << " " << t);
            expect_agreement(graph_from_code(5, code, s, t));
            ++checked;
        }
    EXPECT_GE(checked, 2000u);
}

TEST(Gflow, AddingASinkKeepsGflow) {
    for (std::size_t n = 2; n <= 5; ++n) {
        const std::uint32_t pairs = static_cast<std::uint32_t>(n * (n - 1) / 2);
        std::mt19937_64 rng(n);
        for (std::uint32_t code = 0; code < (1u << pairs); ++code) {
            const std::uint32_t s = rng() % (1u << n), t = rng() % (1u << n);
            if (!find_focused_gflow(graph_from_code(n, code, s, t))) continue;
            for (std::uint32_t v = 0; v < n; ++v)
                EXPECT_TRUE(find_focused_gflow(graph_from_code(n, code, s, t | (1u << v))));
        }
    }
}
