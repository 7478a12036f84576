#include <gtest/gtest.h>

#include "stubpair/matching_oracle.hpp"

using namespace stubpair;

namespace {

std::vector<Edge> spans(std::initializer_list<std::pair<Vertex, Vertex>> list) {
    std::vector<Edge> out;
    for (auto [a, b] : list) out.push_back({a, b, b - a, b - a, 1, 1});
    return out;
}

bool crossing_brute_force(const std::vector<Edge>& edges) {
    for (const Edge& e : edges)
        for (const Edge& f : edges) {
            const Vertex i = e.left, j = e.right, i2 = f.left, j2 = f.right;
            if ((i < i2 && i2 < j && j < j2) || (i2 < i && i < j2 && j2 < j)) return true;
        }
    return false;
}

} // namespace

TEST(IsNested, Definition) {
    EXPECT_TRUE(is_nested(spans({{0, 1}, {2, 3}})));
    EXPECT_FALSE(is_nested(spans({{0, 2}, {1, 3}})));
    EXPECT_TRUE(is_nested(spans({{0, 2}, {1, 2}})));
    EXPECT_TRUE(is_nested(spans({{0, 2}, {0, 1}})));
    EXPECT_TRUE(is_nested(spans({{0, 2}, {2, 4}})));
    EXPECT_TRUE(is_nested(spans({{0, 5}, {1, 2}, {3, 4}})));
    EXPECT_FALSE(is_nested(spans({{0, 5}, {1, 3}, {2, 6}})));
    EXPECT_TRUE(is_nested(std::vector<Edge>{}));
}

TEST(IsNested, AgreesWithQuadraticCheck) {
    Rng rng(3);
    for (int trial = 0; trial < 20000; ++trial) {
        std::vector<Edge> edges;
        const auto count = 1 + rng.below(6);
        for (std::uint64_t k = 0; k < count; ++k) {
            const auto a = static_cast<Vertex>(rng.below(8));
            const auto b = a + 1 + static_cast<Vertex>(rng.below(6));
            edges.push_back({a, b, b - a, b - a, 1, 1});
        }
        EXPECT_EQ(is_nested(edges), !crossing_brute_force(edges));
    }
}

TEST(EnumeratePairings, Examples) {
    const auto single = enumerate_pairings(make_configuration({0, 1}, {1, 0}));
    EXPECT_EQ(single.all_matchings.size(), 1u);

    const auto four = enumerate_pairings(make_configuration({0, 0, 1, 1}, {1, 1, 0, 0}));
    ASSERT_EQ(four.all_matchings.size(), 2u);
    std::vector<std::vector<std::pair<Vertex, Vertex>>> found;
    for (const auto& m : four.all_matchings) found.push_back(endpoint_multiset(m.edges));
    std::sort(found.begin(), found.end());
    using V = std::vector<std::pair<Vertex, Vertex>>;
    EXPECT_EQ(found[0], (V{{0, 2}, {1, 3}}));
    EXPECT_EQ(found[1], (V{{0, 3}, {1, 2}}));
    EXPECT_EQ(endpoint_multiset(four.nested().edges), (V{{0, 3}, {1, 2}}));
}

TEST(EnumeratePairings, Errors) {
    auto code = [](const ArrowConfiguration& cfg) {
        try {
            enumerate_pairings(cfg);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Io;
    };
    EXPECT_EQ(code(make_configuration({0, 1}, {1, 1})), ErrorCode::Unbalanced);
    EXPECT_EQ(code(make_configuration({1, 0}, {0, 1})), ErrorCode::Infeasible);
    EXPECT_EQ(code(make_configuration({0, 0, 0, 7}, {7, 0, 0, 0})), ErrorCode::TooLarge);
}

TEST(EnumeratePairings, DeduplicatesExchangeableStubs) {
    // two right-arrows at 0, left-arrows at 1 and 2: only one graph
    const auto en = enumerate_pairings(make_configuration({0, 1, 1}, {2, 0, 0}));
    EXPECT_EQ(en.all_matchings.size(), 1u);
    // R_0 = 2, R_1 = 1, L_2 = 2, L_3 = 1: targets of vertex 0 in {2,2},{2,3}; vertex 1 takes the rest
    const auto en2 = enumerate_pairings(make_configuration({0, 0, 2, 1}, {2, 1, 0, 0}));
    EXPECT_EQ(en2.all_matchings.size(), 2u);
}

TEST(NestedLemma, HandComputedBlock) {
    const auto cfg = make_configuration({0, 0, 1, 1}, {1, 1, 0, 0});
    const auto en = enumerate_pairings(cfg);
    const auto& nested = en.nested();
    const Edge outer = *std::find_if(nested.edges.begin(), nested.edges.end(), [](const Edge& e) { return e.left == 0; });
    const auto u = under_edge_sets(cfg, nested, outer);
    EXPECT_EQ(u.t_under, 1);
    EXPECT_EQ(u.t_block, 4);
    EXPECT_EQ(u.w_nested_r, (std::vector<std::int64_t>{1, 2, 1}));

    const auto crossing = std::find_if(en.all_matchings.begin(), en.all_matchings.end(),
                                       [](const EdgeConfiguration& m) { return !is_nested(m); });
    ASSERT_NE(crossing, en.all_matchings.end());
    std::int64_t t_r = 0;
    for (const Edge& e : crossing->edges) t_r += e.length;
    EXPECT_EQ(t_r, 4);

    const auto rep = check_nested_lemma(en);
    EXPECT_TRUE(rep.violations.empty());
    EXPECT_TRUE(rep.consistent_totals);
}

TEST(NestedLemma, SingleEdge) {
    const auto en = enumerate_pairings(make_configuration({0, 1}, {1, 0}));
    const auto u = under_edge_sets(en.base, en.nested(), en.nested().edges[0]);
    EXPECT_EQ(u.t_under, 0);
    EXPECT_TRUE(check_nested_lemma(en).violations.empty());
    EXPECT_TRUE(check_nested_uniqueness(en));
}

TEST(NestedUniqueness, FourVertexExample) {
    EXPECT_TRUE(check_nested_uniqueness(enumerate_pairings(make_configuration({0, 0, 1, 1}, {1, 1, 0, 0}))));
}

TEST(OracleSweep, SmallFamilyIsClean) {
    const auto s = oracle_sweep(1, 5, 2);
    EXPECT_GT(s.instances, 100u);
    EXPECT_EQ(s.uniqueness_failures, 0u);
    EXPECT_EQ(s.lemma_violations, 0u);
    EXPECT_EQ(s.sprd_not_member, 0u);
    EXPECT_EQ(s.inconsistent_totals, 0u);
}

TEST(OracleSweep, DetectsABrokenNestedMatching) {
    // feeding a crossing matching as "nested" must produce violations
    const auto cfg = make_configuration({0, 0, 1, 1}, {1, 1, 0, 0});
    auto en = enumerate_pairings(cfg);
    for (std::size_t k = 0; k < en.all_matchings.size(); ++k)
        if (!is_nested(en.all_matchings[k])) en.nested_index = k;
    EXPECT_FALSE(check_nested_lemma(en).violations.empty());
}
