#include <gtest/gtest.h>

#include "stubpair/arw.hpp"
#include "stubpair/stats.hpp"

using namespace stubpair;

TEST(Arw, TwoSingleStubs) {
    const auto res = arw_pair({1, 1}, 3, 100000);
    EXPECT_EQ(res.status, ArwStatus::Ok);
    ASSERT_EQ(res.edges.edges.size(), 1u);
    const Edge& e = res.edges.edges[0];
    EXPECT_EQ(e.left, 0);
    EXPECT_EQ(e.right, 1);
    EXPECT_EQ(e.length, 1);
    EXPECT_EQ(e.right_rank, 1);
    EXPECT_EQ(e.left_rank, 1);
}

TEST(Arw, NoStubs) {
    const auto res = arw_pair({0, 0, 0}, 3, 10);
    EXPECT_EQ(res.status, ArwStatus::Ok);
    EXPECT_TRUE(res.edges.edges.empty());
    EXPECT_EQ(res.sweeps, 0);
}

TEST(Arw, OddTotal) {
    try {
        arw_pair({1, 0, 2}, 1, 10);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OddTotal);
    }
}

TEST(Arw, SingleOriginStalemate) {
    const auto res = arw_pair({0, 4, 0}, 1, 1000);
    EXPECT_EQ(res.status, ArwStatus::Stalemate);
    EXPECT_EQ(res.alive_at_end, 4);
    EXPECT_FALSE(is_perfect_cross_origin(res, {0, 4, 0}));
}

TEST(Arw, Timeout) {
    std::vector<Degree> d(1000, 0);
    d[0] = d[500] = 1;
    const auto res = arw_pair(d, 9, 5);
    EXPECT_EQ(res.status, ArwStatus::Timeout);
    EXPECT_EQ(res.sweeps, 5);
    EXPECT_EQ(res.alive_at_end, 2);
}

TEST(Arw, CycleDistance) {
    EXPECT_EQ(cycle_distance(0, 9, 10), 1);
    EXPECT_EQ(cycle_distance(2, 7, 10), 5);
    EXPECT_EQ(cycle_distance(4, 4, 10), 0);
}

TEST(Arw, PerfectMatchingOneStubPerVertex) {
    const std::vector<Degree> d(10000, 1);
    const auto res = arw_pair(d, 2025, 2'000'000'000);
    ASSERT_EQ(res.status, ArwStatus::Ok);
    EXPECT_TRUE(is_perfect_cross_origin(res, d));
    EXPECT_EQ(res.edges.edges.size(), 5000u);
    std::vector<std::int64_t> lengths;
    for (const auto& e : res.edges.edges) lengths.push_back(e.length);
    EXPECT_TRUE(strictly_increasing(truncated_mean_curve(lengths, {100, 1000})));
}

TEST(Arw, PerfectWithMixedDegrees) {
    Rng rng(12);
    const auto even = sample_even_degrees(parse_distribution("0:0.3,1:0.3,2:0.2,3:0.2"), 500, rng);
    const auto res = arw_pair(even.degrees, rng, 2'000'000'000);
    if (res.status == ArwStatus::Ok) {
        EXPECT_TRUE(is_perfect_cross_origin(res, even.degrees));
    } else {
        EXPECT_EQ(res.status, ArwStatus::Stalemate);
    }
}

TEST(Arw, Deterministic) {
    std::vector<Degree> d(300, 1);
    const auto a = arw_pair(d, 44, 1'000'000'000);
    const auto b = arw_pair(d, 44, 1'000'000'000);
    EXPECT_EQ(a.edges.edges, b.edges.edges);
    EXPECT_EQ(a.sweeps, b.sweeps);
    const auto c = arw_pair(d, 45, 1'000'000'000);
    EXPECT_NE(a.edges.edges, c.edges.edges);
}
