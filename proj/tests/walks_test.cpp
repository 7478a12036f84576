#include <gtest/gtest.h>

#include <cmath>

#include "stubpair/stats.hpp"
#include "stubpair/walks.hpp"

using namespace stubpair;

namespace {

// Brute force over all 2^n sign paths of a +-1 walk with fair steps.
std::vector<double> sign_path_passage(int n_max, int level) {
    std::vector<double> pmf(static_cast<std::size_t>(n_max), 0.0);
    const double w = std::ldexp(1.0, -n_max);
    for (std::uint32_t path = 0; path < (1u << n_max); ++path) {
        int s = 0;
        for (int n = 1; n <= n_max; ++n) {
            s += (path >> (n - 1) & 1u) ? 1 : -1;
            if (s >= level) {
                pmf[static_cast<std::size_t>(n - 1)] += w;
                break;
            }
        }
    }
    return pmf;
}

} // namespace

TEST(BuildWalk, Definitions) {
    const auto cfg = make_configuration({0, 2}, {1, 0});
    const auto w = build_walk(cfg, {0});
    EXPECT_EQ(w.x_incr[1], 1);
    EXPECT_EQ(w.delta[0], -1);
    EXPECT_EQ(w.delta[1], 2);
    EXPECT_EQ(w.s[1], 2);
    EXPECT_EQ(w.s_prime[1], 2);
    EXPECT_EQ(w.offset_sums.at(0)[1], 1);
}

TEST(BuildWalk, ZeroDegreesGiveZeroWalk) {
    const auto w = build_walk(make_configuration({0, 0, 0, 0}, {0, 0, 0, 0}), {0, 2});
    for (auto v : w.delta) EXPECT_EQ(v, 0);
    for (auto v : w.x_incr) EXPECT_EQ(v, 0);
    for (auto v : w.s) EXPECT_EQ(v, 0);
    for (const auto& [m, sums] : w.offset_sums)
        for (auto v : sums) EXPECT_EQ(v, 0);
}

TEST(BuildWalk, TelescopingAndPrimeIdentity) {
    Rng rng(8);
    const auto cfg = assign_directions_iid(sample_degrees(parse_distribution("0:0.3,1:0.3,3:0.4"), 500, rng), 0.45, rng);
    const auto w = build_walk(cfg, {0, 17, 250});
    for (const auto& [m, sums] : w.offset_sums)
        for (std::size_t n = 1; n < sums.size(); ++n)
            EXPECT_EQ(sums[n] - sums[n - 1], cfg.left[m + n] - cfg.right[m + n - 1]);
    for (std::size_t n = 1; n < cfg.size(); ++n) EXPECT_EQ(w.s_prime[n], w.s[n - 1] + cfg.left[n]);
    EXPECT_THROW(build_walk(cfg, {500}), Error);
}

TEST(FirstPassage, UsesWeakInequality) {
    // X_1 = -1, X_2 = 1, X_3 = 1  ->  S^(0) = (-1, 0, 1)
    const auto cfg = make_configuration({0, 0, 1, 1}, {1, 0, 0, 0});
    const auto w = build_walk(cfg);
    const auto fp = first_passage(w, 0, 0.0, PassageDirection::Up, 3);
    ASSERT_TRUE(fp.tau);
    EXPECT_EQ(*fp.tau, 2);
    const auto cfg2 = make_configuration({0, 1}, {0, 0});
    EXPECT_EQ(*first_passage(build_walk(cfg2), 0, 1.0, PassageDirection::Up, 1).tau, 1);
    const auto down = first_passage(w, 0, -1.0, PassageDirection::Down, 3);
    EXPECT_EQ(*down.tau, 1);
    const auto never = first_passage(w, 0, 5.0, PassageDirection::Up, 3);
    EXPECT_TRUE(never.censored());
    EXPECT_THROW(first_passage(w, 0, 0.0, PassageDirection::Up, 4), Error);
}

TEST(ExactPassage, DeltaWalkMatchesSignPaths) {
    const auto oracle = sign_path_passage(9, 1);
    EXPECT_DOUBLE_EQ(oracle[0], 0.5);
    EXPECT_DOUBLE_EQ(oracle[2], 0.125);
    EXPECT_DOUBLE_EQ(oracle[4], 0.0625);

    const auto exact = exact_passage_pmf(point_mass(1), 0.5, IncrementKind::Delta, 1.0, PassageDirection::Up, 9);
    for (int n = 1; n <= 9; ++n) EXPECT_DOUBLE_EQ(exact.at(n), oracle[static_cast<std::size_t>(n - 1)]) << n;
    const auto five = exact_passage_pmf(point_mass(1), 0.5, IncrementKind::Delta, 1.0, PassageDirection::Up, 5);
    EXPECT_EQ(five.pmf, (std::vector<double>{0.5, 0.0, 0.125, 0.0, 0.0625}));
    EXPECT_DOUBLE_EQ(five.censored, 1.0 - 0.6875);
}

TEST(ExactPassage, OneStepLevelZero) {
    const auto law = parse_distribution("0:0.2,1:0.5,3:0.3");
    const double p = 0.4;
    const auto exact = exact_passage_pmf(law, p, IncrementKind::Delta, 0.0, PassageDirection::Up, 1);
    double nonneg = 0.0;
    for (const auto& [d, q] : arrow_law(law, p).delta_law())
        if (d >= 0) nonneg += q;
    EXPECT_NEAR(exact.at(1), nonneg, 1e-15);
}

TEST(ExactPassage, XWalkMatchesDirectionWordEnumeration) {
    // one stub per vertex on 7 vertices (offset 0 .. 6), all 2^7 words
    const int n_max = 6;
    std::vector<double> oracle(n_max, 0.0);
    for (std::uint32_t word = 0; word < (1u << (n_max + 1)); ++word) {
        auto right = [&](int v) { return static_cast<int>(word >> v & 1u); };
        int s = 0;
        for (int n = 1; n <= n_max; ++n) {
            s += (1 - right(n)) - right(n - 1);
            if (s >= 0) {
                oracle[static_cast<std::size_t>(n - 1)] += 1.0 / 128;
                break;
            }
        }
    }
    const auto exact = exact_passage_pmf(point_mass(1), 0.5, IncrementKind::X, 0.0, PassageDirection::Up, n_max);
    for (int n = 1; n <= n_max; ++n) EXPECT_DOUBLE_EQ(exact.at(n), oracle[static_cast<std::size_t>(n - 1)]) << n;
}

TEST(ExactPassage, XWalkMatchesEnumerationForGeneralLaw) {
    // enumerate all joint (L, R) outcomes on n_max + 1 vertices
    const auto law = parse_distribution("0:0.5,2:0.5");
    const double p = 0.5;
    const auto arrows = arrow_law(law, p).atoms;
    const int n_max = 5;
    std::vector<double> oracle(n_max, 0.0);
    std::vector<std::size_t> pick(n_max + 1, 0);
    while (true) {
        double w = 1.0;
        for (auto k : pick) w *= arrows[k].second;
        std::int64_t s = 0;
        for (int n = 1; n <= n_max; ++n) {
            s += arrows[pick[static_cast<std::size_t>(n)]].first.first - arrows[pick[static_cast<std::size_t>(n - 1)]].first.second;
            if (s >= 2) {
                oracle[static_cast<std::size_t>(n - 1)] += w;
                break;
            }
        }
        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == arrows.size()) pick[k++] = 0;
        if (k == pick.size()) break;
    }
    const auto exact = exact_passage_pmf(law, p, IncrementKind::X, 2.0, PassageDirection::Up, n_max);
    for (int n = 1; n <= n_max; ++n) EXPECT_NEAR(exact.at(n), oracle[static_cast<std::size_t>(n - 1)], 1e-14) << n;
}

TEST(ExactPassage, Guard) {
    try {
        exact_passage_pmf(point_mass(1), 0.5, IncrementKind::X, 0.0, PassageDirection::Up, 15);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TooLarge);
    }
}

TEST(ExactPassage, DownIsMirrorOfUpAtHalf) {
    // i.i.d. symmetric delta steps, and x steps under one stub per vertex
    // where x = 1 - R_n - R_{n-1}, both have mirror-symmetric walks
    const auto law = parse_distribution("0:0.25,1:0.5,3:0.25");
    const auto up = exact_passage_pmf(law, 0.5, IncrementKind::Delta, 2.0, PassageDirection::Up, 10);
    const auto down = exact_passage_pmf(law, 0.5, IncrementKind::Delta, -2.0, PassageDirection::Down, 10);
    const auto up1 = exact_passage_pmf(point_mass(1), 0.5, IncrementKind::X, 2.0, PassageDirection::Up, 10);
    const auto down1 = exact_passage_pmf(point_mass(1), 0.5, IncrementKind::X, -2.0, PassageDirection::Down, 10);
    for (int n = 1; n <= 10; ++n) {
        EXPECT_NEAR(up.at(n), down.at(n), 1e-15);
        EXPECT_NEAR(up1.at(n), down1.at(n), 1e-15);
    }
}

TEST(SimulatedPassage, MatchesExactPmf) {
    Rng rng(2024);
    const int n_max = 9;
    const auto exact = exact_passage_pmf(point_mass(1), 0.5, IncrementKind::X, 2.0, PassageDirection::Up, n_max);
    std::vector<double> counts(n_max, 0.0);
    const int reps = 400000;
    for (int r = 0; r < reps; ++r) {
        const auto fp = simulate_passage(point_mass(1), 0.5, IncrementKind::X, 2.0, PassageDirection::Up, n_max, rng);
        if (fp.tau) counts[static_cast<std::size_t>(*fp.tau - 1)] += 1.0;
    }
    for (int n = 1; n <= n_max; ++n) EXPECT_NEAR(counts[static_cast<std::size_t>(n - 1)] / reps, exact.at(n), 0.005) << n;
}

TEST(Walk, DeltaSymmetricAtHalf) {
    Rng rng(99);
    const auto cfg = assign_directions_iid(sample_degrees(parse_distribution("0:0.2,1:0.4,2:0.2,5:0.2"), 100000, rng), 0.5, rng);
    const auto w = build_walk(cfg);
    std::vector<std::int64_t> flipped;
    for (auto d : w.delta) flipped.push_back(-d);
    EXPECT_LT(tv_distance(w.delta, flipped), 0.01);
}

TEST(Walk, DriftOfSPrimeUnderBias) {
    // E[L - R] = (1 - 2p) mu = -0.2 for p = 0.6 and one stub per vertex
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Rng rng(seed);
        const auto cfg = assign_directions_iid(std::vector<Degree>(100001, 1), 0.6, rng);
        const auto w = build_walk(cfg);
        EXPECT_NEAR(static_cast<double>(w.s_prime[100000]) / 100000.0, -0.2, 0.02);
    }
}

TEST(Walk, LevelTwoPassageHasHeavyTail) {
    Rng rng(4242);
    const std::int64_t horizon = 10000;
    std::vector<Observation> taus;
    for (int r = 0; r < 100000; ++r) {
        const auto fp = simulate_passage(point_mass(1), 0.5, IncrementKind::X, 2.0, PassageDirection::Up, horizon, rng);
        taus.push_back(fp.tau ? Observation{*fp.tau, false} : Observation{horizon, true});
    }
    const auto tm = truncated_mean_curve(taus, {100, 1000, 10000});
    EXPECT_TRUE(strictly_increasing(tm));
    const auto fit = tail_exponent(survival_curve(taus), 16, 4096);
    EXPECT_GE(fit.slope, -0.65);
    EXPECT_LE(fit.slope, -0.35);
}
