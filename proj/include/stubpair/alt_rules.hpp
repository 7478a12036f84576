#pragma once

// Two direction rules that are not i.i.d. and give edges of finite mean
// length under stepwise pairing:
//  - degrees uniform on {0, 2, ..., 2n}, each vertex split evenly;
//  - one stub per vertex, directions alternating with a single fair coin
//    fixing the phase.

#include <cstdint>
#include <vector>

#include "stubpair/arrows.hpp"
#include "stubpair/degree_model.hpp"
#include "stubpair/edges.hpp"
#include "stubpair/rng.hpp"
#include "stubpair/sprd.hpp"

namespace stubpair {

struct Example51Result {
    std::vector<Degree> degrees;
    ArrowConfiguration arrows;
    EdgeConfiguration edges;
    VertexRange exact;
    double mean_longest_right = 0.0;        // over exact vertices; 0 when no right-arrow
    double mean_longest_right_present = 0.0; // over exact vertices with a right-arrow
    std::int64_t censored_in_exact = 0;
    std::vector<Observation> total_length; // per exact vertex with a stub
};

inline Example51Result run_example_51(int n, std::int64_t window, std::uint64_t seed, std::int64_t max_step = 0) {
    if (max_step == 0) max_step = window / 4;
    Example51Result res;
    Rng rng(seed, "degrees");
    res.degrees = sample_degrees(uniform_even(n), static_cast<std::size_t>(window), rng);
    res.arrows = assign_directions_balanced(res.degrees);
    res.edges = sprd_pair(res.arrows, max_step);
    res.exact = exactness_radius(res.edges);

    const auto metrics = all_edge_metrics(res.edges);
    double sum = 0.0;
    std::int64_t count = 0, present = 0;
    for (Vertex v = res.exact.first; v <= res.exact.last; ++v) {
        const EdgeMetrics& m = metrics[static_cast<std::size_t>(v)];
        ++count;
        if (m.longest_right) {
            sum += static_cast<double>(m.longest_right->value);
            ++present;
        }
        if (m.total) res.total_length.push_back(*m.total);
    }
    res.mean_longest_right = count ? sum / static_cast<double>(count) : 0.0;
    res.mean_longest_right_present = present ? sum / static_cast<double>(present) : 0.0;
    res.censored_in_exact = censoring_in_range(res.arrows, res.edges, res.exact).censored;
    return res;
}

struct Example52Result {
    Coin coin = Coin::Heads;
    ArrowConfiguration arrows;
    EdgeConfiguration edges;
};

/// The window starts at the first vertex whose stub points right (1 for
/// heads, 0 for tails), so it tiles into unit edges.
inline Example52Result run_example_52(std::int64_t window, Coin coin) {
    require(window >= 2 && window % 2 == 0, ErrorCode::InvalidArgument, "window must be even and >= 2");
    Example52Result res;
    res.coin = coin;
    const Vertex first = coin == Coin::Heads ? 1 : 0;
    res.arrows = assign_directions_delta1(static_cast<std::size_t>(window), first, coin);
    res.edges = sprd_pair(res.arrows, window);
    return res;
}

inline Coin coin_from_seed(std::uint64_t seed) {
    Rng rng(seed, "coin");
    return rng.below(2) == 0 ? Coin::Heads : Coin::Tails;
}

inline Example52Result run_example_52(std::int64_t window, std::uint64_t seed) {
    return run_example_52(window, coin_from_seed(seed));
}

} // namespace stubpair
