#pragma once

// Stepwise pairing: at step n = 1, 2, ... every right-arrow at i that is
// still free is joined to a free left-arrow at i + n, lowest ranks first.
//
// Two implementations are provided. sprd_pair_stepwise follows the step
// recursion literally and costs O(window * max_step). sprd_pair uses the
// fact that the result is the unique crossing-free matching, which a
// single left-to-right stack scan produces in O(window + stubs); edges
// longer than max_step are then dropped and their stubs censored.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "stubpair/arrows.hpp"
#include "stubpair/edges.hpp"
#include "stubpair/error.hpp"
#include "stubpair/rng.hpp"

namespace stubpair {

/// Inclusive range of absolute vertices.
struct VertexRange {
    Vertex first = 0;
    Vertex last = -1;

    bool contains(Vertex v) const noexcept { return v >= first && v <= last; }
    std::int64_t size() const noexcept { return last - first + 1; }
    friend bool operator==(const VertexRange&, const VertexRange&) = default;
};

/// Vertices at distance >= max_step from both window ends. Their edges of
/// length <= max_step, and their censoring status, agree with the
/// infinite-lattice outcome.
inline VertexRange exactness_radius(std::int64_t window_len, std::int64_t max_step, Vertex first_vertex = 0) {
    require(max_step >= 1 && max_step <= window_len, ErrorCode::InvalidArgument,
            "max_step must lie in [1, window_len]");
    require(2 * max_step < window_len, ErrorCode::EmptyRange, "2 * max_step >= window length");
    return {first_vertex + max_step, first_vertex + window_len - max_step - 1};
}

inline VertexRange exactness_radius(const EdgeConfiguration& edges) {
    return exactness_radius(static_cast<std::int64_t>(edges.window_len), edges.max_step, edges.first_vertex);
}

inline bool is_boundary_affected(const EdgeConfiguration& edges, Vertex v) {
    if (2 * edges.max_step >= static_cast<std::int64_t>(edges.window_len)) return true;
    return !exactness_radius(edges).contains(v);
}

namespace detail {

inline void check_max_step(const ArrowConfiguration& cfg, std::int64_t max_step) {
    require(cfg.size() >= 1, ErrorCode::InvalidArgument, "empty arrow configuration");
    require(max_step >= 1 && max_step <= static_cast<std::int64_t>(cfg.size()), ErrorCode::InvalidArgument,
            "max_step must lie in [1, window_len]");
}

} // namespace detail

inline EdgeConfiguration sprd_pair(const ArrowConfiguration& cfg, std::int64_t max_step) {
    detail::check_max_step(cfg, max_step);
    EdgeConfiguration out;
    out.first_vertex = cfg.first_vertex;
    out.window_len = cfg.size();
    out.max_step = max_step;

    // free right-arrows, grouped by vertex; top of stack is the nearest
    struct Group {
        Vertex vertex;
        std::int32_t next_rank;
        std::int32_t last_rank;
    };
    std::vector<Group> stack;
    auto drop = [&](Vertex rv, std::int32_t rr, Vertex lv, std::int32_t lr) {
        out.censored.push_back({rv, Direction::Right, rr});
        out.censored.push_back({lv, Direction::Left, lr});
    };

    for (std::size_t k = 0; k < cfg.size(); ++k) {
        const Vertex v = cfg.first_vertex + static_cast<Vertex>(k);
        std::int32_t lrank = 1;
        const std::int32_t L = cfg.left[k];
        while (lrank <= L && !stack.empty()) {
            Group& g = stack.back();
            const std::int64_t len = v - g.vertex;
            while (lrank <= L && g.next_rank <= g.last_rank) {
                if (len <= max_step)
                    out.edges.push_back({g.vertex, v, len, len, g.next_rank, lrank});
                else
                    drop(g.vertex, g.next_rank, v, lrank);
                ++g.next_rank;
                ++lrank;
            }
            if (g.next_rank > g.last_rank) stack.pop_back();
        }
        for (; lrank <= L; ++lrank) out.censored.push_back({v, Direction::Left, lrank});
        if (cfg.right[k] > 0) stack.push_back({v, 1, cfg.right[k]});
    }
    for (const Group& g : stack)
        for (std::int32_t r = g.next_rank; r <= g.last_rank; ++r) out.censored.push_back({g.vertex, Direction::Right, r});

    out.canonicalize();
    return out;
}

/// Literal step recursion. When `shuffle` is given, the pairs (i, i + n)
/// within each step are visited in a random order.
inline EdgeConfiguration sprd_pair_stepwise(const ArrowConfiguration& cfg, std::int64_t max_step,
                                            Rng* shuffle = nullptr) {
    detail::check_max_step(cfg, max_step);
    const std::size_t W = cfg.size();
    EdgeConfiguration out;
    out.first_vertex = cfg.first_vertex;
    out.window_len = W;
    out.max_step = max_step;

    std::vector<std::int32_t> free_right = cfg.right, free_left = cfg.left;
    std::vector<std::int32_t> next_right(W, 1), next_left(W, 1);
    std::vector<std::size_t> order;
    for (std::int64_t n = 1; n <= max_step; ++n) {
        const std::size_t pairs = W - static_cast<std::size_t>(n);
        order.resize(pairs);
        std::iota(order.begin(), order.end(), std::size_t{0});
        if (shuffle) std::shuffle(order.begin(), order.end(), *shuffle);
        for (std::size_t i : order) {
            const std::size_t j = i + static_cast<std::size_t>(n);
            const std::int32_t count = std::min(free_right[i], free_left[j]);
            for (std::int32_t t = 0; t < count; ++t) {
                out.edges.push_back({cfg.first_vertex + static_cast<Vertex>(i), cfg.first_vertex + static_cast<Vertex>(j),
                                     n, n, next_right[i]++, next_left[j]++});
            }
            free_right[i] -= count;
            free_left[j] -= count;
        }
    }
    for (std::size_t k = 0; k < W; ++k) {
        const Vertex v = cfg.first_vertex + static_cast<Vertex>(k);
        for (std::int32_t r = next_right[k]; r <= cfg.right[k]; ++r) out.censored.push_back({v, Direction::Right, r});
        for (std::int32_t l = next_left[k]; l <= cfg.left[k]; ++l) out.censored.push_back({v, Direction::Left, l});
    }
    out.canonicalize();
    return out;
}

/// Stubs at vertices of `range` that are censored, and the total number of
/// stubs there.
struct CensoringCount {
    std::int64_t censored = 0;
    std::int64_t stubs = 0;

    double fraction() const { return stubs == 0 ? 0.0 : static_cast<double>(censored) / static_cast<double>(stubs); }
};

inline CensoringCount censoring_in_range(const ArrowConfiguration& cfg, const EdgeConfiguration& edges,
                                         const VertexRange& range,
                                         std::optional<Direction> only = std::nullopt) {
    CensoringCount c;
    for (Vertex v = std::max(range.first, cfg.first_vertex); v <= std::min(range.last, cfg.last_vertex()); ++v) {
        if (!only || *only == Direction::Left) c.stubs += cfg.L(v);
        if (!only || *only == Direction::Right) c.stubs += cfg.R(v);
    }
    for (const CensoredStub& s : edges.censored)
        if (range.contains(s.vertex) && (!only || *only == s.direction)) ++c.censored;
    return c;
}

} // namespace stubpair
