#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <tuple>
#include <vector>

#include "stubpair/arrows.hpp"

namespace stubpair {

enum class Direction : std::uint8_t { Left, Right };

inline const char* to_string(Direction d) { return d == Direction::Left ? "left" : "right"; }

/// An edge between a right-arrow at `left` and a left-arrow at `right`.
/// `step` is the pairing step that created it (the length, for stepwise
/// pairing; the sweep index, for particle pairings).
struct Edge {
    Vertex left = 0;
    Vertex right = 0;
    std::int64_t length = 0;
    std::int64_t step = 0;
    std::int32_t right_rank = 0;
    std::int32_t left_rank = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct CensoredStub {
    Vertex vertex = 0;
    Direction direction = Direction::Right;
    std::int32_t rank = 0;

    friend bool operator==(const CensoredStub&, const CensoredStub&) = default;
};

struct EdgeConfiguration {
    Vertex first_vertex = 0;
    std::size_t window_len = 0;
    std::int64_t max_step = 0;
    std::vector<Edge> edges;
    std::vector<CensoredStub> censored;

    bool contains(Vertex v) const noexcept {
        return v >= first_vertex && v < first_vertex + static_cast<Vertex>(window_len);
    }
    std::size_t offset(Vertex v) const noexcept { return static_cast<std::size_t>(v - first_vertex); }

    /// Canonical order: by step, then left endpoint, then right rank.
    void canonicalize() {
        std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
            return std::tie(a.step, a.left, a.right_rank, a.right, a.left_rank) <
                   std::tie(b.step, b.left, b.right_rank, b.right, b.left_rank);
        });
        std::sort(censored.begin(), censored.end(), [](const CensoredStub& a, const CensoredStub& b) {
            return std::tie(a.vertex, a.direction, a.rank) < std::tie(b.vertex, b.direction, b.rank);
        });
    }
};

/// Sorted (left, right) endpoint pairs; two matchings describe the same
/// graph iff these agree.
inline std::vector<std::pair<Vertex, Vertex>> endpoint_multiset(const std::vector<Edge>& edges) {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edges.size());
    for (const Edge& e : edges) out.emplace_back(e.left, e.right);
    std::sort(out.begin(), out.end());
    return out;
}

/// A metric value, possibly right-censored: when `censored` is set the
/// true value exceeds `value`.
struct Observation {
    std::int64_t value = 0;
    bool censored = false;

    friend bool operator==(const Observation&, const Observation&) = default;
};

/// Edge-length summaries at one vertex. A metric is empty when the vertex
/// has no stub of the relevant kind.
struct EdgeMetrics {
    std::optional<Observation> shortest_right; // length of the edge of right-arrow rank 1
    std::optional<Observation> shortest_left;
    std::optional<Observation> longest_right;
    std::optional<Observation> longest_left;
    std::optional<Observation> longest;
    std::optional<Observation> total;
};

namespace detail {

struct SideAccumulator {
    std::int32_t stubs = 0;
    std::int32_t censored = 0;
    bool rank1_censored = false;
    std::int64_t rank1_length = -1;
    std::int64_t longest = 0;
    std::int64_t sum = 0;

    void add_edge(std::int32_t rank, std::int64_t len) {
        ++stubs;
        if (rank == 1) rank1_length = len;
        longest = std::max(longest, len);
        sum += len;
    }
    void add_censored(std::int32_t rank) {
        ++stubs;
        ++censored;
        if (rank == 1) rank1_censored = true;
    }
};

inline std::optional<Observation> shortest(const SideAccumulator& s, std::int64_t horizon) {
    if (s.stubs == 0) return std::nullopt;
    if (s.rank1_censored) return Observation{horizon, true};
    return Observation{s.rank1_length, false};
}

inline std::optional<Observation> longest(const SideAccumulator& s, std::int64_t horizon) {
    if (s.stubs == 0) return std::nullopt;
    if (s.censored > 0) return Observation{std::max(horizon, s.longest), true};
    return Observation{s.longest, false};
}

inline EdgeMetrics finish_metrics(const SideAccumulator& r, const SideAccumulator& l, std::int64_t horizon) {
    EdgeMetrics m;
    m.shortest_right = shortest(r, horizon);
    m.shortest_left = shortest(l, horizon);
    m.longest_right = longest(r, horizon);
    m.longest_left = longest(l, horizon);
    if (m.longest_right || m.longest_left) {
        Observation lo{0, false};
        for (const auto& side : {m.longest_right, m.longest_left}) {
            if (!side) continue;
            lo.value = std::max(lo.value, side->value);
            lo.censored = lo.censored || side->censored;
        }
        m.longest = lo;
        m.total = Observation{r.sum + l.sum + horizon * (r.censored + l.censored), r.censored + l.censored > 0};
    }
    return m;
}

} // namespace detail

/// Metrics for every vertex of the window, indexed by window offset.
/// Censored metrics carry value = max_step (a lower bound); for the total
/// length each censored stub contributes max_step.
inline std::vector<EdgeMetrics> all_edge_metrics(const EdgeConfiguration& cfg) {
    std::vector<detail::SideAccumulator> right(cfg.window_len), left(cfg.window_len);
    for (const Edge& e : cfg.edges) {
        if (cfg.contains(e.left)) right[cfg.offset(e.left)].add_edge(e.right_rank, e.length);
        if (cfg.contains(e.right)) left[cfg.offset(e.right)].add_edge(e.left_rank, e.length);
    }
    for (const CensoredStub& c : cfg.censored) {
        if (!cfg.contains(c.vertex)) continue;
        auto& side = c.direction == Direction::Right ? right[cfg.offset(c.vertex)] : left[cfg.offset(c.vertex)];
        side.add_censored(c.rank);
    }
    std::vector<EdgeMetrics> out(cfg.window_len);
    for (std::size_t k = 0; k < cfg.window_len; ++k) out[k] = detail::finish_metrics(right[k], left[k], cfg.max_step);
    return out;
}

inline EdgeMetrics edge_metrics(const EdgeConfiguration& cfg, Vertex vertex) {
    require(cfg.contains(vertex), ErrorCode::InvalidArgument, "vertex outside window");
    detail::SideAccumulator right, left;
    for (const Edge& e : cfg.edges) {
        if (e.left == vertex) right.add_edge(e.right_rank, e.length);
        if (e.right == vertex) left.add_edge(e.left_rank, e.length);
    }
    for (const CensoredStub& c : cfg.censored) {
        if (c.vertex != vertex) continue;
        (c.direction == Direction::Right ? right : left).add_censored(c.rank);
    }
    return detail::finish_metrics(right, left, cfg.max_step);
}

/// Sum of incident edge lengths per window vertex, ignoring direction.
inline std::vector<std::int64_t> total_length_per_vertex(const EdgeConfiguration& cfg) {
    std::vector<std::int64_t> total(cfg.window_len, 0);
    for (const Edge& e : cfg.edges) {
        if (cfg.contains(e.left)) total[cfg.offset(e.left)] += e.length;
        if (cfg.contains(e.right)) total[cfg.offset(e.right)] += e.length;
    }
    return total;
}

/// Output degree per window vertex.
inline std::vector<Degree> realized_degrees(const EdgeConfiguration& cfg) {
    std::vector<Degree> deg(cfg.window_len, 0);
    for (const Edge& e : cfg.edges) {
        if (cfg.contains(e.left)) ++deg[cfg.offset(e.left)];
        if (cfg.contains(e.right)) ++deg[cfg.offset(e.right)];
    }
    return deg;
}

inline void write_edges_csv(std::ostream& os, const EdgeConfiguration& cfg, const char* status = nullptr) {
    os << "left,right,step,right_rank,left_rank" << (status ? ",status" : "") << '\n';
    for (const Edge& e : cfg.edges) {
        os << e.left << ',' << e.right << ',' << e.step << ',' << e.right_rank << ',' << e.left_rank;
        if (status) os << ',' << status;
        os << '\n';
    }
}

inline void write_censored_csv(std::ostream& os, const EdgeConfiguration& cfg) {
    os << "vertex,direction,rank\n";
    for (const CensoredStub& c : cfg.censored) os << c.vertex << ',' << to_string(c.direction) << ',' << c.rank << '\n';
}

} // namespace stubpair
