#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stubpair/degree_model.hpp"
#include "stubpair/error.hpp"
#include "stubpair/rng.hpp"

namespace stubpair {

using Vertex = std::int64_t;

enum class Coin { Heads, Tails };

inline std::string to_string(Coin c) { return c == Coin::Heads ? "heads" : "tails"; }

struct DirectionPolicy {
    enum class Kind { Iid, Balanced, Delta1Coin };

    Kind kind = Kind::Iid;
    double p = 0.5;          // Iid: probability a stub points right
    Coin coin = Coin::Heads; // Delta1Coin

    static DirectionPolicy iid(double p) { return {Kind::Iid, p, Coin::Heads}; }
    static DirectionPolicy balanced() { return {Kind::Balanced, 0.5, Coin::Heads}; }
    static DirectionPolicy delta1(Coin c) { return {Kind::Delta1Coin, 0.5, c}; }

    std::string tag() const {
        switch (kind) {
        case Kind::Iid: return "IID(" + std::to_string(p) + ")";
        case Kind::Balanced: return "BALANCED";
        case Kind::Delta1Coin: return "DELTA1_COIN(" + to_string(coin) + ")";
        }
        return "?";
    }
};

/// Per-vertex left/right arrow counts on the window
/// [first_vertex, first_vertex + size()). Within a vertex the arrows are
/// ranked 1..L and 1..R; only counts are stored because downstream code
/// consumes ranks strictly in order.
struct ArrowConfiguration {
    Vertex first_vertex = 0;
    std::vector<std::int32_t> left;
    std::vector<std::int32_t> right;
    DirectionPolicy policy;

    std::size_t size() const noexcept { return left.size(); }
    Vertex last_vertex() const noexcept { return first_vertex + static_cast<Vertex>(size()) - 1; }
    bool contains(Vertex v) const noexcept { return v >= first_vertex && v <= last_vertex(); }
    std::size_t offset(Vertex v) const noexcept { return static_cast<std::size_t>(v - first_vertex); }

    std::int32_t L(Vertex v) const { return left[offset(v)]; }
    std::int32_t R(Vertex v) const { return right[offset(v)]; }
    std::int32_t degree(Vertex v) const { return L(v) + R(v); }

    std::vector<Degree> degrees() const {
        std::vector<Degree> d(size());
        for (std::size_t k = 0; k < size(); ++k) d[k] = left[k] + right[k];
        return d;
    }

    std::int64_t total_left() const {
        std::int64_t s = 0;
        for (auto x : left) s += x;
        return s;
    }
    std::int64_t total_right() const {
        std::int64_t s = 0;
        for (auto x : right) s += x;
        return s;
    }

    friend bool operator==(const ArrowConfiguration& a, const ArrowConfiguration& b) {
        return a.first_vertex == b.first_vertex && a.left == b.left && a.right == b.right;
    }
};

/// Builds a configuration directly from counts (tests, oracles, decoders).
inline ArrowConfiguration make_configuration(std::vector<std::int32_t> left, std::vector<std::int32_t> right,
                                             Vertex first_vertex = 0) {
    require(left.size() == right.size(), ErrorCode::InvalidArgument, "left/right count vectors differ in length");
    for (std::size_t k = 0; k < left.size(); ++k)
        require(left[k] >= 0 && right[k] >= 0, ErrorCode::InvalidArgument, "arrow counts must be non-negative");
    ArrowConfiguration cfg;
    cfg.first_vertex = first_vertex;
    cfg.left = std::move(left);
    cfg.right = std::move(right);
    return cfg;
}

/// Each stub independently points right with probability p.
inline ArrowConfiguration assign_directions_iid(const std::vector<Degree>& degrees, double p, Rng& rng,
                                                Vertex first_vertex = 0) {
    require(p >= 0.0 && p <= 1.0, ErrorCode::POutOfRange, "p must lie in [0, 1]");
    ArrowConfiguration cfg;
    cfg.first_vertex = first_vertex;
    cfg.policy = DirectionPolicy::iid(p);
    cfg.left.resize(degrees.size());
    cfg.right.resize(degrees.size());
    for (std::size_t k = 0; k < degrees.size(); ++k) {
        require(degrees[k] >= 0, ErrorCode::InvalidArgument, "negative degree");
        std::int32_t r = 0;
        for (Degree s = 0; s < degrees[k]; ++s) r += rng.bernoulli(p) ? 1 : 0;
        cfg.right[k] = r;
        cfg.left[k] = degrees[k] - r;
    }
    return cfg;
}

inline ArrowConfiguration assign_directions_iid(const std::vector<Degree>& degrees, double p, std::uint64_t seed,
                                                Vertex first_vertex = 0) {
    Rng rng(seed);
    return assign_directions_iid(degrees, p, rng, first_vertex);
}

/// Degree 2k gets exactly k arrows each way.
inline ArrowConfiguration assign_directions_balanced(const std::vector<Degree>& degrees, Vertex first_vertex = 0) {
    ArrowConfiguration cfg;
    cfg.first_vertex = first_vertex;
    cfg.policy = DirectionPolicy::balanced();
    cfg.left.resize(degrees.size());
    cfg.right.resize(degrees.size());
    for (std::size_t k = 0; k < degrees.size(); ++k) {
        require(degrees[k] >= 0, ErrorCode::InvalidArgument, "negative degree");
        require(degrees[k] % 2 == 0, ErrorCode::OddDegree,
                "vertex " + std::to_string(first_vertex + static_cast<Vertex>(k)) + " has odd degree " +
                    std::to_string(degrees[k]));
        cfg.left[k] = cfg.right[k] = degrees[k] / 2;
    }
    return cfg;
}

/// One stub per vertex. Heads: odd absolute vertices point right, even
/// ones left; tails the other way around.
inline ArrowConfiguration assign_directions_delta1(std::size_t window_len, Vertex first_vertex, Coin coin) {
    ArrowConfiguration cfg;
    cfg.first_vertex = first_vertex;
    cfg.policy = DirectionPolicy::delta1(coin);
    cfg.left.assign(window_len, 0);
    cfg.right.assign(window_len, 0);
    for (std::size_t k = 0; k < window_len; ++k) {
        const Vertex v = first_vertex + static_cast<Vertex>(k);
        const bool odd = (v % 2) != 0;
        const bool points_right = (coin == Coin::Heads) ? odd : !odd;
        (points_right ? cfg.right[k] : cfg.left[k]) = 1;
    }
    return cfg;
}

} // namespace stubpair
