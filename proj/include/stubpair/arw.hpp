#pragma once

// Annihilating random walk pairing on a cycle of W sites. Every stub spawns
// a particle at its vertex; particles perform lazy walks (step -1 or +1
// with probability 1/4 each, hold with probability 1/2) in synchronous
// sweeps. After a sweep, on every site holding two or more particles of
// different origins, a uniformly chosen cross-origin pair is annihilated
// and joined by an edge; this repeats until the site has no cross-origin
// pair left. Particles of the same origin never annihilate.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "stubpair/degree_model.hpp"
#include "stubpair/edges.hpp"
#include "stubpair/error.hpp"
#include "stubpair/rng.hpp"

namespace stubpair {

enum class ArwStatus { Ok, Stalemate, Timeout };

inline const char* to_string(ArwStatus s) {
    switch (s) {
    case ArwStatus::Ok: return "OK";
    case ArwStatus::Stalemate: return "STALEMATE";
    case ArwStatus::Timeout: return "TIMEOUT";
    }
    return "?";
}

struct ParticleState {
    std::int32_t id = 0;
    std::int32_t origin = 0; // window offset of the spawning vertex
    std::int32_t rank = 0;   // stub rank at the origin, 1-based
    std::int32_t position = 0;
    bool alive = true;
    std::int32_t partner = -1;
};

struct ArwResult {
    EdgeConfiguration edges;
    ArwStatus status = ArwStatus::Ok;
    std::int64_t sweeps = 0;
    std::int64_t alive_at_end = 0;
};

/// Cycle distance between sites a and b on a ring of W sites.
inline std::int64_t cycle_distance(std::int64_t a, std::int64_t b, std::int64_t W) {
    const std::int64_t d = a > b ? a - b : b - a;
    return d < W - d ? d : W - d;
}

inline ArwResult arw_pair(const std::vector<Degree>& degrees, Rng& rng, std::int64_t max_sweeps) {
    require(max_sweeps >= 1, ErrorCode::InvalidArgument, "max_sweeps must be >= 1");
    const auto W = static_cast<std::int32_t>(degrees.size());
    require(W >= 1, ErrorCode::InvalidArgument, "empty degree sequence");

    std::vector<ParticleState> particles;
    std::vector<std::int32_t> origin_alive(static_cast<std::size_t>(W), 0);
    std::int64_t origins_alive = 0;
    for (std::int32_t v = 0; v < W; ++v) {
        for (std::int32_t r = 1; r <= degrees[static_cast<std::size_t>(v)]; ++r) {
            const auto id = static_cast<std::int32_t>(particles.size());
            particles.push_back({id, v, r, v, true, -1});
        }
        origin_alive[static_cast<std::size_t>(v)] = degrees[static_cast<std::size_t>(v)];
        if (degrees[static_cast<std::size_t>(v)] > 0) ++origins_alive;
    }
    require(particles.size() % 2 == 0, ErrorCode::OddTotal, "total stub count is odd");

    ArwResult out;
    out.edges.first_vertex = 0;
    out.edges.window_len = static_cast<std::size_t>(W);
    out.edges.max_step = W / 2;

    std::vector<std::int32_t> alive(particles.size());
    for (std::size_t k = 0; k < alive.size(); ++k) alive[k] = static_cast<std::int32_t>(k);

    std::vector<std::int32_t> head(static_cast<std::size_t>(W), -1), next(particles.size(), -1);
    std::vector<std::int32_t> touched, here;
    std::uint64_t bits = 0;
    int bits_left = 0;

    auto annihilate = [&](std::int32_t a, std::int32_t b, std::int64_t sweep) {
        ParticleState& pa = particles[static_cast<std::size_t>(a)];
        ParticleState& pb = particles[static_cast<std::size_t>(b)];
        pa.alive = pb.alive = false;
        pa.partner = b;
        pb.partner = a;
        for (std::int32_t o : {pa.origin, pb.origin})
            if (--origin_alive[static_cast<std::size_t>(o)] == 0) --origins_alive;
        const ParticleState& lo = pa.origin < pb.origin ? pa : pb;
        const ParticleState& hi = pa.origin < pb.origin ? pb : pa;
        out.edges.edges.push_back({lo.origin, hi.origin, cycle_distance(lo.origin, hi.origin, W), sweep, lo.rank, hi.rank});
    };

    std::int64_t sweep = 0;
    while (!alive.empty()) {
        if (origins_alive == 1) {
            out.status = ArwStatus::Stalemate;
            break;
        }
        if (sweep == max_sweeps) {
            out.status = ArwStatus::Timeout;
            break;
        }
        ++sweep;
        touched.clear();
        for (std::int32_t id : alive) {
            if (bits_left == 0) {
                bits = rng();
                bits_left = 32;
            }
            const auto move = static_cast<int>(bits & 3u);
            bits >>= 2;
            --bits_left;
            ParticleState& p = particles[static_cast<std::size_t>(id)];
            if (move == 0)
                p.position = p.position == 0 ? W - 1 : p.position - 1;
            else if (move == 1)
                p.position = p.position == W - 1 ? 0 : p.position + 1;
            auto& h = head[static_cast<std::size_t>(p.position)];
            if (h == -1) touched.push_back(p.position);
            next[static_cast<std::size_t>(id)] = h;
            h = id;
        }
        bool any_death = false;
        for (std::int32_t site : touched) {
            std::int32_t h = head[static_cast<std::size_t>(site)];
            head[static_cast<std::size_t>(site)] = -1;
            if (next[static_cast<std::size_t>(h)] == -1) continue;
            here.clear();
            for (std::int32_t id = h; id != -1; id = next[static_cast<std::size_t>(id)]) here.push_back(id);
            // ascending id keeps the pick independent of bucket insertion order
            std::sort(here.begin(), here.end());
            while (here.size() >= 2) {
                std::vector<std::pair<std::size_t, std::size_t>> pairs;
                for (std::size_t a = 0; a < here.size(); ++a)
                    for (std::size_t b = a + 1; b < here.size(); ++b)
                        if (particles[static_cast<std::size_t>(here[a])].origin !=
                            particles[static_cast<std::size_t>(here[b])].origin)
                            pairs.emplace_back(a, b);
                if (pairs.empty()) break;
                const auto [a, b] = pairs[rng.below(pairs.size())];
                annihilate(here[a], here[b], sweep);
                here.erase(here.begin() + static_cast<std::ptrdiff_t>(b));
                here.erase(here.begin() + static_cast<std::ptrdiff_t>(a));
                any_death = true;
            }
        }
        if (any_death)
            std::erase_if(alive, [&](std::int32_t id) { return !particles[static_cast<std::size_t>(id)].alive; });
    }
    out.sweeps = sweep;
    out.alive_at_end = static_cast<std::int64_t>(alive.size());
    out.edges.canonicalize();
    return out;
}

inline ArwResult arw_pair(const std::vector<Degree>& degrees, std::uint64_t seed, std::int64_t max_sweeps) {
    Rng rng(seed);
    return arw_pair(degrees, rng, max_sweeps);
}

/// Every stub in exactly one edge, no self-loops, and output degrees equal
/// to the input degrees.
inline bool is_perfect_cross_origin(const ArwResult& res, const std::vector<Degree>& degrees) {
    if (res.status != ArwStatus::Ok) return false;
    for (const Edge& e : res.edges.edges)
        if (e.left == e.right) return false;
    return realized_degrees(res.edges) == degrees;
}

/// Resamples the degree sequence until the stub total is even.
struct EvenDegrees {
    std::vector<Degree> degrees;
    std::int64_t resamples = 0;
};

inline EvenDegrees sample_even_degrees(const DegreeDistribution& dist, std::size_t W, Rng& rng,
                                       std::int64_t max_attempts = 1000) {
    for (std::int64_t attempt = 0; attempt < max_attempts; ++attempt) {
        auto d = sample_degrees(dist, W, rng);
        std::int64_t total = 0;
        for (auto x : d) total += x;
        if (total % 2 == 0) return {std::move(d), attempt};
    }
    throw Error(ErrorCode::OddTotal, "could not draw an even stub total");
}

} // namespace stubpair
