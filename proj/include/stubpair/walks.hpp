#pragma once

// Random-walk skeleton of an arrow configuration. With window offsets as
// indices:
//   delta(i) = L_i - R_i                 S_n  = delta(1) + ... + delta(n)
//   x(i)     = L_i - R_{i-1}             S'_n = S_{n-1} + L_n
//   S_n^(m)  = x(m+1) + ... + x(m+n)
// Consecutive x increments share a vertex and are dependent; increments
// two or more apart are independent.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "stubpair/arrows.hpp"
#include "stubpair/degree_model.hpp"
#include "stubpair/error.hpp"
#include "stubpair/rng.hpp"

namespace stubpair {

enum class PassageDirection { Up, Down };
enum class IncrementKind { Delta, X };

struct WalkRealization {
    std::vector<std::int64_t> delta;   // [i] = L_i - R_i
    std::vector<std::int64_t> x_incr;  // [i] = L_i - R_{i-1}; [0] unused
    std::vector<std::int64_t> s;       // [n] = S_n, [0] = 0
    std::vector<std::int64_t> s_prime; // [n] = S'_n for n >= 1; [0] unused
    std::map<std::int64_t, std::vector<std::int64_t>> offset_sums; // m -> [n] = S_n^(m), [0] = 0

    std::size_t size() const noexcept { return delta.size(); }

    /// Largest n for which S_n^(m) is defined.
    std::int64_t available(std::int64_t m) const { return static_cast<std::int64_t>(size()) - 1 - m; }
};

inline WalkRealization build_walk(const ArrowConfiguration& cfg, const std::set<std::int64_t>& offsets = {}) {
    const std::size_t W = cfg.size();
    for (auto m : offsets)
        require(m >= 0 && m < static_cast<std::int64_t>(W), ErrorCode::OffsetOutOfWindow,
                "offset " + std::to_string(m) + " outside window of " + std::to_string(W));
    WalkRealization w;
    w.delta.resize(W);
    w.x_incr.assign(W, 0);
    w.s.assign(W, 0);
    w.s_prime.assign(W, 0);
    for (std::size_t i = 0; i < W; ++i) {
        w.delta[i] = cfg.left[i] - cfg.right[i];
        if (i >= 1) {
            w.x_incr[i] = cfg.left[i] - cfg.right[i - 1];
            w.s[i] = w.s[i - 1] + w.delta[i];
            w.s_prime[i] = w.s[i - 1] + cfg.left[i];
        }
    }
    for (auto m : offsets) {
        std::vector<std::int64_t> sums(static_cast<std::size_t>(w.available(m)) + 1, 0);
        for (std::size_t n = 1; n < sums.size(); ++n) sums[n] = sums[n - 1] + w.x_incr[static_cast<std::size_t>(m) + n];
        w.offset_sums.emplace(m, std::move(sums));
    }
    return w;
}

struct FirstPassage {
    std::int64_t offset = 0;
    double level = 0.0;
    PassageDirection direction = PassageDirection::Up;
    std::int64_t horizon = 0;
    std::optional<std::int64_t> tau; // empty: not reached within horizon

    bool censored() const noexcept { return !tau.has_value(); }
};

inline bool crosses(double value, double level, PassageDirection dir) {
    return dir == PassageDirection::Up ? value >= level : value <= level;
}

/// First n <= horizon with S_n^(m) >= level (Up) or <= level (Down).
inline FirstPassage first_passage(const WalkRealization& walk, std::int64_t m, double level, PassageDirection dir,
                                  std::int64_t horizon) {
    require(m >= 0 && m < static_cast<std::int64_t>(walk.size()), ErrorCode::OffsetOutOfWindow,
            "offset " + std::to_string(m) + " outside window");
    require(horizon >= 1 && horizon <= walk.available(m), ErrorCode::InvalidArgument,
            "horizon exceeds the walk length available after offset " + std::to_string(m));
    FirstPassage fp{m, level, dir, horizon, std::nullopt};
    std::int64_t sum = 0;
    for (std::int64_t n = 1; n <= horizon; ++n) {
        sum += walk.x_incr[static_cast<std::size_t>(m + n)];
        if (crosses(static_cast<double>(sum), level, dir)) {
            fp.tau = n;
            break;
        }
    }
    return fp;
}

/// Same, for the walk S_n of delta increments started at offset 0.
inline FirstPassage first_passage_delta(const WalkRealization& walk, double level, PassageDirection dir,
                                        std::int64_t horizon) {
    require(horizon >= 1 && horizon <= static_cast<std::int64_t>(walk.size()) - 1, ErrorCode::InvalidArgument,
            "horizon exceeds the walk length");
    FirstPassage fp{0, level, dir, horizon, std::nullopt};
    for (std::int64_t n = 1; n <= horizon; ++n) {
        if (crosses(static_cast<double>(walk.s[static_cast<std::size_t>(n)]), level, dir)) {
            fp.tau = n;
            break;
        }
    }
    return fp;
}

/// Joint law of (L, R) at one vertex: degree from `dist`, each stub right
/// with probability p.
struct ArrowLaw {
    std::vector<std::pair<std::pair<int, int>, double>> atoms; // ((L, R), prob)

    std::map<int, double> right_marginal() const {
        std::map<int, double> m;
        for (const auto& [lr, q] : atoms) m[lr.second] += q;
        return m;
    }
    std::map<int, double> delta_law() const {
        std::map<int, double> m;
        for (const auto& [lr, q] : atoms) m[lr.first - lr.second] += q;
        return m;
    }
};

inline ArrowLaw arrow_law(const DegreeDistribution& dist, double p) {
    require(p >= 0.0 && p <= 1.0, ErrorCode::POutOfRange, "p must lie in [0, 1]");
    std::map<std::pair<int, int>, double> acc;
    for (const Atom& a : dist.atoms()) {
        double binom = 1.0;
        for (int r = 0; r <= a.degree; ++r) {
            if (r > 0) binom = binom * (a.degree - r + 1) / r;
            const double q = a.probability * binom * std::pow(p, r) * std::pow(1.0 - p, a.degree - r);
            if (q > 0.0) acc[{a.degree - r, r}] += q;
        }
    }
    ArrowLaw law;
    law.atoms.assign(acc.begin(), acc.end());
    return law;
}

inline constexpr std::int64_t kMaxExactPassageSteps = 14;

struct PassagePmf {
    std::vector<double> pmf; // [n - 1] = P(tau = n), n = 1..n_max
    double censored = 0.0;   // P(tau > n_max)

    double at(std::int64_t n) const { return pmf.at(static_cast<std::size_t>(n - 1)); }
};

/// Exact law of the first passage time by dynamic programming over
/// (running sum, R at the latest vertex). For delta increments the second
/// component is irrelevant and the recursion is a plain convolution.
inline PassagePmf exact_passage_pmf(const DegreeDistribution& dist, double p, IncrementKind kind, double level,
                                    PassageDirection dir, std::int64_t n_max) {
    require(n_max >= 1, ErrorCode::InvalidArgument, "n_max must be >= 1");
    require(n_max <= kMaxExactPassageSteps, ErrorCode::TooLarge,
            "n_max above " + std::to_string(kMaxExactPassageSteps));
    const ArrowLaw law = arrow_law(dist, p);

    using State = std::pair<std::int64_t, int>; // (sum, previous R)
    std::map<State, double> alive;
    if (kind == IncrementKind::Delta)
        alive[{0, 0}] = 1.0;
    else
        for (const auto& [r, q] : law.right_marginal()) alive[{0, r}] += q;

    PassagePmf out;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        std::map<State, double> next;
        double hit = 0.0;
        for (const auto& [state, q] : alive) {
            for (const auto& [lr, qv] : law.atoms) {
                const auto [l, r] = lr;
                const std::int64_t step = kind == IncrementKind::Delta ? l - r : l - state.second;
                const std::int64_t sum = state.first + step;
                if (crosses(static_cast<double>(sum), level, dir))
                    hit += q * qv;
                else
                    next[{sum, kind == IncrementKind::Delta ? 0 : r}] += q * qv;
            }
        }
        out.pmf.push_back(hit);
        alive = std::move(next);
    }
    for (const auto& [state, q] : alive) out.censored += q;
    return out;
}

/// Draws (L, R) for one fresh vertex.
inline std::pair<int, int> draw_arrows(const DegreeDistribution& dist, double p, Rng& rng) {
    const Degree d = dist.sample(rng);
    int r = 0;
    for (Degree s = 0; s < d; ++s) r += rng.bernoulli(p) ? 1 : 0;
    return {d - r, r};
}

/// Monte Carlo first passage on a lazily generated configuration; vertices
/// are drawn only as far as the walk needs them.
inline FirstPassage simulate_passage(const DegreeDistribution& dist, double p, IncrementKind kind, double level,
                                     PassageDirection dir, std::int64_t horizon, Rng& rng) {
    FirstPassage fp{0, level, dir, horizon, std::nullopt};
    int prev_right = kind == IncrementKind::X ? draw_arrows(dist, p, rng).second : 0;
    std::int64_t sum = 0;
    for (std::int64_t n = 1; n <= horizon; ++n) {
        const auto [l, r] = draw_arrows(dist, p, rng);
        sum += kind == IncrementKind::Delta ? l - r : l - prev_right;
        prev_right = r;
        if (crosses(static_cast<double>(sum), level, dir)) {
            fp.tau = n;
            break;
        }
    }
    return fp;
}

} // namespace stubpair
