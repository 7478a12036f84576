#pragma once

// Exhaustive ground truth on small instances: every perfect matching of
// right-arrows to left-arrows lying to their right, up to exchanging stubs
// of one vertex, and the per-edge quantities needed to check that the
// crossing-free matching minimizes the length carried by each nested block.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stubpair/arrows.hpp"
#include "stubpair/edges.hpp"
#include "stubpair/error.hpp"
#include "stubpair/sprd.hpp"

namespace stubpair {

inline constexpr std::int64_t kMaxEnumeratedStubs = 12;

/// True iff no two edges cross, i.e. no i < i' < j < j'. Shared endpoints
/// never cross. O(E log E).
inline bool is_nested(const std::vector<Edge>& edges) {
    std::vector<std::pair<Vertex, Vertex>> spans;
    spans.reserve(edges.size());
    for (const Edge& e : edges) spans.emplace_back(std::min(e.left, e.right), std::max(e.left, e.right));
    // left ascending; for a shared left endpoint the longer span first
    std::sort(spans.begin(), spans.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : a.second > b.second;
    });
    std::vector<Vertex> open; // right ends, non-increasing from bottom to top
    for (const auto& [a, b] : spans) {
        while (!open.empty() && open.back() <= a) open.pop_back();
        if (!open.empty() && open.back() < b) return false;
        open.push_back(b);
    }
    return true;
}

inline bool is_nested(const EdgeConfiguration& cfg) { return is_nested(cfg.edges); }

/// Assigns ranks so that at every vertex the shortest edge gets rank 1,
/// on both the right-arrow and the left-arrow side.
inline void assign_ranks_shortest_first(std::vector<Edge>& edges) {
    std::vector<std::size_t> idx(edges.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;

    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(edges[a].left, edges[a].length, edges[a].right) <
               std::tie(edges[b].left, edges[b].length, edges[b].right);
    });
    for (std::size_t k = 0; k < idx.size(); ++k)
        edges[idx[k]].right_rank = (k > 0 && edges[idx[k - 1]].left == edges[idx[k]].left) ? edges[idx[k - 1]].right_rank + 1 : 1;

    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(edges[a].right, edges[a].length, edges[a].left) <
               std::tie(edges[b].right, edges[b].length, edges[b].left);
    });
    for (std::size_t k = 0; k < idx.size(); ++k)
        edges[idx[k]].left_rank = (k > 0 && edges[idx[k - 1]].right == edges[idx[k]].right) ? edges[idx[k - 1]].left_rank + 1 : 1;
}

struct PairingEnumeration {
    ArrowConfiguration base;
    std::vector<EdgeConfiguration> all_matchings;
    std::optional<std::size_t> nested_index;
    std::size_t nested_count = 0;

    const EdgeConfiguration& nested() const {
        require(nested_index.has_value(), ErrorCode::Inconsistent, "no crossing-free matching");
        return all_matchings[*nested_index];
    }
};

inline PairingEnumeration enumerate_pairings(const ArrowConfiguration& cfg) {
    const std::int64_t R = cfg.total_right(), L = cfg.total_left();
    require(R == L, ErrorCode::Unbalanced,
            std::to_string(R) + " right-arrows vs " + std::to_string(L) + " left-arrows");
    require(R + L <= kMaxEnumeratedStubs, ErrorCode::TooLarge,
            std::to_string(R + L) + " stubs exceed the enumeration guard");

    const std::size_t W = cfg.size();
    PairingEnumeration out;
    out.base = cfg;

    // right stubs listed vertex by vertex; stubs of one vertex pick
    // non-decreasing target vertices so each endpoint multiset appears once
    std::vector<std::size_t> sources;
    for (std::size_t k = 0; k < W; ++k)
        for (std::int32_t r = 0; r < cfg.right[k]; ++r) sources.push_back(k);

    std::vector<std::int32_t> capacity = cfg.left;
    std::vector<std::size_t> target(sources.size());
    std::function<void(std::size_t)> place = [&](std::size_t s) {
        if (s == sources.size()) {
            EdgeConfiguration m;
            m.first_vertex = cfg.first_vertex;
            m.window_len = W;
            m.max_step = static_cast<std::int64_t>(W);
            for (std::size_t t = 0; t < sources.size(); ++t) {
                const Vertex a = cfg.first_vertex + static_cast<Vertex>(sources[t]);
                const Vertex b = cfg.first_vertex + static_cast<Vertex>(target[t]);
                m.edges.push_back({a, b, b - a, b - a, 0, 0});
            }
            assign_ranks_shortest_first(m.edges);
            m.canonicalize();
            out.all_matchings.push_back(std::move(m));
            return;
        }
        std::size_t lo = sources[s] + 1;
        if (s > 0 && sources[s - 1] == sources[s]) lo = std::max(lo, target[s - 1]);
        for (std::size_t j = lo; j < W; ++j) {
            if (capacity[j] == 0) continue;
            --capacity[j];
            target[s] = j;
            place(s + 1);
            ++capacity[j];
        }
    };
    place(0);

    require(!out.all_matchings.empty(), ErrorCode::Infeasible, "no perfect matching inside the window");
    for (std::size_t k = 0; k < out.all_matchings.size(); ++k) {
        if (is_nested(out.all_matchings[k])) {
            ++out.nested_count;
            if (!out.nested_index) out.nested_index = k;
        }
    }
    return out;
}

/// Arrow sets feeding an edge e of the nested matching, and the length
/// carried under it.
struct UnderEdgeSets {
    Edge e;
    std::vector<CensoredStub> psi_r; // (vertex, Right, rank)
    std::vector<CensoredStub> psi_l; // (vertex, Left, rank)
    std::int64_t t_under = 0;        // total length of the edges strictly under e
    std::int64_t t_block = 0;        // t_under + length of e
    std::vector<std::int64_t> w_nested_r; // per unit interval [k-1, k], k = first+1 .. last
    std::vector<std::int64_t> w_nested_l;
};

namespace detail {

inline bool in_set(const std::vector<CensoredStub>& set, Vertex v, Direction d, std::int32_t rank) {
    return std::find(set.begin(), set.end(), CensoredStub{v, d, rank}) != set.end();
}

/// Edges of `m` whose right-arrow (left-arrow) is in psi, counted over each
/// unit interval of the window.
inline std::vector<std::int64_t> interval_counts(const EdgeConfiguration& m, const std::vector<CensoredStub>& psi,
                                                 Direction side) {
    std::vector<std::int64_t> w(m.window_len > 0 ? m.window_len - 1 : 0, 0);
    for (const Edge& e : m.edges) {
        const bool member = side == Direction::Right ? in_set(psi, e.left, Direction::Right, e.right_rank)
                                                     : in_set(psi, e.right, Direction::Left, e.left_rank);
        if (!member) continue;
        for (Vertex k = e.left + 1; k <= e.right; ++k) ++w[static_cast<std::size_t>(k - m.first_vertex - 1)];
    }
    return w;
}

inline std::int64_t total_length(const EdgeConfiguration& m, const std::vector<CensoredStub>& psi, Direction side) {
    std::int64_t t = 0;
    for (const Edge& e : m.edges) {
        const bool member = side == Direction::Right ? in_set(psi, e.left, Direction::Right, e.right_rank)
                                                     : in_set(psi, e.right, Direction::Left, e.left_rank);
        if (member) t += e.length;
    }
    return t;
}

} // namespace detail

inline UnderEdgeSets under_edge_sets(const ArrowConfiguration& cfg, const EdgeConfiguration& nested, const Edge& e) {
    UnderEdgeSets u;
    u.e = e;
    for (std::int32_t k = 1; k <= e.right_rank; ++k) u.psi_r.push_back({e.left, Direction::Right, k});
    for (Vertex v = e.left + 1; v < e.right; ++v)
        for (std::int32_t k = 1; k <= cfg.R(v); ++k) u.psi_r.push_back({v, Direction::Right, k});
    for (std::int32_t k = 1; k <= e.left_rank; ++k) u.psi_l.push_back({e.right, Direction::Left, k});
    for (Vertex v = e.left + 1; v < e.right; ++v)
        for (std::int32_t k = 1; k <= cfg.L(v); ++k) u.psi_l.push_back({v, Direction::Left, k});

    u.t_block = detail::total_length(nested, u.psi_r, Direction::Right);
    u.t_under = u.t_block - e.length;
    u.w_nested_r = detail::interval_counts(nested, u.psi_r, Direction::Right);
    u.w_nested_l = detail::interval_counts(nested, u.psi_l, Direction::Left);
    return u;
}

struct LemmaViolation {
    std::size_t matching = 0;
    Edge e;
    std::string what;
};

struct LemmaReport {
    std::size_t checks = 0;          // (alternative matching, nested edge) pairs
    std::size_t interval_checks = 0; // individual w_k comparisons
    std::vector<LemmaViolation> violations;
    bool consistent_totals = true;   // t_block == sum_k w~_k on both sides
};

/// For every matching E and every edge e of the nested matching N:
///   t_e(N) <= t_e^(r)(E),  t_e(N) <= t_e^(l)(E),  w_k^(r)(E) >= w~_k^(r)  for all k,
/// with t_e(N) taken as the length of the whole block under e including e
/// itself (the strictly-under length is smaller, so it is implied).
inline LemmaReport check_nested_lemma(const PairingEnumeration& en) {
    LemmaReport rep;
    const EdgeConfiguration& nested = en.nested();
    for (const Edge& e : nested.edges) {
        const UnderEdgeSets u = under_edge_sets(en.base, nested, e);
        std::int64_t sum_r = 0, sum_l = 0;
        for (auto w : u.w_nested_r) sum_r += w;
        for (auto w : u.w_nested_l) sum_l += w;
        if (sum_r != u.t_block || sum_l != u.t_block) rep.consistent_totals = false;

        for (std::size_t m = 0; m < en.all_matchings.size(); ++m) {
            const EdgeConfiguration& alt = en.all_matchings[m];
            ++rep.checks;
            const std::int64_t tr = detail::total_length(alt, u.psi_r, Direction::Right);
            const std::int64_t tl = detail::total_length(alt, u.psi_l, Direction::Left);
            if (u.t_block > tr) rep.violations.push_back({m, e, "t_e(N) > t_e^(r)(E)"});
            if (u.t_block > tl) rep.violations.push_back({m, e, "t_e(N) > t_e^(l)(E)"});
            const auto wr = detail::interval_counts(alt, u.psi_r, Direction::Right);
            const auto wl = detail::interval_counts(alt, u.psi_l, Direction::Left);
            for (std::size_t k = 0; k < wr.size(); ++k) {
                rep.interval_checks += 2;
                if (wr[k] < u.w_nested_r[k]) rep.violations.push_back({m, e, "w_k^(r) < nested w_k^(r)"});
                if (wl[k] < u.w_nested_l[k]) rep.violations.push_back({m, e, "w_k^(l) < nested w_k^(l)"});
            }
        }
    }
    return rep;
}

/// Exactly one crossing-free matching, and it coincides with the stepwise
/// pairing of the same configuration.
inline bool check_nested_uniqueness(const PairingEnumeration& en) {
    if (en.nested_count != 1) return false;
    const EdgeConfiguration sprd = sprd_pair(en.base, static_cast<std::int64_t>(en.base.size()));
    if (!sprd.censored.empty()) return false;
    return endpoint_multiset(sprd.edges) == endpoint_multiset(en.nested().edges);
}

/// Per-vertex (L, R) with L + R <= max_per_vertex on windows of
/// min_len..max_len vertices, balanced and feasible. Calls visit(cfg,
/// enumeration) for each.
struct SweepSummary {
    std::size_t instances = 0;
    std::size_t matchings = 0;
    std::size_t max_matchings = 0;
    std::size_t lemma_checks = 0;
    std::size_t interval_checks = 0;
    std::size_t lemma_violations = 0;
    std::size_t uniqueness_failures = 0;
    std::size_t sprd_not_member = 0;
    std::size_t inconsistent_totals = 0;
};

inline SweepSummary oracle_sweep(std::size_t min_len = 1, std::size_t max_len = 6, int max_per_vertex = 2) {
    std::vector<std::pair<int, int>> options; // (L, R)
    for (int d = 0; d <= max_per_vertex; ++d)
        for (int l = 0; l <= d; ++l) options.emplace_back(l, d - l);

    SweepSummary s;
    for (std::size_t len = min_len; len <= max_len; ++len) {
        std::vector<std::size_t> digit(len, 0);
        while (true) {
            std::vector<std::int32_t> L(len), R(len);
            std::int64_t bal = 0;
            for (std::size_t k = 0; k < len; ++k) {
                L[k] = options[digit[k]].first;
                R[k] = options[digit[k]].second;
                bal += R[k] - L[k];
            }
            if (bal == 0) {
                const ArrowConfiguration cfg = make_configuration(L, R);
                std::optional<PairingEnumeration> en;
                try {
                    en = enumerate_pairings(cfg);
                } catch (const Error& err) {
                    if (err.code() != ErrorCode::Infeasible) throw;
                }
                if (en) {
                    ++s.instances;
                    s.matchings += en->all_matchings.size();
                    s.max_matchings = std::max(s.max_matchings, en->all_matchings.size());
                    const bool unique = check_nested_uniqueness(*en);
                    if (!unique) ++s.uniqueness_failures;
                    if (en->nested_index) {
                        const LemmaReport rep = check_nested_lemma(*en);
                        s.lemma_checks += rep.checks;
                        s.interval_checks += rep.interval_checks;
                        s.lemma_violations += rep.violations.size();
                        if (!rep.consistent_totals) ++s.inconsistent_totals;
                    }
                    const auto sprd = endpoint_multiset(sprd_pair(cfg, static_cast<std::int64_t>(len)).edges);
                    const bool member = std::any_of(en->all_matchings.begin(), en->all_matchings.end(),
                                                    [&](const EdgeConfiguration& m) { return endpoint_multiset(m.edges) == sprd; });
                    if (!member) ++s.sprd_not_member;
                }
            }
            std::size_t k = 0;
            while (k < len && ++digit[k] == options.size()) digit[k++] = 0;
            if (k == len) break;
        }
    }
    return s;
}

} // namespace stubpair
