#pragma once

// Replicated stepwise-pairing experiments: config, seeded fan-out over
// threads, deterministic merge and JSON/CSV output.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "stubpair/arrows.hpp"
#include "stubpair/degree_model.hpp"
#include "stubpair/edges.hpp"
#include "stubpair/error.hpp"
#include "stubpair/matching_oracle.hpp"
#include "stubpair/rng.hpp"
#include "stubpair/sprd.hpp"
#include "stubpair/stats.hpp"

namespace stubpair {

inline constexpr int kSchemaVersion = 1;

struct ExperimentConfig {
    std::string dist = "1:1";
    std::string policy = "iid"; // iid | balanced | delta1
    double p = 0.5;
    std::int64_t window = 1000;
    std::int64_t max_step = 0; // 0: window / 4
    std::int64_t reps = 1;
    std::uint64_t seed = 1;
    std::vector<std::int64_t> cutoffs{10, 100};
    std::string out;
    int jobs = 1;
    std::string format = "json";

    std::int64_t effective_max_step() const { return max_step == 0 ? std::max<std::int64_t>(1, window / 4) : max_step; }

    void validate() const {
        parse_distribution(dist);
        require(policy == "iid" || policy == "balanced" || policy == "delta1", ErrorCode::InvalidArgument,
                "policy must be iid, balanced or delta1");
        require(p >= 0.0 && p <= 1.0, ErrorCode::POutOfRange, "p must lie in [0, 1]");
        require(window >= 2, ErrorCode::InvalidArgument, "window must be >= 2");
        const auto m = effective_max_step();
        require(m >= 1 && m <= window / 2, ErrorCode::InvalidArgument, "max_step must lie in [1, window / 2]");
        require(reps >= 1, ErrorCode::InvalidArgument, "reps must be >= 1");
        require(jobs >= 1, ErrorCode::InvalidArgument, "jobs must be >= 1");
        require(format == "json" || format == "csv", ErrorCode::InvalidArgument, "format must be csv or json");
        for (std::size_t i = 0; i < cutoffs.size(); ++i) {
            require(cutoffs[i] >= 1, ErrorCode::InvalidArgument, "cutoffs must be positive");
            require(i == 0 || cutoffs[i] > cutoffs[i - 1], ErrorCode::InvalidArgument, "cutoffs must increase");
        }
    }

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

inline nlohmann::json to_json(const ExperimentConfig& c) {
    return {{"dist", c.dist},       {"policy", c.policy}, {"p", c.p},         {"window", c.window},
            {"max_step", c.max_step}, {"reps", c.reps},   {"seed", c.seed},   {"cutoffs", c.cutoffs},
            {"out", c.out},         {"jobs", c.jobs},     {"format", c.format}};
}

/// Keys missing from `j` keep the values already in `base`.
inline ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {}) {
    require(j.is_object(), ErrorCode::ParseError, "config must be a JSON object");
    static const std::vector<std::string> known{"dist", "policy", "p",       "window", "max_step", "reps",
                                                "seed", "cutoffs", "out",    "jobs",   "format"};
    for (const auto& [key, _] : j.items())
        require(std::find(known.begin(), known.end(), key) != known.end(), ErrorCode::ParseError,
                "unknown config key '" + key + "'");
    try {
        if (j.contains("dist")) base.dist = j.at("dist").get<std::string>();
        if (j.contains("policy")) base.policy = j.at("policy").get<std::string>();
        if (j.contains("p")) base.p = j.at("p").get<double>();
        if (j.contains("window")) base.window = j.at("window").get<std::int64_t>();
        if (j.contains("max_step")) base.max_step = j.at("max_step").get<std::int64_t>();
        if (j.contains("reps")) base.reps = j.at("reps").get<std::int64_t>();
        if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("cutoffs")) base.cutoffs = j.at("cutoffs").get<std::vector<std::int64_t>>();
        if (j.contains("out")) base.out = j.at("out").get<std::string>();
        if (j.contains("jobs")) base.jobs = j.at("jobs").get<int>();
        if (j.contains("format")) base.format = j.at("format").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("bad config value: ") + e.what());
    }
    return base;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorCode::Io, "cannot open config " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

/// Hash of the fields that determine the numbers (output location and
/// thread count excluded).
inline std::string config_hash(const ExperimentConfig& c) {
    auto j = to_json(c);
    j.erase("out");
    j.erase("jobs");
    j.erase("format");
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(j.dump())));
    return buf;
}

/// Runs body(k) for k in [0, n) on up to `jobs` threads. The first
/// exception thrown by any call is rethrown after all threads join.
template <class Body>
void parallel_for(std::int64_t n, int jobs, Body body) {
    const int threads = static_cast<int>(std::min<std::int64_t>(std::max(jobs, 1), n));
    if (threads <= 1) {
        for (std::int64_t k = 0; k < n; ++k) body(k);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::int64_t k; (k = next.fetch_add(1)) < n;) {
                try {
                    body(k);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = n;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

inline std::string rep_stream(std::string_view component, std::int64_t k) {
    return std::string(component) + "/rep_" + std::to_string(k);
}

/// One replication's arrow configuration, from its own named substreams.
inline ArrowConfiguration replicate_arrows(const ExperimentConfig& cfg, const DegreeDistribution& dist, std::int64_t k) {
    const auto W = static_cast<std::size_t>(cfg.window);
    if (cfg.policy == "delta1") {
        Rng coin(cfg.seed, rep_stream("coin", k));
        return assign_directions_delta1(W, 0, coin.below(2) == 0 ? Coin::Heads : Coin::Tails);
    }
    Rng deg(cfg.seed, rep_stream("degrees", k));
    const auto degrees = sample_degrees(dist, W, deg);
    if (cfg.policy == "balanced") return assign_directions_balanced(degrees);
    Rng dir(cfg.seed, rep_stream("directions", k));
    return assign_directions_iid(degrees, cfg.p, dir);
}

struct ReplicationResult {
    std::int64_t index = 0;
    CensoringCount window_right, window_left;
    CensoringCount exact_right, exact_left;
    std::int64_t edges = 0;
    bool accounting_ok = true;
    bool nested = true;
    std::vector<Degree> degree; // per sampled vertex
    std::vector<Vertex> vertex;
    std::vector<std::optional<Observation>> shortest_right, longest, total;
};

inline ReplicationResult run_replication(const ExperimentConfig& cfg, const DegreeDistribution& dist, std::int64_t k) {
    const ArrowConfiguration arrows = replicate_arrows(cfg, dist, k);
    const std::int64_t m = cfg.effective_max_step();
    const EdgeConfiguration edges = sprd_pair(arrows, m);

    ReplicationResult r;
    r.index = k;
    r.edges = static_cast<std::int64_t>(edges.edges.size());
    const VertexRange whole{arrows.first_vertex, arrows.last_vertex()};
    r.window_right = censoring_in_range(arrows, edges, whole, Direction::Right);
    r.window_left = censoring_in_range(arrows, edges, whole, Direction::Left);
    const bool has_exact = 2 * m < cfg.window;
    const VertexRange exact = has_exact ? exactness_radius(edges) : VertexRange{0, -1};
    r.exact_right = censoring_in_range(arrows, edges, exact, Direction::Right);
    r.exact_left = censoring_in_range(arrows, edges, exact, Direction::Left);
    r.accounting_ok = realized_degrees(edges).size() == arrows.size() &&
                      2 * r.edges + r.window_right.censored + r.window_left.censored ==
                          arrows.total_left() + arrows.total_right();
    r.nested = is_nested(edges);

    const auto metrics = all_edge_metrics(edges);
    for (Vertex v = exact.first; v <= exact.last; ++v) {
        const auto& mv = metrics[edges.offset(v)];
        r.vertex.push_back(v);
        r.degree.push_back(arrows.degree(v));
        r.shortest_right.push_back(mv.shortest_right);
        r.longest.push_back(mv.longest);
        r.total.push_back(mv.total);
    }
    return r;
}

struct MetricSummary {
    std::int64_t count = 0;
    std::int64_t censored = 0;
    std::vector<std::optional<double>> truncated_means; // empty where cutoff > max_step
    std::optional<TailFit> tail;
};

inline MetricSummary summarize(const std::vector<Observation>& obs, const std::vector<std::int64_t>& cutoffs,
                               std::int64_t max_step) {
    MetricSummary s;
    s.count = static_cast<std::int64_t>(obs.size());
    for (const auto& o : obs) s.censored += o.censored ? 1 : 0;
    std::vector<std::int64_t> usable;
    for (auto c : cutoffs)
        if (c <= max_step) usable.push_back(c);
    const auto tm = obs.empty() ? std::vector<double>(usable.size(), 0.0) : truncated_mean_curve(obs, usable);
    std::size_t u = 0;
    for (auto c : cutoffs) s.truncated_means.push_back(c <= max_step ? std::optional<double>(tm[u++]) : std::nullopt);
    if (s.censored < s.count) {
        try {
            s.tail = tail_exponent(survival_curve(obs), 1, max_step);
        } catch (const Error&) {
        }
    }
    return s;
}

struct Property {
    std::string name;
    bool pass = false;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::string hash;
    std::int64_t edges = 0;
    CensoringCount window_right, window_left, exact_right, exact_left;
    MetricSummary shortest_right, longest, total;
    std::vector<Property> properties;
    std::vector<ReplicationResult> replications; // ordered by index
    double wall_seconds = 0.0;                    // not part of the JSON report

    bool all_pass() const {
        return std::all_of(properties.begin(), properties.end(), [](const Property& p) { return p.pass; });
    }
};

inline void accumulate(CensoringCount& into, const CensoringCount& c) {
    into.censored += c.censored;
    into.stubs += c.stubs;
}

/// Reduction over replications in index order, whatever order they finished in.
inline void merge_replications(ExperimentReport& rep, std::vector<ReplicationResult> results) {
    std::sort(results.begin(), results.end(),
              [](const ReplicationResult& a, const ReplicationResult& b) { return a.index < b.index; });
    ExperimentReport fresh;
    fresh.config = rep.config;
    fresh.hash = rep.hash;
    rep = std::move(fresh);
    bool accounting = true, nested = true;
    std::vector<Observation> sr, lg, tot;
    for (const auto& r : results) {
        rep.edges += r.edges;
        accumulate(rep.window_right, r.window_right);
        accumulate(rep.window_left, r.window_left);
        accumulate(rep.exact_right, r.exact_right);
        accumulate(rep.exact_left, r.exact_left);
        accounting = accounting && r.accounting_ok;
        nested = nested && r.nested;
        for (std::size_t i = 0; i < r.vertex.size(); ++i) {
            if (r.shortest_right[i]) sr.push_back(*r.shortest_right[i]);
            if (r.longest[i]) lg.push_back(*r.longest[i]);
            if (r.total[i]) tot.push_back(*r.total[i]);
        }
    }
    const auto m = rep.config.effective_max_step();
    rep.shortest_right = summarize(sr, rep.config.cutoffs, m);
    rep.longest = summarize(lg, rep.config.cutoffs, m);
    rep.total = summarize(tot, rep.config.cutoffs, m);
    rep.properties = {{"stub_accounting", accounting}, {"nested_output", nested}};
    rep.replications = std::move(results);
}

inline ExperimentReport run(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const DegreeDistribution dist = parse_distribution(cfg.dist);
    std::vector<ReplicationResult> results(static_cast<std::size_t>(cfg.reps));
    parallel_for(cfg.reps, cfg.jobs,
                 [&](std::int64_t k) { results[static_cast<std::size_t>(k)] = run_replication(cfg, dist, k); });
    ExperimentReport rep;
    rep.config = cfg;
    rep.hash = config_hash(cfg);
    merge_replications(rep, std::move(results));
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

inline nlohmann::json to_json(const CensoringCount& c) {
    return {{"censored", c.censored}, {"stubs", c.stubs}, {"fraction", c.fraction()}};
}

inline nlohmann::json to_json(const MetricSummary& s, const std::vector<std::int64_t>& cutoffs) {
    nlohmann::json tm = nlohmann::json::array();
    for (std::size_t i = 0; i < cutoffs.size(); ++i)
        tm.push_back({{"cutoff", cutoffs[i]},
                      {"mean", s.truncated_means[i] ? nlohmann::json(*s.truncated_means[i]) : nlohmann::json()}});
    nlohmann::json j{{"count", s.count}, {"censored", s.censored}, {"truncated_means", tm}};
    if (s.tail)
        j["tail"] = {{"slope", s.tail->slope}, {"stderr", s.tail->stderr_slope}, {"band", {s.tail->band_lo, s.tail->band_hi}}};
    else
        j["tail"] = nullptr;
    return j;
}

inline nlohmann::json to_json(const ExperimentReport& r) {
    // output location and thread count do not affect any number
    auto config = to_json(r.config);
    config.erase("out");
    config.erase("jobs");
    config["max_step"] = r.config.effective_max_step();
    nlohmann::json props = nlohmann::json::array();
    for (const auto& p : r.properties) props.push_back({{"name", p.name}, {"pass", p.pass}});
    const auto& c = r.config.cutoffs;
    return {{"schema_version", kSchemaVersion},
            {"rng", kRngIdentity},
            {"config", config},
            {"config_hash", r.hash},
            {"edges", r.edges},
            {"censoring",
             {{"window", {{"right", to_json(r.window_right)}, {"left", to_json(r.window_left)}}},
              {"exact_range", {{"right", to_json(r.exact_right)}, {"left", to_json(r.exact_left)}}}}},
            {"metrics",
             {{"shortest_right", to_json(r.shortest_right, c)},
              {"longest", to_json(r.longest, c)},
              {"total", to_json(r.total, c)}}},
            {"properties", props},
            {"pass", r.all_pass()}};
}

namespace detail {

inline void put_obs(std::ostream& os, const std::optional<Observation>& o) {
    if (o)
        os << ',' << o->value << ',' << (o->censored ? 1 : 0);
    else
        os << ",,";
}

} // namespace detail

/// Per-vertex samples from the exact range of every replication.
inline void write_samples_csv(std::ostream& os, const ExperimentReport& r) {
    os << "rep,vertex,degree,shortest_right,shortest_right_censored,longest,longest_censored,total,total_censored\n";
    for (const auto& rep : r.replications)
        for (std::size_t i = 0; i < rep.vertex.size(); ++i) {
            os << rep.index << ',' << rep.vertex[i] << ',' << rep.degree[i];
            detail::put_obs(os, rep.shortest_right[i]);
            detail::put_obs(os, rep.longest[i]);
            detail::put_obs(os, rep.total[i]);
            os << '\n';
        }
}

/// Flat key,value view of the report.
inline void write_report_csv(std::ostream& os, const ExperimentReport& r) {
    os << "key,value\n";
    const auto flat = to_json(r).flatten();
    for (const auto& [k, v] : flat.items()) os << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

/// Writes report.json (or report.csv), samples.csv, shortest_right_survival.csv
/// and timing.json under cfg.out. The report bytes depend only on the config.
inline void write_outputs(const ExperimentReport& r) {
    namespace fs = std::filesystem;
    const fs::path dir(r.config.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    require(!ec, ErrorCode::Io, "cannot create output directory " + dir.string());
    auto open = [&](const char* name) {
        std::ofstream f(dir / name);
        require(static_cast<bool>(f), ErrorCode::Io, "cannot write " + (dir / name).string());
        return f;
    };
    if (r.config.format == "json") {
        auto f = open("report.json");
        f << to_json(r).dump(2) << '\n';
    } else {
        auto f = open("report.csv");
        write_report_csv(f, r);
    }
    {
        auto f = open("samples.csv");
        write_samples_csv(f, r);
    }
    {
        std::vector<Observation> sr;
        for (const auto& rep : r.replications)
            for (const auto& o : rep.shortest_right)
                if (o) sr.push_back(*o);
        auto f = open("shortest_right_survival.csv");
        if (std::any_of(sr.begin(), sr.end(), [](const Observation& o) { return !o.censored; }))
            write_survival_csv(f, survival_curve(sr));
        else
            f << "n,survival,at_risk,events\n";
    }
    {
        auto f = open("timing.json");
        f << nlohmann::json{{"config_hash", r.hash}, {"wall_seconds", r.wall_seconds}}.dump(2) << '\n';
    }
}

} // namespace stubpair
