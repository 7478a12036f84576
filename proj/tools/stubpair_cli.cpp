#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "stubpair/acceptance.hpp"
#include "stubpair/alt_rules.hpp"
#include "stubpair/arw.hpp"
#include "stubpair/degree_model.hpp"
#include "stubpair/experiment.hpp"
#include "stubpair/matching_oracle.hpp"
#include "stubpair/meshalkin.hpp"
#include "stubpair/sprd.hpp"
#include "stubpair/walks.hpp"

using namespace stubpair;
using nlohmann::json;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct Common {
    std::string dist = "1:1";
    double p = 0.5;
    std::int64_t window = 1000;
    std::int64_t max_step = 0;
    std::int64_t reps = 1;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    int jobs = 1;
};

// Writes to --out when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            require(static_cast<bool>(*file_), ErrorCode::Io, "cannot write " + path);
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

json edges_json(const EdgeConfiguration& cfg) {
    json edges = json::array(), censored = json::array();
    for (const auto& e : cfg.edges)
        edges.push_back({{"left", e.left}, {"right", e.right}, {"length", e.length}, {"step", e.step},
                         {"right_rank", e.right_rank}, {"left_rank", e.left_rank}});
    for (const auto& c : cfg.censored)
        censored.push_back({{"vertex", c.vertex}, {"direction", to_string(c.direction)}, {"rank", c.rank}});
    return {{"first_vertex", cfg.first_vertex}, {"window", cfg.window_len}, {"max_step", cfg.max_step},
            {"edges", edges}, {"censored", censored}};
}

void write_edges(const Common& c, const EdgeConfiguration& edges, json extra = json::object(),
                 const char* status = nullptr) {
    Sink sink(c.out);
    if (c.format == "json") {
        json j = edges_json(edges);
        for (auto& [k, v] : extra.items()) j[k] = v;
        sink.os() << j.dump(2) << '\n';
    } else {
        write_edges_csv(sink.os(), edges, status);
        if (!c.out.empty()) {
            std::ofstream cens(c.out + ".censored.csv");
            require(static_cast<bool>(cens), ErrorCode::Io, "cannot write " + c.out + ".censored.csv");
            write_censored_csv(cens, edges);
        }
    }
}

ArrowConfiguration make_arrows(const Common& c, const std::string& policy, Rng& deg_rng, Rng& dir_rng) {
    const auto degrees = sample_degrees(parse_distribution(c.dist), static_cast<std::size_t>(c.window), deg_rng);
    if (policy == "balanced") return assign_directions_balanced(degrees);
    require(policy == "iid", ErrorCode::InvalidArgument, "policy must be iid or balanced");
    return assign_directions_iid(degrees, c.p, dir_rng);
}

std::int64_t max_step_or_default(const Common& c) { return c.max_step == 0 ? std::max<std::int64_t>(1, c.window / 4) : c.max_step; }

bool is_usage_error(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::ParseError:
    case ErrorCode::NegativeProb:
    case ErrorCode::SumNotOne:
    case ErrorCode::DuplicateDegree:
    case ErrorCode::POutOfRange:
    case ErrorCode::OffsetOutOfWindow:
        return true;
    default:
        return false;
    }
}

std::string read_text(const std::string& input) {
    if (input.empty() || input == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(input);
    require(static_cast<bool>(in), ErrorCode::Io, "cannot open " + input);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void add_common(CLI::App* sub, Common& c, bool p_flag = true, bool max_step = true) {
    sub->add_option("--dist", c.dist, "degree law, e.g. 0:0.5,1:0.25,3:0.25");
    if (p_flag) sub->add_option("--p", c.p, "probability a stub points right");
    sub->add_option("--window", c.window, "window length W");
    if (max_step) sub->add_option("--max-step", c.max_step, "longest edge searched (default W/4)");
    sub->add_option("--seed", c.seed, "root seed");
    sub->add_option("--out", c.out, "output file (default stdout)");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stationary random graphs on the integer line by stub pairing"};
    app.require_subcommand(1);
    Common c;
    int result = 0;

    auto* degrees = app.add_subcommand("degrees", "sample i.i.d. vertex degrees");
    add_common(degrees, c, false, false);
    degrees->callback([&] {
        const auto dist = parse_distribution(c.dist);
        Rng rng(c.seed, "degrees");
        const auto d = sample_degrees(dist, static_cast<std::size_t>(c.window), rng);
        Sink sink(c.out);
        if (c.format == "json") {
            sink.os() << json{{"dist", format_distribution(dist)}, {"seed", c.seed}, {"rng", kRngIdentity},
                              {"tv_to_law", tv_to_distribution(d, dist)}, {"degrees", d}}.dump(2)
                      << '\n';
        } else {
            sink.os() << "vertex,degree\n";
            for (std::size_t v = 0; v < d.size(); ++v) sink.os() << v << ',' << d[v] << '\n';
        }
    });

    std::string policy = "iid";
    auto* sprd = app.add_subcommand("sprd", "stepwise pairing of a random arrow configuration");
    add_common(sprd, c);
    sprd->add_option("--policy", policy, "iid or balanced")->check(CLI::IsMember({"iid", "balanced"}));
    sprd->callback([&] {
        Rng deg(c.seed, "degrees"), dir(c.seed, "directions");
        const auto arrows = make_arrows(c, policy, deg, dir);
        const auto edges = sprd_pair(arrows, max_step_or_default(c));
        json extra{{"seed", c.seed}, {"rng", kRngIdentity}, {"policy", arrows.policy.tag()}};
        if (2 * edges.max_step < static_cast<std::int64_t>(edges.window_len)) {
            const auto range = exactness_radius(edges);
            extra["exact_range"] = {range.first, range.last};
            extra["exact_censored_fraction"] = censoring_in_range(arrows, edges, range).fraction();
        }
        write_edges(c, edges, extra);
    });

    std::int64_t max_sweeps = 1'000'000'000;
    auto* arw = app.add_subcommand("arw", "annihilating random walk pairing on a cycle");
    add_common(arw, c, false, false);
    arw->add_option("--max-sweeps", max_sweeps, "sweep budget before TIMEOUT");
    arw->callback([&] {
        Rng deg(c.seed, "degrees"), walk(c.seed, "arw");
        const auto even = sample_even_degrees(parse_distribution(c.dist), static_cast<std::size_t>(c.window), deg);
        const auto res = arw_pair(even.degrees, walk, max_sweeps);
        write_edges(c, res.edges,
                    {{"status", to_string(res.status)}, {"sweeps", res.sweeps}, {"resamples", even.resamples},
                     {"alive_at_end", res.alive_at_end}, {"seed", c.seed}, {"rng", kRngIdentity}},
                    to_string(res.status));
    });

    std::int64_t offset = 0, horizon = 0;
    double level = 1.0;
    std::string direction = "up";
    auto* walk = app.add_subcommand("walk", "random-walk view of an arrow configuration and a first passage");
    add_common(walk, c, true, false);
    walk->add_option("--offset", offset, "start offset m");
    walk->add_option("--level", level, "passage level");
    walk->add_option("--direction", direction, "up or down")->check(CLI::IsMember({"up", "down"}));
    walk->add_option("--horizon", horizon, "passage horizon (default: rest of the window)");
    walk->callback([&] {
        Rng deg(c.seed, "degrees"), dir(c.seed, "directions");
        const auto arrows = make_arrows(c, "iid", deg, dir);
        const auto w = build_walk(arrows, {offset});
        const auto h = horizon == 0 ? w.available(offset) : horizon;
        const auto fp = first_passage(w, offset, level, direction == "up" ? PassageDirection::Up : PassageDirection::Down, h);
        Sink sink(c.out);
        if (c.format == "json") {
            sink.os() << json{{"offset", offset}, {"level", level}, {"direction", direction}, {"horizon", h},
                              {"tau", fp.tau ? json(*fp.tau) : json()}, {"censored", fp.censored()},
                              {"delta", w.delta}, {"x", w.x_incr}, {"s", w.s}, {"s_prime", w.s_prime},
                              {"s_offset", w.offset_sums.at(offset)}}.dump(2)
                      << '\n';
        } else {
            sink.os() << "i,L,R,delta,x,s,s_prime\n";
            for (std::size_t i = 0; i < w.size(); ++i)
                sink.os() << i << ',' << arrows.left[i] << ',' << arrows.right[i] << ',' << w.delta[i] << ','
                          << w.x_incr[i] << ',' << w.s[i] << ',' << w.s_prime[i] << '\n';
        }
    });

    std::size_t min_len = 1, max_len = 6;
    int max_per_vertex = 2;
    auto* oracle = app.add_subcommand("oracle", "exhaustive checks on small configurations");
    auto* sweep = oracle->add_subcommand("sweep", "enumerate every balanced configuration and check it");
    oracle->require_subcommand(1);
    sweep->add_option("--min-len", min_len, "smallest window");
    sweep->add_option("--max-len", max_len, "largest window");
    sweep->add_option("--max-per-vertex", max_per_vertex, "cap on L + R at a vertex");
    sweep->add_option("--out", c.out, "output file (default stdout)");
    sweep->callback([&] {
        const auto s = oracle_sweep(min_len, max_len, max_per_vertex);
        const bool ok = s.lemma_violations == 0 && s.uniqueness_failures == 0 && s.sprd_not_member == 0 &&
                        s.inconsistent_totals == 0;
        Sink sink(c.out);
        sink.os() << json{{"min_len", min_len}, {"max_len", max_len}, {"max_per_vertex", max_per_vertex},
                          {"instances", s.instances}, {"matchings", s.matchings}, {"max_matchings", s.max_matchings},
                          {"lemma_checks", s.lemma_checks}, {"interval_checks", s.interval_checks},
                          {"lemma_violations", s.lemma_violations}, {"uniqueness_failures", s.uniqueness_failures},
                          {"sprd_not_member", s.sprd_not_member}, {"inconsistent_totals", s.inconsistent_totals},
                          {"pass", ok}}.dump(2)
                  << '\n';
        if (!ok) result = kExitCheckFailed;
    });

    std::string input;
    auto* mesh = app.add_subcommand("meshalkin", "recode four-symbol text into five-symbol text and back");
    mesh->require_subcommand(1);
    auto* encode = mesh->add_subcommand("encode", "source tokens (ra rb la lb) to coded tokens");
    auto* decode = mesh->add_subcommand("decode", "coded tokens (r laa lab lba lbb ?) to source tokens");
    std::size_t random_n = 0;
    for (auto* s : {encode, decode}) {
        s->add_option("--input", input, "input file (default stdin)");
        s->add_option("--out", c.out, "output file (default stdout)");
    }
    encode->add_option("--random", random_n, "encode a uniform random source of this length instead of input");
    encode->add_option("--seed", c.seed, "seed for --random");
    encode->callback([&] {
        std::vector<SourceSymbol> src;
        if (random_n > 0) {
            Rng rng(c.seed, "meshalkin");
            src = random_source(random_n, rng);
        } else {
            src = parse_source(read_text(input));
        }
        Sink sink(c.out);
        sink.os() << format_coded(meshalkin_encode(src).coded) << '\n';
    });
    decode->callback([&] {
        const auto dec = meshalkin_decode_uncensored(parse_coded(read_text(input)));
        std::string out;
        for (std::size_t k = 0; k < dec.size(); ++k) {
            if (k) out += ' ';
            out += dec[k] ? format_source({*dec[k]}) : "?";
        }
        Sink sink(c.out);
        sink.os() << out << '\n';
    });

    int n = 2;
    auto* ex51 = app.add_subcommand("example51", "even degrees split evenly between the two directions");
    ex51->add_option("--n", n, "degrees uniform on {0, 2, ..., 2n}");
    ex51->add_option("--window", c.window, "window length W");
    ex51->add_option("--max-step", c.max_step, "longest edge searched (default W/4)");
    ex51->add_option("--seed", c.seed, "root seed");
    ex51->add_option("--out", c.out, "output file (default stdout)");
    ex51->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    ex51->callback([&] {
        require(n >= 1, ErrorCode::InvalidArgument, "n must be >= 1");
        const auto r = run_example_51(n, c.window, c.seed, c.max_step);
        std::vector<double> tm;
        if (!r.total_length.empty()) tm = truncated_mean_curve(r.total_length, {10, 100});
        write_edges(c, r.edges,
                    {{"n", n}, {"exact_range", {r.exact.first, r.exact.last}},
                     {"mean_longest_right", r.mean_longest_right},
                     {"mean_longest_right_present", r.mean_longest_right_present},
                     {"censored_in_exact", r.censored_in_exact}, {"total_length_truncated_means_10_100", tm}});
    });

    std::string coin;
    auto* ex52 = app.add_subcommand("example52", "one stub per vertex, directions alternating");
    ex52->add_option("--window", c.window, "even window length");
    ex52->add_option("--seed", c.seed, "seed for the coin");
    ex52->add_option("--coin", coin, "heads or tails (overrides the seed)")->check(CLI::IsMember({"heads", "tails"}));
    ex52->add_option("--out", c.out, "output file (default stdout)");
    ex52->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    ex52->callback([&] {
        const auto r = coin.empty() ? run_example_52(c.window, c.seed)
                                    : run_example_52(c.window, coin == "heads" ? Coin::Heads : Coin::Tails);
        write_edges(c, r.edges, {{"coin", to_string(r.coin)}});
    });

    std::string config_path, suite, policy_flag;
    std::vector<std::int64_t> cutoffs;
    auto* exp = app.add_subcommand("experiment", "replicated stepwise-pairing experiment or the acceptance suite");
    add_common(exp, c);
    exp->add_option("--reps", c.reps, "replications");
    exp->add_option("--jobs", c.jobs, "worker threads");
    exp->add_option("--policy", policy_flag, "iid, balanced or delta1")->check(CLI::IsMember({"iid", "balanced", "delta1"}));
    exp->add_option("--cutoffs", cutoffs, "truncation cutoffs");
    exp->add_option("--config", config_path, "JSON config; flags override its values");
    exp->add_option("--suite", suite, "run a named suite")->check(CLI::IsMember({"acceptance"}));
    exp->callback([&] {
        if (!suite.empty()) {
            const auto results = run_acceptance(std::cout, kAcceptanceSeed, c.jobs);
            const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
            if (!ok) result = kExitCheckFailed;
            return;
        }
        ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
        if (exp->count("--dist")) cfg.dist = c.dist;
        if (exp->count("--p")) cfg.p = c.p;
        if (exp->count("--window")) cfg.window = c.window;
        if (exp->count("--max-step")) cfg.max_step = c.max_step;
        if (exp->count("--reps")) cfg.reps = c.reps;
        if (exp->count("--seed")) cfg.seed = c.seed;
        if (exp->count("--out")) cfg.out = c.out;
        if (exp->count("--format")) cfg.format = c.format;
        if (exp->count("--jobs")) cfg.jobs = c.jobs;
        if (exp->count("--policy")) cfg.policy = policy_flag;
        if (exp->count("--cutoffs")) cfg.cutoffs = cutoffs;
        const auto report = run(cfg);
        if (cfg.out.empty()) {
            if (cfg.format == "json")
                std::cout << to_json(report).dump(2) << '\n';
            else
                write_report_csv(std::cout, report);
        } else {
            write_outputs(report);
        }
        if (!report.all_pass()) result = kExitCheckFailed;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return is_usage_error(e.code()) ? kExitUsage : kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return result;
}
