#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

#include "stubpair/edges.hpp"
#include "stubpair/error.hpp"

namespace stubpair {

struct SurvivalPoint {
    std::int64_t n = 0;
    double survival = 1.0; // P-hat(X > n)
    std::int64_t at_risk = 0;
    std::int64_t events = 0;
};

/// Product-limit survival estimate; a censored observation with value c
/// means X > c and only enters the risk sets of times <= c.
inline std::vector<SurvivalPoint> survival_curve(std::vector<Observation> samples) {
    const bool any_event = std::any_of(samples.begin(), samples.end(), [](const Observation& o) { return !o.censored; });
    require(any_event, ErrorCode::AllCensored, "every sample is censored");
    // events before censorings at equal times
    std::sort(samples.begin(), samples.end(), [](const Observation& a, const Observation& b) {
        return a.value != b.value ? a.value < b.value : (!a.censored && b.censored);
    });
    std::vector<SurvivalPoint> curve;
    double s = 1.0;
    auto at_risk = static_cast<std::int64_t>(samples.size());
    for (std::size_t k = 0; k < samples.size();) {
        const std::int64_t t = samples[k].value;
        std::int64_t d = 0, c = 0;
        for (; k < samples.size() && samples[k].value == t; ++k) (samples[k].censored ? c : d) += 1;
        if (d > 0) {
            s *= 1.0 - static_cast<double>(d) / static_cast<double>(at_risk);
            curve.push_back({t, s, at_risk, d});
        }
        at_risk -= d + c;
    }
    return curve;
}

/// Step-function lookup: P-hat(X > n).
inline double survival_at(const std::vector<SurvivalPoint>& curve, double n) {
    auto it = std::upper_bound(curve.begin(), curve.end(), n,
                               [](double v, const SurvivalPoint& p) { return v < static_cast<double>(p.n); });
    return it == curve.begin() ? 1.0 : std::prev(it)->survival;
}

inline void write_survival_csv(std::ostream& os, const std::vector<SurvivalPoint>& curve) {
    os << "n,survival,at_risk,events\n";
    os.precision(17);
    for (const auto& p : curve) os << p.n << ',' << p.survival << ',' << p.at_risk << ',' << p.events << '\n';
}

struct TailFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double band_lo = 0.0; // slope -/+ 1.96 standard errors
    double band_hi = 0.0;
    std::vector<double> grid;
};

/// Least-squares slope of log P-hat(X > n) against log n on the dyadic
/// grid n_lo, 2 n_lo, 4 n_lo, ... <= n_hi.
inline TailFit tail_exponent(const std::vector<SurvivalPoint>& curve, std::int64_t n_lo, std::int64_t n_hi) {
    require(n_lo >= 1 && n_lo < n_hi, ErrorCode::InsufficientRange, "need 1 <= n_lo < n_hi");
    std::vector<double> xs, ys;
    TailFit fit;
    for (std::int64_t n = n_lo; n <= n_hi; n *= 2) {
        const double s = survival_at(curve, static_cast<double>(n));
        if (s <= 0.0) continue;
        fit.grid.push_back(static_cast<double>(n));
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(s));
    }
    require(xs.size() >= 5, ErrorCode::InsufficientRange,
            "only " + std::to_string(xs.size()) + " dyadic grid points with positive survival");
    const double k = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
    mx /= k;
    my /= k;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        rss += r * r;
    }
    fit.stderr_slope = std::sqrt(rss / (k - 2.0) / sxx);
    fit.band_lo = fit.slope - 1.96 * fit.stderr_slope;
    fit.band_hi = fit.slope + 1.96 * fit.stderr_slope;
    return fit;
}

/// Sample means of min(X, M) for each cutoff M. Censored samples are
/// exact for every M up to their censoring value.
inline std::vector<double> truncated_mean_curve(const std::vector<Observation>& samples,
                                                const std::vector<std::int64_t>& cutoffs) {
    std::int64_t horizon = std::numeric_limits<std::int64_t>::max();
    for (const auto& o : samples)
        if (o.censored) horizon = std::min(horizon, o.value);
    std::vector<double> out;
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
        require(i == 0 || cutoffs[i] > cutoffs[i - 1], ErrorCode::InvalidArgument, "cutoffs must increase");
        require(cutoffs[i] <= horizon, ErrorCode::CutoffBeyondHorizon,
                "cutoff " + std::to_string(cutoffs[i]) + " beyond censoring horizon " + std::to_string(horizon));
        double sum = 0.0;
        for (const auto& o : samples) sum += static_cast<double>(std::min(o.value, cutoffs[i]));
        out.push_back(samples.empty() ? 0.0 : sum / static_cast<double>(samples.size()));
    }
    return out;
}

inline std::vector<double> truncated_mean_curve(const std::vector<std::int64_t>& samples,
                                                const std::vector<std::int64_t>& cutoffs) {
    std::vector<Observation> obs;
    obs.reserve(samples.size());
    for (auto v : samples) obs.push_back({v, false});
    return truncated_mean_curve(obs, cutoffs);
}

inline bool strictly_increasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return true;
}

inline bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return true;
}

/// Total-variation distance between two empirical laws, one bin per value.
template <class Key>
double tv_distance(const std::vector<Key>& a, const std::vector<Key>& b) {
    if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : 1.0;
    std::map<Key, std::pair<double, double>> bins;
    for (const auto& k : a) bins[k].first += 1.0;
    for (const auto& k : b) bins[k].second += 1.0;
    double tv = 0.0;
    for (const auto& [k, c] : bins)
        tv += std::abs(c.first / static_cast<double>(a.size()) - c.second / static_cast<double>(b.size()));
    return 0.5 * tv;
}

struct StationarityResult {
    double distance = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

template <class Key>
StationarityResult stationarity_check(const std::vector<Key>& at_u, const std::vector<Key>& at_v, double tolerance) {
    const double d = tv_distance(at_u, at_v);
    return {d, tolerance, d < tolerance};
}

/// Observations of one metric over a vertex range, dropping vertices where
/// it is absent.
template <class Pick>
std::vector<Observation> collect_metric(const std::vector<EdgeMetrics>& metrics, std::size_t first, std::size_t last,
                                        Pick pick) {
    std::vector<Observation> out;
    for (std::size_t k = first; k <= last && k < metrics.size(); ++k)
        if (const std::optional<Observation>& o = pick(metrics[k])) out.push_back(*o);
    return out;
}

} // namespace stubpair
