#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stubpair/error.hpp"
#include "stubpair/rng.hpp"

namespace stubpair {

using Degree = std::int32_t;

struct Atom {
    Degree degree = 0;
    double probability = 0.0;

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite-support pmf on the non-negative integers.
class DegreeDistribution {
public:
    static constexpr double kSumTolerance = 1e-12;

    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    double mean() const noexcept { return mean_; }
    Degree max_degree() const noexcept { return atoms_.back().degree; }

    /// pmf value at d (0 off the support).
    double pmf(Degree d) const {
        auto it = std::lower_bound(atoms_.begin(), atoms_.end(), d,
                                   [](const Atom& a, Degree v) { return a.degree < v; });
        return (it != atoms_.end() && it->degree == d) ? it->probability : 0.0;
    }

    /// Inverse-CDF draw, O(log |atoms|). A point mass consumes no randomness.
    Degree sample(Rng& rng) const {
        if (atoms_.size() == 1) return atoms_.front().degree;
        const double u = rng.uniform();
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        if (it == cdf_.end()) --it;
        return atoms_[static_cast<std::size_t>(it - cdf_.begin())].degree;
    }

    friend DegreeDistribution make_distribution(std::vector<Atom> atoms);

private:
    std::vector<Atom> atoms_;
    std::vector<double> cdf_;
    double mean_ = 0.0;
};

/// Validates and normalizes a list of (degree, probability) atoms. Atoms
/// may be given in any order; they are stored sorted by degree.
inline DegreeDistribution make_distribution(std::vector<Atom> atoms) {
    require(!atoms.empty(), ErrorCode::InvalidArgument, "distribution needs at least one atom");
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.degree < b.degree; });
    double total = 0.0;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        const Atom& a = atoms[k];
        require(a.degree >= 0, ErrorCode::InvalidArgument, "degrees must be non-negative");
        require(a.probability >= 0.0 && std::isfinite(a.probability), ErrorCode::NegativeProb,
                "probability of degree " + std::to_string(a.degree) + " is negative");
        require(k == 0 || atoms[k - 1].degree != a.degree, ErrorCode::DuplicateDegree,
                "degree " + std::to_string(a.degree) + " listed twice");
        total += a.probability;
    }
    require(std::abs(total - 1.0) <= DegreeDistribution::kSumTolerance, ErrorCode::SumNotOne,
            "probabilities sum to " + std::to_string(total));

    DegreeDistribution dist;
    dist.atoms_ = std::move(atoms);
    double acc = 0.0;
    for (Atom& a : dist.atoms_) {
        a.probability /= total;
        acc += a.probability;
        dist.cdf_.push_back(acc);
        dist.mean_ += a.degree * a.probability;
    }
    dist.cdf_.back() = 1.0;
    return dist;
}

inline DegreeDistribution point_mass(Degree d) { return make_distribution({{d, 1.0}}); }

/// Uniform law on {0, 2, ..., 2n}.
inline DegreeDistribution uniform_even(int n) {
    require(n >= 1, ErrorCode::InvalidArgument, "n must be positive");
    std::vector<Atom> atoms;
    for (int k = 0; k <= n; ++k) atoms.push_back({2 * k, 1.0 / (n + 1)});
    return make_distribution(std::move(atoms));
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace detail

/// Parses "0:0.3333,2:0.3333,4:0.3334". Sum tolerance for literals is
/// 1e-6 (four-decimal literals are common); the result is renormalized.
inline DegreeDistribution parse_distribution(std::string_view text) {
    constexpr double kLiteralTolerance = 1e-6;
    std::vector<Atom> atoms;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = detail::trim(text.substr(0, comma));
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);

        const auto colon = item.find(':');
        require(colon != std::string_view::npos, ErrorCode::ParseError,
                "expected degree:probability, got '" + std::string(item) + "'");
        const std::string_view deg_text = detail::trim(item.substr(0, colon));
        const std::string prob_text(detail::trim(item.substr(colon + 1)));

        Atom atom;
        auto [ptr, ec] = std::from_chars(deg_text.data(), deg_text.data() + deg_text.size(), atom.degree);
        require(ec == std::errc{} && ptr == deg_text.data() + deg_text.size(), ErrorCode::ParseError,
                "bad degree '" + std::string(deg_text) + "'");
        std::size_t used = 0;
        try {
            atom.probability = std::stod(prob_text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        require(used == prob_text.size() && used > 0, ErrorCode::ParseError,
                "bad probability '" + prob_text + "'");
        atoms.push_back(atom);
    }
    require(!atoms.empty(), ErrorCode::ParseError, "empty distribution literal");

    double total = 0.0;
    for (const Atom& a : atoms) total += a.probability;
    if (std::abs(total - 1.0) <= kLiteralTolerance && total > 0.0)
        for (Atom& a : atoms) a.probability /= total;
    // exact renormalization can still leave 1ulp of slack; make_distribution accepts that
    return make_distribution(std::move(atoms));
}

inline std::string format_distribution(const DegreeDistribution& dist) {
    std::string out;
    for (const Atom& a : dist.atoms()) {
        if (!out.empty()) out += ',';
        char buf[64];
        std::snprintf(buf, sizeof buf, "%d:%.17g", a.degree, a.probability);
        out += buf;
    }
    return out;
}

/// i.i.d. degrees for window_len consecutive vertices.
inline std::vector<Degree> sample_degrees(const DegreeDistribution& dist, std::size_t window_len, Rng& rng) {
    require(window_len >= 1, ErrorCode::InvalidArgument, "window_len must be >= 1");
    std::vector<Degree> out(window_len);
    for (auto& d : out) d = dist.sample(rng);
    return out;
}

inline std::vector<Degree> sample_degrees(const DegreeDistribution& dist, std::size_t window_len,
                                          std::uint64_t seed) {
    Rng rng(seed);
    return sample_degrees(dist, window_len, rng);
}

/// Total-variation distance between the empirical pmf of `values` and `dist`.
inline double tv_to_distribution(const std::vector<Degree>& values, const DegreeDistribution& dist) {
    if (values.empty()) return 1.0;
    Degree top = dist.max_degree();
    for (Degree v : values) top = std::max(top, v);
    std::vector<double> counts(static_cast<std::size_t>(top) + 1, 0.0);
    for (Degree v : values) counts[static_cast<std::size_t>(v)] += 1.0;
    double tv = 0.0;
    for (Degree d = 0; d <= top; ++d)
        tv += std::abs(counts[static_cast<std::size_t>(d)] / values.size() - dist.pmf(d));
    return 0.5 * tv;
}

} // namespace stubpair
