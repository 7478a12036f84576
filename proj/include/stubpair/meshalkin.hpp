#pragma once

// Finitary recoding of the uniform four-symbol shift {la, lb, ra, rb} into
// the five-symbol shift {r, laa, lab, lba, lbb} with marginals
// (1/2, 1/8, 1/8, 1/8, 1/8). The directions form a one-stub-per-vertex
// arrow configuration; its nested matching pairs every l with an r. An
// r-position emits r, an l-position emits (l, x, y) where x is its own
// label and y the label of the matched r. Positions whose partner lies
// outside the window emit CENSORED.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "stubpair/arrows.hpp"
#include "stubpair/edges.hpp"
#include "stubpair/error.hpp"
#include "stubpair/rng.hpp"
#include "stubpair/sprd.hpp"

namespace stubpair {

enum class Label : std::uint8_t { A, B };

inline char to_char(Label l) { return l == Label::A ? 'a' : 'b'; }

struct SourceSymbol {
    Direction direction = Direction::Right;
    Label label = Label::A;

    friend bool operator==(const SourceSymbol&, const SourceSymbol&) = default;
};

struct CodedSymbol {
    enum class Kind : std::uint8_t { R, L, Censored };

    Kind kind = Kind::Censored;
    Label x = Label::A; // Kind::L only
    Label y = Label::A;

    static CodedSymbol r() { return {Kind::R, Label::A, Label::A}; }
    static CodedSymbol l(Label x, Label y) { return {Kind::L, x, y}; }
    static CodedSymbol censored() { return {Kind::Censored, Label::A, Label::A}; }

    /// 0 = r, 1..4 = laa, lab, lba, lbb; -1 = censored.
    int index() const {
        switch (kind) {
        case Kind::R: return 0;
        case Kind::L: return 1 + 2 * static_cast<int>(x) + static_cast<int>(y);
        case Kind::Censored: return -1;
        }
        return -1;
    }

    friend bool operator==(const CodedSymbol&, const CodedSymbol&) = default;
};

struct MeshalkinEncoding {
    std::vector<CodedSymbol> coded;
    std::vector<std::optional<std::int64_t>> radius; // distance to the matched partner
};

namespace detail {

inline ArrowConfiguration direction_word(const std::vector<Direction>& dirs) {
    ArrowConfiguration cfg;
    cfg.left.assign(dirs.size(), 0);
    cfg.right.assign(dirs.size(), 0);
    for (std::size_t k = 0; k < dirs.size(); ++k) (dirs[k] == Direction::Right ? cfg.right[k] : cfg.left[k]) = 1;
    return cfg;
}

inline EdgeConfiguration pair_word(const std::vector<Direction>& dirs) {
    return sprd_pair(direction_word(dirs), static_cast<std::int64_t>(dirs.size()));
}

} // namespace detail

inline MeshalkinEncoding meshalkin_encode(const std::vector<SourceSymbol>& source) {
    MeshalkinEncoding out;
    out.coded.assign(source.size(), CodedSymbol::censored());
    out.radius.assign(source.size(), std::nullopt);
    if (source.empty()) return out;

    std::vector<Direction> dirs;
    dirs.reserve(source.size());
    for (const auto& s : source) dirs.push_back(s.direction);
    for (const Edge& e : detail::pair_word(dirs).edges) {
        const auto i = static_cast<std::size_t>(e.left), j = static_cast<std::size_t>(e.right);
        out.coded[i] = CodedSymbol::r();
        out.coded[j] = CodedSymbol::l(source[j].label, source[i].label);
        out.radius[i] = out.radius[j] = e.length;
    }
    return out;
}

/// Inverse of the coding on a sequence without CENSORED entries.
inline std::vector<SourceSymbol> meshalkin_decode(const std::vector<CodedSymbol>& coded) {
    std::vector<SourceSymbol> out(coded.size());
    if (coded.empty()) return out;
    std::vector<Direction> dirs;
    dirs.reserve(coded.size());
    for (std::size_t k = 0; k < coded.size(); ++k) {
        require(coded[k].kind != CodedSymbol::Kind::Censored, ErrorCode::CensoredSpan,
                "censored symbol at position " + std::to_string(k));
        dirs.push_back(coded[k].kind == CodedSymbol::Kind::R ? Direction::Right : Direction::Left);
    }
    const EdgeConfiguration edges = detail::pair_word(dirs);
    require(edges.censored.empty(), ErrorCode::Inconsistent,
            std::to_string(edges.censored.size()) + " positions have no partner in the decoded span");
    for (const Edge& e : edges.edges) {
        const auto i = static_cast<std::size_t>(e.left), j = static_cast<std::size_t>(e.right);
        out[j] = {Direction::Left, coded[j].x};
        out[i] = {Direction::Right, coded[j].y};
    }
    return out;
}

/// Decodes every maximal run of uncensored symbols; censored positions
/// stay empty. Runs between censored positions are balanced, because no
/// unmatched stub can sit under an edge of a nested matching.
inline std::vector<std::optional<SourceSymbol>> meshalkin_decode_uncensored(const std::vector<CodedSymbol>& coded) {
    std::vector<std::optional<SourceSymbol>> out(coded.size());
    std::size_t k = 0;
    while (k < coded.size()) {
        if (coded[k].kind == CodedSymbol::Kind::Censored) {
            ++k;
            continue;
        }
        std::size_t end = k;
        while (end < coded.size() && coded[end].kind != CodedSymbol::Kind::Censored) ++end;
        const std::vector<CodedSymbol> run(coded.begin() + static_cast<std::ptrdiff_t>(k),
                                           coded.begin() + static_cast<std::ptrdiff_t>(end));
        const auto decoded = meshalkin_decode(run);
        for (std::size_t t = 0; t < decoded.size(); ++t) out[k + t] = decoded[t];
        k = end;
    }
    return out;
}

inline std::vector<SourceSymbol> random_source(std::size_t n, Rng& rng) {
    std::vector<SourceSymbol> out(n);
    for (auto& s : out) {
        const auto u = rng.below(4);
        s = {(u & 2u) ? Direction::Right : Direction::Left, (u & 1u) ? Label::B : Label::A};
    }
    return out;
}

// Text framing: source tokens ra rb la lb; coded tokens r laa lab lba lbb ?.

inline std::string format_source(const std::vector<SourceSymbol>& s) {
    std::string out;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k) out += ' ';
        out += s[k].direction == Direction::Right ? 'r' : 'l';
        out += to_char(s[k].label);
    }
    return out;
}

inline std::string format_coded(const std::vector<CodedSymbol>& c) {
    std::string out;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k) out += ' ';
        switch (c[k].kind) {
        case CodedSymbol::Kind::R: out += 'r'; break;
        case CodedSymbol::Kind::L:
            out += 'l';
            out += to_char(c[k].x);
            out += to_char(c[k].y);
            break;
        case CodedSymbol::Kind::Censored: out += '?'; break;
        }
    }
    return out;
}

namespace detail {

inline Label parse_label(char c, std::string_view token) {
    require(c == 'a' || c == 'b', ErrorCode::ParseError, "bad label in token '" + std::string(token) + "'");
    return c == 'a' ? Label::A : Label::B;
}

} // namespace detail

inline std::vector<SourceSymbol> parse_source(std::string_view text) {
    std::vector<SourceSymbol> out;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
        require(tok.size() == 2 && (tok[0] == 'r' || tok[0] == 'l'), ErrorCode::ParseError,
                "bad source token '" + tok + "'");
        out.push_back({tok[0] == 'r' ? Direction::Right : Direction::Left, detail::parse_label(tok[1], tok)});
    }
    return out;
}

inline std::vector<CodedSymbol> parse_coded(std::string_view text) {
    std::vector<CodedSymbol> out;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
        if (tok == "r")
            out.push_back(CodedSymbol::r());
        else if (tok == "?")
            out.push_back(CodedSymbol::censored());
        else {
            require(tok.size() == 3 && tok[0] == 'l', ErrorCode::ParseError, "bad coded token '" + tok + "'");
            out.push_back(CodedSymbol::l(detail::parse_label(tok[1], tok), detail::parse_label(tok[2], tok)));
        }
    }
    return out;
}

} // namespace stubpair
