#include <gtest/gtest.h>

#include <array>

#include "stubpair/meshalkin.hpp"
#include "stubpair/stats.hpp"

using namespace stubpair;

TEST(Meshalkin, SmallExample) {
    const std::vector<SourceSymbol> src{{Direction::Right, Label::A}, {Direction::Left, Label::B}};
    const auto enc = meshalkin_encode(src);
    EXPECT_EQ(enc.coded, (std::vector<CodedSymbol>{CodedSymbol::r(), CodedSymbol::l(Label::B, Label::A)}));
    EXPECT_EQ(format_coded(enc.coded), "r lba");
    EXPECT_EQ(meshalkin_decode(enc.coded), src);
    EXPECT_EQ(*enc.radius[0], 1);
}

TEST(Meshalkin, UnmatchedIsCensored) {
    const auto enc = meshalkin_encode(parse_source("la ra rb lb"));
    EXPECT_EQ(format_coded(enc.coded), "? ? r lbb");
    EXPECT_FALSE(enc.radius[0]);
}

TEST(Meshalkin, Nested) {
    const auto src = parse_source("ra rb la lb");
    const auto enc = meshalkin_encode(src);
    EXPECT_EQ(format_coded(enc.coded), "r r lab lba");
    EXPECT_EQ(meshalkin_decode(enc.coded), src);
}

TEST(Meshalkin, DecodeErrors) {
    try {
        meshalkin_decode(parse_coded("r ? lab"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CensoredSpan);
    }
    try {
        meshalkin_decode(parse_coded("r r laa"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Inconsistent);
    }
    EXPECT_THROW(parse_coded("r lxa"), Error);
    EXPECT_THROW(parse_source("ra q"), Error);
}

TEST(Meshalkin, TextFramingRoundTrip) {
    const std::string s = "ra lb rb la la";
    EXPECT_EQ(format_source(parse_source(s)), s);
    const std::string c = "r ? laa lab lba lbb";
    EXPECT_EQ(format_coded(parse_coded(c)), c);
}

TEST(Meshalkin, LongRoundTripAndMarginals) {
    Rng rng(1234);
    const auto src = random_source(100000, rng);
    const auto enc = meshalkin_encode(src);
    const auto dec = meshalkin_decode_uncensored(enc.coded);
    std::size_t censored = 0;
    std::vector<int> symbols;
    for (std::size_t k = 0; k < src.size(); ++k) {
        if (!dec[k]) {
            EXPECT_EQ(enc.coded[k].kind, CodedSymbol::Kind::Censored);
            ++censored;
            continue;
        }
        EXPECT_EQ(*dec[k], src[k]) << k;
        symbols.push_back(enc.coded[k].index());
    }
    EXPECT_LT(censored, 5000u);

    // reference law (1/2, 1/8, 1/8, 1/8, 1/8) realised as exact frequencies
    std::vector<int> ref;
    for (int k = 0; k < 8; ++k) ref.push_back(k < 4 ? 0 : k - 3);
    std::vector<int> scaled;
    for (std::size_t k = 0; k < 100000; ++k) scaled.push_back(ref[k % 8]);
    EXPECT_LT(tv_distance(symbols, scaled), 0.01);
}

TEST(Meshalkin, CodingRadiusIsHeavyTailed) {
    Rng rng(99);
    const auto enc = meshalkin_encode(random_source(200000, rng));
    std::vector<std::int64_t> radii;
    for (std::size_t k = 50000; k < 150000; ++k)
        if (enc.radius[k]) radii.push_back(*enc.radius[k]);
    EXPECT_TRUE(strictly_increasing(truncated_mean_curve(radii, {10, 100, 1000})));
}
