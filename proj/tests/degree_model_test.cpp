#include <gtest/gtest.h>

#include "stubpair/degree_model.hpp"

using namespace stubpair;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::Io;
}

} // namespace

TEST(DegreeModel, PointMass) {
    const auto d = make_distribution({{1, 1.0}});
    EXPECT_DOUBLE_EQ(d.mean(), 1.0);
    EXPECT_EQ(sample_degrees(d, 5, 123u), (std::vector<Degree>{1, 1, 1, 1, 1}));
    EXPECT_EQ(sample_degrees(point_mass(0), 3, 9u), (std::vector<Degree>{0, 0, 0}));
}

TEST(DegreeModel, UniformEvenFamilyMean) {
    const auto d = make_distribution({{0, 1.0 / 3}, {2, 1.0 / 3}, {4, 1.0 / 3}});
    EXPECT_NEAR(d.mean(), 2.0, 1e-15);
    EXPECT_EQ(d.atoms().size(), 3u);
    EXPECT_NEAR(uniform_even(2).mean(), 2.0, 1e-15);
}

TEST(DegreeModel, ValidationErrors) {
    EXPECT_EQ(code_of([] { make_distribution({{0, 0.5}, {3, 0.6}}); }), ErrorCode::SumNotOne);
    EXPECT_EQ(code_of([] { make_distribution({{0, -0.5}, {3, 1.5}}); }), ErrorCode::NegativeProb);
    EXPECT_EQ(code_of([] { make_distribution({{2, 0.5}, {2, 0.5}}); }), ErrorCode::DuplicateDegree);
    EXPECT_EQ(code_of([] { make_distribution({}); }), ErrorCode::InvalidArgument);
}

TEST(DegreeModel, AtomsAreSortedAndStrictlyIncreasing) {
    const auto d = make_distribution({{4, 0.25}, {0, 0.5}, {1, 0.25}});
    ASSERT_EQ(d.atoms().size(), 3u);
    EXPECT_EQ(d.atoms()[0].degree, 0);
    EXPECT_EQ(d.atoms()[1].degree, 1);
    EXPECT_EQ(d.atoms()[2].degree, 4);
    EXPECT_DOUBLE_EQ(d.mean(), 1.25);
}

TEST(DegreeModel, ParseLiteral) {
    const auto d = parse_distribution("0:0.3333,2:0.3333,4:0.3334");
    EXPECT_EQ(d.atoms().size(), 3u);
    EXPECT_NEAR(d.pmf(4), 0.3334, 1e-12);
    EXPECT_NEAR(d.mean(), 2.0002, 1e-12);
    EXPECT_EQ(code_of([] { parse_distribution("0:0.5,3:0.6"); }), ErrorCode::SumNotOne);
    EXPECT_EQ(code_of([] { parse_distribution("0-0.5"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_distribution("x:1"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_distribution(""); }), ErrorCode::ParseError);
}

TEST(DegreeModel, FormatRoundTrips) {
    const auto d = parse_distribution("0:0.5, 1:0.25, 3:0.25");
    const auto again = parse_distribution(format_distribution(d));
    EXPECT_EQ(d.atoms(), again.atoms());
}

TEST(DegreeModel, SameSeedSameSequence) {
    const auto d = parse_distribution("0:0.5,1:0.25,3:0.25");
    EXPECT_EQ(sample_degrees(d, 1000, 42u), sample_degrees(d, 1000, 42u));
    EXPECT_NE(sample_degrees(d, 1000, 42u), sample_degrees(d, 1000, 43u));
}

TEST(DegreeModel, EmpiricalPmfCloseInTotalVariation) {
    const std::vector<DegreeDistribution> laws = {
        point_mass(1), uniform_even(2), parse_distribution("0:0.5,1:0.25,3:0.25")};
    for (const auto& law : laws) {
        for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
            const auto sample = sample_degrees(law, 100000, seed);
            EXPECT_LT(tv_to_distribution(sample, law), 0.01) << format_distribution(law) << " seed " << seed;
        }
    }
}

TEST(DegreeModel, SubstreamsAreIndependentOfEachOther) {
    Rng a(7, "degrees/rep_0"), b(7, "degrees/rep_1"), a2(7, "degrees/rep_0");
    const auto x = a(), y = b(), z = a2();
    EXPECT_EQ(x, z);
    EXPECT_NE(x, y);
}
