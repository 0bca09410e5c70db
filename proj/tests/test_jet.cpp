#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include <edgefol/closed_forms.hpp>
#include <edgefol/jet.hpp>
#include <edgefol/jet_io.hpp>
#include <edgefol/sampling.hpp>

using namespace edgefol;

namespace {

RawJet raw(double a20, double a30, double b20, double b30, double b12, double b03)
{
    return RawJet{a20, a30, b20, b30, b12, b03, std::nullopt};
}

ErrorKind kind_of(const RawJet& r)
{
    try {
        validate_jet(r);
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorKind::InvalidConfig;
}

} // namespace

TEST(ValidateJet, AcceptsValidCoefficients)
{
    const EdgeJet j = validate_jet(raw(1, 0, 0, 1, 0, 1));
    EXPECT_EQ(j.a20, 1.0);
    EXPECT_EQ(j.b03, 1.0);
    EXPECT_TRUE(j.higher.is_zero());
}

TEST(ValidateJet, RejectsZeroCuspidalCurvature)
{
    EXPECT_EQ(kind_of(raw(1, 0, 0, 1, 0, 0)), ErrorKind::ZeroCuspidalCurvature);
    EXPECT_EQ(kind_of(raw(1, 0, 0, 1, 0, 1e-13)), ErrorKind::ZeroCuspidalCurvature);
}

TEST(ValidateJet, RejectsNegativeLimitingNormalCurvature)
{
    EXPECT_EQ(kind_of(raw(1, 0, -1, 1, 0, 1)), ErrorKind::NegativeLimitingNormalCurvature);
}

TEST(ValidateJet, RejectsNonFinite)
{
    EXPECT_EQ(kind_of(raw(std::numeric_limits<double>::quiet_NaN(), 0, 0, 1, 0, 1)), ErrorKind::NonFinite);
    EXPECT_EQ(kind_of(raw(0, 0, 0, std::numeric_limits<double>::infinity(), 0, 1)), ErrorKind::NonFinite);
}

TEST(ValidateJet, EnforcesDegreeCap)
{
    RawJet r = raw(0, 0, 0, 1, 0, 1);
    r.higher = HigherTerms{};
    r.higher->h1 = Poly1<double>{1, 2, 3, 4, 5};
    EXPECT_EQ(kind_of(r), ErrorKind::MalformedJetFile);
}

TEST(JetFile, ParsesAllKeys)
{
    const EdgeJet j = parse_jet(R"({"a20":1,"a30":2,"b20":0.5,"b30":-1,"b12":0.25,"b03":3,
                                   "h1":[1,0.5],"h5":[[1,1,2.0]]})");
    EXPECT_EQ(j.a30, 2.0);
    EXPECT_EQ(j.higher.h1[1], 0.5);
    EXPECT_EQ(j.higher.h5.coeff(1, 1), 2.0);
}

TEST(JetFile, RejectsUnknownAndMissingKeys)
{
    EXPECT_THROW(parse_jet(R"({"a20":1,"a30":0,"b20":0,"b30":1,"b12":0,"b03":1,"zz":1})"), Error);
    EXPECT_THROW(parse_jet(R"({"a20":1,"a30":0,"b20":0,"b30":1,"b12":0})"), Error);
    EXPECT_THROW(parse_jet("not json"), Error);
}

TEST(JetFile, RoundTripIsIdentity)
{
    for (std::uint64_t s = 0; s < 50; ++s) {
        EdgeJet j = sample_generic_jet(s, s % 2 ? Scenario::generic : Scenario::edge_degenerate);
        if (s % 5 == 0) {
            j.higher.h2 = Poly1<double>{0.5, -0.25};
            j.higher.h5.add(0, 2, 1.5);
        }
        const EdgeJet back = parse_jet(serialize_jet(j));
        EXPECT_EQ(serialize_jet(back), serialize_jet(j));
        EXPECT_EQ(back.a20, j.a20);
        EXPECT_EQ(back.b03, j.b03);
        EXPECT_EQ(back.higher.h5.coeff(0, 2), j.higher.h5.coeff(0, 2));
    }
}

TEST(Sampling, GenericSeed42)
{
    const EdgeJet j = sample_generic_jet(42, Scenario::generic);
    EXPECT_NE(j.b03, 0.0);
    EXPECT_GE(std::abs(j.b03), 0.1);
    EXPECT_GE(j.b20, 0.0);
    EXPECT_LE(j.b20, 2.0);
}

TEST(Sampling, EdgeDegenerateSeed42HonoursMargins)
{
    const EdgeJet j = sample_generic_jet(42, Scenario::edge_degenerate);
    const auto c = j.coefficients();
    EXPECT_EQ(j.b20, 0.0);
    EXPECT_GE(std::abs(limiting_curvature_slope(c)), 1e-3);
    EXPECT_GE(std::abs(asymptotic_discriminant(c)), 1e-6);
    EXPECT_GE(std::abs(characteristic_discriminant(c)), 1e-6);
    EXPECT_GE(std::abs(parallel_surface_factor(c)), 1e-3);
}

TEST(Sampling, IsDeterministic)
{
    for (auto sc : {Scenario::generic, Scenario::edge_degenerate}) {
        const EdgeJet a = sample_generic_jet(42, sc);
        const EdgeJet b = sample_generic_jet(42, sc);
        EXPECT_EQ(serialize_jet(a), serialize_jet(b));
    }
    EXPECT_NE(serialize_jet(sample_generic_jet(1, Scenario::generic)),
              serialize_jet(sample_generic_jet(2, Scenario::generic)));
}

TEST(Sampling, EdgeDegenerateNeverInNongenericSet)
{
    for (std::uint64_t i = 0; i < 2000; ++i) {
        const auto c = sample_generic_jet(mix_seed(9, i), Scenario::edge_degenerate).coefficients();
        EXPECT_FALSE(limiting_curvature_slope(c) == 0.0 || asymptotic_discriminant(c) == 0.0
                     || parallel_surface_factor(c) == 0.0 || characteristic_discriminant(c) == 0.0);
        EXPECT_GE(std::abs(limiting_curvature_slope(c)), 1e-3);
    }
}

TEST(Sampling, InconsistentMarginsExhaust)
{
    SamplingMargins m;
    m.min_abs_b03 = 5.0;
    m.max_rejections = 100;
    try {
        sample_generic_jet(1, Scenario::generic, m);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SamplingExhausted);
    }
}
