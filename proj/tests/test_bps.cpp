#include <gtest/gtest.h>

#include "wildcurve/io.hpp"

using namespace wildcurve;

namespace {

const std::string golden_dir = WILDCURVE_GOLDEN_DIR;

Partition ones(int r) { return Partition(std::vector<int>(r, 1)); }

}  // namespace

TEST(Dimension, Values) {
    EXPECT_EQ(dimension_d({Partition{2, 1}, Partition{2, 1}}, {3, 4}, 1), 30);
    EXPECT_EQ(dimension_d({Partition{2, 1}, Partition{1, 1, 1}}, {3, 4}, 1), 38);
    EXPECT_EQ(dimension_d({Partition{2, 2}, Partition{2, 2}}, {3, 4}, 1), 58);
    // two nearby (1^3) configurations that are easy to confuse
    EXPECT_EQ(dimension_d({ones(3), ones(3)}, {3, 4}, 2), 62);
    EXPECT_EQ(dimension_d({ones(3), ones(3), ones(3)}, {3, 3, 3}, 1), 56);
    // negative for small pole orders in genus 0
    EXPECT_LT(dimension_d({ones(2), ones(2)}, {1, 1}, 0), 0);
}

TEST(Dimension, Errors) {
    EXPECT_THROW(dimension_d({Partition{2}, Partition{1}}, {3, 4}, 1), std::invalid_argument);
    EXPECT_THROW(dimension_d({Partition{2}}, {3, 4}, 1), std::invalid_argument);
    EXPECT_THROW(target_key({Partition{1, 1, 1}}, {2}), std::invalid_argument);
    EXPECT_EQ(target_key({Partition{2, 1}, Partition{3}}, {3, 2}), (XSeries::Key{2, 1, 0, 3, 0}));
}

TEST(Divisors, Tuples) {
    auto d = divisor_tuples({Partition{4, 2}, Partition{6}});
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].first, 2);
    EXPECT_EQ(d[0].second, (PartitionTuple{Partition{2, 1}, Partition{3}}));
    EXPECT_EQ(divisor_tuples({Partition{2, 2}, Partition{4}}).size(), 1u);
    EXPECT_EQ(divisor_tuples({Partition{6}}).size(), 3u);
    EXPECT_TRUE(divisor_tuples({Partition{2, 1}}).empty());
}

TEST(Extraction, GoldenExamples) {
    for (int i : {1, 2}) {
        auto G = load_golden(golden_dir + "/example" + std::to_string(i) + ".json");
        auto P = gv_extract(RefinedContext{WildCurveData{G.g, G.n, {2, G.mu[1].length()}}, 3, 1}, G.mu);
        ASSERT_TRUE(P.certified) << P.falsification;
        auto cmp = compare_golden(P, G);
        EXPECT_TRUE(cmp.equal) << cmp.first_mismatch;
        EXPECT_EQ(P.d, G.d);
        EXPECT_EQ(P.coeff(0, 0), 1);
    }
}

TEST(Extraction, SmallCases) {
    // g = 0, r = 1: a point
    auto P0 = gv_extract(RefinedContext{WildCurveData{0, {2, 2}, {1, 1}}, 1, 1}, {Partition{1}, Partition{1}});
    EXPECT_EQ(P0.d, 0);
    EXPECT_EQ(P0.value, RationalBivar(1));
    // empty moduli space: extraction gives exactly zero
    auto Pe = gv_extract(RefinedContext{WildCurveData{0, {1, 1}, {2, 2}}, 2, 1}, {ones(2), ones(2)});
    EXPECT_LT(Pe.d, 0);
    EXPECT_TRUE(Pe.value.is_zero());
    for (auto& c : structural_checks(Pe)) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
}

TEST(Extraction, ManyTargetsShareOneLog) {
    RefinedContext ctx{WildCurveData{1, {2, 3}, {2, 2}}, 2, 1};
    std::vector<PartitionTuple> ts{{ones(2), ones(2)}, {Partition{2}, ones(2)}, {Partition{1}, Partition{1}}};
    auto many = gv_extract_many(ctx, ts);
    for (size_t i = 0; i < ts.size(); ++i) EXPECT_EQ(many[i].value, gv_extract(ctx, ts[i]).value) << tuple_str(ts[i]);
    EXPECT_THROW(gv_extract(RefinedContext{ctx.data, 1, 1}, ts[0]), std::invalid_argument);
}

TEST(Hmw, AgreesWithRefinedOnOneR) {
    for (int g = 0; g <= 1; ++g)
        for (int r = 1; r <= 2; ++r) {
            WildCurveData d{g, {2, 3}, {r, r}};
            PartitionTuple mu{ones(r), ones(r)};
            auto P = gv_extract(RefinedContext{d, r, 1}, mu);
            auto H = hmw_extract(d, mu);
            EXPECT_TRUE(H.laurent) << H.falsification;
            auto v = compare_hmw(P, H);
            EXPECT_TRUE(v.equal) << "g=" << g << " r=" << r << ": " << v.message;
            EXPECT_TRUE(v.integer_exponents);
        }
}

TEST(Hmw, ComparePreconditionAndFaultDetection) {
    WildCurveData d{1, {2, 3}, {2, 2}};
    PartitionTuple bad{Partition{2}, Partition{2}};
    auto P = gv_extract(RefinedContext{d, 2, 1}, bad);
    auto H = hmw_extract(d, bad);
    EXPECT_THROW(compare_hmw(P, H), std::invalid_argument);

    PartitionTuple mu{ones(2), ones(2)};
    auto P2 = gv_extract(RefinedContext{d, 2, 1}, mu);
    auto H2 = hmw_extract(d, mu);
    H2.value = H2.value + RationalBivar(1);
    auto v = compare_hmw(P2, H2);
    EXPECT_FALSE(v.equal);
    ASSERT_EQ(v.diff.size(), 1u);
    EXPECT_EQ(std::get<0>(v.diff[0]), 0);
    EXPECT_EQ(std::get<1>(v.diff[0]), 0);
}

TEST(Structure, ChecksOnAKnownPolynomial) {
    BpsPolynomial P;
    P.mu = {ones(2), ones(2)};
    P.d = 2;
    // 1 + u v + u^2 v^2 is palindromic with the right bidegree
    P.value = RationalBivar(LaurentBivar::parse("1 + u*v + u^2*v^2", VarPair::uv));
    certify(P);
    ASSERT_TRUE(P.certified);
    std::map<std::string, bool> got;
    for (auto& c : structural_checks(P)) got[c.name] = c.pass;
    EXPECT_TRUE(got["bidegree"]);
    EXPECT_TRUE(got["palindromic"]);
    EXPECT_TRUE(got["constant_term"]);

    BpsPolynomial Q = P;
    Q.value = RationalBivar(LaurentBivar::parse("1/2 + u", VarPair::uv));
    certify(Q);
    EXPECT_FALSE(Q.certified);
    EXPECT_NE(Q.falsification.find("non-integer"), std::string::npos);
    Q.value = RationalBivar(LaurentBivar::parse("1 + u^(1/2)", VarPair::uv));
    certify(Q);
    EXPECT_FALSE(Q.certified);
    Q.value = RationalBivar::inv_one_minus(VarPair::uv, 2, 0);
    certify(Q);
    EXPECT_FALSE(Q.certified);
}

TEST(Synthetic, PlantedPolynomialsAreRecovered) {
    for (auto& d : {WildCurveData{1, {3, 4}, {2, 2}}, WildCurveData{0, {2, 1}, {3, 2}}, WildCurveData{2, {3}, {4}}})
        for (unsigned seed = 1; seed <= 2; ++seed) {
            auto rep = synthetic_round_trip(d, 4, seed);
            EXPECT_TRUE(rep.pass) << rep.first_failure;
            EXPECT_GT(rep.planted, 0);
        }
}

TEST(Synthetic, ClosureOfRealData) {
    EXPECT_TRUE(round_trip_closure(RefinedContext{WildCurveData{1, {2, 3}, {2, 2}}, 3, 1}));
}

TEST(Io, BpsJsonFollowsSchema) {
    auto P = gv_extract(RefinedContext{WildCurveData{1, {3, 4}, {2, 2}}, 3, 1}, {Partition{2, 1}, Partition{2, 1}});
    auto j = bps_json(P);
    EXPECT_EQ(j["d"], 30);
    EXPECT_EQ(j["mu"], json::parse("[[2,1],[2,1]]"));
    EXPECT_EQ(j["terms"].size(), 252u);
    auto G = golden_from_json(j);
    EXPECT_TRUE(compare_golden(P, G).equal);
}
