#include <gtest/gtest.h>

#include "wildcurve/gw.hpp"

using namespace wildcurve;

namespace {

RationalBivar qy(const std::string& s) { return RationalBivar(LaurentBivar::parse(s, VarPair::qy)); }

}  // namespace

TEST(WildCurveData, Validation) {
    EXPECT_NO_THROW((WildCurveData{1, {3, 4}, {2, 2}}.validate()));
    EXPECT_THROW((WildCurveData{-1, {3}, {2}}.validate()), std::invalid_argument);
    EXPECT_THROW((WildCurveData{0, {}, {}}.validate()), std::invalid_argument);
    EXPECT_THROW((WildCurveData{0, {3}, {2, 2}}.validate()), std::invalid_argument);
    EXPECT_THROW((WildCurveData{0, {1}, {2}}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((WildCurveData{0, {1}, {2}}.validate(1)));
    EXPECT_THROW((WildCurveData{0, {3}, {0}}.validate()), std::invalid_argument);
    EXPECT_EQ((WildCurveData{2, {3, 4, 2}, {1, 1, 1}}.n_total()), 9);
}

TEST(Hurwitz, CharacterFormulaMatchesEnumeration) {
    for (int d = 1; d <= 4; ++d)
        for (auto& rho : partitions_of(d))
            for (auto& mu : partitions_of(d))
                for (int n = 0; n <= 4; ++n)
                    EXPECT_EQ(hurwitz_by_branch_points(n, rho, mu), hurwitz_bruteforce(n, rho, mu)) << rho << mu << n;
}

TEST(Hurwitz, KnownValues) {
    // the double cover of P^1 branched at two points: automorphism group Z/2
    EXPECT_EQ(hurwitz_double(0, Partition{2}, Partition{2}), BigRational(1, 2));
    EXPECT_EQ(hurwitz_by_branch_points(0, Partition{1, 1}, Partition{1, 1}), BigRational(1, 2));
    EXPECT_EQ(hurwitz_by_branch_points(1, Partition{1, 1}, Partition{1, 1}), BigRational(0));
    EXPECT_EQ(hurwitz_by_branch_points(2, Partition{1, 1}, Partition{1, 1}), BigRational(1, 2));
    EXPECT_THROW(hurwitz_by_branch_points(1, Partition{2}, Partition{1}), std::invalid_argument);
}

TEST(Vertex, TwoFormsAgree) {
    for (int d = 1; d <= 6; ++d)
        for (auto& nu : partitions_of(d))
            for (int k = 0; k <= 3; ++k) EXPECT_EQ(vertex(nu, k), vertex_content_form(nu, k)) << nu << k;
}

TEST(Caps, ConvolutionMatchesClosedForm) {
    for (int k = 1; k <= 3; ++k)
        for (int d = 1; d <= 4; ++d)
            for (auto& mu : partitions_of(d)) {
                EXPECT_NO_THROW(simple_and_cap(mu, k)) << mu << k;
                EXPECT_EQ(cap_Z(mu).eps, -mu.length());
            }
}

TEST(Caps, WildCapRoutesAgree) {
    for (int k = 1; k <= 2; ++k)
        for (int ell = 1; ell <= 3; ++ell)
            for (int d = 1; d <= 4; ++d)
                for (auto& lam : partitions_of(d))
                    EXPECT_EQ(wildcap_W(k, ell, lam, WildCapRoute::convolution, d), wildcap_W(k, ell, lam, WildCapRoute::closed, d))
                        << lam << " ell=" << ell << " k=" << k;
}

TEST(Tqft, AssembledMatchesClosedUpToNormalization) {
    // closed / assembled = ζ(λ)^m ε^{-(2g-2) d}
    for (int g = 0; g <= 2; ++g)
        for (int m = 1; m <= 3; ++m) {
            if (2 * g - 2 + m == 0) continue;
            for (int d = 1; d <= 4; ++d)
                for (auto& lam : partitions_of(d)) {
                    std::vector<Partition> lams(m, lam);
                    auto a = tqft_central(g, lams), b = tqft_central_assembled(g, lams);
                    BigRational z = BigRational(zeta(lam));
                    BigRational zm = 1;
                    for (int i = 0; i < m; ++i) zm *= z;
                    EXPECT_EQ(a.value, b.value.scaled(zm)) << "g=" << g << " m=" << m << " " << lam;
                    EXPECT_EQ(a.eps - b.eps, -(2 * g - 2) * d);
                }
        }
    EXPECT_TRUE(tqft_central(1, {Partition{2}, Partition{1, 1}}).value.is_zero());
}

TEST(ZGw, DegreeOneByHand) {
    // g = 0, one point with n = 2, ell = 1: x coefficient is s_(1)(q̲)^2 = q/(1-q)^2
    auto Z = z_gw(WildCurveData{0, {2}, {1}}, 2);
    EXPECT_EQ(Z.coefficient({1}), qy("q") / qy("1 - 2*q + q^2"));
    EXPECT_EQ(Z.constant_term(), RationalBivar(1));
    // g = 1, two points: the λ = (1) prefactor is s_(1)^{-2}
    auto Z1 = z_gw(WildCurveData{1, {2, 2}, {1, 1}}, 1);
    EXPECT_EQ(Z1.coefficient({1, 1}), RationalBivar(1));
}

TEST(ZGw, RejectsUnequalPoleOrders) {
    EXPECT_THROW(z_gw(WildCurveData{0, {2, 3}, {1, 1}}, 2), std::invalid_argument);
}

TEST(ZGw, BoundRestrictsTerms) {
    WildCurveData d{1, {3, 3}, {2, 2}};
    auto Z = z_gw(d, 3);
    XSeries::Key b{1, 1, 1, 1};
    auto Zb = z_gw(d, 3, &b);
    for (auto& [k, c] : Zb.terms()) {
        for (size_t i = 0; i < k.size(); ++i) EXPECT_LE(k[i], b[i]);
        EXPECT_EQ(c, Z.coefficient(k));
    }
    EXPECT_EQ(Zb.coefficient(b), Z.coefficient(b));
}

TEST(Assembly, TqftPiecesReassembleZ) {
    for (auto& d : {WildCurveData{1, {2, 2}, {2, 1}}, WildCurveData{0, {3}, {2}}, WildCurveData{0, {2, 2}, {1, 2}}})
        for (int r = 1; r <= 3; ++r) {
            auto rep = assemble_z_r(d, r);
            EXPECT_TRUE(rep.matches) << "g=" << d.g << " r=" << r;
            EXPECT_TRUE(rep.uniform);
        }
    // the pairing normalization reported for g = 0, m = 1 and g = 1, m = 2
    auto a = assemble_z_r(WildCurveData{0, {3}, {2}}, 2);
    EXPECT_EQ(a.eps_exponent_per_r, 2);
    EXPECT_EQ(a.zeta_power, 1);
    auto b = assemble_z_r(WildCurveData{1, {2, 2}, {2, 1}}, 2);
    EXPECT_EQ(b.eps_exponent_per_r, 0);
    EXPECT_EQ(b.zeta_power, 2);
}
