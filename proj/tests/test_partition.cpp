#include <gtest/gtest.h>

#include <map>
#include <numeric>

#include "wildcurve/bigrational.hpp"
#include "wildcurve/partition.hpp"

using namespace wildcurve;

namespace {

// χ^λ(ρ) = [x^{λ+δ}] Δ(x) p_ρ(x) in l(λ) variables
std::int64_t frobenius_character(const Partition& lam, const Partition& rho) {
    int L = std::max(1, lam.length());
    using Poly = std::map<std::vector<int>, std::int64_t>;
    Poly f;
    // Vandermonde as a signed sum over permutations
    std::vector<int> perm(L);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int inv = 0;
        for (int i = 0; i < L; ++i)
            for (int j = i + 1; j < L; ++j) inv += perm[i] > perm[j];
        std::vector<int> e(L);
        for (int i = 0; i < L; ++i) e[i] = L - 1 - perm[i];
        f[e] += inv % 2 ? -1 : 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (int r : rho.parts()) {
        Poly g;
        for (auto& [e, c] : f)
            for (int i = 0; i < L; ++i) {
                auto e2 = e;
                e2[i] += r;
                g[e2] += c;
            }
        f = std::move(g);
    }
    std::vector<int> target(L);
    for (int i = 0; i < L; ++i) target[i] = (i < lam.length() ? lam[i] : 0) + L - 1 - i;
    auto it = f.find(target);
    return it == f.end() ? 0 : it->second;
}

}  // namespace

TEST(Partition, CanonicalFormAndText) {
    Partition p{1, 3, 2, 0};
    EXPECT_EQ(p.str(), "[3,2,1]");
    EXPECT_EQ(Partition().str(), "[]");
    EXPECT_EQ(Partition::parse("[3,2,1]"), p);
    EXPECT_EQ(Partition::parse(" [ 2 , 2 ] "), (Partition{2, 2}));
    EXPECT_EQ(Partition::parse("[]"), Partition());
    EXPECT_EQ(Partition::parse("3,2"), (Partition{3, 2}));
    EXPECT_THROW(Partition::parse("[2,3]"), std::invalid_argument);
    EXPECT_THROW(Partition::parse("[2,-1]"), std::invalid_argument);
}

TEST(Partition, ConjugateArmsLegsContent) {
    Partition p{3, 1};
    EXPECT_EQ(p.conjugate(), (Partition{2, 1, 1}));
    EXPECT_EQ(p.n(), 1);
    EXPECT_EQ(content(p), 2);            // 0 + 1 + 2 - 1
    EXPECT_EQ(content(p.conjugate()), -2);
    int hooks = 1;
    for (auto [a, l] : p.arms_legs()) hooks *= a + l + 1;
    EXPECT_EQ(hooks, 8);  // 4! / 3 standard tableaux
    for (int n = 1; n <= 8; ++n)
        for (auto& lam : partitions_of(n)) {
            EXPECT_EQ(lam.conjugate().conjugate(), lam);
            EXPECT_EQ(content(lam), lam.conjugate().n() - lam.n());
        }
}

TEST(Partition, Counts) {
    const int p[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (int n = 0; n <= 10; ++n) EXPECT_EQ(static_cast<int>(partitions_of(n).size()), p[n]) << n;
    // reverse-lex: (n) first, (1^n) last
    EXPECT_EQ(partitions_of(4).front(), (Partition{4}));
    EXPECT_EQ(partitions_of(4).back(), (Partition{1, 1, 1, 1}));
    for (int n = 1; n <= 6; ++n)
        for (auto& lam : partitions_of(n)) EXPECT_EQ(partitions_of(n)[partition_index(lam)], lam);
}

TEST(Partition, TuplesAndUnion) {
    // ordered pairs of partitions with total size 3: Σ_k p(k) p(3-k) = 3 + 2 + 2 + 3
    EXPECT_EQ(partition_tuples(3, 2).size(), 10u);
    EXPECT_EQ(partition_union({Partition{2, 1}, Partition{3}, Partition{}}), (Partition{3, 2, 1}));
}

TEST(Partition, Zeta) {
    EXPECT_EQ(zeta(Partition{1, 1, 1}), 6);
    EXPECT_EQ(zeta(Partition{2, 2, 1}), 8);
    // class sizes n!/ζ sum to n!
    for (int n = 1; n <= 7; ++n) {
        std::int64_t fact = 1, total = 0;
        for (int i = 2; i <= n; ++i) fact *= i;
        for (auto& rho : partitions_of(n)) total += fact / zeta(rho);
        EXPECT_EQ(total, fact);
    }
}

TEST(Partition, Dominance) {
    EXPECT_TRUE(dominates(Partition{3, 1}, Partition{2, 2}));
    EXPECT_FALSE(dominates(Partition{2, 2}, Partition{3, 1}));
    EXPECT_FALSE(dominates(Partition{3, 3}, Partition{4, 1, 1}));
    EXPECT_FALSE(dominates(Partition{4, 1, 1}, Partition{3, 3}));
}

TEST(Characters, MatchFrobeniusFormula) {
    for (int n = 1; n <= 6; ++n)
        for (auto& lam : partitions_of(n))
            for (auto& rho : partitions_of(n)) EXPECT_EQ(character(lam, rho), frobenius_character(lam, rho)) << lam.str() << rho.str();
}

TEST(Characters, Orthogonality) {
    for (int n = 1; n <= 7; ++n)
        for (auto& a : partitions_of(n))
            for (auto& b : partitions_of(n)) {
                // Σ_ρ χ^a χ^b / ζ = δ
                BigRational s = 0;
                for (auto& rho : partitions_of(n))
                    s += BigRational(character(a, rho) * character(b, rho)) / BigRational(zeta(rho));
                EXPECT_EQ(s, BigRational(a == b ? 1 : 0));
            }
}

TEST(Characters, KnownValuesAndErrors) {
    EXPECT_EQ(character(Partition{2, 1}, Partition{1, 1, 1}), 2);
    EXPECT_EQ(character(Partition{2, 1}, Partition{3}), -1);
    EXPECT_EQ(character(Partition{1, 1, 1}, Partition{2, 1}), -1);
    EXPECT_EQ(character(Partition{3, 2}, Partition{1, 1, 1, 1, 1}), 5);
    EXPECT_THROW(character(Partition{2}, Partition{1, 1, 1}), std::invalid_argument);
}
