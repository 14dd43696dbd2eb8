#include "torelli/stabrep.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using namespace torelli;

static TypeOneWord random_zword(std::mt19937_64& rng, int len)
{
    std::uniform_int_distribution<int> g(1, 3), e(-2, 2);
    TypeOneWord w;
    for (int i = 0; i < len; ++i) {
        int x = e(rng);
        if (x) w.letters.push_back({g(rng), x});
    }
    return w;
}

TEST(Xi, Examples)
{
    EXPECT_EQ(xi(zword({{1, 1}})), (std::pair<long, long>{1, 0}));
    EXPECT_EQ(xi(zword({{2, 1}})), (std::pair<long, long>{0, 1}));
    EXPECT_EQ(xi(zword({{3, 1}})), (std::pair<long, long>{0, 0}));
    EXPECT_EQ(xi(zword({{1, 1}, {2, 1}, {1, -1}})), (std::pair<long, long>{0, 1}));
    EXPECT_EQ(xi(zword({{2, -1}, {1, -1}})), (std::pair<long, long>{-1, -1}));
}

TEST(Rho, GeneratorTableAgreesWithMagnus)
{
    std::mt19937_64 rng(8);
    for (int t = 0; t < 300; ++t) {
        auto w = random_zword(rng, 8);
        EXPECT_EQ(rho_IM(w), rho_magnus(to_pair(w)));
        EXPECT_TRUE(liftrho_check(w));
    }
}

TEST(Rho, RefusesWordsOutsideKerF)
{
    TypeOneWord u{TypeOneWord::UV, {{1, 1}}};
    EXPECT_THROW(rho_IM(u), std::invalid_argument);
    EXPECT_EQ(rho_IM(zword({})), (Rho4{0, 0, 0, 0}));
}

TEST(Rewrite, CommutatorOfPowersIsAZWord)
{
    // [u1^m, v1] = z1^-m (z1 z3)^m in F2 x F2
    for (long m = -5; m <= 5; ++m) {
        TypeOneWord lhs{TypeOneWord::UV, {{1, -m}, {2, -1}, {1, m}, {2, 1}}};
        TypeOneWord rhs = zword({{1, -m}});
        for (long k = 0; k < std::labs(m); ++k) {
            long s = m > 0 ? 1 : -1;
            if (s > 0) { rhs.letters.push_back({1, 1}); rhs.letters.push_back({3, 1}); }
            else { rhs.letters.push_back({3, -1}); rhs.letters.push_back({1, -1}); }
        }
        EXPECT_EQ(to_pair(lhs), to_pair(rhs)) << m;
    }
}

TEST(Psi, ItemValues)
{
    EXPECT_EQ(comm_value({0, 0, 1, 1}, {0, 1, 0, 1}), 1);  // pairs (2,1), (2,3), (3,1)
    EXPECT_EQ(comm_value({1, 1, 1, 1}, {1, 1, 1, 1}), 0);  // 12 pairs
    EXPECT_EQ(sq_value({0, 0, 1, 1}), 1);
    EXPECT_EQ(sq_value({1, 1, 1, 1}), 0);
    EXPECT_EQ(sq_value({0, 1, 1, 1}), 1);
}

TEST(Psi, CanonicalDecompositionIsAHomomorphism)
{
    std::mt19937_64 rng(21);
    auto in_CM = [&] {
        while (true) {
            auto w = random_zword(rng, 6);
            if (rho_IM(w) == Rho4{0, 0, 0, 0}) return w;
        }
    };
    for (int t = 0; t < 200; ++t) {
        auto w1 = in_CM(), w2 = in_CM(), g = random_zword(rng, 3);
        TypeOneWord w12 = w1;
        w12.letters.insert(w12.letters.end(), w2.letters.begin(), w2.letters.end());
        int p1 = psi_M(canonical_decomposition(w1)), p2 = psi_M(canonical_decomposition(w2));
        EXPECT_EQ(psi_M(canonical_decomposition(w12)), p1 ^ p2);
        // conjugation invariance
        TypeOneWord c;
        for (auto it = g.letters.rbegin(); it != g.letters.rend(); ++it) c.letters.push_back({it->gen, -it->exp});
        c.letters.insert(c.letters.end(), w1.letters.begin(), w1.letters.end());
        c.letters.insert(c.letters.end(), g.letters.begin(), g.letters.end());
        EXPECT_EQ(psi_M(canonical_decomposition(c)), p1);
    }
}

TEST(Psi, SquaresAndCommutators)
{
    EXPECT_EQ(psi_M(canonical_decomposition(zword({{1, 2}}))), 1);
    EXPECT_EQ(psi_M(canonical_decomposition(zword({{3, 2}}))), 0);
    EXPECT_EQ(psi_M(canonical_decomposition(zword({{1, -1}, {2, -1}, {1, 1}, {2, 1}}))), 1);
    EXPECT_THROW(canonical_decomposition(zword({{1, 1}})), std::invalid_argument);
}

TEST(FiveCurve, PsiIsHalfNu)
{
    EXPECT_EQ(psi_on_CK({{0, 2}}), 1);
    EXPECT_EQ(psi_on_CK({{0, 4}}), 0);
    EXPECT_EQ(psi_on_CK({{0, 1}, {2, 1}}), 1);
    EXPECT_EQ(psi_on_CK(five_comm({{0, 1}}, {{1, 1}})), 0);
    EXPECT_FALSE(in_CK({{0, 1}, {1, 1}}));
    EXPECT_THROW(psi_on_CK({{0, 1}, {1, 1}}), std::invalid_argument);
}

TEST(FiveCurve, NuWkTable)
{
    EXPECT_EQ(nu_Wk(3, {{3, 1}}), 1);
    EXPECT_EQ(nu_Wk(3, {{2, 1}}), 0);
    EXPECT_EQ(nu_Wk(2, {{2, 1}, {0, -1}}), 1);
    EXPECT_EQ(nu_Wk(0, {{2, 1}, {0, -1}}), -1);
    EXPECT_EQ(nu_Wk(1, five_comm({{1, 1}}, {{0, 1}})), 0);
}

TEST(FiveCurve, HomologicalSplittingMatchesTable)
{
    auto f = standard_frame();
    Curve g2{"g2", f.a[1] + f.a[2]};
    for (long k = -3; k <= 3; ++k)
        for (long m = -3; m <= 3; ++m)
            EXPECT_EQ(nu_W(w_generator(f, m), g2, W_k(f, k)), nu_Wk_table(k, m)) << k << " " << m;
}

TEST(Nu, BoundingPairTwist)
{
    auto g = bp_twist(basis_a(2), {{basis_a(1), basis_b(1)}}, "p", "q", 3);
    Curve p{"p", basis_a(2)}, q{"q", basis_a(2)}, o{"o", basis_a(3)};
    EXPECT_EQ(nu_on_generator(g, p), -3);
    EXPECT_EQ(nu_on_generator(g, q), 3);
    EXPECT_EQ(nu_on_generator(g, o), 0);
    EXPECT_EQ(mu_on_generator(g, p, q), 0);
}

TEST(Nu, SeparatingTwistCountsTheGenusTwoSide)
{
    auto g = sep_twist({{basis_a(1), basis_b(1)}});
    Curve in2{"c", basis_a(2)}, in1{"d", basis_a(1)}, both{"e", basis_a(1) + basis_a(2)};
    EXPECT_EQ(sep_side_genus(g, in2), 2);
    EXPECT_EQ(sep_side_genus(g, in1), 1);
    EXPECT_EQ(nu_on_generator(g, in2), 1);
    EXPECT_EQ(nu_on_generator(g, in1), 0);
    EXPECT_EQ(mu_on_generator(g, in2, Curve{"c'", basis_a(2)}), 1);
    EXPECT_THROW(sep_side_genus(g, both), std::invalid_argument);
    EXPECT_THROW(nu_on_generator(involution({{m2a(1), m2a(2), m2a(3)}, {m2b(1), m2b(2), m2b(3)}}), in2),
                 std::invalid_argument);
}

TEST(TypeTwo, GeneratorsTwistTheirOwnComponent)
{
    auto f = standard_frame();
    auto comps = type_two_components(f);
    EXPECT_EQ(comps[0].cls, comps[1].cls + comps[2].cls);
    for (int i = 0; i < 4; ++i) {
        if (i == 3) continue;  // the special component has no genus-1 complement of this form
        auto g = type_two_generator(f, i, 1, -2);
        EXPECT_NO_THROW(validate(g));
        for (int j = 0; j < 4; ++j) EXPECT_EQ(nu_on_generator(g, comps[j]), i == j ? 1 : 0);
    }
}

TEST(FiveCurve, NuVectorSeparatesAbelianizedWords)
{
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> k(-10, 10), e(-2, 2), len(0, 6);
    for (int t = 0; t < 500; ++t) {
        FiveCurveWord w;
        for (long i = len(rng); i > 0; --i) w.push_back({k(rng), e(rng)});
        if (t % 3 == 0) w = five_concat(w, five_comm({{k(rng), 1}}, {{k(rng), 1}}));
        std::map<long, long> ab;
        for (auto& l : w) ab[l.k] += l.exp;
        bool nonzero = std::any_of(ab.begin(), ab.end(), [](auto& p) { return p.second != 0; });
        bool seen = false;
        for (long j = -10; j <= 10; ++j) {
            EXPECT_EQ(nu_Wk(j, w), ab[j]);
            seen = seen || nu_Wk(j, w) != 0;
        }
        EXPECT_EQ(seen, nonzero);
    }
}
