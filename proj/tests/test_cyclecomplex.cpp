#include "torelli/cyclecomplex.hpp"

#include <gtest/gtest.h>

using namespace torelli;

static const HClass a1 = basis_a(1), a2 = basis_a(2), a3 = basis_a(3);
static const HClass X = a1 + a2 + a3;

TEST(H0, Membership)
{
    EXPECT_TRUE(is_in_H0prime({a1, a2, a3}, X));
    EXPECT_TRUE(is_in_H0({a1, a2}, a1 + a2));
    EXPECT_FALSE(is_in_H0({a1, a2}, X));                          // x outside the span
    EXPECT_FALSE(is_in_H0({a1, a2, a3}, a1 + a2 - a3));           // negative coefficient
    EXPECT_FALSE(is_in_H0({a1, a2, a3}, a1 + a2));                // zero coefficient
    EXPECT_FALSE(is_in_H0prime({a1, a2}, a1 + a2));
    EXPECT_EQ(n_weight({a1, a2, a3}, X), 3);
    EXPECT_EQ(n_weight({a1, a2, a3}, Int(2) * a1 + a2 + Int(4) * a3), 7);
}

TEST(Supersets, OneHundredTwoInFourteenFamilies)
{
    auto S = build_supersets({a1, a2, a3});
    EXPECT_EQ(S.size(), 102u);
    std::array<int, 14> c{};
    for (auto& s : S) ++c.at(s.family - 1);
    EXPECT_EQ(c, superset_family_counts());
    for (auto& s : S) EXPECT_EQ(rank_of(s.m), 3u);
}

TEST(Classify, Examples)
{
    auto t1 = classify({a1, a2, a3, X});
    EXPECT_EQ(t1.tag, Taxon::H1_type1);
    EXPECT_TRUE(t1.three_one);
    EXPECT_EQ(t1.dim, 1);

    auto t1b = classify({a1, a2, a1 + a3, a2 + a3});  // a1 + (a2+a3) = a2 + (a1+a3)
    EXPECT_EQ(t1b.tag, Taxon::H1_type1);
    EXPECT_FALSE(t1b.three_one);

    auto t2 = classify({a1, a2, a3, a1 + a2});
    EXPECT_EQ(t2.tag, Taxon::H1_type2);
    ASSERT_TRUE(t2.special);
    EXPECT_EQ(*t2.special, a3);

    auto bp = classify({a1, a1, a2, a3});
    EXPECT_EQ(bp.tag, Taxon::BoundingPair);
    EXPECT_EQ(*bp.doubled, a1);

    EXPECT_EQ(classify({a1, a2, a3}).tag, Taxon::H0prime);
    EXPECT_EQ(classify({a1, a2}).tag, Taxon::H0);
    EXPECT_THROW(classify({a1, a1, a1, a2}), std::invalid_argument);
}

TEST(Relative, OneSidedRelationsAndContainment)
{
    HMultiset C{a1, a2, a3, X};
    EXPECT_TRUE(is_in_M_relative(C, C, X));
    EXPECT_FALSE(is_in_M_relative({a1, a2, -a1 - a2}, {a1, a2, -a1 - a2}, X));  // a1 + a2 + (-a1-a2) = 0
    EXPECT_THROW(is_in_M_relative({a1, a2, a1 + a2}, {a1, a2, a3}, X), std::invalid_argument);
}

TEST(Certify, SupersetAndXFamily)
{
    EXPECT_EQ(certify({a1, a2, a3, a1 + a2}, X), Certificate::Superset);
    // x = a1 with Lagrangian basis {a1, a2, a3}: {x, a2, x - a2, a3, x - a3}
    HMultiset F = canon({a1, a2, a1 - a2, a3, a1 - a3});
    EXPECT_TRUE(is_x_family(F, a1));
    EXPECT_EQ(certify(F, a1), Certificate::XFamily);
    EXPECT_FALSE(is_x_family(canon({a1, a2, a1 - a2, a3, a1 + a3}), a1));
}

TEST(Faces, H2PrimeCellsContainTheirFace)
{
    HMultiset C = canon({a1, a2, a3, a1 + a2});
    auto Ds = h2prime_containing(C, X);
    EXPECT_FALSE(Ds.empty());
    for (auto& D : Ds) {
        EXPECT_TRUE(submultiset(C, D));
        EXPECT_EQ(classify(D).tag, Taxon::H2prime);
        EXPECT_EQ(cell_dimension(D), 2);
    }
}

TEST(Faces, LabelFacesDropOneElement)
{
    HMultiset D = canon({a1, a2, a3, a1 + a2, X});
    auto F = label_faces(D, X);
    for (auto& f : F) {
        EXPECT_EQ(f.m.size(), D.size() - 1);
        EXPECT_TRUE(submultiset(f.m, D));
    }
}
