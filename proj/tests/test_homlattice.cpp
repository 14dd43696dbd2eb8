#include "torelli/homlattice.hpp"

#include <gtest/gtest.h>

using namespace torelli;

TEST(Intersection, StandardBasisPairing)
{
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            EXPECT_EQ(intersection(basis_a(i), basis_b(j)), i == j ? 1 : 0);
            EXPECT_EQ(intersection(basis_b(j), basis_a(i)), i == j ? -1 : 0);
            EXPECT_EQ(intersection(basis_a(i), basis_a(j)), 0);
        }
}

TEST(Intersection, TransvectionPreservesForm)
{
    std::mt19937_64 rng(4);
    auto f = random_frame(rng, 6);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            EXPECT_EQ(intersection(f.a[i], f.b[j]), i == j ? 1 : 0);
            EXPECT_EQ(intersection(f.a[i], f.a[j]), 0);
            EXPECT_EQ(intersection(f.b[i], f.b[j]), 0);
        }
}

TEST(Primitive, Examples)
{
    EXPECT_TRUE(is_primitive(hclass(2, 3, 0, 0, 0, 0)));
    EXPECT_FALSE(is_primitive(hclass(2, 0, 0, 0, 4, 0)));
    EXPECT_THROW(is_primitive(HClass{}), std::invalid_argument);
}

TEST(IsotropicSummand, Examples)
{
    EXPECT_TRUE(is_isotropic_direct_summand({basis_a(1), basis_a(2)}));
    EXPECT_TRUE(is_isotropic_direct_summand({basis_a(1), basis_a(2), basis_a(1) + basis_a(2) + basis_a(3)}));
    EXPECT_FALSE(is_isotropic_direct_summand({basis_a(1), basis_b(1)}));          // not isotropic
    EXPECT_FALSE(is_isotropic_direct_summand({hclass(2, 0, 0, 0, 0, 0)}));                        // index 2
    EXPECT_FALSE(is_isotropic_direct_summand({basis_a(1), hclass(1, 2, 0, 0, 0, 0)}));         // spans index-2 sublattice
    EXPECT_FALSE(is_isotropic_direct_summand({basis_a(1), basis_a(2), basis_a(1) + basis_a(2)}));  // dependent
    EXPECT_THROW(is_isotropic_direct_summand({}), std::invalid_argument);
}

TEST(Smith, ElementaryDivisors)
{
    ZMat m(2, 2);
    m(0, 0) = 2; m(0, 1) = 4; m(1, 0) = 4; m(1, 1) = 2;  // gcd 2, |det| 12
    auto d = elementary_divisors(m);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0], 2);
    EXPECT_EQ(d[1], 6);
}

TEST(Kernel, AnnihilatesAndHasRightRank)
{
    ZMat m(1, 3);
    m(0, 0) = 1; m(0, 1) = 1; m(0, 2) = 1;
    auto k = kernel_basis(m);
    ASSERT_EQ(k.size(), 2u);
    for (auto& v : k) EXPECT_EQ(v[0] + v[1] + v[2], 0);
}

TEST(Mod2, CompletionOfStandardTripleIsStandard)
{
    auto B = complete_symplectic_mod2({m2a(1), m2a(2), m2a(3)});
    EXPECT_TRUE(B.valid());
    for (int i = 1; i <= 3; ++i) EXPECT_EQ(B.b[i - 1], m2b(i));
}

TEST(Mod2, CompletionOfRandomTriplesIsSymplectic)
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        auto f = random_frame(rng);
        auto B = complete_symplectic_mod2({mod2(f.a[0]), mod2(f.a[1]), mod2(f.a[2])});
        EXPECT_TRUE(B.valid());
    }
    EXPECT_THROW(complete_symplectic_mod2({m2a(1), m2b(1), m2a(2)}), std::invalid_argument);
    EXPECT_THROW(complete_symplectic_mod2({m2a(1), m2a(1), m2a(2)}), std::invalid_argument);
}

TEST(Mod2, BitStringRoundTrip)
{
    for (unsigned v = 0; v < 64; ++v) EXPECT_EQ(from_bits(to_bits(Mod2Class(v))), v);
    EXPECT_EQ(to_bits(mod2(hclass(1, 2, 3, -1, 0, 5))), "101101");
}
