#include "torelli/quadbool.hpp"

#include <gtest/gtest.h>

using namespace torelli;

TEST(Quadratic, SpQuadraticLaw)
{
    for (unsigned v = 0; v < 64; ++v) {
        SpQuadraticForm w{Mod2Class(v)};
        for (unsigned x = 0; x < 64; ++x)
            for (unsigned y = 0; y < 64; ++y)
                ASSERT_EQ(w(Mod2Class(x ^ y)), w(Mod2Class(x)) ^ w(Mod2Class(y)) ^ dot2(Mod2Class(x), Mod2Class(y)));
    }
}

TEST(Quadratic, ArfIsBasisIndependent)
{
    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
        auto f = random_frame(rng);
        SymplecticBasisZ2 B;
        for (int i = 0; i < 3; ++i) { B.a[i] = mod2(f.a[i]); B.b[i] = mod2(f.b[i]); }
        ASSERT_TRUE(B.valid());
        for (unsigned v = 0; v < 64; ++v) EXPECT_EQ(arf_in({Mod2Class(v)}, B), arf({Mod2Class(v)}));
    }
}

TEST(Quadratic, ThirtySixEvenForms)
{
    EXPECT_EQ(omega0().size(), 36u);
    for (auto& w : omega0()) EXPECT_EQ(arf(w), 0);
}

TEST(BPrime, FiltrationDimensions)
{
    // B'_k = B_k / (Arf); the relation has degree 2
    const size_t want[7] = {1, 7, 21, 35, 36, 36, 36};
    for (int k = 0; k <= 6; ++k) EXPECT_EQ(dim_Bk(k), want[k]) << k;
    EXPECT_EQ(dim_Bk(3), 4 * 9 - 1);  // g(4g^2-1)/3 + 1 with g = 3, counting constants
}

TEST(BPrime, FullAlgebraDimensions)
{
    const size_t want[7] = {1, 7, 22, 42, 57, 63, 64};  // partial sums of C(6, i)
    for (int k = 0; k <= 6; ++k) EXPECT_EQ(dim_B_full(k), want[k]) << k;
}

TEST(BPrime, ProjectionKillsArf)
{
    // Arf = sum a_i b_i as a function: vanishes on Omega_0
    BFull s;
    for (int i = 1; i <= 3; ++i) {
        BFull p{affine_generator_full(m2a(i)).bits & affine_generator_full(m2b(i)).bits};
        s.bits ^= p.bits;
    }
    EXPECT_TRUE(project(s).is_zero());
}

TEST(BPrime, HexRoundTrip)
{
    BPrime e = affine_generator(m2a(1)) * affine_generator(m2b(2));
    EXPECT_EQ(to_hex(e).size(), 9u);
    EXPECT_EQ(bprime_from_hex(to_hex(e)), e);
    EXPECT_THROW(bprime_from_hex("zz"), std::invalid_argument);
    EXPECT_THROW(bprime_from_hex("fffffffffff"), std::invalid_argument);
}

TEST(BPrime, Degrees)
{
    EXPECT_EQ(degree(BPrime::zero()), -1);
    EXPECT_EQ(degree(BPrime::one()), 0);
    EXPECT_EQ(degree(affine_generator(m2a(1))), 1);
    EXPECT_EQ(degree(affine_generator(m2a(1)) * affine_generator(m2b(1))), 2);
    // a1 b1 = a2 b2 + a3 b3 modulo Arf: still degree 2
    EXPECT_EQ(affine_generator(m2a(1)) * affine_generator(m2b(1)),
              affine_generator(m2a(2)) * affine_generator(m2b(2)) + affine_generator(m2a(3)) * affine_generator(m2b(3)));
}

TEST(Forms, FourFormsOnStandardTriple)
{
    auto F = four_forms({m2a(1), m2a(2), m2a(3)});
    auto filt = filter_forms({m2a(1), m2a(2), m2a(3)});
    ASSERT_EQ(filt.size(), 4u);
    for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(arf(F.w[i]), 0);
        for (int j = 1; j <= 3; ++j) {
            EXPECT_EQ(F.w[i](m2a(j)), 1);
            EXPECT_EQ(F.w[i](m2b(j)), (i == 0 || i == j) ? 0 : 1);
        }
    }
}
