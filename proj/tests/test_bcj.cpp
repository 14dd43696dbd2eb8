#include "torelli/bcj.hpp"

#include <gtest/gtest.h>

using namespace torelli;

static BPrime bar(Mod2Class x) { return affine_generator(x); }

TEST(Sigma, SeparatingTwist)
{
    auto g = sep_twist({{basis_a(1), basis_b(1)}});
    EXPECT_EQ(sigma(g), bar(m2a(1)) * bar(m2b(1)));
    g.exponent = 2;
    EXPECT_TRUE(sigma(g).is_zero());
    g.exponent = -3;
    EXPECT_EQ(sigma(g), bar(m2a(1)) * bar(m2b(1)));
}

TEST(Sigma, BoundingPairTwist)
{
    auto g = bp_twist(basis_a(2), {{basis_a(1), basis_b(1)}}, "g", "h");
    EXPECT_EQ(sigma(g), (bar(m2a(2)) + BPrime::one()) * bar(m2a(1)) * bar(m2b(1)));
    EXPECT_EQ(degree(sigma(g)), 3);
}

TEST(Sigma, WordAndInverseCancel)
{
    auto t = type_one_generators(standard_frame());
    GeneratorWord w{t.z1, t.z2, t.z1z3};
    auto wi = inverse(w);
    GeneratorWord both = w;
    both.insert(both.end(), wi.begin(), wi.end());
    EXPECT_TRUE(in_C(both));
}

TEST(Sigma, InvolutionNeedsTheExtension)
{
    auto i = involution({{m2a(1), m2a(2), m2a(3)}, {m2b(1), m2b(2), m2b(3)}});
    EXPECT_THROW(sigma(i), std::invalid_argument);
    BPrime s = sigma_hat(i);
    EXPECT_EQ(s, bar(m2a(1)) * bar(m2b(1)) * (bar(m2a(2)) + BPrime::one()) * bar(m2b(2)));
    EXPECT_FALSE(in_Bk(s, 3));
    EXPECT_EQ(degree(s), 4);
}

TEST(Validate, RejectsMalformedSides)
{
    SymbolicGenerator g;
    g.kind = GenKind::SepTwist;
    g.side = {{m2a(1), m2a(2)}};  // not symplectic
    EXPECT_THROW(validate(g), std::invalid_argument);
    g.side = {};
    EXPECT_THROW(validate(g), std::invalid_argument);
    auto b = bp_twist(basis_a(1), {{basis_a(1), basis_b(1)}}, "p", "q");  // side meets c
    EXPECT_THROW(validate(b), std::invalid_argument);
    auto z = bp_twist(hclass(2, 0, 0, 0, 0, 0), {{basis_a(2), basis_b(2)}}, "p", "q");  // c = 0 mod 2
    EXPECT_THROW(validate(z), std::invalid_argument);
}

TEST(Lantern, PreservesSigma)
{
    // components alpha0 = alpha1 + alpha2, pairwise orthogonal: the three BP twists add up to the separating twist
    auto t = sep_twist({{basis_a(3), basis_b(3)}});
    std::array<Curve, 3> al{Curve{"x0", basis_a(1) + basis_a(2)}, Curve{"x1", basis_a(1)}, Curve{"x2", basis_a(2)}};
    auto w = lantern_expand(t, al);
    ASSERT_EQ(w.size(), 3u);
    EXPECT_EQ(sigma_word(w), sigma(t));
}

TEST(Rho, TypeOneGeneratorsThroughSigma)
{
    auto T = type_one_generators(standard_frame());
    auto F = four_forms({m2a(1), m2a(2), m2a(3)});
    EXPECT_EQ(rho_vector(F, {T.z1}), (std::array<int, 4>{0, 0, 1, 1}));
    EXPECT_EQ(rho_vector(F, {T.z2}), (std::array<int, 4>{0, 1, 0, 1}));
    EXPECT_EQ(rho_vector(F, z3_word(T)), (std::array<int, 4>{1, 1, 1, 1}));
}
