#include "torelli/descent.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace torelli;

static AlgebraicReal alg(long c1, long c2 = 0, long c3 = 0, long c5 = 0, long c7 = 0)
{
    AlgebraicReal r;
    r.c = {c1, c2, c3, c5, c7};
    return r;
}

static const HClass a1 = basis_a(1), a2 = basis_a(2), a3 = basis_a(3);
static const HClass X = a1 + a2 + a3;

TEST(AlgebraicSign, Examples)
{
    EXPECT_EQ(sign(alg(0, 3, -2)), 1);            // 3 sqrt2 - 2 sqrt3
    EXPECT_EQ(sign(alg(0, -3, 2)), -1);
    EXPECT_EQ(sign(alg(1, -1)), -1);               // 1 - sqrt2
    EXPECT_EQ(sign(alg(0, 1, 1, -1)), 1);          // sqrt2 + sqrt3 - sqrt5
    EXPECT_EQ(sign(alg(1393, -985)), -1);          // 1393^2 = 2 * 985^2 - 1
    EXPECT_EQ(sign(alg(-1393, 985)), 1);
    EXPECT_EQ(sign(alg(0, 5) - alg(0, 5)), 0);
    EXPECT_EQ(sign(alg(0, 0, 0, 0, 1) - alg(0, 0, 0, 0, 1) + alg(0)), 0);
}

TEST(Forms, ValidationRejectsDegenerateForms)
{
    FLinearForm f;
    for (auto& v : f.fj) v = ZVec(6);
    EXPECT_THROW(validate(f, X), std::invalid_argument);
    std::mt19937_64 rng(1);
    auto g = random_form(X, rng);
    EXPECT_NO_THROW(validate(g, X));
    EXPECT_TRUE(g(X).is_zero());
}

TEST(Sigma, StandardAndScaledTriples)
{
    EXPECT_TRUE(verify_sigma_descent({a1, a2, a3}, X).ok);
    EXPECT_TRUE(verify_sigma_descent({a1, a2, a3}, Int(2) * a1 + a2 + Int(3) * a3).ok);
    EXPECT_THROW(verify_sigma_descent({a1, a2}, a1 + a2), std::invalid_argument);
}

TEST(TableOne, RowsMatchTheClaimedValues)
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 40; ++t) {
        auto f = random_form(X, rng);
        auto N = normalize_case1({a1, a2, a3}, X, f);
        AlgebraicReal r1 = abs_value(N.f(N.a[0])), r2 = abs_value(N.f(N.a[1])), r3 = abs_value(N.f(N.a[2]));
        EXPECT_EQ(compare(F1(canon({N.a[0], N.a[1], N.a[2]}), N.f), r1 + r3), 0);
        auto rows = table_one(N, X);
        ASSERT_EQ(rows.size(), 8u);
        EXPECT_EQ(compare(rows[5].claimed, r1 + r2 + Int(2) * r3), 0);
        EXPECT_EQ(compare(rows[6].claimed, Int(2) * r1 + r2 + r3), 0);
        for (auto& r : rows) {
            EXPECT_TRUE(r.in_H0) << r.name;
            EXPECT_TRUE(r.matches) << r.name;
            EXPECT_TRUE(r.succ) << r.name;
        }
        EXPECT_TRUE(verify_lambda_descent_case1({a1, a2, a3}, X, f).ok);
    }
}

TEST(CaseTwo, BothBranches)
{
    std::mt19937_64 rng(9);
    HClass x = a1 + a2;
    int inside = 0, outside = 0;
    for (int t = 0; t < 6; ++t) {
        auto f = random_form(x, rng);
        auto fa1 = sign(f(a1)) > 0 ? f(a1) : -f(a1);
        auto g = sign(f(a1)) > 0 ? f : f.negated();
        for (long j = -40; j <= 40; ++j) {
            HClass c = a3 + Int(j) * a1;
            auto fc = g(c);
            bool in = sign(fc) > 0 && compare(fc, fa1) < 0;
            if (in || (j == 0 && outside < 3)) {
                auto R = lambda_case2_step(a1, a2, c, x, f);
                EXPECT_TRUE(R.ok) << (R.failures.empty() ? "" : R.failures.front());
                (in ? inside : outside)++;
                if (in) break;
            }
        }
    }
    EXPECT_GT(inside, 0);
    EXPECT_GT(outside, 0);
}

TEST(Kernel, TrivialBelowTheSmallestWeight)
{
    auto k = bounded_kernel_check("sigma", 2, X);
    EXPECT_EQ(k.variables, 0u);
    EXPECT_EQ(k.kernel_dim, 0u);
}

TEST(Kernel, BoundEightHasNoNonzeroFiniteSolution)
{
    for (std::string s : {"sigma", "lambda"}) {
        auto k = bounded_kernel_check(s, 8, X);
        EXPECT_GT(k.variables, 0u);
        EXPECT_EQ(k.kernel_dim, 0u) << s;
        EXPECT_EQ(k.rank, k.variables) << s;
        EXPECT_EQ(k.honest_equations + k.dropped, k.equations) << s;
    }
    EXPECT_THROW(bounded_kernel_check("mu", 8, X), std::invalid_argument);
}
