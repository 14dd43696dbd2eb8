#include "torelli/chainlab.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace torelli;

static const HMultiset A{basis_a(1), basis_a(2), basis_a(3)};
static const HClass X = basis_a(1) + basis_a(2) + basis_a(3);

static std::vector<IdentityInstance> standard_instances()
{
    std::vector<IdentityInstance> out;
    for (auto& D : two_cells_over(A, X))
        for (auto& I : instances_for_cell(D, X)) out.push_back(I);
    return out;
}

TEST(Theta, SeparatingPairPairsToOne)
{
    auto [d1, d2] = separating_pair(standard_frame());
    // rho(delta1) = (0,0,1,1), rho(delta2) = (0,1,0,1); i<j pairs with r1_i r2_j: only (2,3)
    EXPECT_EQ(Theta_A(A, {A, {d1}, {d2}}), 1);
    EXPECT_EQ(theta_pairing(A, {d1}, {d2}), 1);
    HMultiset other = canon({basis_a(1), basis_a(2), basis_a(1) + basis_a(3)});
    EXPECT_EQ(Theta_A(A, {other, {d1}, {d2}}), 0);
    EXPECT_EQ(theta_pairing(A, {d1}, {d1}), 0);
}

TEST(D1Squared, VanishesOnStandardLattice)
{
    auto cells = two_cells_over(A, X);
    ASSERT_FALSE(cells.empty());
    for (auto& D : cells) EXPECT_TRUE(simplify(d1_squared(D, X)).empty()) << to_string(D);
}

TEST(Identities, HoldForRandomAdmissibleTables)
{
    auto inst = standard_instances();
    ASSERT_FALSE(inst.empty());
    std::mt19937_64 rng(5);
    std::set<std::string> kinds;
    for (size_t t = 0; t < 200; ++t) {
        auto& I = inst[(t * 31) % inst.size()];
        auto rep = check_d1_identities(I, random_sign_table(I, rng), t % 2 ? 1 : -1);
        kinds.insert(I.label + "/" + taxon_name(cached_classify(I.D).tag, 2));
        for (auto& l : rep.lines) EXPECT_TRUE(l.ok) << I.label << " " << l.identity << " " << l.lhs << " vs " << l.rhs;
    }
    EXPECT_TRUE(kinds.count("bp/H2prime"));
    EXPECT_TRUE(kinds.count("sep/H2_boundingpair"));
    EXPECT_TRUE(kinds.count("bp/H2_boundingpair"));
}

TEST(Identities, InadmissibleTableIsFlagged)
{
    std::mt19937_64 rng(6);
    int seen = 0;
    for (auto& I : standard_instances()) {
        if (!doubled_positions(I.D)) continue;
        EXPECT_TRUE(admissibility_violation(I, random_sign_table(I, rng, false)).has_value());
        EXPECT_FALSE(admissibility_violation(I, random_sign_table(I, rng, true)).has_value());
        ++seen;
    }
    EXPECT_GT(seen, 0);
}

TEST(Identities, RefusesInvolutionAndUntaggedTwists)
{
    auto I = standard_instances().front();
    auto J = I;
    J.h = {involution({{m2a(1), m2a(2), m2a(3)}, {m2b(1), m2b(2), m2b(3)}})};
    EXPECT_THROW(check_d1_identities(J, SignTable{}), std::invalid_argument);
    auto g = bp_twist(basis_a(2), {{basis_a(1), basis_b(1)}}, "", "");
    J.h = {g};
    EXPECT_THROW(check_d1_identities(J, SignTable{}), std::invalid_argument);
}

TEST(Incidence, DuplicateFacesHaveOppositeGeometricSigns)
{
    int seen = 0;
    for (auto& D : two_cells_over(A, X)) {
        auto dup = doubled_positions(D);
        if (!dup) continue;
        EXPECT_EQ(geometric_incidence(D, dup->first), -geometric_incidence(D, dup->second)) << to_string(D);
        ++seen;
    }
    EXPECT_GT(seen, 0);
}

TEST(Terms, CheckTermRejectsMismatches)
{
    HMultiset C = canon({basis_a(1), basis_a(2), basis_a(3), basis_a(1) + basis_a(2)});
    LabeledTerm t{C, name_components(C), 1, 1, {}, 1};
    EXPECT_NO_THROW(check_term(t));
    t.orbit.reset();
    EXPECT_THROW(check_term(t), std::invalid_argument);  // type-2 cell needs an orbit sign
    t.orbit = 1;
    t.curves.pop_back();
    EXPECT_THROW(check_term(t), std::invalid_argument);
}
