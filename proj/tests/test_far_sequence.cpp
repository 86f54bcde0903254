#include <gtest/gtest.h>

#include "support.hpp"

using namespace stacksp;
using namespace stacksp::testing;

namespace {

std::size_t non_far(const ConstraintSystem& cs, const SequenceOrder& o) {
    auto flags = delta_far_flags(cs, o);
    return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), false));
}

ConstraintSystem one_clause() { return ConstraintSystem(parse_dimacs(std::string_view("p cnf 2 1\n1 2 0\n")), 1); }

} // namespace

TEST(FarFlags, WorkedExampleWindowOne) {
    ConstraintSystem cs(worked_formula(), 1);
    auto order = make_order(worked_perm(), Rational(1, 4));
    EXPECT_EQ(order.window, 1u);
    EXPECT_EQ(delta_far_flags(cs, order), (std::vector<bool>{false, true, false, true}));
    EXPECT_EQ(far_fraction(cs, order), Rational(1, 2));
    EXPECT_EQ(far_fraction(cs, identity_order(cs, Rational(1, 4))), Rational(1, 2));
}

TEST(FarFlags, LastPositionIsVacuouslyFar) {
    ConstraintSystem cs(regular_n3_formula(), 1);
    auto flags = delta_far_flags(cs, identity_order(cs, Rational(1)));
    EXPECT_TRUE(flags.back());
}

TEST(FarFlags, FullWindowWithSharingHasNonFar) {
    ConstraintSystem cs(worked_formula(), 1);
    std::vector<std::size_t> perm{0, 1, 2, 3};
    do {
        EXPECT_GE(non_far(cs, make_order(perm, Rational(1))), 1u);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(FarFlags, MatchesDefinitionOnRandomOrders) {
    ConstraintSystem cs(random_regular_3sat5(6, 2), 1);
    SplitMix64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::size_t> perm(cs.size());
        std::iota(perm.begin(), perm.end(), 0);
        shuffle(perm, rng);
        auto order = make_order(perm, Rational(static_cast<long>(1 + rng.below(4)), static_cast<long>(cs.size())));
        auto flags = delta_far_flags(cs, order);
        for (std::size_t i = 0; i < perm.size(); ++i) {
            bool far = true;
            for (std::size_t j = i + 1; j < perm.size() && j <= i + order.window; ++j) {
                const auto& a = cs.constraint(perm[i]);
                const auto& b = cs.constraint(perm[j]);
                if (a.q1 == b.q1 || a.q2 == b.q2) far = false;
            }
            EXPECT_EQ(flags[i], far);
        }
    }
}

TEST(Order, RejectsNonPermutations) {
    EXPECT_THROW(make_order({0, 0, 1}, Rational(1, 3)), InputError);
    EXPECT_THROW(make_order({0, 3, 1}, Rational(1, 3)), InputError);
    EXPECT_THROW(make_order({0, 1}, Rational(0)), InputError);
    EXPECT_THROW(make_order({0, 1}, Rational(3, 2)), InputError);
}

TEST(Partners, BoundedForRegularSystems) {
    for (unsigned ell : {1u, 2u}) {
        ConstraintSystem cs(random_regular_3sat5(6, 5), ell);
        const std::size_t bound = ell == 1 ? 3 + 5 : 9 + 25;
        for (const auto& p : shared_query_partners(cs)) EXPECT_LE(p.size(), bound);
    }
}

TEST(RandomOrder, SameSeedSameOrder) {
    ConstraintSystem cs(random_regular_3sat5(9, 1), 1);
    auto a = random_far_order(cs, Rational(1, 45), Rational(1), 77, 5);
    auto b = random_far_order(cs, Rational(1, 45), Rational(1), 77, 5);
    EXPECT_EQ(a.order, b.order);
    EXPECT_EQ(a.attempts, 1u); // gamma = 1 accepts anything
    auto c = random_far_order(cs, Rational(1, 45), Rational(1), 78, 5);
    EXPECT_NE(a.order.perm, c.order.perm);
}

TEST(RandomOrder, GammaRegimeSucceeds) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        ConstraintSystem cs(random_regular_3sat5(30, seed), 1);
        const Rational delta(1, static_cast<long>(cs.size()));
        const Rational gamma = 8 * delta * 5;
        auto r = random_far_order(cs, delta, gamma, seed, 20);
        EXPECT_GE(r.fraction, 1 - gamma);
        EXPECT_EQ(r.fraction, far_fraction(cs, r.order));
    }
}

TEST(RandomOrder, ExhaustionReportsBestFraction) {
    ConstraintSystem cs(worked_formula(), 1);
    try {
        random_far_order(cs, Rational(1), Rational(1, 100), 1, 3);
        FAIL() << "expected a budget error";
    } catch (const BudgetError& e) {
        EXPECT_NE(std::string(e.what()).find("best fraction"), std::string::npos);
    }
    EXPECT_THROW(random_far_order(cs, Rational(1, 8), Rational(1), 1, 3), InputError);
}

TEST(Derandomized, TwoConstraintsSharingAQuery) {
    auto cs = one_clause();
    auto r = derandomized_far_order(cs, Rational(1, 2));
    ASSERT_FALSE(r.trace.empty());
    EXPECT_EQ(r.trace.front(), Rational(1));
    EXPECT_EQ(far_fraction(cs, make_order({0, 1}, Rational(1, 2))), Rational(1, 2));
    EXPECT_EQ(far_fraction(cs, make_order({1, 0}, Rational(1, 2))), Rational(1, 2));
    EXPECT_EQ(far_fraction(cs, r.order), Rational(1, 2));
}

TEST(Derandomized, WorkedExampleTrace) {
    ConstraintSystem cs(worked_formula(), 1);
    auto r = derandomized_far_order(cs, Rational(1, 4));
    EXPECT_EQ(r.order.perm, (std::vector<std::size_t>{0, 3, 1, 2}));
    EXPECT_EQ(r.trace, (std::vector<Rational>{Rational(3, 2), Rational(4, 3), Rational(1, 2), Rational(0), Rational(0)}));
    EXPECT_EQ(far_fraction(cs, r.order), Rational(1));
}

TEST(Derandomized, BeatsExpectationBoundOnAllPermutations) {
    ConstraintSystem cs(worked_formula(), 1);
    auto r = derandomized_far_order(cs, Rational(1, 4));
    const Rational m(static_cast<long>(cs.size()));
    EXPECT_GE(far_fraction(cs, r.order), 1 - r.trace.front() / m);

    // Initial estimator = average over all orders of the close-pair count.
    std::vector<std::size_t> perm{0, 1, 2, 3};
    Rational pairs(0);
    std::size_t orders = 0;
    const auto partners = shared_query_partners(cs);
    do {
        ++orders;
        std::vector<std::size_t> pos(4);
        for (std::size_t k = 0; k < 4; ++k) pos[perm[k]] = k;
        for (std::size_t a = 0; a < 4; ++a)
            for (auto b : partners[a])
                if (pos[b] > pos[a] && pos[b] - pos[a] <= 1) pairs += 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(pairs / static_cast<long>(orders), r.trace.front());
}

TEST(Derandomized, EstimatorInvariantsOnRegularFormulas) {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        ConstraintSystem cs(random_regular_3sat5(3 * (1 + seed % 4), seed), 1);
        for (long d : {1L, 2L, 4L}) {
            const Rational delta(d, static_cast<long>(cs.size()));
            auto r = derandomized_far_order(cs, delta);
            ASSERT_EQ(r.trace.size(), cs.size() + 1);
            for (std::size_t k = 1; k < r.trace.size(); ++k) EXPECT_LE(r.trace[k], r.trace[k - 1]);
            EXPECT_LE(Rational(static_cast<long>(non_far(cs, r.order))), r.trace.back());
            const Rational gamma = 8 * delta * 5;
            if (gamma <= 1) {
                EXPECT_GE(far_fraction(cs, r.order), 1 - gamma);
            }
        }
    }
}

TEST(Derandomized, FinalEstimatorCountsClosePairs) {
    ConstraintSystem cs(random_regular_3sat5(6, 4), 1);
    auto r = derandomized_far_order(cs, Rational(2, 30));
    const auto partners = shared_query_partners(cs);
    std::vector<std::size_t> pos(cs.size());
    for (std::size_t k = 0; k < cs.size(); ++k) pos[r.order.perm[k]] = k;
    long close = 0;
    for (std::size_t a = 0; a < cs.size(); ++a)
        for (auto b : partners[a])
            if (pos[b] > pos[a] && pos[b] - pos[a] <= r.order.window) ++close;
    EXPECT_EQ(r.trace.back(), Rational(close));
}

TEST(Derandomized, RejectsTinyDelta) {
    ConstraintSystem cs(worked_formula(), 1);
    EXPECT_THROW(derandomized_far_order(cs, Rational(1, 8)), InputError);
}
