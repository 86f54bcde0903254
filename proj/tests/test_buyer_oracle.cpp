#include <gtest/gtest.h>

#include "support.hpp"

using namespace stacksp;
using namespace stacksp::testing;

TEST(BestResponse, AllInfFallsBackToFixedChain) {
    auto red = worked_reduction();
    PriceVector prices(red.instance.variable_edges().size(), Scalar::infinity());
    auto w = best_response(red.instance, prices);
    EXPECT_EQ(w.cost, Rational(4));
    EXPECT_EQ(w.revenue, Rational(0));
    EXPECT_TRUE(variable_labels(red.instance, w.edges).empty());
}

TEST(BestResponse, YesPricingOnWorkedExample) {
    auto red = worked_reduction();
    ConstraintSystem cs(worked_formula(), 1);
    auto prices = yes_pricing(cs, red.map, assignment_from_truth(cs, {true, true, false})).resolve(red.instance);
    auto w = best_response(red.instance, prices);
    EXPECT_EQ(w.cost, Rational(4));
    EXPECT_EQ(w.revenue, Rational(4));
    EXPECT_FALSE(uses_shortcut(red.map, w.edges));
}

TEST(BestResponse, PricesOnP1EdgesSelectTheShortcutFreeRoute) {
    // The route through P1's four variable edges without shortcuts costs 3,
    // below the 4 of the same edges joined by the two cost-1/2 shortcuts.
    auto red = worked_reduction();
    const auto& inst = red.instance;
    const Rational q(3, 4);
    auto prices = prices_of(inst, {{"g1:a2", q}, {"g2:a1", q}, {"g3:a1", q}, {"g4:a2", q}});
    auto w = best_response(inst, prices);
    EXPECT_EQ(variable_labels(inst, w.edges), (std::vector<std::string>{"g1:a2", "g2:a1", "g3:a1", "g4:a2"}));
    EXPECT_EQ(w.cost, Rational(3));
    EXPECT_EQ(w.revenue, Rational(3));
    EXPECT_FALSE(uses_shortcut(red.map, w.edges));
}

TEST(BestResponse, TiesFavorTheSeller) {
    // Fixed edge cost 1 against a variable edge priced 1: equal cost, the
    // client takes the priced edge.
    auto inst = single_gadget(1);
    auto w = best_response(inst, PriceVector{Scalar(1)});
    EXPECT_EQ(w.revenue, Rational(1));
    EXPECT_EQ(w.cost, Rational(1));
}

TEST(BestResponse, EqualRevenueTiesTakeSmallestVertexSequence) {
    PricingInstance inst(4, 0, 3, {{0, 2, 0}, {2, 3, 1}, {0, 1, 0}, {1, 3, 1}}, {});
    auto w = best_response(inst, PriceVector{});
    EXPECT_EQ(path_vertices(inst, w.edges), (std::vector<VertexId>{0, 1, 3}));
}

TEST(BestResponse, UnreachableSinkIsInfeasible) {
    PricingInstance inst(2, 0, 1, {}, {{0, 1, "x"}}, {}, true);
    EXPECT_THROW(best_response(inst, PriceVector{Scalar::infinity()}), InfeasibleError);
    EXPECT_EQ(best_response(inst, PriceVector{Scalar(5)}).revenue, Rational(5));
}

TEST(BestResponse, Deterministic) {
    SplitMix64 rng(11);
    auto inst = random_dag(rng, 7, 6, 5);
    auto prices = random_grid_prices(rng, 5, {Rational(0), Rational(1)});
    EXPECT_EQ(best_response(inst, prices), best_response(inst, prices));
}

TEST(BestResponse, MatchesExhaustiveEnumeration) {
    SplitMix64 rng(2024);
    const std::vector<Rational> grid{Rational(0), Rational(1, 2), Rational(1), Rational(3, 2), Rational(3)};
    std::size_t compared = 0;
    for (int trial = 0; trial < 300; ++trial) {
        auto inst = random_dag(rng, 4 + rng.below(5), rng.below(8), 1 + rng.below(6));
        if (count_paths(inst) > 10'000) continue;
        auto prices = random_grid_prices(rng, inst.variable_edges().size(), grid);
        auto oracle = oracle_best(inst, prices);
        ASSERT_TRUE(oracle.feasible);
        auto w = best_response(inst, prices);
        EXPECT_EQ(w.cost, oracle.cost);
        EXPECT_EQ(w.revenue, oracle.revenue);
        ++compared;
    }
    EXPECT_GE(compared, 250u);
}

TEST(Baseline, Values) {
    EXPECT_EQ(fixed_baseline_cost(worked_reduction().instance), Rational(4));
    EXPECT_EQ(fixed_baseline_cost(single_gadget(3)), Rational(1));
    PricingInstance none(2, 0, 1, {}, {{0, 1, "x"}}, {}, true);
    EXPECT_FALSE(fixed_baseline_cost(none).has_value());
}

TEST(Baseline, BoundsBestResponse) {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        auto inst = random_dag(rng, 6, 5, 5);
        auto prices = random_grid_prices(rng, 5, {Rational(0), Rational(1), Rational(5)});
        auto w = best_response(inst, prices);
        auto base = fixed_baseline_cost(inst);
        ASSERT_TRUE(base);
        EXPECT_LE(w.cost, *base);
        EXPECT_LE(w.revenue, *base);
    }
}

TEST(EnumeratePaths, SingleGadgetHasKPlusOne) {
    for (std::size_t k = 1; k <= 7; ++k) EXPECT_EQ(all_paths(single_gadget(k), 100).size(), k + 1);
}

TEST(EnumeratePaths, TwoChainedGadgets) {
    const std::size_t k = 3;
    CSInstance cs({{Rational(1), k}, {Rational(1), k}}, {});
    auto paths = all_paths(cs_to_pricing_instance(cs), 100);
    EXPECT_EQ(paths.size(), (k + 1) * (k + 1));
    std::set<EdgePath> unique(paths.begin(), paths.end());
    EXPECT_EQ(unique.size(), paths.size());
}

TEST(EnumeratePaths, LexicographicOrder) {
    auto inst = cs_to_pricing_instance(CSInstance({{Rational(1), 2}, {Rational(1), 2}}, {}));
    auto paths = all_paths(inst, 100);
    for (std::size_t k = 1; k < paths.size(); ++k)
        EXPECT_LT(path_vertices(inst, paths[k - 1]), path_vertices(inst, paths[k]));
}

TEST(EnumeratePaths, LimitExceeded) {
    auto inst = cs_to_pricing_instance(CSInstance({{Rational(1), 3}, {Rational(1), 3}}, {}));
    try {
        all_paths(inst, 10);
        FAIL() << "expected a budget error";
    } catch (const BudgetError& e) {
        EXPECT_NE(std::string(e.what()).find("16"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("10"), std::string::npos);
    }
}
