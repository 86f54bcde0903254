#include <gtest/gtest.h>

#include "support.hpp"

using namespace stacksp;
using namespace stacksp::testing;

TEST(Layout, WorkedExampleAllShortcuts) {
    auto red = worked_reduction();
    const auto& map = red.map;
    EXPECT_EQ(map.size(), 4u);
    EXPECT_EQ(map.answer_count(), 3u);
    EXPECT_EQ(red.instance.vertex_count(), 32u);
    EXPECT_EQ(red.instance.variable_edges().size(), 12u);
    EXPECT_EQ(red.instance.fixed_edges().size(), 4 * 7 + 3 + 16u);
    EXPECT_EQ(map.shortcuts().size(), 16u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(map.gadget(i).constraint, worked_perm()[i]);
        EXPECT_EQ(map.s(i), static_cast<VertexId>(8 * i));
        EXPECT_EQ(map.t(i), static_cast<VertexId>(8 * i + 1));
    }
    EXPECT_EQ(red.instance.source(), 0u);
    EXPECT_EQ(red.instance.sink(), 25u);
    EXPECT_EQ(red.instance.variable_edges()[5].label, "g2:a2");
    EXPECT_NO_THROW(check_map_matches(red.instance, map));
    EXPECT_TRUE(validate_instance(red.instance).ok());
}

TEST(Layout, NamedShortcutsOfTheWorkedExample) {
    auto red = worked_reduction();
    const auto& map = red.map;
    const Shortcut* a = map.find_shortcut(0, 1, 1, 0);
    ASSERT_NE(a, nullptr);
    EXPECT_EQ(a->cost, Rational(1, 2));
    const Shortcut* b = map.find_shortcut(0, 0, 3, 1);
    ASSERT_NE(b, nullptr);
    EXPECT_EQ(b->cost, Rational(3, 2));
    const Shortcut* c = map.find_shortcut(2, 0, 3, 1);
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(c->cost, Rational(1, 2));
    EXPECT_EQ(map.find_shortcut(0, 0, 1, 0), nullptr);
}

TEST(Layout, WidthThreeGadgetHasFourteenAnswerVertices) {
    ConstraintSystem cs(regular_n3_formula(), 1);
    auto red = generate(cs, GenParams{});
    EXPECT_EQ(red.map.answer_count(), 7u);
    EXPECT_EQ(red.map.stride() - 2, 14u);
    EXPECT_EQ(red.instance.vertex_count(), 15u * 16u);
}

TEST(Shortcuts, AuditCostsAndInconsistency) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        ConstraintSystem cs(random_formula(4, 3, seed % 2 ? 2 : 3, seed), 1);
        GenParams p;
        p.shortcut_mode = ShortcutMode::all;
        p.delta = Rational(1, static_cast<long>(cs.size()));
        auto red = generate(cs, p);
        const auto& map = red.map;
        std::size_t expected = 0;
        for (std::size_t i = 0; i < map.size(); ++i)
            for (std::size_t j = i + 1; j < map.size(); ++j)
                for (std::uint32_t a = 0; a < map.answer_count(); ++a)
                    for (std::uint32_t b = 0; b < map.answer_count(); ++b) {
                        bool want = inconsistent(cs, map.gadget(i).constraint, a, map.gadget(j).constraint, b);
                        const Shortcut* sc = map.find_shortcut(i, a, j, b);
                        EXPECT_EQ(sc != nullptr, want);
                        if (sc) {
                            EXPECT_EQ(sc->cost, Rational(static_cast<long>(j - i), 2));
                        }
                        expected += want;
                    }
        EXPECT_EQ(map.shortcuts().size(), expected);
    }
}

TEST(Shortcuts, FarModeJoinsOnlyFarGadgets) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        ConstraintSystem cs(random_regular_3sat5(6, seed), 1);
        GenParams p;
        p.delta = Rational(2, static_cast<long>(cs.size()));
        p.order_mode = OrderMode::derandomized;
        auto red = generate(cs, p);
        for (const auto& sc : red.map.shortcuts()) {
            EXPECT_TRUE(red.map.gadget(sc.from).far);
            EXPECT_TRUE(red.map.gadget(sc.to).far);
            EXPECT_GT(sc.to - sc.from, red.map.window());
        }
    }
}

TEST(Shortcuts, WorkedExampleFarFlags) {
    auto red = worked_reduction(ShortcutMode::far);
    std::vector<bool> far;
    for (const auto& g : red.map.gadgets()) far.push_back(g.far);
    EXPECT_EQ(far, (std::vector<bool>{false, true, false, true}));
    for (const auto& sc : red.map.shortcuts()) {
        EXPECT_NE(sc.from, 0u);
        EXPECT_NE(sc.from, 2u);
        EXPECT_NE(sc.to, 0u);
        EXPECT_NE(sc.to, 2u);
    }
}

TEST(YesPricing, WorkedExample) {
    auto red = worked_reduction();
    ConstraintSystem cs(worked_formula(), 1);
    auto prices = yes_pricing(cs, red.map, assignment_from_truth(cs, {true, true, false}));
    // x1 x2 = 11 on both C1 gadgets, x1 x3 = 10 on both C2 gadgets.
    const std::vector<std::uint32_t> picked{2, 2, 1, 1};
    auto v = prices.resolve(red.instance);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::uint32_t a = 0; a < 3; ++a)
            EXPECT_EQ(v[red.map.variable_edge_of(i, a)], a == picked[i] ? Scalar(1) : Scalar::infinity());
    auto w = best_response(red.instance, v);
    EXPECT_EQ(w.revenue, Rational(4));
    EXPECT_EQ(w.cost, Rational(4));
}

TEST(YesPricing, RevenueMOnRandomSatisfiableFormulas) {
    std::size_t checked = 0;
    for (std::uint64_t seed = 1; checked < 12 && seed < 200; ++seed) {
        auto f = random_formula(5, 3, 2 + seed % 2, seed);
        auto truth = find_satisfying_truth(f);
        if (!truth) continue;
        ConstraintSystem cs(f, 1);
        for (auto mode : {ShortcutMode::far, ShortcutMode::all}) {
            GenParams p;
            p.shortcut_mode = mode;
            p.delta = Rational(1, static_cast<long>(cs.size()));
            auto red = generate(cs, p);
            auto w = best_response(red.instance, yes_pricing(cs, red.map, assignment_from_truth(cs, *truth)).resolve(red.instance));
            EXPECT_EQ(w.revenue, Rational(static_cast<long>(cs.size())));
            EXPECT_FALSE(uses_shortcut(red.map, w.edges));
        }
        ++checked;
    }
    EXPECT_EQ(checked, 12u);
}

TEST(YesPricing, MissingAnswerIsAnError) {
    auto red = worked_reduction();
    ConstraintSystem cs(worked_formula(), 1);
    EXPECT_THROW(yes_pricing(cs, red.map, GlobalAssignment{}), InputError);
}

TEST(Revenue, NeverExceedsM) {
    SplitMix64 rng(3);
    auto red = worked_reduction();
    const std::vector<Rational> grid{Rational(0), Rational(1, 2), Rational(1), Rational(2), Rational(5)};
    for (int trial = 0; trial < 200; ++trial) {
        auto w = best_response(red.instance, random_grid_prices(rng, 12, grid));
        EXPECT_LE(w.revenue, Rational(4));
    }
}

TEST(SizeReport, KnownValues) {
    auto r = size_report_regular(3, 1);
    EXPECT_EQ(r.constraints, 15u);
    EXPECT_EQ(r.vertices_per_gadget, 16u);
    EXPECT_EQ(r.total_vertices, 240u);
    EXPECT_EQ(r.answers, 7u);
    EXPECT_EQ(r.shortcut_bound_per_pair, 49u);
    auto small = size_report(2, 1, 2);
    EXPECT_EQ(small.constraints, 4u);
    EXPECT_EQ(small.vertices_per_gadget, 8u);
    EXPECT_EQ(small.total_vertices, 32u);
    EXPECT_EQ(size_report_regular(3, 2).constraints, 225u);
    EXPECT_THROW(size_report_regular(4, 1), InputError);
    EXPECT_THROW(size_report(10, 60, 3), BudgetError);
}

TEST(SizeReport, MatchesBuiltInstances) {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto f = random_formula(4 + seed % 3, 2 + seed % 3, 2 + seed % 2, seed);
        for (unsigned ell : {1u, 2u}) {
            if (ell == 2 && f.width() == 3) continue;
            ConstraintSystem cs(f, ell);
            GenParams p;
            p.ell = ell;
            p.delta = Rational(1, static_cast<long>(cs.size()));
            auto red = generate(cs, p);
            auto r = size_report(f.clauses().size(), ell, f.width());
            EXPECT_EQ(r.constraints, red.map.size());
            EXPECT_EQ(r.answers, red.map.answer_count());
            EXPECT_EQ(r.total_vertices, red.instance.vertex_count());
            EXPECT_EQ(r.constraints * r.edges_per_gadget + r.chain_edges,
                      red.map.shortcut_base() + red.instance.variable_edges().size());
        }
    }
}

TEST(MapFile, RoundTrip) {
    for (auto mode : {ShortcutMode::far, ShortcutMode::all}) {
        auto red = worked_reduction(mode);
        auto text = serialize_map(red.map);
        auto back = parse_map(text);
        EXPECT_EQ(serialize_map(back), text);
        EXPECT_NO_THROW(check_map_matches(red.instance, back));
    }
    EXPECT_THROW(parse_map(std::string_view("mode far window 1\n")), ParseError);
    EXPECT_THROW(check_map_matches(worked_reduction(ShortcutMode::far).instance, worked_reduction().map), InputError);
}

TEST(Decode, YesPricingOnFarMode) {
    auto red = worked_reduction(ShortcutMode::far);
    ConstraintSystem cs(worked_formula(), 1);
    auto prices = yes_pricing(cs, red.map, assignment_from_truth(cs, {true, true, false})).resolve(red.instance);
    auto w = best_response(red.instance, prices);
    auto dec = decode_assignment(cs, red.map, w.edges, {{0, 3}});
    EXPECT_EQ(dec.far_edges, 2u);
    EXPECT_TRUE(dec.conflicts.empty());
    EXPECT_GE(dec.satisfied, 2u);
    auto none = decode_assignment(cs, red.map, w.edges, {});
    EXPECT_EQ(none.far_edges, 0u);
    EXPECT_EQ(none.satisfied, 0u);
}

TEST(Generate, BudgetsAreEnforced) {
    ConstraintSystem cs(regular_n3_formula(), 1);
    GenParams p;
    p.max_vertices = 100;
    EXPECT_THROW(generate(cs, p), BudgetError);
    GenParams q;
    q.shortcut_mode = ShortcutMode::all;
    q.max_edges = 15 * 22 + 14 + 3;
    EXPECT_THROW(generate(cs, q), BudgetError);
}

TEST(Generate, EpsilonParameters) {
    auto p = GenParams::from_epsilon(Rational(1, 2), 1);
    EXPECT_EQ(p.delta, Rational(1, 100));
    EXPECT_EQ(p.gamma, Rational(1, 6));
    EXPECT_THROW(GenParams::from_epsilon(Rational(0), 1), InputError);
}
