#include <gtest/gtest.h>

#include "support.hpp"

using namespace stacksp;
using namespace stacksp::testing;

namespace {

struct Seg {
    Role role;
    std::size_t first, last; // 1-based
    Rational rev;

    friend bool operator==(const Seg&, const Seg&) = default;
};

std::vector<Seg> shape(const Decomposition& d) {
    std::vector<Seg> out;
    for (const auto& s : d.segments) out.push_back({s.role, s.first + 1, s.last + 1, s.rev});
    return out;
}

bool all_pass(const PropertyReport& r) {
    for (const auto& c : r.checks)
        if (!c.passed) {
            ADD_FAILURE() << c.name << ": " << c.detail;
            return false;
        }
    return true;
}

// Walks gadget i through answer a.
void through(EdgePath& p, const GadgetMap& map, std::size_t i, std::uint32_t a, bool enter, bool leave) {
    if (enter) p.push_back(fixed_edge(map.entry_edge(i, a)));
    p.push_back(variable_edge(map.variable_edge_of(i, a)));
    if (leave) p.push_back(fixed_edge(map.exit_edge(i, a)));
}

std::size_t shortcut_edge(const GadgetMap& map, std::size_t i, std::uint32_t a, std::size_t j, std::uint32_t b) {
    const Shortcut* sc = map.find_shortcut(i, a, j, b);
    if (!sc) throw std::logic_error("no such shortcut");
    return map.shortcut_base() + static_cast<std::size_t>(sc - map.shortcuts().data());
}

} // namespace

TEST(Decompose, YesPricingIsOneResidueSegment) {
    for (auto mode : {ShortcutMode::far, ShortcutMode::all}) {
        auto red = worked_reduction(mode);
        ConstraintSystem cs(worked_formula(), 1);
        auto prices = yes_pricing(cs, red.map, assignment_from_truth(cs, {true, true, false})).resolve(red.instance);
        auto w = best_response(red.instance, prices);
        auto d = decompose(red.instance, red.map, prices, w.edges);
        EXPECT_EQ(shape(d), (std::vector<Seg>{{Role::R, 1, 4, Rational(4)}}));
        EXPECT_TRUE(all_pass(verify_properties(red.instance, red.map, d, Rational(1, 4), mode)));
    }
}

TEST(Decompose, PricesOnP1EdgesGiveTwoInducedSegments) {
    auto red = worked_reduction();
    const Rational q(3, 4);
    auto prices = prices_of(red.instance, {{"g1:a2", q}, {"g2:a1", q}, {"g3:a1", q}, {"g4:a2", q}});
    auto w = best_response(red.instance, prices);
    auto p1 = phase1(red.instance, red.map, prices, w.edges);
    EXPECT_EQ(shape(p1), (std::vector<Seg>{{Role::R, 1, 4, Rational(3)}}));
    auto d = phase2(red.instance, red.map, p1);
    EXPECT_EQ(shape(d), (std::vector<Seg>{{Role::T, 1, 2, Rational(3, 2)}, {Role::T, 3, 4, Rational(3, 2)}}));
    auto report = verify_properties(red.instance, red.map, d, Rational(1, 4), ShortcutMode::all);
    EXPECT_TRUE(all_pass(report));
    EXPECT_TRUE(report.at("cardinality").skipped);
}

TEST(Decompose, PricesOnP2EdgesReachTheInducedBound) {
    auto red = worked_reduction();
    auto prices = prices_of(red.instance,
                            {{"g1:a2", 1}, {"g2:a2", Rational(3, 4)}, {"g3:a0", Rational(3, 4)}, {"g4:a0", 1}});
    auto w = best_response(red.instance, prices);
    auto d = decompose(red.instance, red.map, prices, w.edges);
    ASSERT_EQ(shape(d), (std::vector<Seg>{{Role::T, 1, 4, Rational(7, 2)}}));
    const Rational len(4);
    EXPECT_EQ(d.segments[0].rev, (len - 1) / 2 + 2);
    EXPECT_TRUE(all_pass(verify_properties(red.instance, red.map, d, Rational(1, 4), ShortcutMode::all)));
}

TEST(Decompose, ShortcutOnPathBecomesAnSSegment) {
    // Gadgets 2 and 3 hold the two (C2, .) constraints, gadgets 1 and 4 the
    // two (C1, .) constraints.
    ConstraintSystem cs(worked_formula(), 1);
    GenParams p = worked_params();
    p.perm = {0, 3, 2, 1};
    auto red = generate(cs, p);
    const auto& map = red.map;
    EdgePath path;
    through(path, map, 0, 0, true, true);
    path.push_back(fixed_edge(map.chain_edge(0)));
    through(path, map, 1, 0, true, false);
    path.push_back(fixed_edge(shortcut_edge(map, 1, 0, 2, 1)));
    through(path, map, 2, 1, false, true);
    path.push_back(fixed_edge(map.chain_edge(2)));
    through(path, map, 3, 1, true, true);

    PriceVector prices(red.instance.variable_edges().size(), Scalar::infinity());
    prices[map.variable_edge_of(0, 0)] = Scalar(1);
    prices[map.variable_edge_of(1, 0)] = Scalar(Rational(3, 4));
    prices[map.variable_edge_of(2, 1)] = Scalar(Rational(3, 4));
    prices[map.variable_edge_of(3, 1)] = Scalar(1);

    EXPECT_THROW(phase1(red.instance, map, prices, path), InputError);
    auto p1 = phase1(red.instance, map, prices, path, false);
    EXPECT_EQ(shape(p1), (std::vector<Seg>{{Role::R, 1, 1, Rational(1)},
                                           {Role::S, 2, 3, Rational(3, 2)},
                                           {Role::R, 4, 4, Rational(1)}}));
    auto report = verify_properties(red.instance, map, p1, Rational(1, 4), ShortcutMode::all);
    EXPECT_TRUE(report.at("s_revenue").passed);
    EXPECT_TRUE(report.at("telescoping").passed);
    EXPECT_FALSE(report.at("r_no_shortcut").passed);

    auto d = phase2(red.instance, map, p1);
    EXPECT_EQ(shape(d), (std::vector<Seg>{{Role::T, 1, 4, Rational(7, 2)}}));
    EXPECT_TRUE(all_pass(verify_properties(red.instance, map, d, Rational(1, 4), ShortcutMode::all)));
}

TEST(Decompose, RejectsMismatchedInputs) {
    auto red = worked_reduction();
    PriceVector inf(red.instance.variable_edges().size(), Scalar::infinity());
    auto w = best_response(red.instance, inf);
    EXPECT_THROW(phase1(red.instance, worked_reduction(ShortcutMode::far).map, inf, w.edges), InputError);
    EXPECT_THROW(phase1(red.instance, red.map, inf, EdgePath{}), InputError);
}

TEST(Decompose, PropertiesHoldOnFarModeInstances) {
    SplitMix64 rng(99);
    const std::vector<Rational> grid{Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1),
                                     Rational(3, 2)};
    std::size_t pairs = 0;
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto f = seed % 2 ? random_regular_3sat5(6, seed) : random_formula(5, 6, 2, seed);
        ConstraintSystem cs(f, 1);
        GenParams p;
        p.order_mode = OrderMode::derandomized;
        p.delta = Rational(static_cast<long>(1 + seed % 2), static_cast<long>(cs.size()));
        auto red = generate(cs, p);
        for (int k = 0; k < 10; ++k) {
            auto prices = random_grid_prices(rng, red.instance.variable_edges().size(), grid);
            auto w = best_response(red.instance, prices);
            auto d = decompose(red.instance, red.map, prices, w.edges);
            EXPECT_TRUE(all_pass(verify_properties(red.instance, red.map, d, p.delta, ShortcutMode::far)));
            auto dec = decode_assignment(cs, red.map, d.path, d.ranges(Role::R));
            EXPECT_TRUE(dec.conflicts.empty());
            EXPECT_GE(dec.satisfied, dec.far_edges);
            ++pairs;
        }
    }
    EXPECT_EQ(pairs, 60u);
}

TEST(Decompose, Deterministic) {
    auto red = worked_reduction();
    SplitMix64 rng(4);
    auto prices = random_grid_prices(rng, 12, {Rational(1, 2), Rational(1)});
    auto w = best_response(red.instance, prices);
    auto a = decompose(red.instance, red.map, prices, w.edges);
    auto b = decompose(red.instance, red.map, prices, w.edges);
    EXPECT_EQ(a.segments, b.segments);
}
