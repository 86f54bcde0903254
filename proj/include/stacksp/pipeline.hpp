#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stacksp/decomposition.hpp"
#include "stacksp/random.hpp"
#include "stacksp/reduction.hpp"
#include "stacksp/solvers.hpp"

namespace stacksp {

struct VerifyOptions {
    GenParams params;
    std::optional<Rational> delta; // defaults to 1/M
    std::uint64_t max_paths = 2'000'000;
    std::size_t random_pricings = 20;
    std::size_t max_sat_variables = 20;
};

struct VerifyLine {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct VerifyReport {
    std::size_t constraints = 0;
    bool satisfiable = false;
    std::optional<Rational> yes_revenue;
    Rational optimal_revenue;
    Rational half_revenue;
    std::size_t pricings_checked = 0;
    std::vector<VerifyLine> checks;

    [[nodiscard]] bool ok() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    // M over the optimal revenue; nullopt when the optimum is 0.
    [[nodiscard]] std::optional<Rational> ratio() const {
        if (optimal_revenue == 0) return std::nullopt;
        return Rational(static_cast<long>(constraints)) / optimal_revenue;
    }
};

namespace detail {

inline bool path_has_shortcut(const GadgetMap& map, const EdgePath& path) {
    for (EdgeRef e : path)
        if (e.kind == EdgeKind::fixed && map.shortcut_of_fixed(e.index)) return true;
    return false;
}

} // namespace detail

// End to end on one formula: build the instance, check the yes pricing when
// the formula is satisfiable, solve exactly, check the half pricing, and run
// the decomposition checks under a battery of pricings.
inline VerifyReport verify_formula(const Formula& formula, const VerifyOptions& opt) {
    ConstraintSystem cs(formula, opt.params.ell);
    GenParams params = opt.params;
    params.delta = opt.delta ? *opt.delta : Rational(1, static_cast<long>(cs.size()));
    auto red = generate(cs, params);
    const auto& inst = red.instance;
    const auto& map = red.map;
    const std::size_t m = cs.size();
    const Rational big_m(static_cast<long>(m));

    VerifyReport rep;
    rep.constraints = m;
    auto check = [&](std::string name, bool passed, std::string detail) {
        rep.checks.push_back({std::move(name), passed, std::move(detail)});
    };

    std::vector<PriceVector> battery;
    auto truth = find_satisfying_truth(formula, opt.max_sat_variables);
    rep.satisfiable = truth.has_value();
    if (truth) {
        auto yes = yes_pricing(cs, map, assignment_from_truth(cs, *truth)).resolve(inst);
        auto w = best_response(inst, yes);
        rep.yes_revenue = w.revenue;
        bool clean = !detail::path_has_shortcut(map, w.edges);
        check("yes_pricing", w.revenue == big_m && w.cost == big_m && clean,
              "revenue " + to_string(w.revenue) + " cost " + to_string(w.cost) + (clean ? "" : " uses a shortcut"));
        battery.push_back(std::move(yes));
    }

    auto exact = optimal_pricing(inst, opt.max_paths);
    if (exact.status == LpStatus::unbounded) throw InfeasibleError("exact solver reports an unbounded revenue");
    rep.optimal_revenue = exact.revenue;
    bool exact_ok = exact.revenue <= big_m && (!rep.yes_revenue || exact.revenue >= *rep.yes_revenue);

    auto half = half_pricing(map).resolve(inst);
    rep.half_revenue = best_response(inst, half).revenue;
    check("half_pricing", rep.half_revenue == big_m / 2,
          "revenue " + to_string(rep.half_revenue));
    exact_ok = exact_ok && exact.revenue >= rep.half_revenue;
    check("exact_solver", exact_ok, "revenue " + to_string(exact.revenue));
    battery.push_back(std::move(half));
    battery.push_back(exact.prices.resolve(inst));

    const std::vector<Rational> grid{Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1),
                                     Rational(3, 2)};
    SplitMix64 rng(params.seed);
    for (std::size_t k = 0; k < opt.random_pricings; ++k) {
        PriceVector p(inst.variable_edges().size());
        for (auto& x : p) {
            auto pick = rng.below(grid.size() + 1);
            x = pick < grid.size() ? Scalar(grid[pick]) : Scalar::infinity();
        }
        battery.push_back(std::move(p));
    }

    std::size_t failures = 0;
    std::string first_failure;
    for (const auto& prices : battery) {
        PathWitness w;
        try {
            w = best_response(inst, prices);
        } catch (const InfeasibleError&) {
            continue;
        }
        ++rep.pricings_checked;
        auto d = decompose(inst, map, prices, w.edges);
        auto props = verify_properties(inst, map, d, params.delta, params.shortcut_mode);
        auto dec = decode_assignment(cs, map, d.path, d.ranges(Role::R));
        std::string why;
        for (const auto& c : props.checks)
            if (!c.passed) why = c.name + ": " + c.detail;
        if (!dec.conflicts.empty()) why = "decode conflict: " + dec.conflicts.front();
        if (dec.satisfied < dec.far_edges) why = "decoded assignment satisfies fewer than |F| constraints";
        if (!why.empty()) {
            if (failures++ == 0) first_failure = why;
        }
    }
    check("decomposition", failures == 0,
          "pricings " + std::to_string(rep.pricings_checked) +
              (failures ? " failures " + std::to_string(failures) + " first " + first_failure : ""));
    return rep;
}

} // namespace stacksp
