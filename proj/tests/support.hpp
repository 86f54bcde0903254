#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stacksp/stacksp.hpp"

namespace stacksp::testing {

inline Formula worked_formula() { return parse_dimacs(std::string_view("p cnf 3 2\n1 2 0\n1 3 0\n")); }

inline Formula unsat2_formula() {
    return parse_dimacs(std::string_view("p cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n"));
}

// n=3, 5 clauses, every variable five times.
inline Formula regular_n3_formula() {
    return parse_dimacs(std::string_view("p cnf 3 5\n1 2 3 0\n-1 2 3 0\n1 -2 3 0\n1 2 -3 0\n-1 -2 3 0\n"));
}

// The worked Max-2SAT example in its usual order. Lexicographic order puts
// (C2, x1) before (C2, x3); the worked order lists x3 first.
inline const std::vector<std::size_t>& worked_perm() {
    static const std::vector<std::size_t> perm{0, 1, 3, 2};
    return perm;
}

inline GenParams worked_params(ShortcutMode mode = ShortcutMode::all) {
    GenParams p;
    p.shortcut_mode = mode;
    p.order_mode = OrderMode::explicit_perm;
    p.perm = worked_perm();
    p.delta = Rational(1, 4);
    return p;
}

inline Reduction worked_reduction(ShortcutMode mode = ShortcutMode::all) {
    ConstraintSystem cs(worked_formula(), 1);
    return generate(cs, worked_params(mode));
}

// Prices keyed by label; unlisted variable edges are INF.
inline PriceVector prices_of(const PricingInstance& inst, const std::map<std::string, Rational>& listed) {
    PriceVector p(inst.variable_edges().size(), Scalar::infinity());
    for (const auto& [label, value] : listed) p.at(inst.variable_index(label).value()) = Scalar(value);
    return p;
}

inline std::vector<std::string> variable_labels(const PricingInstance& inst, const EdgePath& path) {
    std::vector<std::string> out;
    for (EdgeRef e : path)
        if (e.kind == EdgeKind::variable) out.push_back(inst.variable_edges()[e.index].label);
    return out;
}

inline bool uses_shortcut(const GadgetMap& map, const EdgePath& path) {
    for (EdgeRef e : path)
        if (e.kind == EdgeKind::fixed && map.shortcut_of_fixed(e.index)) return true;
    return false;
}

// One gadget with k answer routes: spine cost 1, k variable edges.
inline PricingInstance single_gadget(std::size_t k) { return cs_to_pricing_instance(CSInstance({{Rational(1), k}}, {})); }

// Exhaustive best response: minimum cost, then maximum revenue, over all paths.
struct OracleResult {
    bool feasible = false;
    Rational cost;
    Rational revenue;
};

inline OracleResult oracle_best(const PricingInstance& inst, const PriceVector& prices, std::uint64_t limit = 10'000) {
    OracleResult out;
    enumerate_paths(inst, limit, [&](const EdgePath& path) {
        for (EdgeRef e : path)
            if (e.kind == EdgeKind::variable && prices[e.index].is_inf()) return;
        Rational c = path_cost(inst, prices, path);
        Rational r = c - fixed_part(inst, path);
        if (!out.feasible || c < out.cost || (c == out.cost && r > out.revenue)) {
            out.feasible = true;
            out.cost = c;
            out.revenue = r;
        }
    });
    return out;
}

// A random layered DAG with a fixed-cost spine from source to sink.
inline PricingInstance random_dag(SplitMix64& rng, std::size_t n, std::size_t extra_fixed, std::size_t variable) {
    std::vector<FixedEdge> fixed;
    std::vector<VariableEdge> var;
    for (VertexId v = 0; v + 1 < n; ++v) fixed.push_back({v, v + 1, Rational(static_cast<long>(rng.below(3)))});
    auto pick = [&] {
        VertexId a = static_cast<VertexId>(rng.below(n - 1));
        VertexId b = static_cast<VertexId>(a + 1 + rng.below(n - 1 - a));
        return std::pair{a, b};
    };
    for (std::size_t k = 0; k < extra_fixed; ++k) {
        auto [a, b] = pick();
        fixed.push_back({a, b, Rational(static_cast<long>(rng.below(5)), 2)});
    }
    for (std::size_t k = 0; k < variable; ++k) {
        auto [a, b] = pick();
        var.push_back({a, b, "e" + std::to_string(k)});
    }
    return PricingInstance(n, 0, static_cast<VertexId>(n - 1), std::move(fixed), std::move(var));
}

inline PriceVector random_grid_prices(SplitMix64& rng, std::size_t count, const std::vector<Rational>& grid) {
    PriceVector p(count);
    for (auto& x : p) {
        auto k = rng.below(grid.size() + 1);
        x = k < grid.size() ? Scalar(grid[k]) : Scalar::infinity();
    }
    return p;
}

} // namespace stacksp::testing
