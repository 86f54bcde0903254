#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stacksp/instance.hpp"

namespace stacksp {

// The client's choice: minimum cost, then maximum seller revenue, then the
// lexicographically smallest vertex sequence (smallest edge identity between
// equal vertex pairs). INF-priced edges are treated as deleted.
//
// Backward dynamic programming over the topological order: best[v] holds the
// optimal (cost, revenue) suffix from v to the sink. Every optimal path
// follows an optimal edge at each vertex, so the greedy walk from the source
// that takes the smallest optimal head yields the smallest vertex sequence.
inline PathWitness best_response(const PricingInstance& inst, const PriceVector& prices) {
    if (!inst.acyclic()) throw InputError("best response requires an acyclic instance");
    if (prices.size() != inst.variable_edges().size())
        throw InputError("price vector size does not match variable edge count");

    struct Label {
        Rational cost;
        Rational revenue;
        EdgeRef next;
    };
    std::vector<std::optional<Label>> best(inst.vertex_count());
    best[inst.sink()] = Label{Rational(0), Rational(0), {}};

    const auto& topo = inst.topological_order();
    Rational cand_cost, cand_rev;
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        VertexId v = *it;
        if (v == inst.sink()) continue;
        std::optional<Label> here;
        for (EdgeRef e : inst.out_edges(v)) {
            const auto& tail_best = best[inst.head(e)];
            if (!tail_best) continue;
            if (e.kind == EdgeKind::fixed) {
                cand_cost = inst.fixed_edges()[e.index].cost + tail_best->cost;
                cand_rev = tail_best->revenue;
            } else {
                const Scalar& p = prices[e.index];
                if (p.is_inf()) continue;
                cand_cost = p.value() + tail_best->cost;
                cand_rev = p.value() + tail_best->revenue;
            }
            // Out-edges come sorted by (head, identity), so only strict
            // improvements replace the incumbent.
            bool better = !here || cand_cost < here->cost ||
                          (cand_cost == here->cost && cand_rev > here->revenue);
            if (better) here = Label{cand_cost, cand_rev, e};
        }
        best[v] = std::move(here);
    }

    const auto& root = best[inst.source()];
    if (!root) throw InfeasibleError("sink unreachable after deleting INF-priced edges");

    PathWitness w;
    w.cost = root->cost;
    w.revenue = root->revenue;
    for (VertexId v = inst.source(); v != inst.sink();) {
        EdgeRef e = best[v]->next;
        w.edges.push_back(e);
        v = inst.head(e);
    }
    return w;
}

inline PathWitness best_response(const PricingInstance& inst, const PriceAssignment& prices) {
    return best_response(inst, prices.resolve(inst));
}

// Minimum cost of a source-sink path using fixed edges only; nullopt when no
// such path exists.
inline std::optional<Rational> fixed_baseline_cost(const PricingInstance& inst) {
    if (!inst.acyclic()) throw InputError("baseline requires an acyclic instance");
    std::vector<std::optional<Rational>> dist(inst.vertex_count());
    dist[inst.source()] = Rational(0);
    for (VertexId v : inst.topological_order()) {
        if (!dist[v]) continue;
        for (EdgeRef e : inst.out_edges(v)) {
            if (e.kind != EdgeKind::fixed) continue;
            Rational c = *dist[v] + inst.fixed_edges()[e.index].cost;
            auto& d = dist[inst.head(e)];
            if (!d || c < *d) d = std::move(c);
        }
    }
    return dist[inst.sink()];
}

// Edge predicate used to restrict path enumeration to a subgraph.
using EdgeFilter = std::function<bool(EdgeRef)>;

inline bool all_edges(EdgeRef) { return true; }

// Number of source-sink paths, saturating at uint64 max.
inline std::uint64_t count_paths(const PricingInstance& inst, const EdgeFilter& allow = all_edges) {
    if (!inst.acyclic()) throw InputError("path counting requires an acyclic instance");
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> ways(inst.vertex_count(), 0);
    ways[inst.sink()] = 1;
    const auto& topo = inst.topological_order();
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        VertexId v = *it;
        if (v == inst.sink()) continue;
        std::uint64_t total = 0;
        for (EdgeRef e : inst.out_edges(v)) {
            if (!allow(e)) continue;
            std::uint64_t w = ways[inst.head(e)];
            total = (cap - total < w) ? cap : total + w;
        }
        ways[v] = total;
    }
    return ways[inst.source()];
}

// Visits every simple source-sink path exactly once, in lexicographic
// (vertex sequence, edge identity) order. Throws BudgetError before visiting
// anything when the path count exceeds `limit`.
template <typename Visitor>
void enumerate_paths(const PricingInstance& inst, std::uint64_t limit, Visitor&& visit,
                     const EdgeFilter& allow = all_edges) {
    std::uint64_t total = count_paths(inst, allow);
    if (total > limit) {
        std::string count = total == std::numeric_limits<std::uint64_t>::max()
                                ? "at least " + std::to_string(total)
                                : std::to_string(total);
        throw BudgetError("path count " + count + " exceeds limit " + std::to_string(limit));
    }
    if (total == 0) return;

    // Prune branches that cannot reach the sink.
    std::vector<bool> alive(inst.vertex_count(), false);
    alive[inst.sink()] = true;
    const auto& topo = inst.topological_order();
    for (auto it = topo.rbegin(); it != topo.rend(); ++it)
        for (EdgeRef e : inst.out_edges(*it))
            if (allow(e) && alive[inst.head(e)]) alive[*it] = true;

    EdgePath path;
    std::vector<std::pair<VertexId, std::size_t>> stack{{inst.source(), 0}};
    while (!stack.empty()) {
        auto [v, next] = stack.back();
        if (v == inst.sink()) {
            visit(std::as_const(path));
            stack.pop_back();
            if (!path.empty()) path.pop_back();
            continue;
        }
        auto edges = inst.out_edges(v);
        while (next < edges.size() && !(allow(edges[next]) && alive[inst.head(edges[next])])) ++next;
        if (next == edges.size()) {
            stack.pop_back();
            if (!path.empty()) path.pop_back();
            continue;
        }
        stack.back().second = next + 1;
        path.push_back(edges[next]);
        stack.emplace_back(inst.head(edges[next]), 0);
    }
}

inline std::vector<EdgePath> all_paths(const PricingInstance& inst, std::uint64_t limit,
                                       const EdgeFilter& allow = all_edges) {
    std::vector<EdgePath> out;
    enumerate_paths(inst, limit, [&](const EdgePath& p) { out.push_back(p); }, allow);
    return out;
}

} // namespace stacksp
