#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stacksp/buyer.hpp"
#include "stacksp/instance.hpp"
#include "stacksp/instance_io.hpp"
#include "stacksp/reduction.hpp"
#include "stacksp/simplex.hpp"

namespace stacksp {

// ---------------------------------------------------------------------------
// Constraint-satisfaction instances: a spine of m fixed edges with parallel
// constraint paths per block and forward shortcuts between them.

struct CSBlock {
    Rational cost;
    std::size_t paths = 1;

    friend bool operator==(const CSBlock&, const CSBlock&) = default;
};

// 0-based block and path indices.
struct CSShortcut {
    std::size_t from_block = 0;
    std::size_t from_path = 0;
    std::size_t to_block = 0;
    std::size_t to_path = 0;
    Rational cost;

    friend bool operator==(const CSShortcut&, const CSShortcut&) = default;
};

class CSInstance {
  public:
    CSInstance() = default;

    CSInstance(std::vector<CSBlock> blocks, std::vector<CSShortcut> shortcuts)
        : blocks_(std::move(blocks)), shortcuts_(std::move(shortcuts)) {
        if (blocks_.empty()) throw InputError("CS instance needs at least one block");
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            if (blocks_[i].cost <= 0) throw InputError("block " + std::to_string(i + 1) + ": cost must be positive");
            if (blocks_[i].paths == 0) throw InputError("block " + std::to_string(i + 1) + ": needs a constraint path");
        }
        for (const auto& s : shortcuts_) {
            if (s.from_block >= s.to_block) throw InputError("shortcuts must go strictly forward");
            if (s.to_block >= blocks_.size() || s.from_path >= blocks_[s.from_block].paths ||
                s.to_path >= blocks_[s.to_block].paths)
                throw InputError("shortcut endpoint out of range");
            if (s.cost < 0) throw InputError("shortcut cost must be nonnegative");
        }
    }

    [[nodiscard]] const std::vector<CSBlock>& blocks() const noexcept { return blocks_; }
    [[nodiscard]] const std::vector<CSShortcut>& shortcuts() const noexcept { return shortcuts_; }

    [[nodiscard]] Rational total_cost() const {
        Rational c(0);
        for (const auto& b : blocks_) c += b.cost;
        return c;
    }

    static std::string label(std::size_t block, std::size_t path) {
        return "b" + std::to_string(block + 1) + ":p" + std::to_string(path + 1);
    }

    friend bool operator==(const CSInstance&, const CSInstance&) = default;

  private:
    std::vector<CSBlock> blocks_;
    std::vector<CSShortcut> shortcuts_;
};

inline std::string serialize_cs(const CSInstance& cs) {
    std::ostringstream out;
    out << "# stacksp-cs v1\n";
    out << "blocks " << cs.blocks().size() << "\n";
    for (std::size_t i = 0; i < cs.blocks().size(); ++i)
        out << "block " << i + 1 << " " << to_string(cs.blocks()[i].cost) << " " << cs.blocks()[i].paths << "\n";
    for (const auto& s : cs.shortcuts())
        out << "shortcut " << s.from_block + 1 << " " << s.from_path + 1 << " " << s.to_block + 1 << " "
            << s.to_path + 1 << " " << to_string(s.cost) << "\n";
    return out.str();
}

inline CSInstance parse_cs(std::istream& in) {
    auto lines = detail::read_lines(in);
    std::size_t first = detail::first_content_line(lines);
    if (first == lines.size() || detail::trim(lines[first]) != "# stacksp-cs v1")
        throw ParseError(first + 1, "expected header '# stacksp-cs v1'");
    std::optional<std::size_t> count;
    std::vector<CSBlock> blocks;
    std::vector<CSShortcut> shortcuts;
    auto rational = [](const std::string& s, std::size_t lineno) {
        try {
            return parse_rational(s);
        } catch (const InputError& e) {
            throw ParseError(lineno, e.what());
        }
    };
    auto one_based = [](std::uint64_t v, std::size_t lineno) {
        if (v == 0) throw ParseError(lineno, "indices are 1-based");
        return static_cast<std::size_t>(v - 1);
    };
    for (std::size_t i = first + 1; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        std::string_view raw = detail::trim(lines[i]);
        if (raw.empty() || raw.front() == '#') continue;
        auto tok = detail::split_ws(raw);
        if (tok[0] == "blocks") {
            if (tok.size() != 2 || count) throw ParseError(lineno, "malformed 'blocks' line");
            count = detail::parse_count(tok[1], lineno, "block count");
        } else if (tok[0] == "block") {
            if (tok.size() != 4) throw ParseError(lineno, "malformed 'block' line");
            if (detail::parse_count(tok[1], lineno, "block index") != blocks.size() + 1)
                throw ParseError(lineno, "blocks out of order");
            CSBlock b{rational(tok[2], lineno), detail::parse_count(tok[3], lineno, "path count")};
            if (b.cost <= 0) throw ParseError(lineno, "block cost must be positive");
            if (b.paths == 0) throw ParseError(lineno, "block needs a constraint path");
            blocks.push_back(std::move(b));
        } else if (tok[0] == "shortcut") {
            if (tok.size() != 6) throw ParseError(lineno, "malformed 'shortcut' line");
            CSShortcut s;
            s.from_block = one_based(detail::parse_count(tok[1], lineno, "block index"), lineno);
            s.from_path = one_based(detail::parse_count(tok[2], lineno, "path index"), lineno);
            s.to_block = one_based(detail::parse_count(tok[3], lineno, "block index"), lineno);
            s.to_path = one_based(detail::parse_count(tok[4], lineno, "path index"), lineno);
            s.cost = rational(tok[5], lineno);
            if (s.from_block >= s.to_block) throw ParseError(lineno, "shortcuts must go strictly forward");
            if (s.cost < 0) throw ParseError(lineno, "negative cost");
            shortcuts.push_back(std::move(s));
        } else {
            throw ParseError(lineno, "unknown directive '" + tok[0] + "'");
        }
    }
    if (!count) throw ParseError(lines.size(), "missing 'blocks' line");
    if (*count != blocks.size())
        throw ParseError(lines.size(), "declared " + std::to_string(*count) + " blocks, found " +
                                           std::to_string(blocks.size()));
    try {
        return CSInstance(std::move(blocks), std::move(shortcuts));
    } catch (const InputError& e) {
        throw ParseError(lines.size(), e.what());
    }
}

inline CSInstance parse_cs(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_cs(in);
}

// Spine v_0..v_m, then u, v per constraint path in block order. Fixed edges:
// spine edges, then entry and exit per constraint path, then shortcuts.
inline PricingInstance cs_to_pricing_instance(const CSInstance& cs) {
    const std::size_t m = cs.blocks().size();
    std::vector<std::size_t> offset(m + 1, 0);
    for (std::size_t i = 0; i < m; ++i) offset[i + 1] = offset[i] + cs.blocks()[i].paths;
    auto u = [&](std::size_t i, std::size_t j) { return static_cast<VertexId>(m + 1 + 2 * (offset[i] + j)); };
    auto v = [&](std::size_t i, std::size_t j) { return u(i, j) + 1; };

    std::vector<FixedEdge> fixed;
    std::vector<VariableEdge> variable;
    for (std::size_t i = 0; i < m; ++i)
        fixed.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1), cs.blocks()[i].cost});
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < cs.blocks()[i].paths; ++j) {
            fixed.push_back({static_cast<VertexId>(i), u(i, j), Rational(0)});
            fixed.push_back({v(i, j), static_cast<VertexId>(i + 1), Rational(0)});
            variable.push_back({u(i, j), v(i, j), CSInstance::label(i, j)});
        }
    for (const auto& s : cs.shortcuts()) fixed.push_back({v(s.from_block, s.from_path), u(s.to_block, s.to_path), s.cost});
    return PricingInstance(m + 1 + 2 * offset[m], 0, static_cast<VertexId>(m), std::move(fixed), std::move(variable),
                           {"cs blocks " + std::to_string(m)});
}

// The reduction's gadget chain read as blocks of cost 1, one constraint path
// per answer, with the shortcut set carried over.
inline CSInstance reduction_to_cs(const PricingInstance& inst, const GadgetMap& map) {
    check_map_matches(inst, map);
    std::vector<CSBlock> blocks(map.size(), CSBlock{Rational(1), map.answer_count()});
    std::vector<CSShortcut> shortcuts;
    for (const auto& s : map.shortcuts()) shortcuts.push_back({s.from, s.from_answer, s.to, s.to_answer, s.cost});
    return CSInstance(std::move(blocks), std::move(shortcuts));
}

inline PriceAssignment half_pricing(const CSInstance& cs) {
    PriceAssignment p;
    for (std::size_t i = 0; i < cs.blocks().size(); ++i)
        for (std::size_t j = 0; j < cs.blocks()[i].paths; ++j)
            p.set(CSInstance::label(i, j), Scalar(cs.blocks()[i].cost / 2));
    return p;
}

// Half pricing expressed on the reduction instance's own labels.
inline PriceAssignment half_pricing(const GadgetMap& map) {
    PriceAssignment p;
    for (std::size_t i = 0; i < map.size(); ++i)
        for (std::uint32_t a = 0; a < map.answer_count(); ++a) p.set(GadgetMap::label(i, a), Scalar(Rational(1, 2)));
    return p;
}

// ---------------------------------------------------------------------------
// Exact revenue maximization.

struct FixedPathResult {
    LpStatus status = LpStatus::infeasible;
    PriceVector prices; // P's variable edges from the LP, INF elsewhere
    Rational revenue;
    std::size_t competing_paths = 0;
    std::size_t constraints = 0;
    bool pruned = false; // skipped: the LP could not reach the caller's cutoff
};

// Maximum revenue from pricings under which P is a cheapest path, with every
// variable edge off P priced INF. One constraint per competing path Q of the
// remaining graph: the P-edges Q skips may cost at most fixed(Q) - fixed(P).
//
// With a cutoff, the LP is skipped (pruned = true) when a cheap bound shows
// its value is below the cutoff, or, with `cutoff_strict` unset, at most the
// cutoff.
inline FixedPathResult fixed_path_max_revenue(const PricingInstance& inst, const EdgePath& path,
                                              std::uint64_t path_budget,
                                              const std::optional<Rational>& cutoff = std::nullopt,
                                              bool cutoff_strict = true) {
    check_simple_path(inst, path);
    std::vector<std::size_t> on_path;
    std::vector<int> slot(inst.variable_edges().size(), -1);
    for (EdgeRef e : path)
        if (e.kind == EdgeKind::variable) {
            slot[e.index] = static_cast<int>(on_path.size());
            on_path.push_back(e.index);
        }
    const Rational base = fixed_part(inst, path);
    const std::size_t n = on_path.size();

    EdgeFilter allow = [&](EdgeRef e) { return e.kind == EdgeKind::fixed || slot[e.index] >= 0; };
    const std::uint64_t competitors = count_paths(inst, allow);
    if (competitors > path_budget)
        throw BudgetError("competing path count " + std::to_string(competitors) + " exceeds limit " +
                          std::to_string(path_budget));
    if (n > 63) throw BudgetError("path carries more than 63 priced edges");

    // Cheapest fixed cost of a competing path per set of P-edges it uses: a
    // dynamic program over (vertex, used set), equivalent to listing every
    // competing path and keeping the tightest constraint per subset.
    std::vector<std::map<std::uint64_t, Rational>> reach(inst.vertex_count());
    reach[inst.source()].emplace(0, Rational(0));
    for (VertexId v : inst.topological_order()) {
        if (v == inst.sink()) continue;
        for (const auto& [used, cost] : reach[v])
            for (EdgeRef e : inst.out_edges(v)) {
                if (!allow(e)) continue;
                std::uint64_t next = used;
                Rational c = cost;
                if (e.kind == EdgeKind::variable) next |= std::uint64_t{1} << slot[e.index];
                else c += inst.fixed_edges()[e.index].cost;
                auto [it, fresh] = reach[inst.head(e)].emplace(next, c);
                if (!fresh && c < it->second) it->second = std::move(c);
            }
        reach[v].clear();
    }
    const std::uint64_t everything = n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n));
    std::vector<std::pair<std::uint64_t, Rational>> tightest; // skipped set, bound
    for (const auto& [used, cost] : reach[inst.sink()]) tightest.emplace_back(everything & ~used, cost - base);

    FixedPathResult out;
    out.competing_paths = competitors;
    out.constraints = tightest.size();
    out.prices.assign(inst.variable_edges().size(), Scalar::infinity());

    // Drop rows implied by a row over a superset with a bound no larger.
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (std::size_t x = 0; x < tightest.size(); ++x) {
        const auto& [skipped, bound] = tightest[x];
        if (skipped == 0) {
            if (bound < 0) return out; // a cheaper route over the same priced edges
            continue;
        }
        bool implied = false;
        for (std::size_t y = 0; y < tightest.size() && !implied; ++y) {
            const auto& [other, other_bound] = tightest[y];
            if (y == x || (other & skipped) != skipped) continue;
            implied = other_bound < bound || (other_bound == bound && (other != skipped || y < x));
        }
        if (implied) continue;
        std::vector<Rational> row(n);
        for (std::size_t k = 0; k < n; ++k) row[k] = ((skipped >> k) & 1u) ? 1 : 0;
        rows.push_back(std::move(row));
        rhs.push_back(bound);
    }
    if (cutoff) {
        // Each price is capped by the smallest bound of a row containing it;
        // a row's bound plus the caps outside it bounds the objective.
        std::vector<std::optional<Rational>> cap(n);
        for (std::size_t x = 0; x < rows.size(); ++x)
            for (std::size_t k = 0; k < n; ++k)
                if (rows[x][k] != 0 && (!cap[k] || rhs[x] < *cap[k])) cap[k] = rhs[x];
        if (std::all_of(cap.begin(), cap.end(), [](const auto& c) { return c.has_value(); })) {
            Rational bound(0);
            for (const auto& c : cap) bound += *c;
            for (std::size_t x = 0; x < rows.size(); ++x) {
                Rational b = rhs[x];
                for (std::size_t k = 0; k < n; ++k)
                    if (rows[x][k] == 0) b += *cap[k];
                bound = std::min(bound, b);
            }
            if (bound < *cutoff || (!cutoff_strict && bound == *cutoff)) {
                out.pruned = true;
                return out;
            }
        }
    }
    auto lp = maximize(std::vector<Rational>(n, Rational(1)), rows, rhs);
    out.status = lp.status;
    if (lp.status != LpStatus::optimal) return out;
    for (std::size_t k = 0; k < n; ++k) out.prices[on_path[k]] = Scalar(lp.x[k]);
    out.revenue = lp.objective;
    return out;
}

struct OptimalPricing {
    LpStatus status = LpStatus::optimal;
    PriceAssignment prices;
    PathWitness witness;
    Rational revenue;
    std::size_t paths_examined = 0;
    std::size_t paths_total = 0;
};

// Fix the bought path, price everything else at INF, solve the LP; the best
// path over all candidates is optimal. Candidates are visited by decreasing
// upper bound baseline - fixed(P), so the search stops once no remaining path
// can beat the incumbent. Ties go to the lexicographically smallest path.
inline OptimalPricing optimal_pricing(const PricingInstance& inst, std::uint64_t path_budget) {
    auto paths = all_paths(inst, path_budget);
    const auto baseline = fixed_baseline_cost(inst);

    std::vector<Rational> fixed_cost(paths.size());
    for (std::size_t k = 0; k < paths.size(); ++k) fixed_cost[k] = fixed_part(inst, paths[k]);
    std::vector<std::size_t> order(paths.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return fixed_cost[x] < fixed_cost[y]; });

    OptimalPricing out;
    out.paths_total = paths.size();
    std::optional<std::size_t> best;
    FixedPathResult best_lp;
    for (auto k : order) {
        if (baseline) {
            Rational ub = *baseline - fixed_cost[k];
            if (ub < 0 || (best && ub < best_lp.revenue)) break;
            if (best && ub == best_lp.revenue && k > *best) continue; // can at best tie, and loses the tie
        }
        ++out.paths_examined;
        std::optional<Rational> cutoff;
        if (best) cutoff = best_lp.revenue;
        auto lp = fixed_path_max_revenue(inst, paths[k], path_budget, cutoff, !best || k < *best);
        if (lp.status == LpStatus::unbounded) {
            out.status = LpStatus::unbounded;
            out.witness.edges = paths[k];
            return out;
        }
        if (lp.status != LpStatus::optimal) continue;
        if (!best || lp.revenue > best_lp.revenue || (lp.revenue == best_lp.revenue && k < *best)) {
            best = k;
            best_lp = std::move(lp);
        }
    }
    if (!best) throw InfeasibleError("no source-sink path admits a pricing");

    auto response = best_response(inst, best_lp.prices);
    auto claimed = make_witness(inst, best_lp.prices, paths[*best]);
    if (response.cost != claimed.cost || response.revenue != best_lp.revenue)
        throw std::logic_error("optimal pricing failed its best-response check");
    out.prices = PriceAssignment::from_vector(inst, best_lp.prices);
    out.witness = std::move(response);
    out.revenue = best_lp.revenue;
    return out;
}

// ---------------------------------------------------------------------------
// Grid oracle.

// {0} together with every positive difference of fixed path costs and half of it.
inline std::vector<Rational> default_candidates(const PricingInstance& inst, std::uint64_t path_budget) {
    std::set<Rational> costs;
    enumerate_paths(inst, path_budget, [&](const EdgePath& p) { costs.insert(fixed_part(inst, p)); });
    std::set<Rational> out{Rational(0)};
    for (const auto& a : costs)
        for (const auto& b : costs)
            if (a > b) {
                out.insert(a - b);
                out.insert((a - b) / 2);
            }
    return {out.begin(), out.end()};
}

// Inclusion-maximal variable-edge sets of source-sink paths.
inline std::vector<std::vector<std::size_t>> maximal_supports(const PricingInstance& inst, std::uint64_t path_budget) {
    std::set<std::vector<std::size_t>> supports;
    enumerate_paths(inst, path_budget, [&](const EdgePath& p) {
        std::vector<std::size_t> s;
        for (EdgeRef e : p)
            if (e.kind == EdgeKind::variable) s.push_back(e.index);
        std::sort(s.begin(), s.end());
        supports.insert(std::move(s));
    });
    std::vector<std::vector<std::size_t>> all(supports.begin(), supports.end()), out;
    for (const auto& s : all) {
        bool dominated = false;
        for (const auto& t : all)
            if (t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                dominated = true;
                break;
            }
        if (!dominated) out.push_back(s);
    }
    return out;
}

struct GridResult {
    Rational revenue;
    PriceVector prices;
    std::uint64_t pricings = 0;
};

namespace detail {

inline std::uint64_t grid_size(std::size_t choices, std::size_t edges, std::uint64_t budget) {
    auto n = checked_pow(choices, static_cast<unsigned>(edges), budget);
    if (!n) throw BudgetError("grid of " + std::to_string(choices) + "^" + std::to_string(edges) +
                              " pricings exceeds budget " + std::to_string(budget));
    return *n;
}

// Every pricing of `support` from candidates + INF, INF elsewhere.
template <typename Visit>
void for_each_grid_pricing(const PricingInstance& inst, const std::vector<std::size_t>& support,
                           const std::vector<Rational>& candidates, Visit&& visit) {
    const std::size_t choices = candidates.size() + 1;
    PriceVector prices(inst.variable_edges().size(), Scalar::infinity());
    std::vector<std::size_t> digit(support.size(), 0);
    for (;;) {
        for (std::size_t k = 0; k < support.size(); ++k)
            prices[support[k]] = digit[k] < candidates.size() ? Scalar(candidates[digit[k]]) : Scalar::infinity();
        visit(std::as_const(prices));
        std::size_t k = digit.size();
        while (k > 0 && ++digit[k - 1] == choices) digit[--k] = 0;
        if (k == 0) break;
    }
}

} // namespace detail

// Maximum best-response revenue over pricings drawn from candidates + INF.
// A pricing's revenue is unchanged when variable edges off its bought path
// move to INF, so it suffices to range over each maximal support.
inline GridResult grid_oracle(const PricingInstance& inst, const std::vector<Rational>& candidates,
                              std::uint64_t budget = 5'000'000, std::uint64_t path_budget = 1'000'000) {
    for (const auto& c : candidates)
        if (c < 0) throw InputError("grid candidates must be nonnegative");
    auto supports = maximal_supports(inst, path_budget);
    std::uint64_t total = 0;
    for (const auto& s : supports) {
        total += detail::grid_size(candidates.size() + 1, s.size(), budget);
        if (total > budget) throw BudgetError("grid oracle needs more than " + std::to_string(budget) + " pricings");
    }
    GridResult out;
    out.prices.assign(inst.variable_edges().size(), Scalar::infinity());
    for (const auto& s : supports)
        detail::for_each_grid_pricing(inst, s, candidates, [&](const PriceVector& p) {
            ++out.pricings;
            try {
                auto w = best_response(inst, p);
                if (w.revenue > out.revenue) {
                    out.revenue = w.revenue;
                    out.prices = p;
                }
            } catch (const InfeasibleError&) {
            }
        });
    return out;
}

// Grid maximum restricted to pricings of P's variable edges (INF elsewhere)
// under which the client's choice costs and earns exactly what P does.
inline GridResult grid_oracle_for_path(const PricingInstance& inst, const EdgePath& path,
                                       const std::vector<Rational>& candidates, std::uint64_t budget = 5'000'000) {
    check_simple_path(inst, path);
    std::vector<std::size_t> support;
    for (EdgeRef e : path)
        if (e.kind == EdgeKind::variable) support.push_back(e.index);
    detail::grid_size(candidates.size() + 1, support.size(), budget);
    GridResult out;
    out.prices.assign(inst.variable_edges().size(), Scalar::infinity());
    bool found = false;
    detail::for_each_grid_pricing(inst, support, candidates, [&](const PriceVector& p) {
        ++out.pricings;
        for (auto k : support)
            if (p[k].is_inf()) return;
        auto w = best_response(inst, p);
        if (w.cost != path_cost(inst, p, path) || w.revenue != path_revenue(inst, p, path)) return;
        if (!found || w.revenue > out.revenue) {
            found = true;
            out.revenue = w.revenue;
            out.prices = p;
        }
    });
    return out;
}

} // namespace stacksp
