#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "stacksp/errors.hpp"
#include "stacksp/scalar.hpp"

namespace stacksp {

using VertexId = std::uint32_t;

enum class EdgeKind : std::uint8_t { fixed = 0, variable = 1 };

// Edge identity is positional: (kind, index into that kind's edge list).
struct EdgeRef {
    EdgeKind kind = EdgeKind::fixed;
    std::size_t index = 0;

    friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

inline EdgeRef fixed_edge(std::size_t i) { return {EdgeKind::fixed, i}; }
inline EdgeRef variable_edge(std::size_t i) { return {EdgeKind::variable, i}; }

struct FixedEdge {
    VertexId tail = 0;
    VertexId head = 0;
    Rational cost{0};

    friend bool operator==(const FixedEdge&, const FixedEdge&) = default;
};

struct VariableEdge {
    VertexId tail = 0;
    VertexId head = 0;
    std::string label;

    friend bool operator==(const VariableEdge&, const VariableEdge&) = default;
};

// A directed graph with fixed-cost and pricable edges. Construction checks only
// that vertex ids are in range; validate_instance() reports every other
// violated invariant. Read-only after construction.
class PricingInstance {
  public:
    PricingInstance() = default;

    PricingInstance(std::size_t vertex_count, VertexId source, VertexId sink,
                    std::vector<FixedEdge> fixed, std::vector<VariableEdge> variable,
                    std::vector<std::string> meta = {}, bool no_fixed_baseline = false)
        : vertex_count_(vertex_count), source_(source), sink_(sink), fixed_(std::move(fixed)),
          variable_(std::move(variable)), meta_(std::move(meta)),
          no_fixed_baseline_(no_fixed_baseline) {
        if (vertex_count_ == 0) throw InputError("instance needs at least one vertex");
        auto check = [&](VertexId v, const char* what) {
            if (v >= vertex_count_)
                throw InputError(std::string("unknown vertex id ") + std::to_string(v) + " (" +
                                 what + ")");
        };
        check(source_, "source");
        check(sink_, "sink");
        for (const auto& e : fixed_) {
            check(e.tail, "fixed edge tail");
            check(e.head, "fixed edge head");
        }
        for (const auto& e : variable_) {
            check(e.tail, "variable edge tail");
            check(e.head, "variable edge head");
        }
        build_index();
    }

    [[nodiscard]] std::size_t vertex_count() const noexcept { return vertex_count_; }
    [[nodiscard]] VertexId source() const noexcept { return source_; }
    [[nodiscard]] VertexId sink() const noexcept { return sink_; }
    [[nodiscard]] const std::vector<FixedEdge>& fixed_edges() const noexcept { return fixed_; }
    [[nodiscard]] const std::vector<VariableEdge>& variable_edges() const noexcept {
        return variable_;
    }
    [[nodiscard]] const std::vector<std::string>& meta() const noexcept { return meta_; }
    [[nodiscard]] bool no_fixed_baseline() const noexcept { return no_fixed_baseline_; }

    [[nodiscard]] VertexId tail(EdgeRef e) const {
        return e.kind == EdgeKind::fixed ? fixed_.at(e.index).tail : variable_.at(e.index).tail;
    }
    [[nodiscard]] VertexId head(EdgeRef e) const {
        return e.kind == EdgeKind::fixed ? fixed_.at(e.index).head : variable_.at(e.index).head;
    }

    // Outgoing edges sorted by (head, kind, index); DFS over this order visits
    // paths in lexicographic vertex-sequence order.
    [[nodiscard]] std::span<const EdgeRef> out_edges(VertexId v) const {
        return {out_.data() + out_begin_[v], out_.data() + out_begin_[v + 1]};
    }

    // Topological order of all vertices, or empty when the graph has a cycle.
    [[nodiscard]] const std::vector<VertexId>& topological_order() const noexcept { return topo_; }
    [[nodiscard]] bool acyclic() const noexcept { return topo_.size() == vertex_count_; }

    [[nodiscard]] std::optional<std::size_t> variable_index(const std::string& label) const {
        auto it = label_index_.find(label);
        if (it == label_index_.end()) return std::nullopt;
        return it->second;
    }

    friend bool operator==(const PricingInstance& a, const PricingInstance& b) {
        return a.vertex_count_ == b.vertex_count_ && a.source_ == b.source_ &&
               a.sink_ == b.sink_ && a.fixed_ == b.fixed_ && a.variable_ == b.variable_ &&
               a.meta_ == b.meta_ && a.no_fixed_baseline_ == b.no_fixed_baseline_;
    }

  private:
    void build_index() {
        std::vector<std::size_t> degree(vertex_count_ + 1, 0);
        for (const auto& e : fixed_) ++degree[e.tail];
        for (const auto& e : variable_) ++degree[e.tail];
        out_begin_.assign(vertex_count_ + 1, 0);
        for (std::size_t v = 0; v < vertex_count_; ++v) out_begin_[v + 1] = out_begin_[v] + degree[v];
        out_.resize(out_begin_[vertex_count_]);
        std::vector<std::size_t> fill(out_begin_.begin(), out_begin_.end() - 1);
        for (std::size_t i = 0; i < fixed_.size(); ++i) out_[fill[fixed_[i].tail]++] = fixed_edge(i);
        for (std::size_t i = 0; i < variable_.size(); ++i)
            out_[fill[variable_[i].tail]++] = variable_edge(i);
        for (std::size_t v = 0; v < vertex_count_; ++v) {
            std::sort(out_.begin() + static_cast<std::ptrdiff_t>(out_begin_[v]),
                      out_.begin() + static_cast<std::ptrdiff_t>(out_begin_[v + 1]),
                      [this](EdgeRef a, EdgeRef b) {
                          auto ha = head(a), hb = head(b);
                          if (ha != hb) return ha < hb;
                          return a < b;
                      });
        }

        // Kahn's algorithm; smallest-id-first keeps the order deterministic.
        std::vector<std::size_t> indeg(vertex_count_, 0);
        for (const auto& e : out_) ++indeg[head(e)];
        std::vector<VertexId> ready;
        for (VertexId v = 0; v < vertex_count_; ++v)
            if (indeg[v] == 0) ready.push_back(v);
        topo_.clear();
        std::size_t next = 0;
        while (next < ready.size()) {
            VertexId v = ready[next++];
            topo_.push_back(v);
            for (EdgeRef e : out_edges(v))
                if (--indeg[head(e)] == 0) ready.push_back(head(e));
        }
        if (topo_.size() != vertex_count_) topo_.clear();

        label_index_.clear();
        for (std::size_t i = 0; i < variable_.size(); ++i) label_index_.emplace(variable_[i].label, i);
    }

    std::size_t vertex_count_ = 1;
    VertexId source_ = 0;
    VertexId sink_ = 0;
    std::vector<FixedEdge> fixed_;
    std::vector<VariableEdge> variable_;
    std::vector<std::string> meta_;
    bool no_fixed_baseline_ = false;

    std::vector<std::size_t> out_begin_{0, 0};
    std::vector<EdgeRef> out_;
    std::vector<VertexId> topo_{0};
    std::unordered_map<std::string, std::size_t> label_index_;
};

// Prices aligned with PricingInstance::variable_edges().
using PriceVector = std::vector<Scalar>;

// Label-keyed pricing, as read from and written to pricing files.
class PriceAssignment {
  public:
    PriceAssignment() = default;
    explicit PriceAssignment(std::map<std::string, Scalar> prices) : prices_(std::move(prices)) {}

    static PriceAssignment from_vector(const PricingInstance& inst, const PriceVector& prices) {
        if (prices.size() != inst.variable_edges().size())
            throw InputError("price vector size does not match variable edge count");
        PriceAssignment out;
        for (std::size_t i = 0; i < prices.size(); ++i)
            out.prices_[inst.variable_edges()[i].label] = prices[i];
        return out;
    }

    void set(const std::string& label, Scalar price) { prices_[label] = std::move(price); }

    [[nodiscard]] const std::map<std::string, Scalar>& prices() const noexcept { return prices_; }

    [[nodiscard]] const Scalar& at(const std::string& label) const {
        auto it = prices_.find(label);
        if (it == prices_.end()) throw InputError("no price for label '" + label + "'");
        return it->second;
    }

    // Aligns the pricing with an instance. Every variable label must be priced,
    // and every priced label must exist in the instance.
    [[nodiscard]] PriceVector resolve(const PricingInstance& inst) const {
        PriceVector out;
        out.reserve(inst.variable_edges().size());
        for (const auto& e : inst.variable_edges()) {
            auto it = prices_.find(e.label);
            if (it == prices_.end()) throw InputError("unpriced variable edge '" + e.label + "'");
            out.push_back(it->second);
        }
        for (const auto& [label, price] : prices_)
            if (!inst.variable_index(label))
                throw InputError("price for unknown label '" + label + "'");
        return out;
    }

    friend bool operator==(const PriceAssignment&, const PriceAssignment&) = default;

  private:
    std::map<std::string, Scalar> prices_;
};

using EdgePath = std::vector<EdgeRef>;

struct PathWitness {
    EdgePath edges;
    Rational cost{0};
    Rational revenue{0};

    friend bool operator==(const PathWitness&, const PathWitness&) = default;
};

// Cost of one edge under a pricing; INF for an INF-priced variable edge.
inline Scalar edge_cost(const PricingInstance& inst, const PriceVector& prices, EdgeRef e) {
    if (e.kind == EdgeKind::fixed) return Scalar(inst.fixed_edges().at(e.index).cost);
    return prices.at(e.index);
}

// Vertex sequence of an edge path starting at the instance source.
inline std::vector<VertexId> path_vertices(const PricingInstance& inst, std::span<const EdgeRef> path) {
    std::vector<VertexId> out{inst.source()};
    for (EdgeRef e : path) out.push_back(inst.head(e));
    return out;
}

// Checks that `path` is a simple source-sink chain. Throws InputError otherwise.
inline void check_simple_path(const PricingInstance& inst, std::span<const EdgeRef> path) {
    VertexId at = inst.source();
    std::vector<bool> seen(inst.vertex_count(), false);
    seen[at] = true;
    for (std::size_t k = 0; k < path.size(); ++k) {
        EdgeRef e = path[k];
        std::size_t count = e.kind == EdgeKind::fixed ? inst.fixed_edges().size()
                                                       : inst.variable_edges().size();
        if (e.index >= count) throw InputError("edge " + std::to_string(k) + " does not exist");
        if (inst.tail(e) != at)
            throw InputError("broken chain at edge " + std::to_string(k));
        at = inst.head(e);
        if (seen[at]) throw InputError("vertex " + std::to_string(at) + " repeats on path");
        seen[at] = true;
    }
    if (at != inst.sink()) throw InputError("path does not end at the sink");
}

// Builds an edge path from a vertex sequence, taking the smallest edge identity
// between consecutive vertices.
inline EdgePath path_from_vertices(const PricingInstance& inst, std::span<const VertexId> vertices) {
    EdgePath out;
    for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
        std::optional<EdgeRef> found;
        for (EdgeRef e : inst.out_edges(vertices[k]))
            if (inst.head(e) == vertices[k + 1] && (!found || e < *found)) found = e;
        if (!found)
            throw InputError("no edge " + std::to_string(vertices[k]) + " -> " +
                             std::to_string(vertices[k + 1]));
        out.push_back(*found);
    }
    return out;
}

inline Rational fixed_part(const PricingInstance& inst, std::span<const EdgeRef> path) {
    Rational total = 0;
    for (EdgeRef e : path)
        if (e.kind == EdgeKind::fixed) total += inst.fixed_edges()[e.index].cost;
    return total;
}

inline Rational path_cost(const PricingInstance& inst, const PriceVector& prices,
                          std::span<const EdgeRef> path) {
    check_simple_path(inst, path);
    Rational total = 0;
    for (EdgeRef e : path) {
        Scalar c = edge_cost(inst, prices, e);
        if (c.is_inf()) throw InputError("path uses INF-priced edge '" +
                                         inst.variable_edges()[e.index].label + "'");
        total += c.value();
    }
    return total;
}

inline Rational path_cost(const PricingInstance& inst, const PriceAssignment& prices,
                          std::span<const EdgeRef> path) {
    return path_cost(inst, prices.resolve(inst), path);
}

inline Rational path_revenue(const PricingInstance& inst, const PriceVector& prices,
                             std::span<const EdgeRef> path) {
    return path_cost(inst, prices, path) - fixed_part(inst, path);
}

inline Rational path_revenue(const PricingInstance& inst, const PriceAssignment& prices,
                             std::span<const EdgeRef> path) {
    return path_revenue(inst, prices.resolve(inst), path);
}

inline PathWitness make_witness(const PricingInstance& inst, const PriceVector& prices, EdgePath path) {
    PathWitness w;
    w.cost = path_cost(inst, prices, path);
    w.revenue = w.cost - fixed_part(inst, path);
    w.edges = std::move(path);
    return w;
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
    std::vector<std::string> violations;
    bool sink_reachable = false;
    bool baseline_reachable = false;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

namespace detail {

inline std::vector<bool> reachable_from(const PricingInstance& inst, VertexId start, bool fixed_only) {
    std::vector<bool> seen(inst.vertex_count(), false);
    std::vector<VertexId> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (EdgeRef e : inst.out_edges(v)) {
            if (fixed_only && e.kind != EdgeKind::fixed) continue;
            VertexId h = inst.head(e);
            if (!seen[h]) {
                seen[h] = true;
                stack.push_back(h);
            }
        }
    }
    return seen;
}

// Some directed cycle as a closed vertex sequence, or empty when acyclic.
inline std::vector<VertexId> find_cycle(const PricingInstance& inst) {
    const std::size_t n = inst.vertex_count();
    std::vector<std::uint8_t> color(n, 0);
    std::vector<VertexId> parent(n, 0);
    for (VertexId root = 0; root < n; ++root) {
        if (color[root]) continue;
        std::vector<std::pair<VertexId, std::size_t>> stack{{root, 0}};
        color[root] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            auto edges = inst.out_edges(v);
            if (next == edges.size()) {
                color[v] = 2;
                stack.pop_back();
                continue;
            }
            VertexId h = inst.head(edges[next++]);
            if (color[h] == 1) {
                std::vector<VertexId> cycle{h};
                for (VertexId w = v; w != h; w = parent[w]) cycle.push_back(w);
                cycle.push_back(h);
                std::reverse(cycle.begin(), cycle.end());
                return cycle;
            }
            if (color[h] == 0) {
                color[h] = 1;
                parent[h] = v;
                stack.emplace_back(h, 0);
            }
        }
    }
    return {};
}

} // namespace detail

inline ValidationReport validate_instance(const PricingInstance& inst) {
    ValidationReport report;
    for (std::size_t i = 0; i < inst.fixed_edges().size(); ++i)
        if (inst.fixed_edges()[i].cost < 0)
            report.violations.push_back("negative cost on fixed edge " + std::to_string(i));
    std::map<std::string, std::size_t> labels;
    for (std::size_t i = 0; i < inst.variable_edges().size(); ++i) {
        const auto& label = inst.variable_edges()[i].label;
        if (label.empty() || label.find_first_of(" \t\r\n") != std::string::npos)
            report.violations.push_back("invalid label on variable edge " + std::to_string(i));
        if (!labels.emplace(label, i).second)
            report.violations.push_back("duplicate label '" + label + "'");
    }
    if (!inst.acyclic()) {
        std::string text = "cycle:";
        for (VertexId v : detail::find_cycle(inst)) text += " " + std::to_string(v);
        report.violations.push_back(text);
    }
    report.sink_reachable = detail::reachable_from(inst, inst.source(), false)[inst.sink()];
    report.baseline_reachable = detail::reachable_from(inst, inst.source(), true)[inst.sink()];
    if (!report.sink_reachable) report.violations.push_back("sink unreachable");
    else if (!report.baseline_reachable && !inst.no_fixed_baseline())
        report.violations.push_back("no fixed-cost source-sink path (instance not flagged 'baseline none')");
    return report;
}

} // namespace stacksp
