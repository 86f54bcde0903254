#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "stacksp/buyer.hpp"
#include "stacksp/reduction.hpp"

namespace stacksp {

enum class Role { R, S, T };

inline const char* to_string(Role r) {
    switch (r) {
    case Role::R: return "R";
    case Role::S: return "S";
    case Role::T: return "T";
    }
    return "?";
}

// A stretch of the path from s_first to t_last (0-based gadgets), covering
// path edges [edge_begin, edge_end).
struct Segment {
    Role role = Role::R;
    std::size_t first = 0;
    std::size_t last = 0;
    std::size_t edge_begin = 0;
    std::size_t edge_end = 0;
    Rational rev;

    [[nodiscard]] std::size_t len() const { return last - first + 1; }

    friend bool operator==(const Segment&, const Segment&) = default;
};

struct Decomposition {
    EdgePath path;
    PriceVector prices;
    std::vector<Segment> segments; // ordered by gadget

    [[nodiscard]] std::vector<GadgetRange> ranges(Role role) const {
        std::vector<GadgetRange> out;
        for (const auto& s : segments)
            if (s.role == role) out.push_back({s.first, s.last});
        return out;
    }
};

namespace detail {

// Where the path meets each gadget's source and sink.
struct PathIndex {
    std::vector<VertexId> vertices;
    std::vector<std::optional<std::size_t>> at_s, at_t; // vertex position on the path

    PathIndex(const PricingInstance& inst, const GadgetMap& map, const EdgePath& path)
        : vertices(path_vertices(inst, path)), at_s(map.size()), at_t(map.size()) {
        for (std::size_t k = 0; k < vertices.size(); ++k) {
            VertexId v = vertices[k];
            std::size_t g = map.gadget_of(v);
            if (v == map.s(g)) at_s[g] = k;
            if (v == map.t(g)) at_t[g] = k;
        }
    }
};

inline Segment make_segment(const Decomposition& d, const PathIndex& idx, Role role, std::size_t first,
                            std::size_t last) {
    Segment s;
    s.role = role;
    s.first = first;
    s.last = last;
    if (!idx.at_s[first] || !idx.at_t[last])
        throw std::logic_error("segment endpoints are not on the path");
    s.edge_begin = *idx.at_s[first];
    s.edge_end = *idx.at_t[last];
    s.rev = 0;
    for (std::size_t k = s.edge_begin; k < s.edge_end; ++k)
        if (d.path[k].kind == EdgeKind::variable) s.rev += d.prices[d.path[k].index].value();
    return s;
}

inline void sort_segments(std::vector<Segment>& segs) {
    std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.first < b.first; });
}

} // namespace detail

// Phase 1: while an R segment contains a shortcut edge, cut out the stretch
// from the last source before it to the first sink after it as an S segment,
// taking the leftmost such shortcut each time.
//
// With `verify` set, `path` must be the client's best response under `prices`.
inline Decomposition phase1(const PricingInstance& inst, const GadgetMap& map, const PriceVector& prices,
                            const EdgePath& path, bool verify = true) {
    check_map_matches(inst, map);
    check_simple_path(inst, path);
    if (verify && best_response(inst, prices).edges != path)
        throw InputError("path is not the client's best response under these prices");
    for (EdgeRef e : path)
        if (e.kind == EdgeKind::variable && prices.at(e.index).is_inf())
            throw InputError("path uses an INF-priced edge");

    Decomposition d;
    d.path = path;
    d.prices = prices;
    detail::PathIndex idx(inst, map, path);
    d.segments.push_back(detail::make_segment(d, idx, Role::R, 0, map.size() - 1));

    for (;;) {
        std::optional<std::size_t> hit; // path position of the shortcut edge
        std::size_t seg = 0;
        for (std::size_t x = 0; x < d.segments.size() && !hit; ++x) {
            const auto& s = d.segments[x];
            if (s.role != Role::R) continue;
            for (std::size_t k = s.edge_begin; k < s.edge_end; ++k)
                if (path[k].kind == EdgeKind::fixed && map.shortcut_of_fixed(path[k].index)) {
                    hit = k;
                    seg = x;
                    break;
                }
        }
        if (!hit) break;
        std::size_t i = 0, j = 0;
        for (std::size_t g = 0; g < map.size(); ++g)
            if (idx.at_s[g] && *idx.at_s[g] <= *hit) i = g;
        for (std::size_t g = map.size(); g-- > 0;)
            if (idx.at_t[g] && *idx.at_t[g] > *hit) j = g;
        const Segment q = d.segments[seg];
        d.segments.erase(d.segments.begin() + static_cast<std::ptrdiff_t>(seg));
        if (q.first < i) d.segments.push_back(detail::make_segment(d, idx, Role::R, q.first, i - 1));
        d.segments.push_back(detail::make_segment(d, idx, Role::S, i, j));
        if (j < q.last) d.segments.push_back(detail::make_segment(d, idx, Role::R, j + 1, q.last));
        detail::sort_segments(d.segments);
    }
    return d;
}

// Phase 2: scanning gadgets left to right, when gadget i sits on an R segment
// and an instance shortcut leaves the path's v_i toward the path's u_j on an R
// segment, the whole span [i..j] becomes a T segment (farthest j first).
inline Decomposition phase2(const PricingInstance& inst, const GadgetMap& map, Decomposition d) {
    detail::PathIndex idx(inst, map, d.path);
    // Answer the path takes through each gadget, if it enters one.
    std::vector<std::optional<std::uint32_t>> answer(map.size());
    for (EdgeRef e : d.path)
        if (e.kind == EdgeKind::variable) {
            auto [g, a] = map.locate_variable(e.index);
            answer[g] = a;
        }
    auto segment_of = [&](std::size_t g) -> std::optional<std::size_t> {
        for (std::size_t x = 0; x < d.segments.size(); ++x)
            if (d.segments[x].first <= g && g <= d.segments[x].last) return x;
        return std::nullopt;
    };
    for (std::size_t i = 0; i < map.size(); ++i) {
        auto qi = segment_of(i);
        if (!qi || d.segments[*qi].role != Role::R || !answer[i]) continue;
        std::optional<std::size_t> target;
        for (const Shortcut* sc : map.shortcuts_from(i, *answer[i])) {
            if (answer[sc->to] != sc->to_answer) continue;
            auto qj = segment_of(sc->to);
            if (!qj || d.segments[*qj].role != Role::R) continue;
            if (!target || sc->to > *target) target = sc->to;
        }
        if (!target) continue;
        const std::size_t j = *target;
        const Segment q = d.segments[*qi];
        const Segment q2 = d.segments[*segment_of(j)];
        std::vector<Segment> kept;
        for (const auto& s : d.segments)
            if (s.last < i || s.first > j) kept.push_back(s);
        if (q.first < i) kept.push_back(detail::make_segment(d, idx, Role::R, q.first, i - 1));
        kept.push_back(detail::make_segment(d, idx, Role::T, i, j));
        if (j < q2.last) kept.push_back(detail::make_segment(d, idx, Role::R, j + 1, q2.last));
        detail::sort_segments(kept);
        d.segments = std::move(kept);
    }
    return d;
}

inline Decomposition decompose(const PricingInstance& inst, const GadgetMap& map, const PriceVector& prices,
                               const EdgePath& path, bool verify = true) {
    return phase2(inst, map, phase1(inst, map, prices, path, verify));
}

struct PropertyCheck {
    std::string name;
    bool passed = true;
    bool skipped = false;
    std::string detail;
};

struct PropertyReport {
    std::vector<PropertyCheck> checks;

    [[nodiscard]] bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.passed; });
    }
    [[nodiscard]] const PropertyCheck& at(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return c;
        throw InputError("no property check named '" + name + "'");
    }
};

// The decomposition guarantees, each as one report entry:
//   contiguity     segments tile gadgets 1..M along the path, lengths sum to M
//   r_prices       every variable edge on an R segment is priced at most 1
//   r_no_shortcut  no instance shortcut joins two variable edges on R segments
//   s_revenue      rev <= (len + 1)/2 on each S segment
//   t_revenue      rev <= (len - 1)/2 + 2 on each T segment
//   telescoping    shortcut costs along each S segment sum to (len - 1)/2
//   cardinality    |S|, |T| <= ceil(1/delta)              (far mode only)
//   aggregate      sum over S and T of rev <= len/2 + |S|/2 + 2|T|   (far mode only)
inline PropertyReport verify_properties(const PricingInstance& inst, const GadgetMap& map, const Decomposition& d,
                                        const Rational& delta, ShortcutMode mode) {
    check_map_matches(inst, map);
    PropertyReport report;
    auto add = [&](std::string name) -> PropertyCheck& {
        report.checks.push_back({std::move(name), true, false, {}});
        return report.checks.back();
    };
    auto fail = [](PropertyCheck& c, const std::string& why) {
        c.passed = false;
        if (c.detail.empty()) c.detail = why;
    };
    auto where = [](const Segment& s) {
        return std::string(to_string(s.role)) + "[" + std::to_string(s.first + 1) + ".." + std::to_string(s.last + 1) +
               "]";
    };

    auto& contiguity = add("contiguity");
    {
        std::size_t total = 0;
        std::size_t next_gadget = 0, next_edge = 0;
        for (const auto& s : d.segments) {
            if (s.first != next_gadget) fail(contiguity, "gap or overlap before " + where(s));
            if (s.edge_begin != next_edge) fail(contiguity, "edge slices not contiguous at " + where(s));
            if (s.last < s.first) fail(contiguity, "empty segment");
            total += s.len();
            next_gadget = s.last + 1;
            next_edge = s.edge_end + 1; // the chain edge t_last -> s_{last+1}
        }
        if (next_gadget != map.size()) fail(contiguity, "segments do not end at gadget M");
        if (total != map.size()) fail(contiguity, "lengths sum to " + std::to_string(total));
        if (!d.segments.empty() && d.segments.back().edge_end != d.path.size())
            fail(contiguity, "last segment does not end at the sink");
    }

    std::vector<bool> in_r(map.size(), false);
    for (const auto& s : d.segments)
        if (s.role == Role::R)
            for (std::size_t g = s.first; g <= s.last; ++g) in_r[g] = true;
    std::vector<std::optional<std::uint32_t>> r_answer(map.size());
    auto& r_prices = add("r_prices");
    for (EdgeRef e : d.path) {
        if (e.kind != EdgeKind::variable) continue;
        auto [g, a] = map.locate_variable(e.index);
        if (!in_r[g]) continue;
        r_answer[g] = a;
        if (d.prices[e.index].value() > 1)
            fail(r_prices, GadgetMap::label(g, a) + " priced " + d.prices[e.index].str());
    }

    auto& r_no_shortcut = add("r_no_shortcut");
    for (std::size_t g = 0; g < map.size(); ++g) {
        if (!r_answer[g]) continue;
        for (const Shortcut* sc : map.shortcuts_from(g, *r_answer[g]))
            if (r_answer[sc->to] == sc->to_answer)
                fail(r_no_shortcut, "shortcut " + GadgetMap::label(g, sc->from_answer) + " -> " +
                                        GadgetMap::label(sc->to, sc->to_answer));
    }

    auto& s_rev = add("s_revenue");
    auto& t_rev = add("t_revenue");
    auto& telescoping = add("telescoping");
    std::size_t s_count = 0, t_count = 0, st_len = 0;
    Rational st_rev(0);
    for (const auto& s : d.segments) {
        const Rational len(static_cast<long>(s.len()));
        if (s.role == Role::S) {
            ++s_count;
            if (s.rev > (len + 1) / 2) fail(s_rev, where(s) + " rev " + to_string(s.rev));
            Rational sum(0);
            for (std::size_t k = s.edge_begin; k < s.edge_end; ++k)
                if (d.path[k].kind == EdgeKind::fixed)
                    if (const Shortcut* sc = map.shortcut_of_fixed(d.path[k].index)) sum += sc->cost;
            if (sum != (len - 1) / 2) fail(telescoping, where(s) + " shortcut costs sum to " + to_string(sum));
        } else if (s.role == Role::T) {
            ++t_count;
            if (s.rev > (len - 1) / 2 + 2) fail(t_rev, where(s) + " rev " + to_string(s.rev));
        }
        if (s.role != Role::R) {
            st_len += s.len();
            st_rev += s.rev;
        }
    }

    auto& cardinality = add("cardinality");
    auto& aggregate = add("aggregate");
    if (mode == ShortcutMode::far) {
        const auto limit = static_cast<std::size_t>(ceil(Rational(1) / delta));
        if (s_count > limit) fail(cardinality, "|S| = " + std::to_string(s_count) + " > " + std::to_string(limit));
        if (t_count > limit) fail(cardinality, "|T| = " + std::to_string(t_count) + " > " + std::to_string(limit));
        Rational bound = Rational(static_cast<long>(st_len), 2) + Rational(static_cast<long>(s_count), 2) +
                         2 * Rational(static_cast<long>(t_count));
        if (st_rev > bound) fail(aggregate, "rev " + to_string(st_rev) + " > " + to_string(bound));
    } else {
        cardinality.skipped = aggregate.skipped = true;
    }
    return report;
}

} // namespace stacksp
