#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stacksp/far_sequence.hpp"
#include "stacksp/instance.hpp"
#include "stacksp/instance_io.hpp"
#include "stacksp/raz.hpp"

namespace stacksp {

enum class ShortcutMode { far, all };
enum class OrderMode { identity, random, derandomized, explicit_perm };

inline std::string to_string(ShortcutMode m) { return m == ShortcutMode::far ? "far" : "all"; }

inline ShortcutMode parse_shortcut_mode(std::string_view s) {
    if (s == "far") return ShortcutMode::far;
    if (s == "all") return ShortcutMode::all;
    throw InputError("unknown shortcut mode '" + std::string(s) + "'");
}

inline OrderMode parse_order_mode(std::string_view s) {
    if (s == "identity") return OrderMode::identity;
    if (s == "random") return OrderMode::random;
    if (s == "derandomized") return OrderMode::derandomized;
    if (s == "explicit") return OrderMode::explicit_perm;
    throw InputError("unknown order mode '" + std::string(s) + "'");
}

struct GenParams {
    unsigned ell = 1;
    Rational delta{1};
    Rational gamma{1};
    ShortcutMode shortcut_mode = ShortcutMode::far;
    OrderMode order_mode = OrderMode::identity;
    std::vector<std::size_t> perm; // explicit order, 0-based
    std::uint64_t seed = 1;
    std::size_t max_retries = 20;
    std::uint64_t max_vertices = 2'000'000;
    std::uint64_t max_edges = 20'000'000;
    std::uint64_t max_paths = 1'000'000;
    std::optional<Rational> epsilon; // documentation only

    // delta = (eps/10) 5^-ell, gamma = eps/3.
    static GenParams from_epsilon(const Rational& eps, unsigned ell) {
        if (eps <= 0 || eps > 1) throw InputError("epsilon must lie in (0, 1]");
        GenParams p;
        p.ell = ell;
        Rational five_pow(1);
        for (unsigned i = 0; i < ell; ++i) five_pow *= 5;
        p.delta = eps / 10 / five_pow;
        p.gamma = eps / 3;
        p.epsilon = eps;
        return p;
    }
};

struct GadgetAnswer {
    VertexId u = 0;
    VertexId v = 0;
    std::string label;
};

struct Gadget {
    std::size_t constraint = 0; // 0-based
    bool far = false;
    VertexId s = 0;
    VertexId t = 0;
    std::vector<GadgetAnswer> answers;
};

struct Shortcut {
    std::size_t from = 0;
    std::uint32_t from_answer = 0;
    std::size_t to = 0;
    std::uint32_t to_answer = 0;
    Rational cost;

    friend bool operator==(const Shortcut&, const Shortcut&) = default;
};

// Positions in a GadgetMap are 0-based; the file format and labels are 1-based.
//
// Layout: gadget i owns vertices base..base+1+2K with base = i(2+2K):
// s, t, then u_a, v_a for each answer a. Its fixed edges are the bypass
// s->t, K entries s->u_a, K exits v_a->t and (except for the last gadget) the
// chain edge t->s_{i+1}. Shortcut edges follow all gadget edges. Variable
// edge iK + a is u_a->v_a of gadget i.
class GadgetMap {
  public:
    GadgetMap() = default;

    GadgetMap(ShortcutMode mode, std::size_t window, std::vector<Gadget> gadgets, std::vector<Shortcut> shortcuts)
        : mode_(mode), window_(window), gadgets_(std::move(gadgets)), shortcuts_(std::move(shortcuts)) {
        if (gadgets_.empty()) throw InputError("gadget map has no gadgets");
        answers_ = gadgets_.front().answers.size();
        for (std::size_t i = 0; i < gadgets_.size(); ++i) {
            const auto& g = gadgets_[i];
            if (g.answers.size() != answers_) throw InputError("gadgets disagree on answer count");
            if (g.s != s(i) || g.t != t(i)) throw InputError("gadget " + std::to_string(i + 1) + " vertex layout mismatch");
            for (std::uint32_t a = 0; a < answers_; ++a)
                if (g.answers[a].u != u(i, a) || g.answers[a].v != v(i, a) || g.answers[a].label != label(i, a))
                    throw InputError("gadget " + std::to_string(i + 1) + " answer layout mismatch");
        }
        for (std::size_t k = 0; k < shortcuts_.size(); ++k) {
            const auto& sc = shortcuts_[k];
            if (sc.from >= sc.to || sc.to >= gadgets_.size() || sc.from_answer >= answers_ || sc.to_answer >= answers_)
                throw InputError("malformed shortcut record");
            if (k > 0 && !(key(shortcuts_[k - 1]) < key(sc))) throw InputError("shortcut records out of order");
            shortcut_index_.emplace(key(sc), k);
        }
    }

    [[nodiscard]] ShortcutMode mode() const noexcept { return mode_; }
    [[nodiscard]] std::size_t window() const noexcept { return window_; }
    [[nodiscard]] std::size_t size() const noexcept { return gadgets_.size(); }
    [[nodiscard]] std::size_t answer_count() const noexcept { return answers_; }
    [[nodiscard]] const std::vector<Gadget>& gadgets() const noexcept { return gadgets_; }
    [[nodiscard]] const Gadget& gadget(std::size_t i) const { return gadgets_.at(i); }
    [[nodiscard]] const std::vector<Shortcut>& shortcuts() const noexcept { return shortcuts_; }

    [[nodiscard]] std::size_t stride() const noexcept { return 2 + 2 * answers_; }
    [[nodiscard]] VertexId s(std::size_t i) const { return static_cast<VertexId>(i * stride()); }
    [[nodiscard]] VertexId t(std::size_t i) const { return s(i) + 1; }
    [[nodiscard]] VertexId u(std::size_t i, std::uint32_t a) const { return s(i) + 2 + 2 * a; }
    [[nodiscard]] VertexId v(std::size_t i, std::uint32_t a) const { return s(i) + 3 + 2 * a; }
    [[nodiscard]] std::size_t vertex_count() const noexcept { return gadgets_.size() * stride(); }

    static std::string label(std::size_t i, std::uint32_t a) {
        return "g" + std::to_string(i + 1) + ":a" + std::to_string(a);
    }

    [[nodiscard]] std::size_t gadget_of(VertexId vid) const { return vid / stride(); }

    [[nodiscard]] std::size_t fixed_block() const noexcept { return 2 + 2 * answers_; }
    [[nodiscard]] std::size_t bypass_edge(std::size_t i) const { return i * fixed_block(); }
    [[nodiscard]] std::size_t entry_edge(std::size_t i, std::uint32_t a) const { return i * fixed_block() + 1 + a; }
    [[nodiscard]] std::size_t exit_edge(std::size_t i, std::uint32_t a) const {
        return i * fixed_block() + 1 + answers_ + a;
    }
    [[nodiscard]] std::size_t chain_edge(std::size_t i) const { return i * fixed_block() + 1 + 2 * answers_; }
    [[nodiscard]] std::size_t shortcut_base() const noexcept { return gadgets_.size() * fixed_block() - 1; }
    [[nodiscard]] std::size_t variable_edge_of(std::size_t i, std::uint32_t a) const { return i * answers_ + a; }

    // (gadget, answer) of variable edge `index`.
    [[nodiscard]] std::pair<std::size_t, std::uint32_t> locate_variable(std::size_t index) const {
        return {index / answers_, static_cast<std::uint32_t>(index % answers_)};
    }

    // Shortcut record behind fixed edge `index`, if it is one.
    [[nodiscard]] const Shortcut* shortcut_of_fixed(std::size_t index) const {
        if (index < shortcut_base() || index - shortcut_base() >= shortcuts_.size()) return nullptr;
        return &shortcuts_[index - shortcut_base()];
    }

    [[nodiscard]] const Shortcut* find_shortcut(std::size_t i, std::uint32_t a, std::size_t j, std::uint32_t b) const {
        auto it = shortcut_index_.find({i, a, j, b});
        return it == shortcut_index_.end() ? nullptr : &shortcuts_[it->second];
    }

    // All shortcuts leaving v_i^a, ascending by target.
    [[nodiscard]] std::vector<const Shortcut*> shortcuts_from(std::size_t i, std::uint32_t a) const {
        std::vector<const Shortcut*> out;
        for (auto it = shortcut_index_.lower_bound({i, a, 0, 0});
             it != shortcut_index_.end() && std::get<0>(it->first) == i && std::get<1>(it->first) == a; ++it)
            out.push_back(&shortcuts_[it->second]);
        return out;
    }

  private:
    using Key = std::tuple<std::size_t, std::uint32_t, std::size_t, std::uint32_t>;
    static Key key(const Shortcut& s) { return {s.from, s.from_answer, s.to, s.to_answer}; }

    ShortcutMode mode_ = ShortcutMode::far;
    std::size_t window_ = 0;
    std::size_t answers_ = 0;
    std::vector<Gadget> gadgets_;
    std::vector<Shortcut> shortcuts_;
    std::map<Key, std::size_t> shortcut_index_;
};

// Whether (i, a) -> (j, b) is an inconsistent pair that warrants a shortcut.
inline bool inconsistent(const ConstraintSystem& cs, std::size_t ri, std::uint32_t a, std::size_t rj, std::uint32_t b) {
    const auto& x = cs.constraint(ri);
    const auto& y = cs.constraint(rj);
    if (x.q1 == y.q1 && a != b) return true;
    return x.q2 == y.q2 && cs.project(ri, a) != cs.project(rj, b);
}

struct Reduction {
    PricingInstance instance;
    GadgetMap map;
};

// Projected sizes, checked against the budgets before anything is built.
inline Reduction build_instance(const ConstraintSystem& cs, const SequenceOrder& order, const GenParams& params) {
    const std::size_t m = cs.size();
    if (order.perm.size() != m) throw InputError("order length does not match constraint count");
    const std::uint64_t k = cs.q1_answer_count();
    const std::uint64_t vertices = m * (2 + 2 * k);
    const std::uint64_t gadget_edges = m * (1 + 3 * k) + (m - 1);
    if (vertices > params.max_vertices)
        throw BudgetError("projected " + std::to_string(vertices) + " vertices exceed budget " +
                          std::to_string(params.max_vertices));
    if (gadget_edges > params.max_edges)
        throw BudgetError("projected " + std::to_string(gadget_edges) + " gadget edges exceed budget " +
                          std::to_string(params.max_edges));

    const auto flags = delta_far_flags(cs, order);
    const bool far_mode = params.shortcut_mode == ShortcutMode::far;

    std::vector<std::size_t> position(m);
    for (std::size_t i = 0; i < m; ++i) position[order.perm[i]] = i;

    std::vector<Shortcut> shortcuts;
    const auto partners = shared_query_partners(cs);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t ri = order.perm[i];
        if (far_mode && !flags[i]) continue;
        std::vector<std::size_t> later;
        for (auto rj : partners[ri])
            if (position[rj] > i && (!far_mode || flags[position[rj]])) later.push_back(position[rj]);
        std::sort(later.begin(), later.end());
        for (std::uint32_t a = 0; a < k; ++a)
            for (auto j : later)
                for (std::uint32_t b = 0; b < k; ++b)
                    if (inconsistent(cs, ri, a, order.perm[j], b)) {
                        shortcuts.push_back({i, a, j, b, Rational(static_cast<long>(j - i), 2)});
                        if (gadget_edges + shortcuts.size() > params.max_edges)
                            throw BudgetError("edge count exceeds budget " + std::to_string(params.max_edges) +
                                              " while emitting shortcuts");
                    }
    }
    std::sort(shortcuts.begin(), shortcuts.end(), [](const Shortcut& x, const Shortcut& y) {
        return std::tie(x.from, x.from_answer, x.to, x.to_answer) < std::tie(y.from, y.from_answer, y.to, y.to_answer);
    });

    std::vector<Gadget> gadgets(m);
    const std::size_t stride = 2 + 2 * k;
    for (std::size_t i = 0; i < m; ++i) {
        auto& g = gadgets[i];
        g.constraint = order.perm[i];
        g.far = flags[i];
        g.s = static_cast<VertexId>(i * stride);
        g.t = g.s + 1;
        for (std::uint32_t a = 0; a < k; ++a)
            g.answers.push_back({g.s + 2 + 2 * a, g.s + 3 + 2 * a, GadgetMap::label(i, a)});
    }
    GadgetMap map(params.shortcut_mode, order.window, std::move(gadgets), std::move(shortcuts));

    std::vector<FixedEdge> fixed;
    std::vector<VariableEdge> variable;
    fixed.reserve(gadget_edges - m * k + map.shortcuts().size());
    variable.reserve(m * k);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& g = map.gadget(i);
        fixed.push_back({g.s, g.t, Rational(1)});
        for (const auto& ans : g.answers) fixed.push_back({g.s, ans.u, Rational(0)});
        for (const auto& ans : g.answers) fixed.push_back({ans.v, g.t, Rational(0)});
        if (i + 1 < m) fixed.push_back({g.t, map.s(i + 1), Rational(0)});
        for (const auto& ans : g.answers) variable.push_back({ans.u, ans.v, ans.label});
    }
    for (const auto& sc : map.shortcuts()) fixed.push_back({map.v(sc.from, sc.from_answer), map.u(sc.to, sc.to_answer), sc.cost});

    std::vector<std::string> meta{
        "reduction M " + std::to_string(m) + " ell " + std::to_string(cs.ell()) + " width " +
            std::to_string(cs.formula().width()) + " shortcuts " + to_string(params.shortcut_mode) + " window " +
            std::to_string(order.window)};
    PricingInstance inst(static_cast<std::size_t>(vertices), map.s(0), map.t(m - 1), std::move(fixed),
                         std::move(variable), std::move(meta));
    return {std::move(inst), std::move(map)};
}

// Orders the constraints per params and builds the instance.
inline Reduction generate(const ConstraintSystem& cs, const GenParams& params, SequenceOrder* order_out = nullptr) {
    SequenceOrder order;
    switch (params.order_mode) {
    case OrderMode::identity: order = identity_order(cs, params.delta); break;
    case OrderMode::explicit_perm: order = make_order(params.perm, params.delta); break;
    case OrderMode::random:
        order = random_far_order(cs, params.delta, params.gamma, params.seed, params.max_retries).order;
        break;
    case OrderMode::derandomized: order = derandomized_far_order(cs, params.delta).order; break;
    }
    auto red = build_instance(cs, order, params);
    if (order_out) *order_out = std::move(order);
    return red;
}

// Price 1 on the answer f picks in every gadget, INF elsewhere.
inline PriceAssignment yes_pricing(const ConstraintSystem& cs, const GadgetMap& map, const GlobalAssignment& f) {
    PriceAssignment prices;
    for (std::size_t i = 0; i < map.size(); ++i) {
        const auto& g = map.gadget(i);
        auto it = f.q1.find(cs.constraint(g.constraint).q1);
        if (it == f.q1.end())
            throw InputError("gadget " + std::to_string(i + 1) + ": assignment has no answer for its first query");
        if (it->second >= map.answer_count())
            throw InputError("gadget " + std::to_string(i + 1) + ": answer index out of range");
        for (std::uint32_t a = 0; a < map.answer_count(); ++a)
            prices.set(g.answers[a].label, a == it->second ? Scalar(1) : Scalar::infinity());
    }
    return prices;
}

// Inclusive 0-based gadget interval.
struct GadgetRange {
    std::size_t first = 0;
    std::size_t last = 0;

    friend bool operator==(const GadgetRange&, const GadgetRange&) = default;
};

struct DecodeResult {
    GlobalAssignment assignment;
    std::size_t satisfied = 0;
    std::size_t far_edges = 0; // |F|: far-gadget variable edges inside R
    std::vector<std::string> conflicts;
};

inline DecodeResult decode_assignment(const ConstraintSystem& cs, const GadgetMap& map, const EdgePath& path,
                                      const std::vector<GadgetRange>& r_segments) {
    DecodeResult out;
    auto in_r = [&](std::size_t i) {
        return std::any_of(r_segments.begin(), r_segments.end(),
                           [&](const GadgetRange& s) { return s.first <= i && i <= s.last; });
    };
    auto assign = [&](std::map<std::size_t, std::uint32_t>& slot, const char* which, std::size_t q,
                      std::uint32_t value, std::size_t i) {
        auto [it, fresh] = slot.emplace(q, value);
        if (!fresh && it->second != value)
            out.conflicts.push_back(std::string(which) + " query " + std::to_string(q) + ": answers " +
                                    std::to_string(it->second) + " and " + std::to_string(value) + " (gadget " +
                                    std::to_string(i + 1) + ")");
    };
    for (EdgeRef e : path) {
        if (e.kind != EdgeKind::variable) continue;
        auto [i, a] = map.locate_variable(e.index);
        if (!map.gadget(i).far || !in_r(i)) continue;
        ++out.far_edges;
        const std::size_t r = map.gadget(i).constraint;
        assign(out.assignment.q1, "q1", cs.constraint(r).q1, a, i);
        assign(out.assignment.q2, "q2", cs.constraint(r).q2, cs.project(r, a), i);
    }
    out.satisfied = count_satisfied(cs, out.assignment);
    return out;
}

struct SizeReport {
    std::uint64_t constraints = 0; // M
    std::uint64_t answers = 0;     // K = (2^w - 1)^ell
    std::uint64_t vertices_per_gadget = 0;
    std::uint64_t total_vertices = 0;
    std::uint64_t edges_per_gadget = 0;
    std::uint64_t chain_edges = 0;
    std::uint64_t shortcut_bound_per_pair = 0;
};

inline SizeReport size_report(std::uint64_t clauses, unsigned ell, unsigned width,
                              std::uint64_t budget = std::uint64_t{1} << 62) {
    if (width != 2 && width != 3) throw InputError("width must be 2 or 3");
    if (clauses == 0 || ell == 0) throw InputError("clause count and ell must be positive");
    auto fail = [&] { return BudgetError("size report exceeds budget " + std::to_string(budget)); };
    SizeReport r;
    auto m = detail::checked_pow(width * clauses, ell, budget);
    auto k = detail::checked_pow((1u << width) - 1, ell, budget);
    if (!m || !k) throw fail();
    r.constraints = *m;
    r.answers = *k;
    r.vertices_per_gadget = 2 + 2 * r.answers;
    if (r.vertices_per_gadget > budget / r.constraints) throw fail();
    r.total_vertices = r.constraints * r.vertices_per_gadget;
    r.edges_per_gadget = 1 + 3 * r.answers;
    r.chain_edges = r.constraints - 1;
    if (r.answers > budget / r.answers) throw fail();
    r.shortcut_bound_per_pair = r.answers * r.answers;
    return r;
}

// Regular 3SAT(5): 5n/3 clauses.
inline SizeReport size_report_regular(std::uint64_t n, unsigned ell) {
    if (n == 0 || n % 3 != 0) throw InputError("regular width-3 sizing needs n a positive multiple of 3");
    return size_report(5 * n / 3, ell, 3);
}

// ---------------------------------------------------------------------------
// Map file.

inline std::string serialize_map(const GadgetMap& map) {
    std::ostringstream out;
    out << "# stacksp-map v1\n";
    out << "mode " << to_string(map.mode()) << " window " << map.window() << "\n";
    for (std::size_t i = 0; i < map.size(); ++i) {
        const auto& g = map.gadget(i);
        out << "gadget " << i + 1 << " constraint " << g.constraint + 1 << " far " << (g.far ? 1 : 0) << " s " << g.s
            << " t " << g.t << "\n";
        for (std::uint32_t a = 0; a < g.answers.size(); ++a)
            out << "answer " << i + 1 << " " << a << " u " << g.answers[a].u << " v " << g.answers[a].v << " label "
                << g.answers[a].label << "\n";
    }
    for (const auto& sc : map.shortcuts())
        out << "shortcut " << sc.from + 1 << " " << sc.from_answer << " " << sc.to + 1 << " " << sc.to_answer << " "
            << to_string(sc.cost) << "\n";
    return out.str();
}

inline GadgetMap parse_map(std::istream& in) {
    auto lines = detail::read_lines(in);
    std::size_t first = detail::first_content_line(lines);
    if (first == lines.size() || detail::trim(lines[first]) != "# stacksp-map v1")
        throw ParseError(first + 1, "expected header '# stacksp-map v1'");
    std::optional<ShortcutMode> mode;
    std::size_t window = 0;
    std::vector<Gadget> gadgets;
    std::vector<Shortcut> shortcuts;
    for (std::size_t i = first + 1; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        std::string_view raw = detail::trim(lines[i]);
        if (raw.empty() || raw.front() == '#') continue;
        auto tok = detail::split_ws(raw);
        auto num = [&](std::size_t k, const char* what) { return detail::parse_count(tok[k], lineno, what); };
        if (tok[0] == "mode") {
            if (tok.size() != 4 || tok[2] != "window") throw ParseError(lineno, "malformed 'mode' line");
            try {
                mode = parse_shortcut_mode(tok[1]);
            } catch (const InputError& e) {
                throw ParseError(lineno, e.what());
            }
            window = num(3, "window");
        } else if (tok[0] == "gadget") {
            if (tok.size() != 10 || tok[2] != "constraint" || tok[4] != "far" || tok[6] != "s" || tok[8] != "t")
                throw ParseError(lineno, "malformed 'gadget' line");
            if (num(1, "position") != gadgets.size() + 1) throw ParseError(lineno, "gadget positions out of order");
            Gadget g;
            auto c = num(3, "constraint id");
            if (c == 0) throw ParseError(lineno, "constraint ids are 1-based");
            g.constraint = c - 1;
            auto far = num(5, "far flag");
            if (far > 1) throw ParseError(lineno, "far flag must be 0 or 1");
            g.far = far == 1;
            g.s = static_cast<VertexId>(num(7, "vertex id"));
            g.t = static_cast<VertexId>(num(9, "vertex id"));
            gadgets.push_back(std::move(g));
        } else if (tok[0] == "answer") {
            if (tok.size() != 9 || tok[3] != "u" || tok[5] != "v" || tok[7] != "label")
                throw ParseError(lineno, "malformed 'answer' line");
            if (gadgets.empty() || num(1, "position") != gadgets.size())
                throw ParseError(lineno, "answer line does not follow its gadget");
            auto& g = gadgets.back();
            if (num(2, "answer index") != g.answers.size()) throw ParseError(lineno, "answers out of order");
            g.answers.push_back(
                {static_cast<VertexId>(num(4, "vertex id")), static_cast<VertexId>(num(6, "vertex id")), tok[8]});
        } else if (tok[0] == "shortcut") {
            if (tok.size() != 6) throw ParseError(lineno, "malformed 'shortcut' line");
            Shortcut sc;
            auto from = num(1, "position"), to = num(3, "position");
            if (from == 0 || to == 0) throw ParseError(lineno, "positions are 1-based");
            sc.from = from - 1;
            sc.to = to - 1;
            sc.from_answer = static_cast<std::uint32_t>(num(2, "answer index"));
            sc.to_answer = static_cast<std::uint32_t>(num(4, "answer index"));
            try {
                sc.cost = parse_rational(tok[5]);
            } catch (const InputError& e) {
                throw ParseError(lineno, e.what());
            }
            if (sc.to <= sc.from || sc.cost != Rational(static_cast<long>(sc.to - sc.from), 2))
                throw ParseError(lineno, "shortcut cost must be (j - i)/2 with i < j");
            shortcuts.push_back(std::move(sc));
        } else {
            throw ParseError(lineno, "unknown directive '" + tok[0] + "'");
        }
    }
    if (!mode) throw ParseError(lines.size(), "missing 'mode' line");
    try {
        return GadgetMap(*mode, window, std::move(gadgets), std::move(shortcuts));
    } catch (const InputError& e) {
        throw ParseError(lines.size(), e.what());
    }
}

inline GadgetMap parse_map(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_map(in);
}

// Throws unless `inst` has exactly the edge layout `map` describes.
inline void check_map_matches(const PricingInstance& inst, const GadgetMap& map) {
    const std::size_t m = map.size(), k = map.answer_count();
    auto fail = [](const std::string& what) { throw InputError("map does not match instance: " + what); };
    if (inst.vertex_count() != map.vertex_count()) fail("vertex count");
    if (inst.source() != map.s(0) || inst.sink() != map.t(m - 1)) fail("source/sink");
    if (inst.variable_edges().size() != m * k) fail("variable edge count");
    if (inst.fixed_edges().size() != map.shortcut_base() + map.shortcuts().size()) fail("fixed edge count");
    for (std::size_t i = 0; i < m; ++i) {
        auto check = [&](std::size_t idx, VertexId a, VertexId b, const Rational& c) {
            const auto& e = inst.fixed_edges()[idx];
            if (e.tail != a || e.head != b || e.cost != c) fail("fixed edge " + std::to_string(idx));
        };
        check(map.bypass_edge(i), map.s(i), map.t(i), Rational(1));
        for (std::uint32_t a = 0; a < k; ++a) {
            check(map.entry_edge(i, a), map.s(i), map.u(i, a), Rational(0));
            check(map.exit_edge(i, a), map.v(i, a), map.t(i), Rational(0));
            const auto& ve = inst.variable_edges()[map.variable_edge_of(i, a)];
            if (ve.tail != map.u(i, a) || ve.head != map.v(i, a) || ve.label != GadgetMap::label(i, a))
                fail("variable edge " + GadgetMap::label(i, a));
        }
        if (i + 1 < m) check(map.chain_edge(i), map.t(i), map.s(i + 1), Rational(0));
    }
    for (std::size_t n = 0; n < map.shortcuts().size(); ++n) {
        const auto& sc = map.shortcuts()[n];
        const auto& e = inst.fixed_edges()[map.shortcut_base() + n];
        if (e.tail != map.v(sc.from, sc.from_answer) || e.head != map.u(sc.to, sc.to_answer) || e.cost != sc.cost)
            fail("shortcut edge " + std::to_string(n + 1));
    }
}

} // namespace stacksp
