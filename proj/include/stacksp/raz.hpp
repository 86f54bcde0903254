#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stacksp/errors.hpp"
#include "stacksp/instance_io.hpp"
#include "stacksp/random.hpp"

namespace stacksp {

struct Literal {
    std::uint32_t var = 0; // 0-based
    bool positive = true;

    friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

// A CNF formula whose clauses all have the same width (2 or 3) and distinct
// variables. Literals inside a clause are kept sorted by variable, which fixes
// the bit order of clause answers.
class Formula {
  public:
    Formula() = default;

    Formula(std::size_t variable_count, std::vector<Clause> clauses)
        : variable_count_(variable_count), clauses_(std::move(clauses)) {
        if (clauses_.empty()) throw InputError("formula has no clauses");
        width_ = clauses_.front().size();
        if (width_ != 2 && width_ != 3) throw InputError("clause width must be 2 or 3");
        occurrences_.assign(variable_count_, 0);
        for (std::size_t c = 0; c < clauses_.size(); ++c) {
            auto& clause = clauses_[c];
            if (clause.size() != width_)
                throw InputError("mixed clause widths (clause " + std::to_string(c + 1) + ")");
            std::sort(clause.begin(), clause.end(),
                      [](const Literal& a, const Literal& b) { return a.var < b.var; });
            for (std::size_t k = 0; k < clause.size(); ++k) {
                if (clause[k].var >= variable_count_)
                    throw InputError("variable out of range in clause " + std::to_string(c + 1));
                if (k > 0 && clause[k].var == clause[k - 1].var)
                    throw InputError("repeated variable in clause " + std::to_string(c + 1));
                ++occurrences_[clause[k].var];
            }
        }
    }

    [[nodiscard]] std::size_t variable_count() const noexcept { return variable_count_; }
    [[nodiscard]] std::size_t width() const noexcept { return width_; }
    [[nodiscard]] const std::vector<Clause>& clauses() const noexcept { return clauses_; }
    [[nodiscard]] const std::vector<std::size_t>& occurrences() const noexcept { return occurrences_; }

    [[nodiscard]] bool clause_satisfied(std::size_t c, const std::vector<bool>& truth) const {
        for (const auto& lit : clauses_[c])
            if (truth[lit.var] == lit.positive) return true;
        return false;
    }

    [[nodiscard]] bool satisfied_by(const std::vector<bool>& truth) const {
        for (std::size_t c = 0; c < clauses_.size(); ++c)
            if (!clause_satisfied(c, truth)) return false;
        return true;
    }

  private:
    std::size_t variable_count_ = 0;
    std::size_t width_ = 0;
    std::vector<Clause> clauses_;
    std::vector<std::size_t> occurrences_;
};

inline Formula parse_dimacs(std::istream& in) {
    auto lines = detail::read_lines(in);
    std::optional<std::pair<std::size_t, std::size_t>> header;
    std::vector<Clause> clauses;
    Clause current;
    std::size_t header_line = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        std::string_view raw = detail::trim(lines[i]);
        if (raw.empty() || raw.front() == 'c' || raw.front() == '%') continue;
        auto tok = detail::split_ws(raw);
        if (tok[0] == "p") {
            if (header) throw ParseError(lineno, "duplicate header");
            if (tok.size() != 4 || tok[1] != "cnf") throw ParseError(lineno, "malformed header");
            header = std::make_pair(detail::parse_count(tok[2], lineno, "variable count"),
                                    detail::parse_count(tok[3], lineno, "clause count"));
            header_line = lineno;
            continue;
        }
        if (!header) throw ParseError(lineno, "clause before 'p cnf' header");
        for (const auto& t : tok) {
            long long v = 0;
            try {
                std::size_t used = 0;
                v = std::stoll(t, &used);
                if (used != t.size()) throw std::invalid_argument(t);
            } catch (const std::exception&) {
                throw ParseError(lineno, "malformed literal '" + t + "'");
            }
            if (v == 0) {
                if (current.empty()) throw ParseError(lineno, "empty clause");
                clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            auto var = static_cast<std::size_t>(v < 0 ? -v : v);
            if (var > header->first) throw ParseError(lineno, "variable " + t + " out of range");
            for (const auto& lit : current)
                if (lit.var == var - 1) throw ParseError(lineno, "repeated variable " + std::to_string(var));
            current.push_back({static_cast<std::uint32_t>(var - 1), v > 0});
        }
    }
    if (!header) throw ParseError(lines.size(), "malformed header: missing 'p cnf'");
    if (!current.empty()) clauses.push_back(std::move(current));
    if (clauses.empty()) throw ParseError(header_line, "empty clause list");
    if (clauses.size() != header->second)
        throw ParseError(header_line, "header declares " + std::to_string(header->second) +
                                          " clauses, found " + std::to_string(clauses.size()));
    for (std::size_t c = 1; c < clauses.size(); ++c)
        if (clauses[c].size() != clauses[0].size())
            throw InputError("mixed clause widths (clause " + std::to_string(c + 1) + ")");
    return Formula(header->first, std::move(clauses));
}

inline Formula parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_dimacs(in);
}

inline std::string serialize_dimacs(const Formula& f) {
    std::ostringstream out;
    out << "p cnf " << f.variable_count() << " " << f.clauses().size() << "\n";
    for (const auto& clause : f.clauses()) {
        for (const auto& lit : clause) out << (lit.positive ? "" : "-") << lit.var + 1 << " ";
        out << "0\n";
    }
    return out.str();
}

struct RegularityReport {
    bool width_ok = false; // width 3
    bool regular = false;  // 5n/3 clauses, every variable in exactly 5 clauses
    std::vector<std::string> warnings;
};

inline RegularityReport check_3sat5_regularity(const Formula& f) {
    RegularityReport r;
    r.width_ok = f.width() == 3;
    if (!r.width_ok) {
        r.warnings.push_back("width " + std::to_string(f.width()) + " formula is not 3SAT(5)");
        return r;
    }
    r.regular = true;
    if (3 * f.clauses().size() != 5 * f.variable_count()) {
        r.regular = false;
        r.warnings.push_back("non-regular: " + std::to_string(f.clauses().size()) +
                             " clauses for n=" + std::to_string(f.variable_count()));
    }
    for (std::size_t v = 0; v < f.variable_count(); ++v)
        if (f.occurrences()[v] != 5) {
            r.regular = false;
            r.warnings.push_back("non-regular: variable " + std::to_string(v + 1) + " occurs " +
                                 std::to_string(f.occurrences()[v]) + " times");
        }
    return r;
}

// Satisfying truth assignments of a clause as bit masks, ascending. The
// clause's first variable is the most significant bit.
inline std::vector<std::uint32_t> satisfying_assignments(const Clause& clause) {
    const std::size_t w = clause.size();
    std::vector<std::uint32_t> out;
    for (std::uint32_t mask = 0; mask < (1u << w); ++mask) {
        for (std::size_t k = 0; k < w; ++k) {
            bool value = (mask >> (w - 1 - k)) & 1u;
            if (value == clause[k].positive) {
                out.push_back(mask);
                break;
            }
        }
    }
    return out;
}

// One verifier random string: a clause per coordinate and a chosen variable
// position inside each of those clauses.
struct Constraint {
    std::vector<std::uint32_t> clauses;
    std::vector<std::uint32_t> positions;
    std::vector<std::uint32_t> variables;
    std::size_t q1 = 0;
    std::size_t q2 = 0;
};

using QueryKey = std::vector<std::uint32_t>;

namespace detail {

// a^b, or nullopt past `limit`.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t a, unsigned b, std::uint64_t limit) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < b; ++i) {
        if (a != 0 && r > limit / a) return std::nullopt;
        r *= a;
    }
    if (r > limit) return std::nullopt;
    return r;
}

} // namespace detail

// The two-prover constraint system with `ell` parallel repetitions. Prover-1
// answers are indexed in mixed radix (2^w - 1) with coordinate 0 most
// significant; prover-2 answers are ell-bit strings, coordinate 0 most
// significant.
class ConstraintSystem {
  public:
    static constexpr std::uint64_t default_max_constraints = 1u << 22;

    ConstraintSystem(Formula formula, unsigned ell,
                     std::uint64_t max_constraints = default_max_constraints)
        : formula_(std::move(formula)), ell_(ell) {
        if (ell_ == 0) throw InputError("repetition count must be at least 1");
        const std::uint64_t m = formula_.clauses().size();
        const std::uint64_t w = formula_.width();
        auto total = detail::checked_pow(w * m, ell_, max_constraints);
        if (!total)
            throw BudgetError("constraint count (" + std::to_string(w * m) + ")^" +
                              std::to_string(ell_) + " exceeds budget " + std::to_string(max_constraints));
        auto answers = detail::checked_pow((1u << w) - 1, ell_, std::uint64_t{1} << 31);
        if (!answers) throw BudgetError("prover-1 answer count exceeds 2^31");
        q1_answers_ = static_cast<std::uint32_t>(*answers);
        q2_answers_ = std::uint32_t{1} << std::min<unsigned>(ell_, 31);

        for (const auto& clause : formula_.clauses()) clause_answers_.push_back(satisfying_assignments(clause));

        // Lexicographic over (clause tuple, position tuple).
        std::map<QueryKey, std::size_t> q2_ids;
        QueryKey clause_tuple(ell_, 0);
        constraints_.reserve(*total);
        for (std::size_t q1 = 0;; ++q1) {
            QueryKey pos(ell_, 0);
            for (;;) {
                Constraint r;
                r.clauses = clause_tuple;
                r.positions = pos;
                r.variables.resize(ell_);
                for (unsigned k = 0; k < ell_; ++k)
                    r.variables[k] = formula_.clauses()[clause_tuple[k]][pos[k]].var;
                r.q1 = q1;
                q2_ids.emplace(r.variables, 0);
                constraints_.push_back(std::move(r));
                if (!advance(pos, w)) break;
            }
            q1_keys_.push_back(clause_tuple);
            if (!advance(clause_tuple, m)) break;
        }
        std::size_t next = 0;
        for (auto& [key, id] : q2_ids) {
            id = next++;
            q2_keys_.push_back(key);
        }
        q1_members_.assign(q1_keys_.size(), {});
        q2_members_.assign(q2_keys_.size(), {});
        for (std::size_t i = 0; i < constraints_.size(); ++i) {
            auto& r = constraints_[i];
            r.q2 = q2_ids.at(r.variables);
            q1_members_[r.q1].push_back(i);
            q2_members_[r.q2].push_back(i);
        }
    }

    [[nodiscard]] const Formula& formula() const noexcept { return formula_; }
    [[nodiscard]] unsigned ell() const noexcept { return ell_; }
    [[nodiscard]] std::size_t size() const noexcept { return constraints_.size(); }
    [[nodiscard]] const Constraint& constraint(std::size_t i) const { return constraints_.at(i); }
    [[nodiscard]] const std::vector<Constraint>& constraints() const noexcept { return constraints_; }

    [[nodiscard]] std::uint32_t q1_answer_count() const noexcept { return q1_answers_; }
    [[nodiscard]] std::uint32_t q2_answer_count() const noexcept { return q2_answers_; }

    [[nodiscard]] std::size_t q1_count() const noexcept { return q1_keys_.size(); }
    [[nodiscard]] std::size_t q2_count() const noexcept { return q2_keys_.size(); }
    [[nodiscard]] const QueryKey& q1_key(std::size_t id) const { return q1_keys_.at(id); }
    [[nodiscard]] const QueryKey& q2_key(std::size_t id) const { return q2_keys_.at(id); }
    [[nodiscard]] const std::vector<std::size_t>& q1_members(std::size_t id) const { return q1_members_.at(id); }
    [[nodiscard]] const std::vector<std::size_t>& q2_members(std::size_t id) const { return q2_members_.at(id); }

    [[nodiscard]] std::optional<std::size_t> find_q1(const QueryKey& key) const {
        auto it = std::lower_bound(q1_keys_.begin(), q1_keys_.end(), key);
        if (it == q1_keys_.end() || *it != key) return std::nullopt;
        return static_cast<std::size_t>(it - q1_keys_.begin());
    }
    [[nodiscard]] std::optional<std::size_t> find_q2(const QueryKey& key) const {
        auto it = std::lower_bound(q2_keys_.begin(), q2_keys_.end(), key);
        if (it == q2_keys_.end() || *it != key) return std::nullopt;
        return static_cast<std::size_t>(it - q2_keys_.begin());
    }

    [[nodiscard]] const std::vector<std::uint32_t>& clause_answers(std::size_t clause) const {
        return clause_answers_.at(clause);
    }

    // Truth-value mask of coordinate k's clause under prover-1 answer `a`.
    [[nodiscard]] std::uint32_t coordinate_mask(std::size_t r, std::uint32_t a, unsigned k) const {
        const auto base = static_cast<std::uint32_t>(formula_.width() == 3 ? 7 : 3);
        std::uint32_t digit = a;
        for (unsigned i = ell_ - 1; i > k; --i) digit /= base;
        return clause_answers_[constraints_[r].clauses[k]][digit % base];
    }

    // Restriction of prover-1 answer `a` to the chosen variables of constraint r.
    [[nodiscard]] std::uint32_t project(std::size_t r, std::uint32_t a) const {
        if (r >= constraints_.size()) throw InputError("constraint index out of range");
        if (a >= q1_answers_) throw InputError("answer index out of range");
        const auto& c = constraints_[r];
        const auto w = static_cast<unsigned>(formula_.width());
        std::uint32_t out = 0;
        for (unsigned k = 0; k < ell_; ++k) {
            std::uint32_t mask = coordinate_mask(r, a, k);
            out = (out << 1) | ((mask >> (w - 1 - c.positions[k])) & 1u);
        }
        return out;
    }

  private:
    static bool advance(QueryKey& digits, std::uint64_t radix) {
        for (std::size_t k = digits.size(); k-- > 0;) {
            if (++digits[k] < radix) return true;
            digits[k] = 0;
        }
        return false;
    }

    Formula formula_;
    unsigned ell_ = 1;
    std::uint32_t q1_answers_ = 0;
    std::uint32_t q2_answers_ = 0;
    std::vector<std::vector<std::uint32_t>> clause_answers_;
    std::vector<Constraint> constraints_;
    std::vector<QueryKey> q1_keys_;
    std::vector<QueryKey> q2_keys_;
    std::vector<std::vector<std::size_t>> q1_members_;
    std::vector<std::vector<std::size_t>> q2_members_;
};

// Answers keyed by dense query id.
struct GlobalAssignment {
    std::map<std::size_t, std::uint32_t> q1;
    std::map<std::size_t, std::uint32_t> q2;

    friend bool operator==(const GlobalAssignment&, const GlobalAssignment&) = default;
};

inline bool constraint_satisfied(const ConstraintSystem& cs, const GlobalAssignment& f, std::size_t r) {
    const auto& c = cs.constraint(r);
    auto a = f.q1.find(c.q1);
    auto b = f.q2.find(c.q2);
    if (a == f.q1.end() || b == f.q2.end()) return false;
    return cs.project(r, a->second) == b->second;
}

inline std::size_t count_satisfied(const ConstraintSystem& cs, const GlobalAssignment& f) {
    for (const auto& [q, a] : f.q1)
        if (q >= cs.q1_count() || a >= cs.q1_answer_count()) throw InputError("q1 answer out of range");
    for (const auto& [q, b] : f.q2)
        if (q >= cs.q2_count() || b >= cs.q2_answer_count()) throw InputError("q2 answer out of range");
    std::size_t n = 0;
    for (std::size_t r = 0; r < cs.size(); ++r)
        if (constraint_satisfied(cs, f, r)) ++n;
    return n;
}

// The honest provers' answers for a truth assignment. q1 queries containing a
// clause that `truth` falsifies stay unassigned.
inline GlobalAssignment assignment_from_truth(const ConstraintSystem& cs, const std::vector<bool>& truth) {
    if (truth.size() != cs.formula().variable_count()) throw InputError("truth assignment size mismatch");
    const auto& f = cs.formula();
    const auto w = static_cast<unsigned>(f.width());
    const std::uint32_t base = (1u << w) - 1;
    GlobalAssignment out;
    for (std::size_t q = 0; q < cs.q1_count(); ++q) {
        std::uint32_t index = 0;
        bool ok = true;
        for (auto clause : cs.q1_key(q)) {
            std::uint32_t mask = 0;
            for (unsigned k = 0; k < w; ++k) mask = (mask << 1) | (truth[f.clauses()[clause][k].var] ? 1u : 0u);
            const auto& answers = cs.clause_answers(clause);
            auto it = std::find(answers.begin(), answers.end(), mask);
            if (it == answers.end()) {
                ok = false;
                break;
            }
            index = index * base + static_cast<std::uint32_t>(it - answers.begin());
        }
        if (ok) out.q1[q] = index;
    }
    for (std::size_t q = 0; q < cs.q2_count(); ++q) {
        std::uint32_t bits = 0;
        for (auto var : cs.q2_key(q)) bits = (bits << 1) | (truth[var] ? 1u : 0u);
        out.q2[q] = bits;
    }
    return out;
}

// Exact maximum of count_satisfied over all global assignments. Enumerates
// prover-1 assignments; given those, each q2 query independently takes its
// most-voted answer.
inline std::size_t max_satisfiable_bruteforce(const ConstraintSystem& cs, std::uint64_t budget = 10'000'000) {
    const std::uint64_t k = cs.q1_answer_count();
    if (!detail::checked_pow(k, static_cast<unsigned>(cs.q1_count()), budget))
        throw BudgetError("assignment space " + std::to_string(k) + "^" + std::to_string(cs.q1_count()) +
                          " exceeds budget " + std::to_string(budget));
    std::vector<std::uint32_t> answer(cs.q1_count(), 0);
    std::vector<std::uint32_t> votes(cs.q2_count() * cs.q2_answer_count());
    std::size_t best = 0;
    for (;;) {
        std::fill(votes.begin(), votes.end(), 0);
        for (std::size_t r = 0; r < cs.size(); ++r) {
            const auto& c = cs.constraint(r);
            ++votes[c.q2 * cs.q2_answer_count() + cs.project(r, answer[c.q1])];
        }
        std::size_t total = 0;
        for (std::size_t q = 0; q < cs.q2_count(); ++q) {
            auto first = votes.begin() + static_cast<std::ptrdiff_t>(q * cs.q2_answer_count());
            total += *std::max_element(first, first + cs.q2_answer_count());
        }
        best = std::max(best, total);
        std::size_t i = answer.size();
        while (i > 0 && ++answer[i - 1] == k) answer[--i] = 0;
        if (i == 0) break;
    }
    return best;
}

// Brute-force satisfiability over all 2^n truth assignments (n <= max_vars).
inline std::optional<std::vector<bool>> find_satisfying_truth(const Formula& f, std::size_t max_vars = 20) {
    const std::size_t n = f.variable_count();
    if (n > max_vars)
        throw BudgetError("satisfiability check over " + std::to_string(n) + " variables exceeds 2^" +
                          std::to_string(max_vars));
    std::vector<bool> truth(n, false);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        for (std::size_t v = 0; v < n; ++v) truth[v] = (bits >> (n - 1 - v)) & 1u;
        if (f.satisfied_by(truth)) return truth;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Assignment file: `q1 <clause-tuple> <answer-index>` and `q2 <var-tuple> <bits>`,
// tuples as 1-based comma-separated indices.

namespace detail {

inline std::string format_tuple(const QueryKey& key) {
    std::string out;
    for (std::size_t i = 0; i < key.size(); ++i) out += (i ? "," : "") + std::to_string(key[i] + 1);
    return out;
}

inline QueryKey parse_tuple(const std::string& text, std::size_t lineno) {
    QueryKey out;
    std::size_t start = 0;
    for (;;) {
        auto comma = text.find(',', start);
        auto part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        auto v = parse_count(part, lineno, "tuple entry");
        if (v == 0) throw ParseError(lineno, "tuple entries are 1-based");
        out.push_back(static_cast<std::uint32_t>(v - 1));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace detail

inline std::string serialize_assignment(const ConstraintSystem& cs, const GlobalAssignment& f) {
    std::ostringstream out;
    out << "# stacksp-assignment v1\n";
    for (const auto& [q, a] : f.q1) out << "q1 " << detail::format_tuple(cs.q1_key(q)) << " " << a << "\n";
    for (const auto& [q, b] : f.q2) {
        std::string bits;
        for (unsigned k = 0; k < cs.ell(); ++k) bits += ((b >> (cs.ell() - 1 - k)) & 1u) ? '1' : '0';
        out << "q2 " << detail::format_tuple(cs.q2_key(q)) << " " << bits << "\n";
    }
    return out.str();
}

inline GlobalAssignment parse_assignment(const ConstraintSystem& cs, std::istream& in) {
    auto lines = detail::read_lines(in);
    GlobalAssignment f;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        std::string_view raw = detail::trim(lines[i]);
        if (raw.empty() || raw.front() == '#') continue;
        auto tok = detail::split_ws(raw);
        if (tok.size() != 3 || (tok[0] != "q1" && tok[0] != "q2"))
            throw ParseError(lineno, "malformed assignment line");
        auto key = detail::parse_tuple(tok[1], lineno);
        if (tok[0] == "q1") {
            auto id = cs.find_q1(key);
            if (!id) throw ParseError(lineno, "unknown q1 query " + tok[1]);
            auto a = detail::parse_count(tok[2], lineno, "answer index");
            if (a >= cs.q1_answer_count()) throw ParseError(lineno, "answer index out of range");
            f.q1[*id] = static_cast<std::uint32_t>(a);
        } else {
            auto id = cs.find_q2(key);
            if (!id) throw ParseError(lineno, "unknown q2 query " + tok[1]);
            if (tok[2].size() != cs.ell() || tok[2].find_first_not_of("01") != std::string::npos)
                throw ParseError(lineno, "q2 answer must be " + std::to_string(cs.ell()) + " bits");
            f.q2[*id] = static_cast<std::uint32_t>(std::stoul(tok[2], nullptr, 2));
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Formula generators for test batteries.

// A uniformly shuffled configuration-model 3SAT(5) formula: n a positive
// multiple of 3, every variable in exactly five clauses, random polarities.
inline Formula random_regular_3sat5(std::size_t n, std::uint64_t seed) {
    if (n < 3 || n % 3 != 0) throw InputError("regular 3SAT(5) needs n a positive multiple of 3");
    SplitMix64 rng(seed);
    std::vector<std::uint32_t> slots;
    for (std::uint32_t v = 0; v < n; ++v)
        for (int k = 0; k < 5; ++k) slots.push_back(v);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        shuffle(slots, rng);
        std::vector<Clause> clauses;
        bool ok = true;
        for (std::size_t i = 0; i < slots.size() && ok; i += 3) {
            Clause c;
            for (std::size_t k = 0; k < 3; ++k) {
                for (const auto& lit : c)
                    if (lit.var == slots[i + k]) ok = false;
                c.push_back({slots[i + k], rng.below(2) == 1});
            }
            clauses.push_back(std::move(c));
        }
        if (ok) return Formula(n, std::move(clauses));
    }
    throw InputError("could not draw a regular formula");
}

// m clauses of the given width over n variables, distinct variables per clause.
inline Formula random_formula(std::size_t n, std::size_t m, std::size_t width, std::uint64_t seed) {
    if (n < width) throw InputError("not enough variables for the clause width");
    SplitMix64 rng(seed);
    std::vector<Clause> clauses;
    std::vector<std::uint32_t> vars(n);
    for (std::uint32_t v = 0; v < n; ++v) vars[v] = v;
    for (std::size_t c = 0; c < m; ++c) {
        shuffle(vars, rng);
        Clause clause;
        for (std::size_t k = 0; k < width; ++k) clause.push_back({vars[k], rng.below(2) == 1});
        clauses.push_back(std::move(clause));
    }
    return Formula(n, std::move(clauses));
}

} // namespace stacksp
