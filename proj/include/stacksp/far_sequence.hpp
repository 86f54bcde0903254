#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "stacksp/raz.hpp"
#include "stacksp/random.hpp"
#include "stacksp/scalar.hpp"

namespace stacksp {

// perm[k] is the (0-based) constraint placed at position k.
struct SequenceOrder {
    std::vector<std::size_t> perm;
    Rational delta{1};
    std::size_t window = 0;

    friend bool operator==(const SequenceOrder&, const SequenceOrder&) = default;
};

inline std::size_t window_size(const Rational& delta, std::size_t m) {
    if (delta <= 0 || delta > 1) throw InputError("delta must lie in (0, 1]");
    return static_cast<std::size_t>(ceil(delta * m));
}

inline SequenceOrder make_order(std::vector<std::size_t> perm, const Rational& delta) {
    const std::size_t m = perm.size();
    std::vector<bool> seen(m, false);
    for (auto r : perm) {
        if (r >= m || seen[r]) throw InputError("order is not a permutation of the constraints");
        seen[r] = true;
    }
    SequenceOrder o;
    o.window = window_size(delta, m);
    o.perm = std::move(perm);
    o.delta = delta;
    return o;
}

inline SequenceOrder identity_order(const ConstraintSystem& cs, const Rational& delta) {
    std::vector<std::size_t> perm(cs.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    return make_order(std::move(perm), delta);
}

// partners[r]: constraints other than r sharing its q1 or q2 query, ascending.
inline std::vector<std::vector<std::size_t>> shared_query_partners(const ConstraintSystem& cs) {
    std::vector<std::vector<std::size_t>> out(cs.size());
    for (std::size_t r = 0; r < cs.size(); ++r) {
        const auto& c = cs.constraint(r);
        auto& p = out[r];
        for (auto s : cs.q1_members(c.q1))
            if (s != r) p.push_back(s);
        for (auto s : cs.q2_members(c.q2))
            if (s != r) p.push_back(s);
        std::sort(p.begin(), p.end());
        p.erase(std::unique(p.begin(), p.end()), p.end());
    }
    return out;
}

inline std::vector<bool> delta_far_flags(const ConstraintSystem& cs, const SequenceOrder& order) {
    if (order.perm.size() != cs.size()) throw InputError("order length does not match constraint count");
    const std::size_t m = cs.size();
    std::vector<bool> far(m, true);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& a = cs.constraint(order.perm[i]);
        const std::size_t last = std::min(m - 1, i + order.window);
        for (std::size_t j = i + 1; j <= last; ++j) {
            const auto& b = cs.constraint(order.perm[j]);
            if (a.q1 == b.q1 || a.q2 == b.q2) {
                far[i] = false;
                break;
            }
        }
    }
    return far;
}

inline Rational far_fraction(const ConstraintSystem& cs, const SequenceOrder& order) {
    auto flags = delta_far_flags(cs, order);
    auto far = std::count(flags.begin(), flags.end(), true);
    return Rational(far, static_cast<long>(flags.size()));
}

struct RandomOrderResult {
    SequenceOrder order;
    std::size_t attempts = 0;
    Rational fraction;
};

// Uniform permutations from one seeded stream until the far fraction reaches
// 1 - gamma. Each attempt shuffles the identity afresh.
inline RandomOrderResult random_far_order(const ConstraintSystem& cs, const Rational& delta, const Rational& gamma,
                                          std::uint64_t seed, std::size_t max_retries) {
    if (gamma <= 0 || gamma > 1) throw InputError("gamma must lie in (0, 1]");
    if (delta * cs.size() < 1) throw InputError("delta must be at least 1/M");
    SplitMix64 rng(seed);
    Rational best(-1);
    for (std::size_t attempt = 1; attempt <= max_retries; ++attempt) {
        std::vector<std::size_t> perm(cs.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        shuffle(perm, rng);
        auto order = make_order(std::move(perm), delta);
        Rational f = far_fraction(cs, order);
        if (f >= 1 - gamma) return {std::move(order), attempt, f};
        best = std::max(best, f);
    }
    throw BudgetError("no far sequence within " + std::to_string(max_retries) +
                      " attempts (best fraction " + to_string(best) + ")");
}

struct DerandomizedResult {
    SequenceOrder order;
    std::vector<Rational> trace; // estimator before step 1, then after each placement
};

namespace detail {

// Ordered pairs of distinct slots among u consecutive free slots at distance <= d.
inline std::int64_t close_slot_pairs(std::int64_t u, std::int64_t d) {
    std::int64_t top = std::min(d, u - 1), s = 0;
    for (std::int64_t k = 1; k <= top; ++k) s += u - k;
    return s;
}

// Placement state: positions [0, k) are filled.
struct EstimatorState {
    std::int64_t m = 0;
    std::int64_t d = 0;
    std::int64_t k = 0;
    const std::vector<std::int64_t>* pos = nullptr; // -1 when unplaced

    std::int64_t free_slots() const { return m - k; }

    // Scaled so every pair term is an integer: U * max(U - 1, 1).
    std::int64_t scale() const {
        std::int64_t u = free_slots();
        return std::max<std::int64_t>(u, 1) * std::max<std::int64_t>(u - 1, 1);
    }

    // Free slots in (p, p + d].
    std::int64_t window_free(std::int64_t p) const {
        std::int64_t lo = std::max(p + 1, k), hi = std::min(p + d, m - 1);
        return hi >= lo ? hi - lo + 1 : 0;
    }

    // Scaled Pr[0 < pos(b) - pos(a) <= d] under uniform completion.
    std::int64_t pair_term(std::size_t a, std::size_t b) const {
        std::int64_t pa = (*pos)[a], pb = (*pos)[b];
        std::int64_t u = free_slots();
        if (pa >= 0 && pb >= 0) return (pb > pa && pb - pa <= d) ? scale() : 0;
        if (pa >= 0) return window_free(pa) * (scale() / u);
        if (pb >= 0) return 0;
        return u >= 2 ? close_slot_pairs(u, d) : 0;
    }
};

} // namespace detail

// Greedy conditional-expectation ordering driven by the union-bound
// estimator: the sum over ordered sharing pairs (r, r') of
// Pr[0 < pos(r') - pos(r) <= D] under a uniform completion of the prefix.
// Each step places the unplaced constraint giving the smallest estimator,
// lowest index on ties.
inline DerandomizedResult derandomized_far_order(const ConstraintSystem& cs, const Rational& delta) {
    const std::size_t m = cs.size();
    if (delta * m < 1) throw InputError("delta must be at least 1/M");
    const std::size_t window = window_size(delta, m);
    const auto partners = shared_query_partners(cs);

    std::vector<std::int64_t> pos(m, -1);
    detail::EstimatorState st{static_cast<std::int64_t>(m), static_cast<std::int64_t>(window), 0, &pos};
    auto estimate = [&]() {
        std::int64_t total = 0;
        for (std::size_t r = 0; r < m; ++r)
            for (auto s : partners[r]) total += st.pair_term(r, s);
        return Rational(total, st.scale());
    };

    DerandomizedResult out;
    out.trace.push_back(estimate());
    std::vector<std::size_t> perm;
    perm.reserve(m);
    std::vector<bool> placed(m, false);
    for (std::size_t k = 0; k < m; ++k) {
        // Candidate c at slot k. Only pairs touching c differ between
        // candidates; compare their contribution after the placement against
        // their value with c still counted as unplaced.
        const std::int64_t u2 = static_cast<std::int64_t>(m - k - 1);
        const std::int64_t scale2 = std::max<std::int64_t>(u2, 1) * std::max<std::int64_t>(u2 - 1, 1);
        const std::int64_t g2 = u2 >= 2 ? detail::close_slot_pairs(u2, st.d) : 0;
        auto window_after = [&](std::int64_t p) {
            std::int64_t lo = std::max<std::int64_t>(p + 1, static_cast<std::int64_t>(k) + 1);
            std::int64_t hi = std::min<std::int64_t>(p + st.d, static_cast<std::int64_t>(m) - 1);
            return hi >= lo ? hi - lo + 1 : 0;
        };
        const std::int64_t per_slot = u2 > 0 ? scale2 / u2 : 0;
        const std::int64_t h_self = window_after(static_cast<std::int64_t>(k)) * per_slot;

        std::size_t best = m;
        std::int64_t best_delta = 0;
        for (std::size_t c = 0; c < m; ++c) {
            if (placed[c]) continue;
            std::int64_t change = 0;
            for (auto r : partners[c]) {
                if (placed[r]) {
                    std::int64_t p = pos[r];
                    change += (static_cast<std::int64_t>(k) - p <= st.d ? scale2 : 0) - window_after(p) * per_slot;
                } else {
                    change += h_self - 2 * g2;
                }
            }
            if (best == m || change < best_delta) {
                best = c;
                best_delta = change;
            }
        }
        placed[best] = true;
        pos[best] = static_cast<std::int64_t>(k);
        perm.push_back(best);
        st.k = static_cast<std::int64_t>(k) + 1;
        out.trace.push_back(estimate());
    }
    out.order = make_order(std::move(perm), delta);
    return out;
}

} // namespace stacksp
