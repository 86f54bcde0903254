#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stacksp/scalar.hpp"

namespace stacksp {

enum class LpStatus { optimal, unbounded, infeasible };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    std::vector<Rational> x;
    Rational objective;
};

// maximize c.x subject to A x <= b, x >= 0, in exact arithmetic.
//
// A row with a negative bound and no negative coefficient is reported as
// infeasible; other negative bounds are rejected, since this library only
// builds nonnegative rows. With b >= 0 the origin is feasible and a single
// phase suffices. Bland's rule keeps degenerate pivoting finite.
inline LpResult maximize(const std::vector<Rational>& c, const std::vector<std::vector<Rational>>& a,
                         const std::vector<Rational>& b) {
    const std::size_t n = c.size(), m = a.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] >= 0) continue;
        bool has_negative = false;
        for (const auto& v : a[i])
            if (v < 0) has_negative = true;
        if (!has_negative) return {LpStatus::infeasible, {}, Rational(0)};
        throw InputError("simplex: negative right-hand side with mixed-sign row is unsupported");
    }

    // Dictionary form: basic variable of row i equals d[i][n] - sum_j d[i][j] x_nonbasic(j),
    // objective equals obj[n] + sum_j obj[j] x_nonbasic(j). Variables 0..n-1 are
    // structural, n..n+m-1 slacks.
    std::vector<std::vector<Rational>> d(m, std::vector<Rational>(n + 1));
    std::vector<std::size_t> basic(m), nonbasic(n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) d[i][j] = a[i][j];
        d[i][n] = b[i];
        basic[i] = n + i;
    }
    for (std::size_t j = 0; j < n; ++j) nonbasic[j] = j;
    std::vector<Rational> obj(n + 1);
    for (std::size_t j = 0; j < n; ++j) obj[j] = c[j];

    for (;;) {
        std::optional<std::size_t> enter;
        for (std::size_t j = 0; j < n; ++j)
            if (obj[j] > 0 && (!enter || nonbasic[j] < nonbasic[*enter])) enter = j;
        if (!enter) break;
        const std::size_t e = *enter;
        std::optional<std::size_t> leave;
        Rational best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (d[i][e] <= 0) continue;
            Rational ratio = d[i][n] / d[i][e];
            if (!leave || ratio < best_ratio || (ratio == best_ratio && basic[i] < basic[*leave])) {
                leave = i;
                best_ratio = std::move(ratio);
            }
        }
        if (!leave) return {LpStatus::unbounded, {}, Rational(0)};

        // Solve row r for the entering variable and substitute everywhere.
        const std::size_t r = *leave;
        const Rational pivot = d[r][e];
        for (std::size_t j = 0; j <= n; ++j)
            if (j != e) d[r][j] /= pivot;
        d[r][e] = 1 / pivot;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || d[i][e] == 0) continue;
            const Rational f = d[i][e];
            for (std::size_t j = 0; j <= n; ++j)
                if (j != e && d[r][j] != 0) d[i][j] -= f * d[r][j];
            d[i][e] = -f * d[r][e];
        }
        {
            const Rational f = obj[e];
            for (std::size_t j = 0; j < n; ++j)
                if (j != e && d[r][j] != 0) obj[j] -= f * d[r][j];
            obj[n] += f * d[r][n];
            obj[e] = -f * d[r][e];
        }
        std::swap(basic[r], nonbasic[e]);
    }

    LpResult out;
    out.status = LpStatus::optimal;
    out.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basic[i] < n) out.x[basic[i]] = d[i][n];
    out.objective = 0;
    for (std::size_t j = 0; j < n; ++j) out.objective += c[j] * out.x[j];
    return out;
}

} // namespace stacksp
