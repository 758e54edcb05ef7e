#pragma once

#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "scalar.hpp"

namespace qst {

enum class LpStatus { optimal, infeasible, unbounded };

/// One constraint over nonnegative variables: a.x <= b, or a.x == b when eq.
template <typename T>
struct LpRow {
    Vec<T> a;
    T b;
    bool eq = false;
};

template <typename T>
struct LpResult {
    LpStatus status = LpStatus::infeasible;
    T value = T(0);
    Vec<T> x; // structural variables; a basic solution (at most #rows nonzeros)
};

/// Two-phase dense tableau simplex with Bland's rule (finite on degenerate
/// instances). Maximizes objective.x over { x >= 0, rows }. Desk scale only:
/// everything stays dense.
template <typename T>
LpResult<T> lp_maximize(int nvars, std::vector<LpRow<T>> rows, Vec<T> objective) {
    const bool exact = scalar_policy<T>::exact;
    const T eps = exact ? T(0) : from_double<T>(1e-11);
    const T feas_tol = scalar_policy<T>::tolerance();

    const int m = static_cast<int>(rows.size());
    int ncols = nvars;
    std::vector<int> slack_col(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < m; ++i)
        if (!rows[static_cast<std::size_t>(i)].eq) slack_col[static_cast<std::size_t>(i)] = ncols++;
    const int first_artificial = ncols;

    // decide which rows need an artificial basis column
    std::vector<int> art_col(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < m; ++i) {
        const bool negated = rows[static_cast<std::size_t>(i)].b < T(0);
        if (rows[static_cast<std::size_t>(i)].eq || negated) art_col[static_cast<std::size_t>(i)] = ncols++;
    }

    // tableau: m rows by (ncols + 1), rhs in the last column
    std::vector<Vec<T>> tab(static_cast<std::size_t>(m), Vec<T>(static_cast<std::size_t>(ncols) + 1, T(0)));
    std::vector<int> basis(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < m; ++i) {
        auto& row = tab[static_cast<std::size_t>(i)];
        const auto& in = rows[static_cast<std::size_t>(i)];
        for (int j = 0; j < nvars; ++j) row[static_cast<std::size_t>(j)] = in.a[static_cast<std::size_t>(j)];
        if (slack_col[static_cast<std::size_t>(i)] >= 0) row[static_cast<std::size_t>(slack_col[static_cast<std::size_t>(i)])] = T(1);
        row[static_cast<std::size_t>(ncols)] = in.b;
        if (in.b < T(0))
            for (auto& v : row) v = -v;
        if (art_col[static_cast<std::size_t>(i)] >= 0) {
            row[static_cast<std::size_t>(art_col[static_cast<std::size_t>(i)])] = T(1);
            basis[static_cast<std::size_t>(i)] = art_col[static_cast<std::size_t>(i)];
        } else {
            basis[static_cast<std::size_t>(i)] = slack_col[static_cast<std::size_t>(i)];
        }
    }

    Vec<T> obj(static_cast<std::size_t>(ncols) + 1, T(0)); // reduced costs; obj[ncols] = -objective value
    const long iter_cap = 2000L * (m + ncols + 10);

    auto pivot = [&](int pr, int pc) {
        auto& prow = tab[static_cast<std::size_t>(pr)];
        const T piv = prow[static_cast<std::size_t>(pc)];
        for (auto& v : prow) v /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == pr) continue;
            auto& row = tab[static_cast<std::size_t>(i)];
            const T f = row[static_cast<std::size_t>(pc)];
            if (f == T(0)) continue;
            for (std::size_t j = 0; j <= static_cast<std::size_t>(ncols); ++j) row[j] -= f * prow[j];
            row[static_cast<std::size_t>(pc)] = T(0);
        }
        const T f = obj[static_cast<std::size_t>(pc)];
        if (f != T(0)) {
            for (std::size_t j = 0; j <= static_cast<std::size_t>(ncols); ++j) obj[j] -= f * prow[j];
            obj[static_cast<std::size_t>(pc)] = T(0);
        }
        basis[static_cast<std::size_t>(pr)] = pc;
    };

    // returns true on optimal, false on unbounded
    auto run = [&](int allowed_cols) -> bool {
        for (long iter = 0; iter < iter_cap; ++iter) {
            int pc = -1;
            for (int j = 0; j < allowed_cols; ++j)
                if (obj[static_cast<std::size_t>(j)] > eps) { pc = j; break; } // Bland: smallest index
            if (pc < 0) return true;
            int pr = -1;
            for (int i = 0; i < m; ++i) {
                const T& a = tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(pc)];
                if (a <= eps) continue;
                if (pr < 0) { pr = i; continue; }
                const T lhs = tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(ncols)] * tab[static_cast<std::size_t>(pr)][static_cast<std::size_t>(pc)];
                const T rhs = tab[static_cast<std::size_t>(pr)][static_cast<std::size_t>(ncols)] * a;
                if (lhs < rhs || (lhs == rhs && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(pr)]))
                    pr = i;
            }
            if (pr < 0) return false;
            pivot(pr, pc);
        }
        throw ConvergenceFailure("simplex: iteration cap reached");
    };

    // phase 1: drive artificials to zero
    if (first_artificial < ncols) {
        for (int j = first_artificial; j < ncols; ++j) obj[static_cast<std::size_t>(j)] = T(-1);
        for (int i = 0; i < m; ++i)
            if (basis[static_cast<std::size_t>(i)] >= first_artificial)
                for (std::size_t j = 0; j <= static_cast<std::size_t>(ncols); ++j)
                    obj[j] += tab[static_cast<std::size_t>(i)][j];
        run(first_artificial); // artificials never enter; bounded above by 0
        const T art_sum = obj[static_cast<std::size_t>(ncols)]; // equals sum of artificials at optimum
        if (art_sum > feas_tol) return {LpStatus::infeasible, T(0), {}};
        // pivot lingering artificials out of the basis where possible
        for (int i = 0; i < m; ++i) {
            if (basis[static_cast<std::size_t>(i)] < first_artificial) continue;
            int pc = -1;
            for (int j = 0; j < first_artificial; ++j)
                if (scalar_abs(tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) > (exact ? T(0) : from_double<T>(1e-11))) { pc = j; break; }
            if (pc >= 0) pivot(i, pc);
        }
    }

    // phase 2
    for (auto& v : obj) v = T(0);
    for (int j = 0; j < nvars; ++j) obj[static_cast<std::size_t>(j)] = objective[static_cast<std::size_t>(j)];
    for (int i = 0; i < m; ++i) {
        const int b = basis[static_cast<std::size_t>(i)];
        if (b < nvars && objective[static_cast<std::size_t>(b)] != T(0)) {
            const T f = objective[static_cast<std::size_t>(b)];
            for (std::size_t j = 0; j <= static_cast<std::size_t>(ncols); ++j)
                obj[j] -= f * tab[static_cast<std::size_t>(i)][j];
        }
    }
    if (!run(first_artificial)) return {LpStatus::unbounded, T(0), {}};

    LpResult<T> res;
    res.status = LpStatus::optimal;
    res.value = -obj[static_cast<std::size_t>(ncols)];
    res.x.assign(static_cast<std::size_t>(nvars), T(0));
    for (int i = 0; i < m; ++i)
        if (basis[static_cast<std::size_t>(i)] < nvars)
            res.x[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] = tab[static_cast<std::size_t>(i)][static_cast<std::size_t>(ncols)];
    return res;
}

/// Same problem over free (sign-unrestricted) variables via the x = p - q split.
template <typename T>
LpResult<T> lp_maximize_free(int nvars, const std::vector<LpRow<T>>& rows, const Vec<T>& objective) {
    std::vector<LpRow<T>> split;
    split.reserve(rows.size());
    for (const auto& r : rows) {
        LpRow<T> s;
        s.a.resize(2 * r.a.size());
        for (std::size_t j = 0; j < r.a.size(); ++j) {
            s.a[j] = r.a[j];
            s.a[r.a.size() + j] = -r.a[j];
        }
        s.b = r.b;
        s.eq = r.eq;
        split.push_back(std::move(s));
    }
    Vec<T> c(2 * objective.size());
    for (std::size_t j = 0; j < objective.size(); ++j) {
        c[j] = objective[j];
        c[objective.size() + j] = -objective[j];
    }
    auto res = lp_maximize(2 * nvars, std::move(split), std::move(c));
    if (res.status == LpStatus::optimal) {
        Vec<T> x(static_cast<std::size_t>(nvars));
        for (int j = 0; j < nvars; ++j)
            x[static_cast<std::size_t>(j)] = res.x[static_cast<std::size_t>(j)] - res.x[static_cast<std::size_t>(nvars + j)];
        res.x = std::move(x);
    }
    return res;
}

} // namespace qst
