#pragma once

#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "polytope.hpp"
#include "scalar.hpp"

namespace qst {

template <typename T>
struct OracleResult {
    std::vector<int> best_indices;
    T best_radius = T(0);
    T best_radius_sq = T(0);
    std::int64_t subsets_evaluated = 0;
};

/// Brute-force ground truth: the best origin-centered inscribed radius over
/// subsets of at most k vertices. The radius is monotone under adding points,
/// so subsets of size exactly min(k, n) realize the maximum; subsets whose
/// hull misses the origin score zero, keeping the maximization total.
/// Deterministic lexicographic tie-break. Exact under the rational policy.
template <typename T>
OracleResult<T> best_subset_radius(const VPolytope<T>& q, int k, std::int64_t cap = 1000000) {
    const int n = static_cast<int>(q.points.size());
    const int kk = std::min(k, n);
    if (kk <= 0) throw PreconditionViolation("best_subset_radius: k must be positive");
    if (detail::binomial_capped(n, kk, cap) > cap)
        throw EnumerationTooLarge("best_subset_radius: C(n,k) exceeds cap");

    OracleResult<T> out;
    out.best_radius_sq = T(-1);

    std::vector<int> idx(static_cast<std::size_t>(kk));
    for (int i = 0; i < kk; ++i) idx[static_cast<std::size_t>(i)] = i;
    VPolytope<T> sub;
    sub.dim = q.dim;
    sub.points.resize(static_cast<std::size_t>(kk));
    while (true) {
        for (int i = 0; i < kk; ++i) sub.points[static_cast<std::size_t>(i)] = q.points[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        const auto r = inscribed_radius_origin(sub, cap);
        const T rsq = r.origin_interior ? r.value_sq : T(0);
        ++out.subsets_evaluated;
        if (rsq > out.best_radius_sq) {
            out.best_radius_sq = rsq;
            out.best_indices = idx;
        }
        int i = kk - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - kk + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < kk; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    if (out.best_radius_sq < T(0)) out.best_radius_sq = T(0);
    out.best_radius = approx_sqrt(out.best_radius_sq);
    return out;
}

} // namespace qst
