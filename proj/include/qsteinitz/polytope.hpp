#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "linprog.hpp"
#include "scalar.hpp"

namespace qst {

/// Polytope as a list of generators; the convex hull is intended.
template <typename T>
struct VPolytope {
    int dim = 0;
    std::vector<Vec<T>> points;
};

/// Half-space {x : <x, normal> <= 1}, normal != 0. The offset is fixed to 1,
/// so the origin is interior by construction and polarity is a representation
/// swap.
template <typename T>
struct Halfspace {
    Vec<T> normal;
};

template <typename T>
struct HPolytope {
    int dim = 0;
    std::vector<Halfspace<T>> halfspaces;
};

template <typename T>
struct FilteredPoints {
    VPolytope<T> poly;
    std::vector<int> kept; // indices into the input point list
};

namespace detail {

template <typename T>
T point_merge_tol() {
    return T(10) * scalar_policy<T>::tolerance();
}

inline std::int64_t binomial_capped(int n, int k, std::int64_t cap) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return r;
}

/// Rank of the affine hull direction space of a point set.
template <typename T>
int affine_rank(const std::vector<Vec<T>>& pts, int dim) {
    if (pts.size() < 2) return 0;
    std::vector<Vec<T>> rows;
    rows.reserve(pts.size() - 1);
    for (std::size_t i = 1; i < pts.size(); ++i) rows.push_back(vsub(pts[i], pts[0]));
    T scale(1);
    for (const auto& r : rows) scale = std::max(scale, norm_inf(r));
    const T tol = scalar_policy<T>::tolerance() * scale;
    int rank = 0;
    for (int c = 0; c < dim && rank < static_cast<int>(rows.size()); ++c) {
        int piv = -1;
        T best(0);
        for (std::size_t i = static_cast<std::size_t>(rank); i < rows.size(); ++i)
            if (scalar_abs(rows[i][static_cast<std::size_t>(c)]) > best) {
                best = scalar_abs(rows[i][static_cast<std::size_t>(c)]);
                piv = static_cast<int>(i);
            }
        if (piv < 0 || best <= tol) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(piv)]);
        for (std::size_t i = static_cast<std::size_t>(rank) + 1; i < rows.size(); ++i) {
            const T f = rows[i][static_cast<std::size_t>(c)] / rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
            if (f == T(0)) continue;
            for (int j = c; j < dim; ++j)
                rows[i][static_cast<std::size_t>(j)] -= f * rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)];
        }
        ++rank;
    }
    return rank;
}

} // namespace detail

/// Merge duplicate points within 10*tolerance; keeps first occurrences.
template <typename T>
FilteredPoints<T> dedup_points(int dim, const std::vector<Vec<T>>& pts) {
    FilteredPoints<T> out;
    out.poly.dim = dim;
    const T tol = detail::point_merge_tol<T>();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool dup = false;
        for (const auto& q : out.poly.points)
            if (vclose(pts[i], q, tol)) { dup = true; break; }
        if (!dup) {
            out.poly.points.push_back(pts[i]);
            out.kept.push_back(static_cast<int>(i));
        }
    }
    return out;
}

/// Construct a VPolytope: merges near-duplicates; when full_dim is set,
/// requires d+1 affinely independent points.
template <typename T>
FilteredPoints<T> make_vpolytope(int dim, const std::vector<Vec<T>>& pts, bool full_dim = false) {
    auto out = dedup_points(dim, pts);
    if (full_dim) {
        if (static_cast<int>(out.poly.points.size()) < dim + 1 ||
            detail::affine_rank(out.poly.points, dim) < dim)
            throw DegenerateInput("make_vpolytope: fewer than d+1 affinely independent points");
    }
    return out;
}

/// Convex-combination weights expressing x over the given points, if any.
/// Feasibility margin follows the global tolerance.
template <typename T>
std::optional<Vec<T>> membership_weights(const std::vector<Vec<T>>& pts, const Vec<T>& x) {
    const int n = static_cast<int>(pts.size());
    const int d = static_cast<int>(x.size());
    if (n == 0) return std::nullopt;
    std::vector<LpRow<T>> rows;
    rows.reserve(static_cast<std::size_t>(d) + 1);
    for (int r = 0; r < d; ++r) {
        LpRow<T> row;
        row.a.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) row.a[static_cast<std::size_t>(i)] = pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
        row.b = x[static_cast<std::size_t>(r)];
        row.eq = true;
        rows.push_back(std::move(row));
    }
    LpRow<T> sum;
    sum.a.assign(static_cast<std::size_t>(n), T(1));
    sum.b = T(1);
    sum.eq = true;
    rows.push_back(std::move(sum));
    auto res = lp_maximize<T>(n, std::move(rows), Vec<T>(static_cast<std::size_t>(n), T(0)));
    if (res.status != LpStatus::optimal) return std::nullopt;
    return res.x;
}

template <typename T>
bool is_member_v(const VPolytope<T>& p, const Vec<T>& x) {
    return membership_weights(p.points, x).has_value();
}

/// Minimal generator subset: a point stays iff it is not in the hull of the
/// others. One LP per point.
template <typename T>
FilteredPoints<T> extreme_points(const VPolytope<T>& p) {
    auto dd = dedup_points(p.dim, p.points);
    const auto& pts = dd.poly.points;
    const std::size_t n = pts.size();
    std::vector<bool> alive(n, true);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Vec<T>> others;
        others.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && alive[j]) others.push_back(pts[j]);
        if (others.empty()) break;
        if (membership_weights(others, pts[i]).has_value()) alive[i] = false;
    }
    FilteredPoints<T> out;
    out.poly.dim = p.dim;
    for (std::size_t i = 0; i < n; ++i)
        if (alive[i]) {
            out.poly.points.push_back(pts[i]);
            out.kept.push_back(dd.kept[i]);
        }
    return out;
}

/// Bounded iff the recession cone {g : <g, n_i> <= 0} is trivial; probed by 2d
/// box-constrained LPs whose optima are 0 (bounded) or 1 (a recession
/// direction scaled to the box).
template <typename T>
bool is_bounded(const HPolytope<T>& h) {
    const int d = h.dim;
    std::vector<LpRow<T>> rows;
    rows.reserve(h.halfspaces.size() + 2 * static_cast<std::size_t>(d));
    for (const auto& hs : h.halfspaces) rows.push_back({hs.normal, T(0), false});
    for (int k = 0; k < d; ++k) {
        Vec<T> e(static_cast<std::size_t>(d), T(0));
        e[static_cast<std::size_t>(k)] = T(1);
        rows.push_back({e, T(1), false});
        rows.push_back({vneg(e), T(1), false});
    }
    for (int j = 0; j < d; ++j) {
        for (int sign = 0; sign < 2; ++sign) {
            Vec<T> c(static_cast<std::size_t>(d), T(0));
            c[static_cast<std::size_t>(j)] = sign ? T(-1) : T(1);
            auto res = lp_maximize_free<T>(d, rows, c);
            if (res.status != LpStatus::optimal || res.value > T(1) / T(2)) return false;
        }
    }
    return true;
}

/// All vertices by d-subset enumeration: solve <x, n_i> = 1 on each
/// nonsingular subset, keep feasible solutions, merge within 10*tolerance.
/// Deterministic: subsets in lexicographic order, first occurrence kept.
template <typename T>
VPolytope<T> vertex_enum(const HPolytope<T>& h, std::int64_t cap = 10000000) {
    const int d = h.dim;
    const int m = static_cast<int>(h.halfspaces.size());
    if (!is_bounded(h)) throw Unbounded("vertex_enum: polytope is unbounded");
    if (detail::binomial_capped(m, d, cap) > cap)
        throw EnumerationTooLarge("vertex_enum: C(m,d) exceeds cap");

    const T tau = scalar_policy<T>::tolerance();
    Vec<T> normal_scales(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) normal_scales[static_cast<std::size_t>(i)] = norm_inf(h.halfspaces[static_cast<std::size_t>(i)].normal);

    VPolytope<T> out;
    out.dim = d;

    std::vector<int> idx(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
    if (m < d) return out;

    const Vec<T> ones(static_cast<std::size_t>(d), T(1));
    while (true) {
        Matrix<T> a(d, d);
        T scale(1);
        for (int r = 0; r < d; ++r) {
            const auto& nrm = h.halfspaces[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])].normal;
            for (int c = 0; c < d; ++c) a(r, c) = nrm[static_cast<std::size_t>(c)];
            scale = std::max(scale, normal_scales[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])]);
        }
        auto x = detail::lu_solve(a, ones, tau * scale);
        if (x) {
            const T xs = norm_inf(*x);
            bool feasible = true;
            for (int j = 0; j < m && feasible; ++j) {
                const T lhs = dot(h.halfspaces[static_cast<std::size_t>(j)].normal, *x);
                const T ftol = tau * std::max(T(1), T(xs * normal_scales[static_cast<std::size_t>(j)] * T(d)));
                if (lhs > T(1) + ftol) feasible = false;
            }
            if (feasible) {
                const T mtol = detail::point_merge_tol<T>() * std::max(T(1), xs);
                bool dup = false;
                for (const auto& q : out.points)
                    if (vclose(*x, q, mtol)) { dup = true; break; }
                if (!dup) out.points.push_back(*x);
            }
        }
        // next lexicographic subset
        int i = d - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - d + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < d; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

/// Polar of a V-polytope: one half-space per generator. The caller asserts the
/// origin is interior (or passes verify to have it checked).
template <typename T>
HPolytope<T> polar_v_to_h(const VPolytope<T>& p, bool verify_origin_interior = false) {
    HPolytope<T> h;
    h.dim = p.dim;
    const T tau = scalar_policy<T>::tolerance();
    for (const auto& pt : p.points) {
        if (norm_inf(pt) <= tau) throw DegenerateInput("polar_v_to_h: zero generator");
        h.halfspaces.push_back({pt});
    }
    if (verify_origin_interior && !is_bounded(h))
        throw OriginNotInterior("polar_v_to_h: origin not interior to the hull");
    return h;
}

/// Polar of a bounded H-polytope: the normals as generators.
template <typename T>
VPolytope<T> polar_h_to_v(const HPolytope<T>& h) {
    if (!is_bounded(h)) throw Unbounded("polar_h_to_v: polytope is unbounded");
    VPolytope<T> p;
    p.dim = h.dim;
    for (const auto& hs : h.halfspaces) p.points.push_back(hs.normal);
    return p;
}

/// P - c in normalized offset-1 form: normal v -> v / (1 - <c,v>).
/// Positional: half-space i of the result derives from half-space i of the
/// input.
template <typename T>
HPolytope<T> translate_h(const HPolytope<T>& h, const Vec<T>& c) {
    const T tau = scalar_policy<T>::tolerance();
    HPolytope<T> out;
    out.dim = h.dim;
    for (const auto& hs : h.halfspaces) {
        const T s = T(1) - dot(c, hs.normal);
        if (s <= tau) throw CenterNotInterior("translate_h: center not strictly interior");
        out.halfspaces.push_back({vscale(hs.normal, T(1) / s)});
    }
    return out;
}

template <typename T>
T support(const VPolytope<T>& p, const Vec<T>& dir) {
    T best(0);
    bool first = true;
    for (const auto& pt : p.points) {
        const T v = dot(pt, dir);
        if (first || v > best) { best = v; first = false; }
    }
    return best;
}

template <typename T>
struct InscribedRadius {
    T value = T(0);    // sqrt under the float policy; double-rounded otherwise
    T value_sq = T(0); // exact under the rational policy
    bool origin_interior = false;
};

/// Largest r with r*B^d inside the hull, centered at the origin. Equals the
/// reciprocal max norm over the polar's vertices. Returns radius 0 with the
/// interior flag cleared when the origin is not interior.
template <typename T>
InscribedRadius<T> inscribed_radius_origin(const VPolytope<T>& p, std::int64_t cap = 10000000) {
    const T tau = scalar_policy<T>::tolerance();
    VPolytope<T> nz;
    nz.dim = p.dim;
    for (const auto& pt : p.points)
        if (norm_inf(pt) > tau) nz.points.push_back(pt); // near-zero generators impose no polar constraint
    InscribedRadius<T> out;
    if (static_cast<int>(nz.points.size()) < p.dim + 1) return out;
    HPolytope<T> polar = polar_v_to_h(nz);
    if (!is_bounded(polar)) return out;
    VPolytope<T> w = vertex_enum(polar, cap);
    if (w.points.empty()) return out;
    T max_sq(0);
    for (const auto& v : w.points) max_sq = std::max(max_sq, norm_sq(v));
    if (max_sq <= T(0)) return out;
    out.value_sq = T(1) / max_sq;
    out.value = approx_sqrt(out.value_sq);
    out.origin_interior = true;
    return out;
}

} // namespace qst
