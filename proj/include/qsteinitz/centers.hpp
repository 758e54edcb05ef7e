#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "linprog.hpp"
#include "polytope.hpp"
#include "scalar.hpp"

namespace qst {

template <typename T>
struct VolumeCentroid {
    T volume = T(0);
    Vec<T> centroid; // defined only when volume > 0
};

namespace detail {

template <typename T>
struct GRow {
    Vec<T> a; // <a, x> <= b
    T b;
};

/// Merge constraint rows that agree up to a positive scale factor.
template <typename T>
std::vector<GRow<T>> dedup_rows(const std::vector<GRow<T>>& rows) {
    const T tol = T(10) * scalar_policy<T>::tolerance();
    std::vector<GRow<T>> kept;
    std::vector<GRow<T>> norms;
    for (const auto& r : rows) {
        const T s = norm_inf(r.a);
        GRow<T> n = r;
        if (s > T(0)) {
            for (auto& v : n.a) v /= s;
            n.b /= s;
        }
        bool dup = false;
        for (const auto& k : norms)
            if (scalar_abs(T(n.b - k.b)) <= tol && vclose(n.a, k.a, tol)) { dup = true; break; }
        if (!dup) {
            norms.push_back(n);
            kept.push_back(r);
        }
    }
    return kept;
}

/// Exact volume and first moment of {x : rows} by recursive facet
/// decomposition into signed cones from the local origin. Variable
/// elimination keeps everything square-root free, so the recursion is exact
/// under the rational policy.
template <typename T>
VolumeCentroid<T> volume_centroid_rows(std::vector<GRow<T>> rows, int k) {
    const T tau = scalar_policy<T>::tolerance();

    if (k == 1) {
        std::optional<T> lo, hi;
        for (const auto& r : rows) {
            const T a = r.a[0];
            if (scalar_abs(a) <= tau * std::max(T(1), scalar_abs(r.b))) {
                if (r.b < -tau) return {};
                continue;
            }
            const T v = r.b / a;
            if (a > T(0)) {
                if (!hi || v < *hi) hi = v;
            } else {
                if (!lo || v > *lo) lo = v;
            }
        }
        if (!lo || !hi) throw Unbounded("volume_centroid: unbounded face");
        if (*hi <= *lo) return {};
        VolumeCentroid<T> out;
        out.volume = *hi - *lo;
        out.centroid = {T((*hi + *lo) / T(2))};
        return out;
    }

    rows = dedup_rows(rows);
    // a vacuous row is all-zero; with negative offset the region is empty
    for (const auto& r : rows) {
        if (norm_inf(r.a) <= tau * std::max(T(1), scalar_abs(r.b))) {
            if (r.b < -tau) return {};
        }
    }

    T vol(0);
    Vec<T> moment(static_cast<std::size_t>(k), T(0));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& ri = rows[i];
        int p = 0;
        for (int c = 1; c < k; ++c)
            if (scalar_abs(ri.a[static_cast<std::size_t>(c)]) > scalar_abs(ri.a[static_cast<std::size_t>(p)])) p = c;
        const T ap = ri.a[static_cast<std::size_t>(p)];
        if (scalar_abs(ap) <= tau * std::max(T(1), scalar_abs(ri.b))) continue;

        std::vector<GRow<T>> child;
        child.reserve(rows.size() - 1);
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (j == i) continue;
            const auto& rj = rows[j];
            const T f = rj.a[static_cast<std::size_t>(p)] / ap;
            GRow<T> cr;
            cr.a.reserve(static_cast<std::size_t>(k) - 1);
            for (int c = 0; c < k; ++c) {
                if (c == p) continue;
                cr.a.push_back(rj.a[static_cast<std::size_t>(c)] - f * ri.a[static_cast<std::size_t>(c)]);
            }
            cr.b = rj.b - f * ri.b;
            child.push_back(std::move(cr));
        }
        const VolumeCentroid<T> sub = volume_centroid_rows(std::move(child), k - 1);
        if (sub.volume == T(0)) continue;

        // cone from the local origin over the facet; norms cancel against the
        // projection factor, leaving b_i * vol' / (k * |a_ip|)
        const T cone_vol = ri.b * sub.volume / (T(k) * scalar_abs(ap));
        Vec<T> lifted(static_cast<std::size_t>(k), T(0));
        {
            T acc = ri.b;
            int cc = 0;
            for (int c = 0; c < k; ++c) {
                if (c == p) continue;
                lifted[static_cast<std::size_t>(c)] = sub.centroid[static_cast<std::size_t>(cc)];
                acc -= ri.a[static_cast<std::size_t>(c)] * sub.centroid[static_cast<std::size_t>(cc)];
                ++cc;
            }
            lifted[static_cast<std::size_t>(p)] = acc / ap;
        }
        const T w = cone_vol * T(k) / T(k + 1);
        for (int c = 0; c < k; ++c) moment[static_cast<std::size_t>(c)] += w * lifted[static_cast<std::size_t>(c)];
        vol += cone_vol;
    }

    VolumeCentroid<T> out;
    if (vol <= T(0)) return out;
    out.volume = vol;
    out.centroid.resize(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) out.centroid[static_cast<std::size_t>(c)] = moment[static_cast<std::size_t>(c)] / vol;
    return out;
}

/// Volume and centroid of a V-polytope by boundary recursion: facets come
/// from the vertices of the polar about the vertex mean, each facet is
/// projected one dimension down and handled recursively, and the solid is
/// assembled as cones from the mean.
template <typename T>
VolumeCentroid<T> volume_centroid_points(const std::vector<Vec<T>>& pts_in, int k, std::int64_t cap) {
    const T tau = scalar_policy<T>::tolerance();
    const auto pts = dedup_points(k, pts_in).poly.points;

    if (k == 1) {
        if (pts.empty()) return {};
        T lo = pts[0][0], hi = pts[0][0];
        for (const auto& p : pts) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        if (hi <= lo) return {};
        return {T(hi - lo), {T((hi + lo) / T(2))}};
    }
    if (static_cast<int>(pts.size()) < k + 1) return {};

    Vec<T> seed(static_cast<std::size_t>(k), T(0));
    for (const auto& p : pts) seed = vadd(seed, p);
    for (auto& v : seed) v /= T(static_cast<int>(pts.size()));

    T scale(1);
    std::vector<Vec<T>> shifted;
    shifted.reserve(pts.size());
    for (const auto& p : pts) {
        shifted.push_back(vsub(p, seed));
        scale = std::max(scale, norm_inf(shifted.back()));
    }

    HPolytope<T> polar;
    polar.dim = k;
    for (const auto& s : shifted)
        if (norm_inf(s) > tau * scale) polar.halfspaces.push_back({s});
    if (static_cast<int>(polar.halfspaces.size()) < k + 1 || !is_bounded(polar)) return {};

    const VPolytope<T> facet_normals = vertex_enum(polar, cap);

    T vol(0);
    Vec<T> moment(static_cast<std::size_t>(k), T(0));
    for (const auto& w : facet_normals.points) {
        const T ftol = T(100) * tau * std::max(T(1), T(norm_inf(w) * scale));
        std::vector<Vec<T>> facet;
        for (const auto& s : shifted)
            if (scalar_abs(T(dot(w, s) - T(1))) <= ftol) facet.push_back(s);
        if (static_cast<int>(facet.size()) < k) continue;

        int p = 0;
        for (int c = 1; c < k; ++c)
            if (scalar_abs(w[static_cast<std::size_t>(c)]) > scalar_abs(w[static_cast<std::size_t>(p)])) p = c;
        const T wp = w[static_cast<std::size_t>(p)];
        if (scalar_abs(wp) <= tau) continue;

        std::vector<Vec<T>> proj;
        proj.reserve(facet.size());
        for (const auto& f : facet) {
            Vec<T> q;
            q.reserve(static_cast<std::size_t>(k) - 1);
            for (int c = 0; c < k; ++c)
                if (c != p) q.push_back(f[static_cast<std::size_t>(c)]);
            proj.push_back(std::move(q));
        }
        const VolumeCentroid<T> sub = volume_centroid_points(proj, k - 1, cap);
        if (sub.volume == T(0)) continue;

        const T cone_vol = sub.volume / (T(k) * scalar_abs(wp));
        Vec<T> lifted(static_cast<std::size_t>(k), T(0));
        {
            T acc(1);
            int cc = 0;
            for (int c = 0; c < k; ++c) {
                if (c == p) continue;
                lifted[static_cast<std::size_t>(c)] = sub.centroid[static_cast<std::size_t>(cc)];
                acc -= w[static_cast<std::size_t>(c)] * sub.centroid[static_cast<std::size_t>(cc)];
                ++cc;
            }
            lifted[static_cast<std::size_t>(p)] = acc / wp;
        }
        const T cw = cone_vol * T(k) / T(k + 1);
        for (int c = 0; c < k; ++c) moment[static_cast<std::size_t>(c)] += cw * lifted[static_cast<std::size_t>(c)];
        vol += cone_vol;
    }

    VolumeCentroid<T> out;
    if (vol <= T(0)) return out;
    out.volume = vol;
    out.centroid.resize(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c)
        out.centroid[static_cast<std::size_t>(c)] = moment[static_cast<std::size_t>(c)] / vol + seed[static_cast<std::size_t>(c)];
    return out;
}

} // namespace detail

/// Solid volume and centroid of a bounded H-polytope in normalized form.
template <typename T>
VolumeCentroid<T> volume_centroid_h(const HPolytope<T>& h) {
    std::vector<detail::GRow<T>> rows;
    rows.reserve(h.halfspaces.size());
    for (const auto& hs : h.halfspaces) rows.push_back({hs.normal, T(1)});
    return detail::volume_centroid_rows(std::move(rows), h.dim);
}

/// Exact centroid of the solid hull of a V-polytope. DegenerateBody when the
/// volume falls within tolerance of zero.
template <typename T>
Vec<T> centroid(const VPolytope<T>& p, std::int64_t cap = 10000000) {
    const auto vc = detail::volume_centroid_points(p.points, p.dim, cap);
    if (vc.volume <= scalar_policy<T>::tolerance())
        throw DegenerateBody("centroid: volume within tolerance of zero");
    return vc.centroid;
}

template <typename T>
struct CenterCheck {
    bool ok = false;
    T margin = T(0); // min over target facets of (1 - support); >= -tol when ok
};

/// Check (K - c) subset of -lambda (K - c): for each target half-space,
/// maximize its functional over K - c by LP and compare against offset 1.
template <typename T>
CenterCheck<T> verify_center(const HPolytope<T>& k, const Vec<T>& c, const T& lambda) {
    const HPolytope<T> kc = translate_h(k, c);
    std::vector<LpRow<T>> rows;
    rows.reserve(kc.halfspaces.size());
    for (const auto& hs : kc.halfspaces) rows.push_back({hs.normal, T(1), false});

    CenterCheck<T> out;
    bool first = true;
    for (const auto& hs : kc.halfspaces) {
        Vec<T> target = vscale(hs.normal, T(-1) / lambda);
        auto res = lp_maximize_free<T>(k.dim, rows, target);
        if (res.status != LpStatus::optimal) throw Unbounded("verify_center: support LP unbounded");
        const T margin = T(1) - res.value;
        if (first || margin < out.margin) { out.margin = margin; first = false; }
    }
    out.ok = !first && out.margin >= -scalar_policy<T>::tolerance();
    return out;
}

/// A body with a verified contraction center: (K - c) subset of -lambda (K - c).
template <typename T>
struct CenteredBody {
    HPolytope<T> body;
    Vec<T> center;
    T contraction = T(0);
    T margin = T(0);
};

/// Center the body at the solid centroid and certify the contraction at
/// lambda = d. A numerical failure triggers one exact-arithmetic retry before
/// erroring, since the inclusion itself always holds.
template <typename T>
CenteredBody<T> steinitz_center(const HPolytope<T>& k) {
    if (!is_bounded(k)) throw Unbounded("steinitz_center: body is unbounded");
    const auto vc = volume_centroid_h(k);
    if (vc.volume <= scalar_policy<T>::tolerance())
        throw DegenerateBody("steinitz_center: volume within tolerance of zero");
    const T lambda = T(k.dim);
    const auto check = verify_center(k, vc.centroid, lambda);
    if (check.ok) return {k, vc.centroid, lambda, check.margin};

    if constexpr (!scalar_policy<T>::exact) {
        HPolytope<Rational> kr;
        kr.dim = k.dim;
        for (const auto& hs : k.halfspaces) {
            Vec<Rational> n;
            n.reserve(hs.normal.size());
            for (double v : hs.normal) n.push_back(Rational(v));
            kr.halfspaces.push_back({std::move(n)});
        }
        const auto vcr = volume_centroid_h(kr);
        if (vcr.volume > Rational(0)) {
            const auto checkr = verify_center(kr, vcr.centroid, Rational(k.dim));
            if (checkr.ok) {
                CenteredBody<T> out;
                out.body = k;
                out.center.reserve(vcr.centroid.size());
                for (const auto& v : vcr.centroid) out.center.push_back(from_double<T>(to_double(v)));
                out.contraction = lambda;
                out.margin = from_double<T>(to_double(checkr.margin));
                return out;
            }
        }
    }
    throw CenterVerificationFailed("steinitz_center: contraction inclusion failed in exact arithmetic");
}

} // namespace qst
