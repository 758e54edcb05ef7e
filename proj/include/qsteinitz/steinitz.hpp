#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "centers.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "polytope.hpp"
#include "scalar.hpp"
#include "sparse.hpp"

namespace qst {

template <typename T>
struct UnitBallCheck {
    bool ok = false;
    T margin = T(0); // inscribed radius minus one
};

/// Does the hull of Q contain the unit ball (within tolerance)?
template <typename T>
UnitBallCheck<T> check_contains_unit_ball(const VPolytope<T>& q, std::int64_t cap = 10000000) {
    const auto r = inscribed_radius_origin(q, cap);
    const T tau = scalar_policy<T>::tolerance();
    UnitBallCheck<T> out;
    out.margin = r.value - T(1);
    const T lo = T(1) - tau;
    out.ok = r.origin_interior && r.value_sq >= lo * lo;
    return out;
}

/// Everything the selection run certifies along the way.
template <typename T>
struct SelectionTrail {
    std::vector<Vec<T>> k_normals; // polar body K, one half-space per extreme vertex of Q
    Vec<T> center;                 // contraction center of K
    T center_margin = T(0);
    std::vector<Vec<T>> l_vertices; // vertex list of L = (K - c) polar
    T l_inradius = T(0);            // certified >= 1/2
    std::vector<int> selected_in_l; // positions into l_vertices
    SparseCertificate<T> sparse;
};

template <typename T>
struct Selection {
    std::vector<int> indices; // ascending, into Q's (deduplicated) vertex list, size <= 2d
    T certified_radius = T(0);
    T certified_radius_sq = T(0);
    T bound = T(0); // 1 / (5 d^2)
    SelectionTrail<T> trail;
};

/// The full selection pipeline: polarize, center, polarize about the center,
/// sparsify, map back, and certify the inscribed radius of the chosen
/// sub-hull.
template <typename T>
Selection<T> select_vertices(const VPolytope<T>& q_in, std::int64_t cap = 10000000) {
    const int d = q_in.dim;
    const T tau = scalar_policy<T>::tolerance();

    const auto dd = dedup_points(d, q_in.points);
    const auto ub = check_contains_unit_ball(dd.poly, cap);
    if (!ub.ok) throw InputLacksUnitBall("select_vertices: hull does not contain the unit ball");

    // (1) K = Q polar, one half-space per extreme vertex
    const auto ep = extreme_points(dd.poly);
    const HPolytope<T> k = polar_v_to_h(ep.poly);

    // (2) centroid center with certified contraction d
    const CenteredBody<T> cb = steinitz_center(k);

    // (3) L = (K - c) polar as a point list; positions track Q's vertices
    const HPolytope<T> kc = translate_h(k, cb.center);
    VPolytope<T> l_raw;
    l_raw.dim = d;
    for (const auto& hs : kc.halfspaces) l_raw.points.push_back(hs.normal);
    const auto lf = extreme_points(l_raw);

    const auto l_rad = inscribed_radius_origin(lf.poly, cap);
    const T half = T(1) / T(2) - tau;
    if (!l_rad.origin_interior || l_rad.value_sq < half * half)
        throw CertificateViolated("select_vertices: L lost the half ball");

    // (4) sparse approximation of L at lambda = d
    SparseCertificate<T> cert = sparse_approximate(lf.poly, T(d));

    // (5) map the selection back through the index bookkeeping
    Selection<T> sel;
    for (int j : cert.selected) {
        const int ep_pos = lf.kept[static_cast<std::size_t>(j)];
        sel.indices.push_back(dd.kept[static_cast<std::size_t>(ep.kept[static_cast<std::size_t>(ep_pos)])]);
    }
    std::sort(sel.indices.begin(), sel.indices.end());

    VPolytope<T> chosen;
    chosen.dim = d;
    for (int j : cert.selected)
        chosen.points.push_back(ep.poly.points[static_cast<std::size_t>(lf.kept[static_cast<std::size_t>(j)])]);

    // (6)-(7) certified radius against the 1/(5 d^2) bound
    const auto rad = inscribed_radius_origin(chosen, cap);
    sel.bound = T(1) / (T(5) * T(d) * T(d));
    const T lo = sel.bound - tau;
    if (!rad.origin_interior || rad.value_sq < lo * lo)
        throw CertificateViolated("select_vertices: certified radius fell below 1/(5 d^2)");
    sel.certified_radius = rad.value;
    sel.certified_radius_sq = rad.value_sq;

    sel.trail.k_normals.reserve(k.halfspaces.size());
    for (const auto& hs : k.halfspaces) sel.trail.k_normals.push_back(hs.normal);
    sel.trail.center = cb.center;
    sel.trail.center_margin = cb.margin;
    sel.trail.l_vertices = lf.poly.points;
    sel.trail.l_inradius = l_rad.value;
    sel.trail.selected_in_l = cert.selected;
    sel.trail.sparse = std::move(cert);
    return sel;
}

/// Deterministic covering of the unit sphere by points whose pairwise chord
/// to any direction is at most delta: an angle grid with per-angle step
/// 2*delta/(d-1), using the 1-Lipschitz bound of spherical coordinates.
inline std::vector<Vec<double>> sphere_net(int d, double delta) {
    std::vector<Vec<double>> net;
    if (d == 1) {
        net.push_back({1.0});
        net.push_back({-1.0});
        return net;
    }
    const double pi = 3.14159265358979323846;
    const double h = 2.0 * delta / static_cast<double>(d - 1);
    const int n_polar = std::max(1, static_cast<int>(std::ceil(pi / h)));
    const int n_azim = std::max(1, static_cast<int>(std::ceil(2.0 * pi / h)));

    std::vector<std::vector<double>> grids;
    for (int a = 0; a < d - 2; ++a) {
        std::vector<double> g;
        for (int i = 0; i <= n_polar; ++i) g.push_back(std::min(pi, i * pi / n_polar));
        grids.push_back(std::move(g));
    }
    {
        std::vector<double> g;
        for (int i = 0; i < n_azim; ++i) g.push_back(i * 2.0 * pi / n_azim);
        grids.push_back(std::move(g));
    }

    std::vector<std::size_t> cursor(grids.size(), 0);
    while (true) {
        Vec<double> x(static_cast<std::size_t>(d));
        double s = 1.0;
        for (int a = 0; a < d - 1; ++a) {
            const double phi = grids[static_cast<std::size_t>(a)][cursor[static_cast<std::size_t>(a)]];
            x[static_cast<std::size_t>(a)] = s * std::cos(phi);
            s *= std::sin(phi);
        }
        x[static_cast<std::size_t>(d - 1)] = s;
        bool dup = false;
        for (const auto& q : net)
            if (vclose(x, q, 1e-12)) { dup = true; break; }
        if (!dup) net.push_back(std::move(x));

        int a = static_cast<int>(grids.size()) - 1;
        while (a >= 0 && cursor[static_cast<std::size_t>(a)] + 1 == grids[static_cast<std::size_t>(a)].size()) {
            cursor[static_cast<std::size_t>(a)] = 0;
            --a;
        }
        if (a < 0) break;
        ++cursor[static_cast<std::size_t>(a)];
    }
    return net;
}

/// Finite reduction: pick at most d+1 input points per net direction so the
/// union's hull still contains (1 - eps) B^d.
template <typename T>
FilteredPoints<T> finite_subset_cover(const std::vector<Vec<T>>& points, double eps, int dim) {
    if (!(eps > 0.0 && eps < 1.0)) throw PreconditionViolation("finite_subset_cover: eps must lie in (0,1)");
    const double delta = std::sqrt(2.0 * eps - eps * eps);
    const auto net = sphere_net(dim, delta);

    std::vector<int> chosen;
    std::vector<bool> in(points.size(), false);
    for (const auto& z : net) {
        Vec<T> zt;
        zt.reserve(z.size());
        for (double v : z) zt.push_back(from_double<T>(v));
        const auto w = membership_weights(points, zt);
        if (!w) throw InputLacksUnitBall("finite_subset_cover: a unit direction escapes the hull");
        for (std::size_t i = 0; i < w->size(); ++i) {
            // numerical-zero threshold, far below the covering slack eps^2/2
            if ((*w)[i] > from_double<T>(1e-13) && !in[i]) {
                in[i] = true;
                chosen.push_back(static_cast<int>(i));
            }
        }
    }
    std::sort(chosen.begin(), chosen.end());
    FilteredPoints<T> out;
    out.poly.dim = dim;
    for (int i : chosen) {
        out.poly.points.push_back(points[static_cast<std::size_t>(i)]);
        out.kept.push_back(i);
    }
    return out;
}

/// Selection over a general finite point set: reduce with a finite subset
/// cover, rescale so the reduced hull contains the unit ball, select, then
/// recertify at the original scale. For eps <= 1/6 the certified radius stays
/// at or above 1/(6 d^2).
template <typename T>
Selection<T> select_with_cover(const std::vector<Vec<T>>& points, double eps, int dim, std::int64_t cap = 10000000) {
    const auto cover = finite_subset_cover(points, eps, dim);
    const T grow = T(1) / (T(1) - from_double<T>(eps));
    VPolytope<T> scaled;
    scaled.dim = dim;
    for (const auto& p : cover.poly.points) scaled.points.push_back(vscale(p, grow));

    Selection<T> sel = select_vertices(scaled, cap);
    for (auto& i : sel.indices) i = cover.kept[static_cast<std::size_t>(i)];

    // recertify on the unscaled points
    VPolytope<T> chosen;
    chosen.dim = dim;
    for (int i : sel.indices) chosen.points.push_back(points[static_cast<std::size_t>(i)]);
    const auto rad = inscribed_radius_origin(chosen, cap);
    sel.certified_radius = rad.value;
    sel.certified_radius_sq = rad.value_sq;
    sel.bound = (T(1) - from_double<T>(eps)) / (T(5) * T(dim) * T(dim));
    const T lo = sel.bound - scalar_policy<T>::tolerance();
    if (!rad.origin_interior || rad.value_sq < lo * lo)
        throw CertificateViolated("select_with_cover: certified radius fell below (1-eps)/(5 d^2)");
    return sel;
}

/// Recompute the origin-centered inscribed radius of a chosen sub-hull.
template <typename T>
InscribedRadius<T> certify_radius(const VPolytope<T>& q, const std::vector<int>& indices, std::int64_t cap = 10000000) {
    VPolytope<T> sub;
    sub.dim = q.dim;
    for (int i : indices) {
        if (i < 0 || i >= static_cast<int>(q.points.size()))
            throw PreconditionViolation("certify: index out of range");
        sub.points.push_back(q.points[static_cast<std::size_t>(i)]);
    }
    return inscribed_radius_origin(sub, cap);
}

/// Certification entry point: exact rational arithmetic up to d = 3, floating
/// point beyond.
inline double certify(const VPolytope<double>& q, const std::vector<int>& indices, std::int64_t cap = 10000000) {
    if (q.dim <= 3) {
        VPolytope<Rational> qr;
        qr.dim = q.dim;
        for (const auto& p : q.points) {
            Vec<Rational> v;
            v.reserve(p.size());
            for (double x : p) v.push_back(Rational(x));
            qr.points.push_back(std::move(v));
        }
        const auto r = certify_radius(qr, indices, cap);
        return std::sqrt(to_double(r.value_sq));
    }
    return certify_radius(q, indices, cap).value;
}

} // namespace qst
