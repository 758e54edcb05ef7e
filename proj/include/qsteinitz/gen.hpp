#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "polytope.hpp"
#include "rng.hpp"
#include "steinitz.hpp"
#include "upperbound.hpp"

namespace qst {

struct GeneratedPolytope {
    VPolytope<double> poly;
    HPolytope<double> hform; // tangent style: the generating half-spaces, normalized
    std::string style;
    std::uint64_t seed = 0;
    int m = 0;
};

/// m half-spaces at distance 1+s_i from the origin, unit normals; the
/// intersection contains the unit ball by construction. Rejection-sampled
/// until bounded.
inline GeneratedPolytope gen_tangent(int d, int m, std::uint64_t seed, int rounds = 1000) {
    if (m < d + 1) throw PreconditionViolation("gen_tangent: need at least d+1 half-spaces");
    SplitMix64 rng(seed);
    for (int round = 0; round < rounds; ++round) {
        HPolytope<double> h;
        h.dim = d;
        for (int i = 0; i < m; ++i) {
            const Vec<double> u = rng.unit_vector(d);
            const double s = rng.uniform01();
            h.halfspaces.push_back({vscale(u, 1.0 / (1.0 + s))});
        }
        if (!is_bounded(h)) continue;
        GeneratedPolytope g;
        g.poly = vertex_enum(h);
        g.hform = std::move(h);
        g.style = "tangent";
        g.seed = seed;
        g.m = m;
        return g;
    }
    throw GenerationFailed("gen_tangent: rejection rounds exhausted");
}

/// m points at radii in [sqrt(d), 2 sqrt(d)]; accepted once the hull passes
/// the unit-ball check.
inline GeneratedPolytope gen_sphere_points(int d, int m, std::uint64_t seed, int rounds = 1000) {
    if (m < d + 1) throw PreconditionViolation("gen_sphere_points: need at least d+1 points");
    SplitMix64 rng(seed);
    const double rd = std::sqrt(static_cast<double>(d));
    for (int round = 0; round < rounds; ++round) {
        VPolytope<double> q;
        q.dim = d;
        for (int i = 0; i < m; ++i) {
            const double r = rng.uniform(rd, 2.0 * rd);
            q.points.push_back(vscale(rng.unit_vector(d), r));
        }
        if (!check_contains_unit_ball(q).ok) continue;
        GeneratedPolytope g;
        g.poly = std::move(q);
        g.style = "sphere-points";
        g.seed = seed;
        g.m = m;
        return g;
    }
    throw GenerationFailed("gen_sphere_points: rejection rounds exhausted");
}

/// Random bounded H-polytope with the origin interior (normalized form).
inline HPolytope<double> gen_bounded_h(int d, int m, std::uint64_t seed, int rounds = 1000) {
    SplitMix64 rng(seed);
    for (int round = 0; round < rounds; ++round) {
        HPolytope<double> h;
        h.dim = d;
        for (int i = 0; i < m; ++i) {
            const Vec<double> u = rng.unit_vector(d);
            const double s = rng.uniform(0.2, 2.0);
            h.halfspaces.push_back({vscale(u, 1.0 / s)});
        }
        if (is_bounded(h)) return h;
    }
    throw GenerationFailed("gen_bounded_h: rejection rounds exhausted");
}

inline UnitVectorSystem gen_unit_vectors(int d, int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    UnitVectorSystem u;
    u.dim = d;
    for (int i = 0; i < n; ++i) u.vectors.push_back(rng.unit_vector(d));
    return u;
}

/// Random rotation (orthonormal matrix) via Gram-Schmidt on Gaussian columns.
inline Matrix<double> gen_rotation(int d, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Matrix<double> q(d, d);
    for (int c = 0; c < d; ++c) {
        Vec<double> v(static_cast<std::size_t>(d));
        while (true) {
            for (auto& x : v) x = rng.gaussian();
            for (int prev = 0; prev < c; ++prev) {
                const Vec<double> p = q.col(prev);
                const double proj = dot(v, p);
                for (int r = 0; r < d; ++r) v[static_cast<std::size_t>(r)] -= proj * p[static_cast<std::size_t>(r)];
            }
            const double nv = norm2(v);
            if (nv > 1e-6) {
                for (auto& x : v) x /= nv;
                break;
            }
        }
        for (int r = 0; r < d; ++r) q(r, c) = v[static_cast<std::size_t>(r)];
    }
    return q;
}

} // namespace qst
