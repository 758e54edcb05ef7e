#pragma once

#include <cmath>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "polytope.hpp"
#include "scalar.hpp"

namespace qst {

struct UnitVectorSystem {
    int dim = 0;
    std::vector<Vec<double>> vectors;
};

inline UnitVectorSystem make_unit_vector_system(int dim, std::vector<Vec<double>> vectors) {
    const double tau = global_tolerance();
    for (const auto& u : vectors)
        if (std::fabs(norm2(u) - 1.0) > 10.0 * tau)
            throw PreconditionViolation("make_unit_vector_system: vector is not unit length");
    return {dim, std::move(vectors)};
}

/// Frame operator A = sum of u_i (x) u_i; tr A = n for unit vectors.
inline SymMatrix<double> gram_operator(const UnitVectorSystem& u) {
    SymMatrix<double> a(u.dim);
    for (const auto& v : u.vectors)
        for (int i = 0; i < u.dim; ++i)
            for (int j = 0; j < u.dim; ++j)
                a(i, j) += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
    return a;
}

struct StripMaximum {
    Vec<double> point;
    double value = 0.0;
};

/// Maximize the convex quadratic x -> <x, T x> over the strip intersection
/// {|<x, v_i>| <= 1}. A convex function peaks at a vertex, so enumerate the
/// vertices of the symmetric polytope and take the first argmax. Asserts the
/// guaranteed lower bound <p, T p> >= tr T.
inline StripMaximum strip_vertex_maximize(const std::vector<Vec<double>>& v, const SymMatrix<double>& t,
                                          std::int64_t cap = 10000000) {
    const int d = t.dim();
    HPolytope<double> strips;
    strips.dim = d;
    for (const auto& vi : v) {
        strips.halfspaces.push_back({vi});
        strips.halfspaces.push_back({vneg(vi)});
    }
    if (!is_bounded(strips)) throw Unbounded("strip_vertex_maximize: strip intersection is unbounded");
    const VPolytope<double> verts = vertex_enum(strips, cap);

    StripMaximum best;
    bool first = true;
    for (const auto& x : verts.points) {
        const double val = dot(x, t.matrix().mul(x));
        if (first || val > best.value) {
            best = {x, val};
            first = false;
        }
    }
    if (first) throw Unbounded("strip_vertex_maximize: no vertices found");

    double trace = 0.0;
    for (int i = 0; i < d; ++i) trace += t(i, i);
    if (best.value < trace - global_tolerance() * std::max(1.0, trace))
        throw PropositionViolated("strip_vertex_maximize: quadratic maximum fell below the trace");
    return best;
}

/// Witness that the absolute convex hull of the system misses every ball of
/// radius above 1/|q|: q is polar-feasible and reaches norm >= d/sqrt(n).
struct UpperBoundWitness {
    Vec<double> p;      // strip-intersection maximizer for T = A^{-1}
    Vec<double> q;      // A^{-1/2} p
    double norm_q = 0.0;
    double bound = 0.0;     // d / sqrt(n)
    double threshold = 0.0; // 1 / |q|: no ball of larger radius fits
};

inline UpperBoundWitness witness(const UnitVectorSystem& u) {
    const int d = u.dim;
    const int n = static_cast<int>(u.vectors.size());
    const double tau = global_tolerance();

    const SymMatrix<double> a = gram_operator(u);
    const EigenResult eig = sym_eig(a);
    if (eig.values.back() <= tau) throw SpanFailure("witness: vectors do not span the space");

    const SymMatrix<double> inv_sqrt = inv_sqrt_psd(a);
    const SymMatrix<double> inv = inverse_pd(a);
    std::vector<Vec<double>> v;
    v.reserve(u.vectors.size());
    for (const auto& ui : u.vectors) v.push_back(inv_sqrt.matrix().mul(ui));

    const StripMaximum sm = strip_vertex_maximize(v, inv);

    UpperBoundWitness w;
    w.p = sm.point;
    w.q = inv_sqrt.matrix().mul(sm.point);
    w.norm_q = norm2(w.q);
    w.bound = static_cast<double>(d) / std::sqrt(static_cast<double>(n));
    w.threshold = 1.0 / w.norm_q;

    double max_abs_ip = 0.0;
    for (const auto& ui : u.vectors) max_abs_ip = std::max(max_abs_ip, std::fabs(dot(w.q, ui)));
    if (max_abs_ip > 1.0 + tau)
        throw PropositionViolated("witness: q escaped the polar of the absolute hull");

    double trace_inv = 0.0;
    for (int i = 0; i < d; ++i) trace_inv += inv(i, i);
    if (w.norm_q * w.norm_q < trace_inv - tau * std::max(1.0, trace_inv))
        throw PropositionViolated("witness: |q|^2 fell below tr A^{-1}");
    if (trace_inv < static_cast<double>(d) * d / n - tau)
        throw PropositionViolated("witness: tr A^{-1} fell below d^2/n");
    if (w.norm_q < w.bound - tau)
        throw PropositionViolated("witness: |q| fell below d/sqrt(n)");
    return w;
}

struct NoBallCertificate {
    bool excluded = false;
    double threshold = 0.0;        // balls of radius above this are excluded
    bool degenerate = false;       // non-spanning system: flat hull
    Vec<double> direction;         // q, or an orthogonal-complement direction when degenerate
};

/// Certify that rho * B^d is not contained in the absolute convex hull.
inline NoBallCertificate no_ball_certificate(const UnitVectorSystem& u, double rho) {
    const double tau = global_tolerance();
    const SymMatrix<double> a = gram_operator(u);
    const EigenResult eig = sym_eig(a);
    if (eig.values.back() <= tau) {
        // flat hull: any positive radius is excluded along the null direction
        NoBallCertificate c;
        c.degenerate = true;
        c.threshold = 0.0;
        c.excluded = rho > 0.0;
        c.direction = eig.vectors.col(u.dim - 1);
        return c;
    }
    const UpperBoundWitness w = witness(u);
    NoBallCertificate c;
    c.threshold = w.threshold;
    c.excluded = rho > w.threshold - tau;
    c.direction = w.q;
    return c;
}

} // namespace qst
