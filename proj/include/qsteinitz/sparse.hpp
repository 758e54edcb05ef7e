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

/// d input vertices spanning, with the origin, a nondegenerate simplex.
template <typename T>
struct SimplexBasis {
    std::vector<int> indices; // ascending positions in the input vertex list
    T volume = T(0);          // |det([v_1 ... v_d])| / d!
};

enum class SimplexSearch { automatic, exhaustive, greedy };

namespace detail {

template <typename T>
T abs_det_of(const std::vector<Vec<T>>& pts, const std::vector<int>& idx, int d) {
    Matrix<T> m(d, d);
    for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r)
            m(r, c) = pts[static_cast<std::size_t>(idx[static_cast<std::size_t>(c)])][static_cast<std::size_t>(r)];
    return scalar_abs(determinant(std::move(m)));
}

/// Squared k-volume of the parallelepiped spanned by the chosen vectors
/// (Gram determinant); comparison-safe without square roots.
template <typename T>
T gram_det(const std::vector<Vec<T>>& pts, const std::vector<int>& idx) {
    const int k = static_cast<int>(idx.size());
    Matrix<T> g(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            const T v = dot(pts[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])],
                            pts[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])]);
            g(i, j) = v;
            g(j, i) = v;
        }
    return determinant(std::move(g));
}

/// Nontrivial affine dependence among the given points, if one exists within
/// tolerance: coefficients beta with sum(beta_i p_i) = 0 and sum(beta_i) = 0.
template <typename T>
std::optional<Vec<T>> affine_dependence(const std::vector<Vec<T>>& pts, const std::vector<int>& support, int d) {
    const int s = static_cast<int>(support.size());
    Matrix<T> m(d + 1, s);
    T scale(1);
    for (int c = 0; c < s; ++c) {
        const auto& p = pts[static_cast<std::size_t>(support[static_cast<std::size_t>(c)])];
        for (int r = 0; r < d; ++r) m(r, c) = p[static_cast<std::size_t>(r)];
        m(d, c) = T(1);
        scale = std::max(scale, norm_inf(p));
    }
    const T tol = scalar_policy<T>::tolerance() * scale;

    // column-pivoted elimination; a free column yields a null vector
    std::vector<int> pivot_col(static_cast<std::size_t>(d) + 1, -1);
    std::vector<bool> used(static_cast<std::size_t>(s), false);
    int rank = 0;
    for (int r = 0; r <= d && rank < s; ++r) {
        int pc = -1;
        T best(0);
        for (int c = 0; c < s; ++c)
            if (!used[static_cast<std::size_t>(c)] && scalar_abs(m(r, c)) > best) {
                best = scalar_abs(m(r, c));
                pc = c;
            }
        if (pc < 0 || best <= tol) continue;
        pivot_col[static_cast<std::size_t>(r)] = pc;
        used[static_cast<std::size_t>(pc)] = true;
        ++rank;
        for (int rr = 0; rr <= d; ++rr) {
            if (rr == r) continue;
            const T f = m(rr, pc) / m(r, pc);
            if (f == T(0)) continue;
            for (int c = 0; c < s; ++c) m(rr, c) -= f * m(r, c);
        }
    }
    int free_col = -1;
    for (int c = 0; c < s; ++c)
        if (!used[static_cast<std::size_t>(c)]) { free_col = c; break; }
    if (free_col < 0) return std::nullopt; // affinely independent

    Vec<T> beta(static_cast<std::size_t>(s), T(0));
    beta[static_cast<std::size_t>(free_col)] = T(1);
    for (int r = 0; r <= d; ++r) {
        const int pc = pivot_col[static_cast<std::size_t>(r)];
        if (pc < 0) continue;
        beta[static_cast<std::size_t>(pc)] = -m(r, free_col) / m(r, pc);
    }
    return beta;
}

} // namespace detail

/// Simplex conv{0, v_1, ..., v_d} of maximal volume over the input vertices.
/// Exhaustive mode enumerates d-subsets (global maximum, lexicographic
/// tie-break); greedy mode grows the basis then runs a 2-swap local search,
/// which keeps every input vertex inside the spanned parallelotope — the
/// property the containment argument needs.
template <typename T>
SimplexBasis<T> max_volume_simplex(const std::vector<Vec<T>>& pts, int dim,
                                   SimplexSearch mode = SimplexSearch::automatic,
                                   std::int64_t cap = 1000000) {
    const int n = static_cast<int>(pts.size());
    const int d = dim;
    if (n < d) throw DegenerateInput("max_volume_simplex: fewer points than dimensions");
    if (mode == SimplexSearch::automatic)
        mode = detail::binomial_capped(n, d, cap) <= cap ? SimplexSearch::exhaustive : SimplexSearch::greedy;
    if (mode == SimplexSearch::exhaustive && detail::binomial_capped(n, d, cap) > cap)
        throw EnumerationTooLarge("max_volume_simplex: C(n,d) exceeds cap");

    T scale(1);
    for (const auto& p : pts) scale = std::max(scale, norm_inf(p));
    T deg_tol = scalar_policy<T>::tolerance();
    for (int i = 0; i < d; ++i) deg_tol *= scale;

    SimplexBasis<T> out;
    if (mode == SimplexSearch::exhaustive) {
        std::vector<int> idx(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
        T best(-1);
        std::vector<int> best_idx;
        while (true) {
            const T v = detail::abs_det_of(pts, idx, d);
            if (v > best) {
                best = v;
                best_idx = idx;
            }
            int i = d - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - d + i) --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < d; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
        if (best <= deg_tol) throw DegenerateInput("max_volume_simplex: no nondegenerate d-subset");
        out.indices = best_idx;
        T fact(1);
        for (int i = 2; i <= d; ++i) fact *= T(i);
        out.volume = best / fact;
        return out;
    }

    // greedy growth on squared spanned volume
    std::vector<int> chosen;
    std::vector<bool> in(static_cast<std::size_t>(n), false);
    for (int step = 0; step < d; ++step) {
        int best_i = -1;
        T best_sq(-1);
        for (int i = 0; i < n; ++i) {
            if (in[static_cast<std::size_t>(i)]) continue;
            chosen.push_back(i);
            const T sq = detail::gram_det(pts, chosen);
            chosen.pop_back();
            if (sq > best_sq) { best_sq = sq; best_i = i; }
        }
        if (best_i < 0 || best_sq <= deg_tol * deg_tol)
            throw DegenerateInput("max_volume_simplex: input does not span");
        chosen.push_back(best_i);
        in[static_cast<std::size_t>(best_i)] = true;
    }

    // 2-swap local search; stop when no swap improves by factor > 1 + tol
    const T tau = scalar_policy<T>::tolerance();
    const T gain = (T(1) + tau) * (T(1) + tau); // squared-volume improvement factor
    T cur_sq = detail::gram_det(pts, chosen);
    const int swap_cap = 200 * n * d;
    for (int iter = 0; iter < swap_cap; ++iter) {
        bool improved = false;
        for (int pos = 0; pos < d && !improved; ++pos) {
            const int old = chosen[static_cast<std::size_t>(pos)];
            for (int i = 0; i < n && !improved; ++i) {
                if (in[static_cast<std::size_t>(i)]) continue;
                chosen[static_cast<std::size_t>(pos)] = i;
                const T sq = detail::gram_det(pts, chosen);
                if (sq > cur_sq * gain) {
                    in[static_cast<std::size_t>(old)] = false;
                    in[static_cast<std::size_t>(i)] = true;
                    cur_sq = sq;
                    improved = true;
                } else {
                    chosen[static_cast<std::size_t>(pos)] = old;
                }
            }
        }
        if (!improved) break;
    }

    std::sort(chosen.begin(), chosen.end());
    out.indices = chosen;
    T fact(1);
    for (int i = 2; i <= d; ++i) fact *= T(i);
    out.volume = detail::abs_det_of(pts, chosen, d) / fact;
    return out;
}

template <typename T>
struct RayExit {
    Vec<T> point; // t * dir, on the hull boundary
    T t = T(0);
};

/// Largest t >= 0 with t*dir inside the hull, by LP over convex weights.
template <typename T>
RayExit<T> ray_exit(const VPolytope<T>& v, const Vec<T>& dir) {
    const int d = v.dim;
    const int n = static_cast<int>(v.points.size());
    const T tau = scalar_policy<T>::tolerance();
    if (norm_inf(dir) <= tau) throw PreconditionViolation("ray_exit: zero direction");

    std::vector<LpRow<T>> rows;
    rows.reserve(static_cast<std::size_t>(d) + 1);
    for (int r = 0; r < d; ++r) {
        LpRow<T> row;
        row.a.resize(static_cast<std::size_t>(n) + 1);
        row.a[0] = dir[static_cast<std::size_t>(r)];
        for (int i = 0; i < n; ++i)
            row.a[static_cast<std::size_t>(i) + 1] = -v.points[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
        row.b = T(0);
        row.eq = true;
        rows.push_back(std::move(row));
    }
    LpRow<T> sum;
    sum.a.assign(static_cast<std::size_t>(n) + 1, T(1));
    sum.a[0] = T(0);
    sum.b = T(1);
    sum.eq = true;
    rows.push_back(std::move(sum));

    Vec<T> obj(static_cast<std::size_t>(n) + 1, T(0));
    obj[0] = T(1);
    auto res = lp_maximize<T>(n + 1, std::move(rows), std::move(obj));
    if (res.status == LpStatus::infeasible) throw OriginNotInterior("ray_exit: origin outside the hull");
    if (res.status == LpStatus::unbounded) throw Unbounded("ray_exit: hull unbounded along direction");
    if (res.value <= tau) throw OriginNotInterior("ray_exit: origin on the hull boundary");
    return {vscale(dir, res.value), res.value};
}

template <typename T>
struct CaratheodoryResult {
    std::vector<int> indices; // ascending; at most d for boundary points
    Vec<T> weights;           // convex weights matching indices
};

/// Sparse convex representation of a hull boundary point: membership LP gives
/// a basic solution, whose support is affinely independent and therefore has
/// at most d points inside a proper face; residual support from numerical
/// noise is removed by affine-dependence elimination.
template <typename T>
CaratheodoryResult<T> caratheodory_vertices(const std::vector<Vec<T>>& pts, const Vec<T>& y) {
    const int d = static_cast<int>(y.size());
    auto weights = membership_weights(pts, y);
    if (!weights) throw NotMember("caratheodory_vertices: point not in the hull");

    const T tau = scalar_policy<T>::tolerance();
    const T wtol = T(10) * tau;
    Vec<T>& alpha = *weights;

    auto collect_support = [&]() {
        std::vector<int> s;
        for (std::size_t i = 0; i < alpha.size(); ++i)
            if (alpha[i] > wtol) s.push_back(static_cast<int>(i));
        return s;
    };

    std::vector<int> support = collect_support();
    for (int round = 0; static_cast<int>(support.size()) > d && round < 2 * d + 2; ++round) {
        auto dep = detail::affine_dependence(pts, support, d);
        if (!dep) break;
        Vec<T>& beta = *dep;
        bool has_pos = false;
        for (const auto& b : beta)
            if (b > T(0)) { has_pos = true; break; }
        if (!has_pos)
            for (auto& b : beta) b = -b;
        bool first = true;
        T step(0);
        for (std::size_t j = 0; j < beta.size(); ++j) {
            if (beta[j] <= T(0)) continue;
            const T r = alpha[static_cast<std::size_t>(support[j])] / beta[j];
            if (first || r < step) { step = r; first = false; }
        }
        for (std::size_t j = 0; j < beta.size(); ++j) {
            T& a = alpha[static_cast<std::size_t>(support[j])];
            a -= step * beta[j];
            if (a < T(0)) a = T(0);
        }
        support = collect_support();
    }
    if (static_cast<int>(support.size()) > d + 1)
        throw PreconditionViolation("caratheodory_vertices: support reduction failed");

    // renormalize and verify the reproduction
    T total(0);
    for (int i : support) total += alpha[static_cast<std::size_t>(i)];
    if (total <= T(0)) throw NotMember("caratheodory_vertices: empty support");
    CaratheodoryResult<T> out;
    out.indices = support;
    Vec<T> recon(static_cast<std::size_t>(d), T(0));
    for (int i : support) {
        const T w = alpha[static_cast<std::size_t>(i)] / total;
        out.weights.push_back(w);
        recon = vadd(recon, vscale(pts[static_cast<std::size_t>(i)], w));
    }
    T scale(1);
    scale = std::max(scale, norm_inf(y));
    for (const auto& p : pts) scale = std::max(scale, norm_inf(p));
    // allows for the weights pruned at wtol, one per input point
    const T recon_tol = (T(10) + T(10) * T(static_cast<int>(pts.size()))) * tau * scale;
    if (norm_inf(vsub(recon, y)) > recon_tol)
        throw NotMember("caratheodory_vertices: reproduction residual too large");
    return out;
}

/// Witness for L subset of -(lambda+2)d * conv(selected).
template <typename T>
struct SparseCertificate {
    std::vector<int> selected; // ascending indices into the input vertex list, size <= 2d
    T factor = T(0);           // (lambda + 2) * d
    Vec<T> margins;            // per input vertex: ray-exit slack beyond the required inclusion
    SimplexBasis<T> simplex;
    std::vector<int> caratheodory;
    Vec<T> boundary_point;
    bool origin_in_selection = false;
};

/// The constructive selection: maximal-volume simplex from the vertex set,
/// ray exit opposite the simplex's vertex sum, Caratheodory vertices of the
/// exit point, then an LP certificate for every input vertex.
template <typename T>
SparseCertificate<T> sparse_approximate(const VPolytope<T>& v, const T& lambda,
                                        SimplexSearch mode = SimplexSearch::automatic,
                                        bool check_parallelotope = false,
                                        bool recheck_precondition = true) {
    const int d = v.dim;
    const int n = static_cast<int>(v.points.size());
    const T tau = scalar_policy<T>::tolerance();

    if (recheck_precondition) {
        for (const auto& w : v.points) {
            const Vec<T> target = vscale(w, T(-1) / lambda);
            if (!membership_weights(v.points, target))
                throw PreconditionViolation("sparse_approximate: input violates L subset of -lambda L");
        }
    }

    SparseCertificate<T> cert;
    cert.simplex = max_volume_simplex(v.points, d, mode);

    Vec<T> dir(static_cast<std::size_t>(d), T(0));
    for (int i : cert.simplex.indices) dir = vsub(dir, v.points[static_cast<std::size_t>(i)]);
    const RayExit<T> exit = ray_exit(v, dir);
    cert.boundary_point = exit.point;

    const CaratheodoryResult<T> cara = caratheodory_vertices(v.points, exit.point);
    cert.caratheodory = cara.indices;

    cert.selected = cert.simplex.indices;
    for (int i : cara.indices) cert.selected.push_back(i);
    std::sort(cert.selected.begin(), cert.selected.end());
    cert.selected.erase(std::unique(cert.selected.begin(), cert.selected.end()), cert.selected.end());
    if (static_cast<int>(cert.selected.size()) > 2 * d)
        throw CertificateViolated("sparse_approximate: selection exceeds 2d vertices");

    if (check_parallelotope) {
        // local maximality puts every vertex inside P = sum of [-v_i, v_i]:
        // its coordinates in the simplex basis must lie in [-1, 1]
        Matrix<T> basis(d, d);
        for (int c = 0; c < d; ++c)
            for (int r = 0; r < d; ++r)
                basis(r, c) = v.points[static_cast<std::size_t>(cert.simplex.indices[static_cast<std::size_t>(c)])][static_cast<std::size_t>(r)];
        for (const auto& w : v.points) {
            const Vec<T> beta = solve_linear(basis, w);
            for (const auto& b : beta)
                if (scalar_abs(b) > T(1) + T(100) * tau)
                    throw CertificateViolated("sparse_approximate: vertex escapes the parallelotope");
        }
    }

    cert.factor = (lambda + T(2)) * T(d);
    VPolytope<T> sel;
    sel.dim = d;
    for (int i : cert.selected) sel.points.push_back(v.points[static_cast<std::size_t>(i)]);

    cert.origin_in_selection = membership_weights(sel.points, Vec<T>(static_cast<std::size_t>(d), T(0))).has_value();
    if (!cert.origin_in_selection)
        throw CertificateViolated("sparse_approximate: origin escaped the selected hull");

    cert.margins.reserve(static_cast<std::size_t>(n));
    for (const auto& w : v.points) {
        if (norm_inf(w) <= tau) {
            cert.margins.push_back(T(1)); // the origin is deep inside
            continue;
        }
        const Vec<T> target = vscale(w, T(-1) / cert.factor);
        RayExit<T> reach{};
        try {
            reach = ray_exit(sel, target);
        } catch (const OriginNotInterior&) {
            throw CertificateViolated("sparse_approximate: selected hull lost the origin");
        }
        cert.margins.push_back(reach.t - T(1));
    }
    for (const auto& m : cert.margins)
        if (m < -tau) throw CertificateViolated("sparse_approximate: inclusion margin below tolerance");
    return cert;
}

} // namespace qst
