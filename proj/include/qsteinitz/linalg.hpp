#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace qst {

template <typename T>
using Vec = std::vector<T>;

template <typename T>
T dot(const Vec<T>& a, const Vec<T>& b) {
    T s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

template <typename T>
T norm_sq(const Vec<T>& a) { return dot(a, a); }

template <typename T>
T norm_inf(const Vec<T>& a) {
    T m(0);
    for (const auto& x : a) m = std::max(m, scalar_abs(x));
    return m;
}

inline double norm2(const Vec<double>& a) { return std::sqrt(norm_sq(a)); }

template <typename T>
Vec<T> vadd(const Vec<T>& a, const Vec<T>& b) {
    Vec<T> r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

template <typename T>
Vec<T> vsub(const Vec<T>& a, const Vec<T>& b) {
    Vec<T> r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

template <typename T>
Vec<T> vscale(const Vec<T>& a, const T& s) {
    Vec<T> r(a);
    for (auto& x : r) x *= s;
    return r;
}

template <typename T>
Vec<T> vneg(const Vec<T>& a) { return vscale(a, T(-1)); }

template <typename T>
bool vclose(const Vec<T>& a, const Vec<T>& b, const T& tol) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (scalar_abs(T(a[i] - b[i])) > tol) return false;
    return true;
}

/// Dense row-major matrix, sized for desk-scale dimensions (d <= ~16).
template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    Vec<T> row(int i) const {
        Vec<T> r(static_cast<std::size_t>(cols_));
        for (int j = 0; j < cols_; ++j) r[static_cast<std::size_t>(j)] = (*this)(i, j);
        return r;
    }
    Vec<T> col(int j) const {
        Vec<T> c(static_cast<std::size_t>(rows_));
        for (int i = 0; i < rows_; ++i) c[static_cast<std::size_t>(i)] = (*this)(i, j);
        return c;
    }

    Vec<T> mul(const Vec<T>& x) const {
        Vec<T> y(static_cast<std::size_t>(rows_), T(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) y[static_cast<std::size_t>(i)] += (*this)(i, j) * x[static_cast<std::size_t>(j)];
        return y;
    }

    Matrix mul(const Matrix& o) const {
        Matrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& aik = (*this)(i, k);
                for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }

    Matrix transposed() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    T max_abs() const {
        T m(0);
        for (const auto& x : a_) m = std::max(m, scalar_abs(x));
        return m;
    }

private:
    int rows_, cols_;
    std::vector<T> a_;
};

/// Symmetric matrix wrapper. Construction symmetrizes within tolerance and
/// rejects asymmetry beyond it.
template <typename T>
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int n) : m_(n, n) {}
    explicit SymMatrix(const Matrix<T>& m) : m_(m) {
        const T tol = scalar_policy<T>::tolerance();
        const T scale = std::max(T(1), m.max_abs());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = i + 1; j < m.cols(); ++j) {
                if (scalar_abs(T(m(i, j) - m(j, i))) > tol * scale)
                    throw PreconditionViolation("SymMatrix: input is not symmetric");
                const T avg = (m_(i, j) + m_(j, i)) / T(2);
                m_(i, j) = avg;
                m_(j, i) = avg;
            }
    }

    int dim() const { return m_.rows(); }
    T& operator()(int i, int j) { return m_(i, j); }
    const T& operator()(int i, int j) const { return m_(i, j); }
    const Matrix<T>& matrix() const { return m_; }

private:
    Matrix<T> m_;
};

namespace detail {

/// LU decomposition with partial pivoting (by absolute value, which is also
/// well defined for rationals). Returns pivoted determinant and, on demand,
/// solves. nullopt when a pivot falls within tolerance of zero.
template <typename T>
std::optional<Vec<T>> lu_solve(Matrix<T> m, Vec<T> b, const T& pivot_tol) {
    const int n = m.rows();
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (scalar_abs(m(i, k)) > scalar_abs(m(piv, k))) piv = i;
        if (scalar_abs(m(piv, k)) <= pivot_tol) return std::nullopt;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(piv)]);
        }
        for (int i = k + 1; i < n; ++i) {
            const T f = m(i, k) / m(k, k);
            if (f == T(0)) continue;
            for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
            b[static_cast<std::size_t>(i)] -= f * b[static_cast<std::size_t>(k)];
        }
    }
    Vec<T> x(static_cast<std::size_t>(n), T(0));
    for (int i = n - 1; i >= 0; --i) {
        T s = b[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= m(i, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / m(i, i);
    }
    return x;
}

} // namespace detail

/// Solve M x = b. Throws SingularMatrix when the pivot falls within tolerance
/// of zero (float policy) or is exactly zero (exact policy).
template <typename T>
Vec<T> solve_linear(const Matrix<T>& m, const Vec<T>& b) {
    const T scale = std::max(T(1), m.max_abs());
    const T tol = scalar_policy<T>::tolerance() * scale;
    auto x = detail::lu_solve(m, b, tol);
    if (!x) throw SingularMatrix();
    return *x;
}

/// Determinant via Gaussian elimination with partial pivoting; exact under the
/// rational policy. Returns 0 for singular input.
template <typename T>
T determinant(Matrix<T> m) {
    const int n = m.rows();
    T det(1);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (scalar_abs(m(i, k)) > scalar_abs(m(piv, k))) piv = i;
        if (m(piv, k) == T(0)) return T(0);
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            det = -det;
        }
        det *= m(k, k);
        for (int i = k + 1; i < n; ++i) {
            const T f = m(i, k) / m(k, k);
            if (f == T(0)) continue;
            for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

struct EigenResult {
    Vec<double> values;     // descending
    Matrix<double> vectors; // column i pairs with values[i]; orthonormal
};

/// Cyclic Jacobi eigendecomposition for symmetric matrices. Sweep cap 100.
inline EigenResult sym_eig(const SymMatrix<double>& s) {
    const int n = s.dim();
    Matrix<double> a = s.matrix();
    Matrix<double> v = Matrix<double>::identity(n);
    const double scale = std::max(1.0, a.max_abs());
    const int max_sweeps = 100;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::fabs(a(p, q)));
        if (off <= 1e-14 * scale) break;
        if (sweep == max_sweeps - 1) throw ConvergenceFailure("sym_eig: Jacobi sweeps exhausted");

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(a(p, q)) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });

    EigenResult r;
    r.values.resize(static_cast<std::size_t>(n));
    r.vectors = Matrix<double>(n, n);
    for (int j = 0; j < n; ++j) {
        r.values[static_cast<std::size_t>(j)] = a(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j)]);
        for (int i = 0; i < n; ++i) r.vectors(i, j) = v(i, order[static_cast<std::size_t>(j)]);
    }
    return r;
}

/// Inverse square root of a positive definite matrix: V diag(1/sqrt(l)) V^T.
inline SymMatrix<double> inv_sqrt_psd(const SymMatrix<double>& s) {
    const EigenResult e = sym_eig(s);
    const int n = s.dim();
    if (e.values.back() <= global_tolerance()) throw NotPositiveDefinite("inv_sqrt_psd: min eigenvalue within tolerance of zero");
    Matrix<double> m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += e.vectors(i, k) * e.vectors(j, k) / std::sqrt(e.values[static_cast<std::size_t>(k)]);
            m(i, j) = acc;
        }
    // clean residual asymmetry from rounding
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = avg;
            m(j, i) = avg;
        }
    return SymMatrix<double>(m);
}

/// tr(M^-1) = sum of reciprocal eigenvalues.
inline double trace_inverse(const SymMatrix<double>& s) {
    const EigenResult e = sym_eig(s);
    if (e.values.back() <= global_tolerance()) throw NotPositiveDefinite("trace_inverse: min eigenvalue within tolerance of zero");
    double t = 0.0;
    for (double l : e.values) t += 1.0 / l;
    return t;
}

/// Full inverse of a positive definite matrix via the eigendecomposition.
inline SymMatrix<double> inverse_pd(const SymMatrix<double>& s) {
    const EigenResult e = sym_eig(s);
    const int n = s.dim();
    if (e.values.back() <= global_tolerance()) throw NotPositiveDefinite("inverse_pd: min eigenvalue within tolerance of zero");
    Matrix<double> m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += e.vectors(i, k) * e.vectors(j, k) / e.values[static_cast<std::size_t>(k)];
            m(i, j) = acc;
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = avg;
            m(j, i) = avg;
        }
    return SymMatrix<double>(m);
}

} // namespace qst
