#pragma once

// Dense symmetric eigensolvers, dependency-light.
//
// The default path is Householder tridiagonalization followed by implicit
// QL with shifts (the classic EISPACK tred2/tql2 pair); cyclic Jacobi is
// kept alongside as an independent route used for cross-checks and small
// problems.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace reprograph {

struct SymMatrix {
    std::size_t n = 0;
    std::vector<double> a;  // row-major

    static SymMatrix zero(std::size_t n) { return {n, std::vector<double>(n * n, 0.0)}; }
    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    double trace() const {
        double t = 0;
        for (std::size_t i = 0; i < n; ++i) t += at(i, i);
        return t;
    }
};

/// Eigenvalues ascending; vectors stored column-wise: component i of the
/// j-th eigenvector is vectors[i * n + j].
struct EigenSystem {
    std::size_t n = 0;
    std::vector<double> values;
    std::vector<double> vectors;

    std::vector<double> vector(std::size_t j) const {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = vectors[i * n + j];
        return v;
    }
};

namespace detail {

inline double sign_like(double a, double b) { return b >= 0.0 ? std::fabs(a) : -std::fabs(a); }

/// Householder reduction of z (row-major n x n, symmetric) to tridiagonal
/// (d, e); when accumulate is set, z is overwritten with the orthogonal
/// transformation needed to recover eigenvectors.
inline void tred2(std::vector<double>& z, std::size_t n, std::vector<double>& d,
                  std::vector<double>& e, bool accumulate) {
    auto zz = [&](std::size_t i, std::size_t j) -> double& { return z[i * n + j]; };
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (std::size_t k = 0; k < i; ++k) scale += std::fabs(zz(i, k));
            if (scale == 0.0) {
                e[i] = zz(i, l);
            } else {
                for (std::size_t k = 0; k < i; ++k) {
                    zz(i, k) /= scale;
                    h += zz(i, k) * zz(i, k);
                }
                double f = zz(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                zz(i, l) = f - g;
                f = 0.0;
                for (std::size_t j = 0; j < i; ++j) {
                    if (accumulate) zz(j, i) = zz(i, j) / h;
                    g = 0.0;
                    for (std::size_t k = 0; k < j + 1; ++k) g += zz(j, k) * zz(i, k);
                    for (std::size_t k = j + 1; k < i; ++k) g += zz(k, j) * zz(i, k);
                    e[j] = g / h;
                    f += e[j] * zz(i, j);
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j < i; ++j) {
                    f = zz(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (std::size_t k = 0; k < j + 1; ++k)
                        zz(j, k) -= f * e[k] + g * zz(i, k);
                }
            }
        } else {
            e[i] = zz(i, l);
        }
        d[i] = h;
    }
    if (accumulate) d[0] = 0.0;
    e[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (accumulate) {
            if (d[i] != 0.0) {
                for (std::size_t j = 0; j < i; ++j) {
                    double g = 0.0;
                    for (std::size_t k = 0; k < i; ++k) g += zz(i, k) * zz(k, j);
                    for (std::size_t k = 0; k < i; ++k) zz(k, j) -= g * zz(k, i);
                }
            }
            d[i] = zz(i, i);
            zz(i, i) = 1.0;
            for (std::size_t j = 0; j < i; ++j) zz(j, i) = zz(i, j) = 0.0;
        } else {
            d[i] = zz(i, i);
        }
    }
}

/// Implicit QL with shifts on the tridiagonal (d, e); rotates the columns of
/// z alongside when accumulate is set.
inline void tql2(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z,
                 std::size_t n, bool accumulate) {
    auto zz = [&](std::size_t i, std::size_t j) -> double& { return z[i * n + j]; };
    const double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw std::runtime_error("eigensolver: QL iteration cap exceeded");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + sign_like(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i1 = m; i1-- > l;) {
                    double f = s * e[i1];
                    const double b = c * e[i1];
                    r = std::hypot(f, g);
                    e[i1 + 1] = r;
                    if (r == 0.0) {
                        d[i1 + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i1 + 1] - p;
                    r = (d[i1] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i1 + 1] = g + p;
                    g = c * r - b;
                    if (accumulate) {
                        for (std::size_t k = 0; k < n; ++k) {
                            f = zz(k, i1 + 1);
                            zz(k, i1 + 1) = s * zz(k, i1) + c * f;
                            zz(k, i1) = c * zz(k, i1) - s * f;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

} // namespace detail

/// Ascending eigenvalues of a symmetric matrix (input copied).
inline std::vector<double> symmetric_eigenvalues(const SymMatrix& m) {
    if (m.n == 0) return {};
    std::vector<double> z = m.a;
    std::vector<double> d, e;
    detail::tred2(z, m.n, d, e, false);
    detail::tql2(d, e, z, m.n, false);
    std::sort(d.begin(), d.end());
    return d;
}

/// Full eigensystem (values ascending, orthonormal vectors column-wise).
inline EigenSystem symmetric_eigensystem(const SymMatrix& m) {
    EigenSystem sys;
    sys.n = m.n;
    if (m.n == 0) return sys;
    std::vector<double> z = m.a;
    std::vector<double> d, e;
    detail::tred2(z, m.n, d, e, true);
    detail::tql2(d, e, z, m.n, true);

    std::vector<std::size_t> order(m.n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    sys.values.resize(m.n);
    sys.vectors.assign(m.n * m.n, 0.0);
    for (std::size_t j = 0; j < m.n; ++j) {
        sys.values[j] = d[order[j]];
        for (std::size_t i = 0; i < m.n; ++i) sys.vectors[i * m.n + j] = z[i * m.n + order[j]];
    }
    return sys;
}

/// Cyclic Jacobi, eigenvalues only.  Independent of the QL path; used as a
/// cross-check oracle and fine for small matrices.
inline std::vector<double> jacobi_eigenvalues(const SymMatrix& m, double tol = 1e-10,
                                              int max_sweeps = 100) {
    const std::size_t n = m.n;
    if (n == 0) return {};
    std::vector<double> a = m.a;
    auto aa = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

    auto off_norm = [&] {
        double s = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += aa(p, q) * aa(p, q);
        return std::sqrt(2.0 * s);
    };
    double frob = 0;
    for (double v : a) frob += v * v;
    frob = std::sqrt(frob);
    const double target = std::max(tol * frob, 1e-300);

    int sweep = 0;
    while (off_norm() > target) {
        if (sweep++ >= max_sweeps)
            throw std::runtime_error("jacobi_eigenvalues: sweep cap exceeded");
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(aa(p, q)) < 1e-300) continue;
                const double theta = (aa(q, q) - aa(p, p)) / (2.0 * aa(p, q));
                const double t = detail::sign_like(1.0, theta) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double apq = aa(p, q);
                aa(p, p) -= t * apq;
                aa(q, q) += t * apq;
                aa(p, q) = aa(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = aa(r, p), arq = aa(r, q);
                    aa(r, p) = aa(p, r) = arp - s * (arq + tau * arp);
                    aa(r, q) = aa(q, r) = arq + s * (arp - tau * arq);
                }
            }
        }
    }
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = aa(i, i);
    std::sort(vals.begin(), vals.end());
    return vals;
}

} // namespace reprograph
