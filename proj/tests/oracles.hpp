#pragma once

// Test-only oracles. These stay independent of the library's numerical
// paths: plain adaptive Simpson instead of Gauss rules, dense matrices
// instead of tridiagonal shortcuts, Jacobi rotations for eigenvalues.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double simpson_step(const std::function<double(double)>& f, double a,
                           double b, double fa, double fm, double fb, double whole,
                           double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// Integrand with an integrable singularity at the right endpoint b:
/// geometric subdivision toward b until panels stop contributing.
inline double integrate_singular_right(const std::function<double(double)>& f,
                                       double a, double b, double tol = 1e-13) {
    double total = 0.0;
    double width = b - a;
    double left = a;
    for (int j = 0; j < 2000; ++j) {
        width *= 0.5;
        const double right = b - width;
        total += integrate(f, left, right, tol * 0.01);
        left = right;
        // crude bound on the remaining mass for kernels ~ (b-s)^(-mu), mu < 1
        const double remaining = std::fabs(f(b - 0.5 * width)) * width;
        if (remaining < tol * std::max(1.0, std::fabs(total))) break;
    }
    return total;
}

struct Dense {
    std::size_t n = 0;
    std::vector<double> a;

    explicit Dense(std::size_t size) : n(size), a(size * size, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

inline Dense dense_tridiag(std::size_t n, double sub, double diag, double sup) {
    Dense m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = diag;
        if (i > 0) m.at(i, i - 1) = sub;
        if (i + 1 < n) m.at(i, i + 1) = sup;
    }
    return m;
}

inline Dense multiply(const Dense& x, const Dense& y) {
    Dense z(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t k = 0; k < x.n; ++k) {
            const double v = x.at(i, k);
            if (v == 0.0) continue;
            for (std::size_t j = 0; j < x.n; ++j) z.at(i, j) += v * y.at(k, j);
        }
    return z;
}

inline Dense transpose(const Dense& x) {
    Dense z(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t j = 0; j < x.n; ++j) z.at(j, i) = x.at(i, j);
    return z;
}

inline Dense add(const Dense& x, const Dense& y, double sx = 1.0, double sy = 1.0) {
    Dense z(x.n);
    for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = sx * x.a[i] + sy * y.a[i];
    return z;
}

inline std::vector<double> matvec(const Dense& m, const std::vector<double>& v) {
    std::vector<double> y(m.n, 0.0);
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j) y[i] += m.at(i, j) * v[j];
    return y;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> sym_eigenvalues(Dense m) {
    const std::size_t n = m.n;
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += m.at(p, q) * m.at(p, q);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m.at(p, q);
                if (std::fabs(apq) < 1e-300) continue;
                const double theta = (m.at(q, q) - m.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = m.at(k, p), akq = m.at(k, q);
                    m.at(k, p) = c * akp - s * akq;
                    m.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = m.at(p, k), aqk = m.at(q, k);
                    m.at(p, k) = c * apk - s * aqk;
                    m.at(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = m.at(i, i);
    return ev;
}

} // namespace oracle
