#include "tfbs/quadrature.hpp"

#include "tfbs/errors.hpp"

#include <cfloat>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace tfbs {

namespace {

// Implicit-shift QL for a symmetric tridiagonal matrix. d holds the
// diagonal, e the subdiagonal in e[0..n-2]. z starts as (1,0,...,0) and
// ends as the first components of the eigenvectors, which is all the
// Golub-Welsch weight formula needs.
void tridiag_eigen(std::vector<long double>& d, std::vector<long double>& e,
                   std::vector<long double>& z) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    e.push_back(0.0L); // e[n-1] sentinel
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const long double dd = fabsl(d[m]) + fabsl(d[m + 1]);
                if (fabsl(e[m]) <= LDBL_EPSILON * dd) break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw std::runtime_error("tridiag_eigen: QL failed to converge");
                long double g = (d[l + 1] - d[l]) / (2.0L * e[l]);
                long double r = hypotl(g, 1.0L);
                g = d[m] - d[l] + e[l] / (g + copysignl(r, g));
                long double s = 1.0L, c = 1.0L, p = 0.0L;
                int i = m - 1;
                for (; i >= l; --i) {
                    long double f = s * e[i];
                    const long double b = c * e[i];
                    r = hypotl(f, g);
                    e[i + 1] = r;
                    if (r == 0.0L) {
                        d[i + 1] -= p;
                        e[m] = 0.0L;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0L * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0L && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0L;
            }
        } while (m != l);
    }
    for (int i = 0; i < n - 1; ++i) {
        int k = i;
        for (int j = i + 1; j < n; ++j)
            if (d[j] < d[k]) k = j;
        if (k != i) {
            std::swap(d[i], d[k]);
            std::swap(z[i], z[k]);
        }
    }
}

// Monic three-term recurrence coefficients for the Jacobi weight
// (1-x)^0 (1+x)^beta, following the classical formulas; mu0 is the
// weight-function mass used by Golub-Welsch.
GaussRule golub_welsch(int n, long double beta, bool jacobi) {
    std::vector<long double> diag(n), sub;
    long double mu0;
    if (!jacobi) {
        mu0 = 2.0L;
        for (int k = 0; k < n; ++k) diag[k] = 0.0L;
        for (int k = 1; k < n; ++k) {
            const long double kk = static_cast<long double>(k);
            sub.push_back(sqrtl(kk * kk / (4.0L * kk * kk - 1.0L)));
        }
    } else {
        mu0 = powl(2.0L, beta + 1.0L) / (beta + 1.0L);
        diag[0] = beta / (beta + 2.0L);
        for (int k = 1; k < n; ++k) {
            const long double t = 2.0L * k + beta;
            diag[k] = beta * beta / (t * (t + 2.0L));
        }
        if (n > 1) {
            const long double b1 = 4.0L * (beta + 1.0L) /
                                   ((beta + 2.0L) * (beta + 2.0L) * (beta + 3.0L));
            sub.push_back(sqrtl(b1));
        }
        for (int k = 2; k < n; ++k) {
            const long double kk = static_cast<long double>(k);
            const long double t = 2.0L * kk + beta;
            const long double bk = 4.0L * kk * kk * (kk + beta) * (kk + beta) /
                                   (t * t * (t + 1.0L) * (t - 1.0L));
            sub.push_back(sqrtl(bk));
        }
    }
    std::vector<long double> z(n, 0.0L);
    z[0] = 1.0L;
    tridiag_eigen(diag, sub, z);
    GaussRule rule;
    rule.nodes = std::move(diag);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) rule.weights[i] = mu0 * z[i] * z[i];
    return rule;
}

} // namespace

GaussRule gauss_legendre(int n) {
    if (n < 1) throw InvalidParameter("gauss_legendre: n must be >= 1");
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, golub_welsch(n, 0.0L, false)).first;
    return it->second;
}

GaussRule gauss_jacobi_left(int n, long double beta) {
    if (n < 1) throw InvalidParameter("gauss_jacobi_left: n must be >= 1");
    if (!(beta > -1.0L)) throw InvalidParameter("gauss_jacobi_left: beta must exceed -1");
    return golub_welsch(n, beta, true);
}

} // namespace tfbs
