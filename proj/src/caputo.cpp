#include "tfbs/caputo.hpp"

#include "tfbs/errors.hpp"
#include "tfbs/kernel.hpp"
#include "tfbs/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace tfbs {

namespace {

void require_level(const TemporalMesh& mesh, std::size_t n) {
    if (n < 1 || n > mesh.levels())
        throw InvalidParameter("kernel row: level n out of range");
}

void require_alpha(const TemporalMesh& mesh, double alpha) {
    if (std::fabs(alpha - mesh.alpha) > 1e-14)
        throw InvalidParameter("kernel row: alpha differs from the mesh offset order");
}

// (1 - e^{-x}) / x, stable near 0.
double em1_over(double x) {
    if (x == 0.0) return 1.0;
    return -std::expm1(-x) / x;
}

// g(x)/x with g(x) = (1 - e^{-x})(1/2 - 1/x) + e^{-x}; the quadratic-moment
// shape factor. Series for small x where the direct form cancels.
double quad_shape(double x) {
    if (x < 1.0) {
        // sum_{m>=2} (-1)^m x^{m-1} (m-1) / (2 (m+1)!)
        double term = x / 12.0; // m = 2
        double sum = term;
        for (int m = 3; m < 24; ++m) {
            term *= -x * static_cast<double>(m - 1) /
                    (static_cast<double>(m - 2) * static_cast<double>(m + 1));
            sum += term;
            if (std::fabs(term) < 1e-19 * std::fabs(sum)) break;
        }
        return sum;
    }
    const double e = std::exp(-x);
    return ((1.0 - e) * (0.5 - 1.0 / x) + e) / x;
}

} // namespace

double exp_average(double s, double gap, double tau) {
    return std::exp(-s * gap) * em1_over(s * tau);
}

double exp_quadratic_moment(double s, double gap, double tau, double tau1) {
    return 2.0 * tau / (tau + tau1) * std::exp(-s * gap) * quad_shape(s * tau);
}

double local_coeff_a0(const TemporalMesh& mesh, std::size_t n, double alpha) {
    require_level(mesh, n);
    const double theta = 0.5 * alpha;
    const double tau = mesh.step(n);
    return std::pow((1.0 - theta) * tau, 1.0 - alpha) / (tau * std::tgamma(2.0 - alpha));
}

HistoryCoeffs history_coeffs(const TemporalMesh& mesh, std::size_t n, std::size_t k,
                             const SOEApproximation& soe) {
    require_level(mesh, n);
    if (k < 1 || k + 1 > n)
        throw InvalidParameter("history_coeffs: need 1 <= k <= n-1");
    const double gap = mesh.offset(n) - mesh.t[k];
    const double tau = mesh.step(k);
    const double tau1 = mesh.step(k + 1);
    HistoryCoeffs out;
    out.c.resize(soe.size());
    out.d.resize(soe.size());
    for (std::size_t l = 0; l < soe.size(); ++l) {
        out.c[l] = exp_average(soe.nodes[l], gap, tau);
        out.d[l] = exp_quadratic_moment(soe.nodes[l], gap, tau, tau1);
    }
    return out;
}

double soe_tolerance_bound(double alpha, double horizon) {
    const double w = caputo_kernel(alpha, horizon);
    const double theta = 0.5 * alpha;
    return std::min(7.0 / 11.0 * w, theta / (1.0 - alpha) * w);
}

KernelRow assemble_fast_kernel_row(const TemporalMesh& mesh, std::size_t n,
                                   double alpha, const SOEApproximation& soe) {
    require_level(mesh, n);
    require_alpha(mesh, alpha);
    if (soe.epsilon > soe_tolerance_bound(alpha, mesh.horizon()))
        throw ToleranceViolation(
            "assemble_fast_kernel_row: SOE tolerance too large for the kernel "
            "positivity/monotonicity guarantees");

    KernelRow row;
    row.n = n;
    row.mode = KernelRow::Mode::fast;
    row.A.assign(n, 0.0);
    row.A[0] = local_coeff_a0(mesh, n, alpha);
    if (n == 1) return row;

    // A_0 gains the unknown-increment moment of interval n-1; interior
    // entries couple neighbouring intervals through the quadratic moments.
    std::vector<double> prev_d;
    for (std::size_t k = 1; k + 1 <= n; ++k) {
        const HistoryCoeffs hc = history_coeffs(mesh, n, k, soe);
        double value = 0.0;
        if (k == 1) {
            for (std::size_t l = 0; l < soe.size(); ++l)
                value += soe.weights[l] * (hc.c[l] - hc.d[l]);
        } else {
            const double r = mesh.ratio(k - 1);
            for (std::size_t l = 0; l < soe.size(); ++l)
                value += soe.weights[l] * (r * prev_d[l] + hc.c[l] - hc.d[l]);
        }
        row.A[n - k] = value;
        prev_d = hc.d;
    }
    const double r = mesh.ratio(n - 1);
    for (std::size_t l = 0; l < soe.size(); ++l)
        row.A[0] += soe.weights[l] * r * prev_d[l];
    return row;
}

KernelRow assemble_direct_kernel_row(const TemporalMesh& mesh, std::size_t n,
                                     double alpha) {
    require_level(mesh, n);
    require_alpha(mesh, alpha);

    KernelRow row;
    row.n = n;
    row.mode = KernelRow::Mode::direct;
    row.A.assign(n, 0.0);
    row.A[0] = local_coeff_a0(mesh, n, alpha);
    if (n == 1) return row;

    static const GaussRule rule = gauss_legendre(64);
    const double base = mesh.offset(n);
    double prev_d = 0.0;
    for (std::size_t k = 1; k + 1 <= n; ++k) {
        const double lo = mesh.t[k - 1];
        const double hi = mesh.t[k];
        const double tau = mesh.step(k);
        const double tau1 = mesh.step(k + 1);
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * tau;
        double c = 0.0, d = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double sigma = mid + half * static_cast<double>(rule.nodes[i]);
            const double w = static_cast<double>(rule.weights[i]) * half *
                             caputo_kernel(alpha, base - sigma);
            c += w / tau;
            d += w * 2.0 * (sigma - mid) / (tau * (tau + tau1));
        }
        row.A[n - k] = (k == 1) ? c - d : mesh.ratio(k - 1) * prev_d + c - d;
        prev_d = d;
    }
    row.A[0] += mesh.ratio(n - 1) * prev_d;
    return row;
}

FastHistory::FastHistory(const TemporalMesh& mesh, const SOEApproximation& soe,
                         std::size_t n_space)
    : mesh_(&mesh), soe_(&soe), n_space_(n_space) {
    accum_.assign(soe.size() * n_space, 0.0);
    b_.assign(soe.size(), 0.0);
}

double FastHistory::begin_step(std::size_t n, std::span<const double> grad_prev,
                               std::vector<double>& known) {
    if (pending_ || n != expected_)
        throw StateOrderError("FastHistory: steps must advance one level at a time");
    if (grad_prev.size() != n_space_)
        throw DimensionMismatch("FastHistory: increment size mismatch");
    require_level(*mesh_, n);

    const double theta = mesh_->theta;
    const double tau_prev = mesh_->step(n - 1);
    const double tau_curr = mesh_->step(n);
    const double gap = (1.0 - theta) * tau_curr;
    rho_prev_ = mesh_->ratio(n - 1);

    known.assign(n_space_, 0.0);
    double unknown_coeff = 0.0;
    for (std::size_t l = 0; l < soe_->size(); ++l) {
        const double s = soe_->nodes[l];
        const double decay = std::exp(-s * (theta * tau_prev + (1.0 - theta) * tau_curr));
        const double a = exp_average(s, gap, tau_prev);
        b_[l] = exp_quadratic_moment(s, gap, tau_prev, tau_curr);
        const double known_coeff = a - b_[l];
        const double weight = soe_->weights[l];
        double* q = accum_.data() + l * n_space_;
        for (std::size_t i = 0; i < n_space_; ++i) {
            q[i] = decay * q[i] + known_coeff * grad_prev[i];
            known[i] += weight * q[i];
        }
        unknown_coeff += weight * rho_prev_ * b_[l];
    }
    pending_ = true;
    return unknown_coeff;
}

void FastHistory::complete_step(std::span<const double> grad_curr) {
    if (!pending_)
        throw StateOrderError("FastHistory: no step awaiting completion");
    if (grad_curr.size() != n_space_)
        throw DimensionMismatch("FastHistory: increment size mismatch");
    for (std::size_t l = 0; l < soe_->size(); ++l) {
        const double coeff = b_[l] * rho_prev_;
        double* q = accum_.data() + l * n_space_;
        for (std::size_t i = 0; i < n_space_; ++i) q[i] += coeff * grad_curr[i];
    }
    pending_ = false;
    ++expected_;
}

std::vector<double> complementary_kernels(const std::vector<KernelRow>& rows) {
    const std::size_t n = rows.size();
    if (n == 0) throw InvalidParameter("complementary_kernels: no rows");
    for (std::size_t j = 1; j <= n; ++j) {
        if (rows[j - 1].n != j || rows[j - 1].A.size() != j)
            throw InvalidParameter("complementary_kernels: rows must cover levels 1..n");
        if (!(rows[j - 1].A[0] > 0.0))
            throw SingularKernel("complementary_kernels: nonpositive diagonal entry");
    }
    std::vector<double> P(n, 0.0);
    P[0] = 1.0 / rows[n - 1].A[0];
    for (std::size_t k = n - 1; k >= 1; --k) {
        double acc = 1.0;
        for (std::size_t j = k + 1; j <= n; ++j)
            acc -= P[n - j] * rows[j - 1].A[j - k];
        P[n - k] = acc / rows[k - 1].A[0];
    }
    return P;
}

} // namespace tfbs
