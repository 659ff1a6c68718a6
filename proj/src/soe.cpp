#include "tfbs/soe.hpp"

#include "tfbs/errors.hpp"
#include "tfbs/kernel.hpp"
#include "tfbs/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#if defined(__SIZEOF_FLOAT128__) && !defined(TFBS_NO_QUADMATH)
#include <quadmath.h>
#endif

namespace tfbs {

namespace {

struct PanelPlan {
    long double lo = 0.0L;
    long double hi = 0.0L;
    int order = 0;
    bool jacobi = false; // weight s^{alpha-1} folded into the rule
};

// Relative n-point Gauss error on a panel, from the Bernstein-ellipse
// bound for exp(-st) (half-width-scaled argument w) plus, for interior
// panels, the ellipse of the algebraic factor s^{alpha-1}, which for a
// dyadic panel passes through the origin at parameter 3 + 2*sqrt(2).
double gauss_error_model(int n, double w, bool jacobi) {
    constexpr double fudge = 0.25;
    double err = 0.0;
    if (w > 0.0) {
        const double r = w * std::numbers::e / (4.0 * n);
        err += (r >= 1.0) ? 1.0 : fudge * std::exp(2.0 * n * std::log(r));
    }
    if (!jacobi) {
        static const double log_rho = std::log(3.0 + 2.0 * std::numbers::sqrt2);
        err += fudge * std::exp(-2.0 * n * log_rho);
    }
    return err;
}

int required_order(double eta, double w, bool jacobi, int start) {
    int n = start;
    while (n < 96 && gauss_error_model(n, w, jacobi) > eta) ++n;
    return n;
}

// Pick panels and per-panel orders so that every panel's quadrature error
// stays below a fixed fraction of epsilon for all t in [dt, T]. At any
// given t only a few octaves of s contribute, so the per-panel budgets do
// not pile up; the certification sweep is the final arbiter either way.
std::vector<PanelPlan> plan_panels(double alpha, double epsilon, double dt,
                                   double T, int boost) {
    constexpr double safety = 0.25;
    constexpr double drop_fraction = 0.05;
    constexpr int grid_size = 96;

    std::vector<double> tgrid(grid_size);
    for (int i = 0; i < grid_size; ++i)
        tgrid[i] = dt * std::pow(T / dt, static_cast<double>(i) / (grid_size - 1));

    const double gg = std::numbers::pi / std::sin(std::numbers::pi * alpha);
    const double budget = safety * epsilon;
    const double cut = std::exp2(std::ceil(std::log2(32.0 / T)));

    std::vector<PanelPlan> plans;
    {
        int need = 4;
        const double mass = std::pow(cut, alpha) / (alpha * gg);
        for (double t : tgrid) {
            const double mag = std::min(caputo_kernel(alpha, t), mass);
            need = required_order(budget / mag, 0.5 * cut * t, true, need);
        }
        plans.push_back({0.0L, static_cast<long double>(cut),
                         std::min(need + boost, 96), true});
    }
    int drops = 0;
    for (int j = 0; j < 400 && drops < 2; ++j) {
        const double lo = cut * std::exp2(j);
        const double hi = 2.0 * lo;
        const double mass = (std::pow(hi, alpha) - std::pow(lo, alpha)) / (alpha * gg);
        bool keep = false;
        int need = 4;
        for (double t : tgrid) {
            const double mag = std::exp(-lo * t) * mass;
            if (mag <= drop_fraction * budget) continue;
            keep = true;
            need = required_order(budget / mag, 0.5 * (hi - lo) * t, false, need);
        }
        if (!keep) {
            ++drops;
            continue;
        }
        drops = 0;
        plans.push_back({static_cast<long double>(lo), static_cast<long double>(hi),
                         std::min(need + boost, 96), false});
    }
    return plans;
}

void emit_panel(const PanelPlan& plan, long double alpha, long double norm,
                SOEApproximation& out) {
    if (plan.jacobi) {
        const GaussRule rule = gauss_jacobi_left(plan.order, alpha - 1.0L);
        const long double half = 0.5L * plan.hi;
        const long double scale = powl(half, alpha) / norm;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            out.nodes_ext.push_back(half * (1.0L + rule.nodes[i]));
            out.weights_ext.push_back(scale * rule.weights[i]);
        }
    } else {
        const GaussRule rule = gauss_legendre(plan.order);
        const long double mid = 0.5L * (plan.lo + plan.hi);
        const long double half = 0.5L * (plan.hi - plan.lo);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const long double s = mid + half * rule.nodes[i];
            out.nodes_ext.push_back(s);
            out.weights_ext.push_back(rule.weights[i] * half *
                                      powl(s, alpha - 1.0L) / norm);
        }
    }
}

// Neumaier-compensated sum of the exponential terms in long double.
long double sum_terms_l(const SOEApproximation& soe, long double t) {
    long double sum = 0.0L, comp = 0.0L;
    for (std::size_t l = 0; l < soe.nodes_ext.size(); ++l) {
        const long double arg = soe.nodes_ext[l] * t;
        if (arg > 12000.0L) break; // nodes ascend; the rest underflow
        const long double term = soe.weights_ext[l] * expl(-arg);
        const long double next = sum + term;
        comp += (fabsl(sum) >= fabsl(term)) ? (sum - next) + term
                                            : (term - next) + sum;
        sum = next;
    }
    return sum + comp;
}

long double sweep_error_l(const SOEApproximation& soe, std::size_t samples) {
    const long double dt = soe.delta_t;
    const long double T = soe.horizon;
    const long double ratio = logl(T / dt);
    const long double g1ma = tgammal(1.0L - static_cast<long double>(soe.alpha));
    long double worst = 0.0L;
    for (std::size_t i = 0; i < samples; ++i) {
        const long double u = static_cast<long double>(i) / (samples - 1);
        const long double t = dt * expl(ratio * u);
        const long double exact = powl(t, -static_cast<long double>(soe.alpha)) / g1ma;
        worst = std::max(worst, fabsl(exact - sum_terms_l(soe, t)));
    }
    return worst;
}

#if defined(__SIZEOF_FLOAT128__) && !defined(TFBS_NO_QUADMATH)
long double sweep_error_q(const SOEApproximation& soe, std::size_t samples) {
    const __float128 dt = soe.delta_t;
    const __float128 T = soe.horizon;
    const __float128 ratio = logq(T / dt);
    const __float128 alpha = soe.alpha;
    const __float128 g1ma = tgammaq(1.0Q - alpha);
    __float128 worst = 0.0Q;
    for (std::size_t i = 0; i < samples; ++i) {
        const __float128 u = static_cast<__float128>(i) / (samples - 1);
        const __float128 t = dt * expq(ratio * u);
        __float128 sum = 0.0Q;
        for (std::size_t l = 0; l < soe.nodes_ext.size(); ++l) {
            const __float128 arg = static_cast<__float128>(soe.nodes_ext[l]) * t;
            if (arg > 12000.0Q) break;
            sum += static_cast<__float128>(soe.weights_ext[l]) * expq(-arg);
        }
        const __float128 err = fabsq(powq(t, -alpha) / g1ma - sum);
        if (err > worst) worst = err;
    }
    return static_cast<long double>(worst);
}
#endif

// The sweep compares two quantities of magnitude omega(delta_t); once
// epsilon sits within a few hundred long-double ulps of that magnitude the
// comparison itself needs more bits.
bool needs_high_precision(const SOEApproximation& soe) {
    const long double scale =
        caputo_kernel_l(soe.alpha, static_cast<long double>(soe.delta_t));
    return static_cast<long double>(soe.epsilon) < 200.0L * LDBL_EPSILON * scale;
}

long double sweep_error(const SOEApproximation& soe, std::size_t samples) {
#if defined(__SIZEOF_FLOAT128__) && !defined(TFBS_NO_QUADMATH)
    if (needs_high_precision(soe)) return sweep_error_q(soe, samples);
#endif
    return sweep_error_l(soe, samples);
}

constexpr std::size_t kCertifySamples = 10000;

} // namespace

SOEApproximation build_soe(double alpha, double epsilon, double delta_t,
                           double horizon) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw InvalidParameter("build_soe: alpha must lie in (0,1)");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw InvalidParameter("build_soe: epsilon must lie in (0,1)");
    if (!(delta_t > 0.0) || !(delta_t < horizon))
        throw InvalidParameter("build_soe: need 0 < delta_t < horizon");

    const long double alpha_l = alpha;
    const long double norm = static_cast<long double>(std::numbers::pi_v<long double>) /
                             sinl(std::numbers::pi_v<long double> * alpha_l);

    long double best_err = -1.0L;
    for (int boost = 0; boost <= 9; boost += 3) {
        SOEApproximation soe;
        soe.alpha = alpha;
        soe.epsilon = epsilon;
        soe.delta_t = delta_t;
        soe.horizon = horizon;
        for (const PanelPlan& plan : plan_panels(alpha, epsilon, delta_t, horizon, boost))
            emit_panel(plan, alpha_l, norm, soe);
        const long double err = sweep_error(soe, kCertifySamples);
        best_err = (best_err < 0.0L) ? err : std::min(best_err, err);
        if (err <= static_cast<long double>(epsilon)) {
            soe.max_error = static_cast<double>(err);
            soe.nodes.assign(soe.nodes_ext.begin(), soe.nodes_ext.end());
            soe.weights.assign(soe.weights_ext.begin(), soe.weights_ext.end());
            for (std::size_t l = 0; l + 1 < soe.nodes_ext.size(); ++l)
                if (!(soe.nodes_ext[l] < soe.nodes_ext[l + 1]) ||
                    !(soe.weights_ext[l] > 0.0L))
                    throw CertificationFailure("build_soe: node ordering violated");
            return soe;
        }
    }
    throw CertificationFailure("build_soe: sweep error " +
                               std::to_string(static_cast<double>(best_err)) +
                               " exceeds epsilon " + std::to_string(epsilon));
}

double eval_soe(const SOEApproximation& soe, double t) {
    if (t < soe.delta_t * (1.0 - 1e-12))
        throw DomainError("eval_soe: t below the certified cut-off time");
    return static_cast<double>(sum_terms_l(soe, t));
}

double soe_max_error(const SOEApproximation& soe, std::size_t n_samples) {
    if (n_samples < 2)
        throw InvalidParameter("soe_max_error: need at least two samples");
    return static_cast<double>(sweep_error(soe, n_samples));
}

} // namespace tfbs
