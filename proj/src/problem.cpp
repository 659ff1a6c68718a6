#include "tfbs/problem.hpp"

#include "tfbs/errors.hpp"

#include <cmath>

namespace tfbs {

ScalarFn caputo_of_power(double mu, double alpha) {
    if (mu < 0.0) throw InvalidParameter("caputo_of_power: mu must be >= 0");
    if (mu == 0.0)
        return [](double) { return 0.0; };
    const double factor = std::tgamma(mu + 1.0) / std::tgamma(mu + 1.0 - alpha);
    return [factor, mu, alpha](double t) { return factor * std::pow(t, mu - alpha); };
}

PowerSum::PowerSum(std::initializer_list<std::pair<double, double>> terms) {
    for (const auto& [coeff, mu] : terms) add_term(coeff, mu);
}

void PowerSum::add_term(double coeff, double mu) {
    if (mu < 0.0) throw InvalidParameter("PowerSum: exponents must be >= 0");
    terms_.emplace_back(coeff, mu);
}

double PowerSum::operator()(double t) const {
    double sum = 0.0;
    for (const auto& [coeff, mu] : terms_)
        sum += coeff * (mu == 0.0 ? 1.0 : std::pow(t, mu));
    return sum;
}

double PowerSum::caputo(double alpha, double t) const {
    double sum = 0.0;
    for (const auto& [coeff, mu] : terms_) {
        if (mu == 0.0) continue;
        sum += coeff * std::tgamma(mu + 1.0) / std::tgamma(mu + 1.0 - alpha) *
               std::pow(t, mu - alpha);
    }
    return sum;
}

bool PowerSum::constant() const {
    for (const auto& [coeff, mu] : terms_)
        if (mu != 0.0 && coeff != 0.0) return false;
    return true;
}

ScalarFn PowerSum::fn() const {
    return [copy = *this](double t) { return copy(t); };
}

ScalarFn PowerSum::caputo_fn(double alpha) const {
    return [copy = *this, alpha](double t) { return copy.caputo(alpha, t); };
}

ConstantCoeffSpec to_constant_coeff(const BlackScholesSpec& spec) {
    if (!(spec.varrho > 0.0))
        throw InvalidParameter("to_constant_coeff: volatility must be positive");
    if (!(spec.S_l > 0.0) || !(spec.S_r > spec.S_l))
        throw InvalidParameter("to_constant_coeff: need 0 < S_l < S_r");
    if (!(spec.alpha > 0.0) || !(spec.alpha < 1.0))
        throw InvalidParameter("to_constant_coeff: alpha must lie in (0,1)");

    ConstantCoeffSpec out;
    out.alpha = spec.alpha;
    out.a = 0.5 * spec.varrho * spec.varrho;
    out.b = spec.r - out.a - spec.D;
    out.c = spec.r;
    out.x_l = std::log(spec.S_l);
    out.x_r = std::log(spec.S_r);
    out.T = spec.T;
    out.initial = [payoff = spec.payoff](double x) { return payoff(std::exp(x)); };
    out.p = [P = spec.rebate_lower, T = spec.T](double t) { return P(T - t); };
    out.q = [Q = spec.rebate_upper, T = spec.T](double t) { return Q(T - t); };
    out.caputo_p = spec.caputo_p;
    out.caputo_q = spec.caputo_q;
    return out;
}

namespace {

bool looks_constant(const ScalarFn& fn, double T) {
    const double ref = fn(0.0);
    double scale = std::fabs(ref);
    for (double t : {T / 3.0, 0.5 * T, T}) {
        const double v = fn(t);
        scale = std::max(scale, std::fabs(v));
        if (std::fabs(v - ref) > 1e-14 * std::max(1.0, scale)) return false;
    }
    return true;
}

} // namespace

HomogenizedSpec homogenize(const ConstantCoeffSpec& spec, ScalarFn caputo_p,
                           ScalarFn caputo_q) {
    const double width = spec.x_r - spec.x_l;
    if (!(width > 0.0)) throw InvalidParameter("homogenize: empty domain");

    const bool p_const = looks_constant(spec.p, spec.T);
    const bool q_const = looks_constant(spec.q, spec.T);
    if (!caputo_p) {
        if (!p_const)
            throw MissingCaputo("homogenize: non-constant lower boundary needs an "
                                "analytic fractional derivative");
        caputo_p = [](double) { return 0.0; };
    }
    if (!caputo_q) {
        if (!q_const)
            throw MissingCaputo("homogenize: non-constant upper boundary needs an "
                                "analytic fractional derivative");
        caputo_q = [](double) { return 0.0; };
    }

    HomogenizedSpec out;
    out.alpha = spec.alpha;
    out.a = spec.a;
    out.b = spec.b;
    out.c = spec.c;
    out.x_l = spec.x_l;
    out.x_r = spec.x_r;
    out.T = spec.T;

    const double x_l = spec.x_l;
    out.lift = [p = spec.p, q = spec.q, width, x_l](double x, double t) {
        return (q(t) - p(t)) / width * (x - x_l) + p(t);
    };
    out.phi = [initial = spec.initial, lift = out.lift](double x) {
        return initial(x) - lift(x, 0.0);
    };
    out.f = [p = spec.p, q = spec.q, cp = caputo_p, cq = caputo_q, b = spec.b,
             c = spec.c, width, x_l, lift = out.lift](double x, double t) {
        const double caputo_z = (cq(t) - cp(t)) / width * (x - x_l) + cp(t);
        return b * (q(t) - p(t)) / width - c * lift(x, t) - caputo_z;
    };

    const double scale = std::max({1.0, std::fabs(spec.initial(spec.x_l)),
                                   std::fabs(spec.initial(spec.x_r))});
    if (std::fabs(out.phi(spec.x_l)) > 1e-12 * scale ||
        std::fabs(out.phi(spec.x_r)) > 1e-12 * scale)
        throw InvalidParameter("homogenize: initial datum incompatible with the "
                               "boundary data at t = 0");
    return out;
}

HomogenizedSpec homogenize(const ConstantCoeffSpec& spec) {
    return homogenize(spec, spec.caputo_p, spec.caputo_q);
}

HomogenizedSpec example1(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw InvalidParameter("example1: alpha must lie in (0,1)");
    HomogenizedSpec spec;
    spec.alpha = alpha;
    spec.a = 0.5;
    spec.b = -0.45;
    spec.c = 0.05;
    spec.x_l = 0.0;
    spec.x_r = 1.0;
    spec.T = 1.0;

    auto shape = [](double x) {
        const double w = x * (1.0 - x);
        return w * w * w;
    };
    auto shape_dx = [](double x) {
        const double w = x * (1.0 - x);
        return 3.0 * w * w * (1.0 - 2.0 * x);
    };
    auto shape_dxx = [](double x) {
        const double w = x * (1.0 - x);
        const double wp = 1.0 - 2.0 * x;
        return 6.0 * w * wp * wp - 6.0 * w * w;
    };

    spec.phi = shape;
    const double a = spec.a, b = spec.b, c = spec.c;
    const double g2ma = std::tgamma(2.0 - alpha);
    const double gap1 = std::tgamma(alpha + 1.0);
    spec.f = [=](double x, double t) {
        const double temporal = std::pow(t, alpha) + t + 1.0;
        const double caputo_temporal = std::pow(t, 1.0 - alpha) / g2ma + gap1;
        return shape(x) * caputo_temporal -
               (a * shape_dxx(x) + b * shape_dx(x) - c * shape(x)) * temporal;
    };
    spec.exact = [=](double x, double t) {
        return shape(x) * (std::pow(t, alpha) + t + 1.0);
    };
    return spec;
}

HomogenizedSpec example2(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw InvalidParameter("example2: alpha must lie in (0,1)");
    HomogenizedSpec spec;
    spec.alpha = alpha;
    spec.a = 0.5;
    spec.b = 0.5;
    spec.c = 0.05;
    spec.x_l = 0.0;
    spec.x_r = 1.0;
    spec.T = 1.0;
    spec.phi = [](double x) { return x * x * x + x * x - 2.0 * x; };
    const double b = spec.b, c = spec.c;
    const double g2ma = std::tgamma(2.0 - alpha);
    const double g3ma = std::tgamma(3.0 - alpha);
    spec.f = [=](double x, double t) {
        const double tp1 = (t + 1.0) * (t + 1.0);
        const double caputo_sq =
            std::pow(t, 1.0 - alpha) / g2ma + std::pow(t, 2.0 - alpha) / g3ma;
        return (2.0 * b - c - 2.0 * c * x) * tp1 - (4.0 * x + 2.0) * caputo_sq;
    };
    spec.lift = [](double x, double t) {
        return (2.0 * x + 1.0) * (t + 1.0) * (t + 1.0);
    };
    return spec;
}

BlackScholesSpec example2_black_scholes(double alpha) {
    BlackScholesSpec spec;
    spec.alpha = alpha;
    // ln S runs over (0, 1)
    spec.S_l = 1.0;
    spec.S_r = std::exp(1.0);
    spec.T = 1.0;
    spec.r = 1.0;
    spec.D = 0.0;
    spec.varrho = 1.0;
    spec.payoff = [](double S) {
        const double x = std::log(S);
        return x * x * x + x * x + 1.0;
    };
    spec.rebate_lower = [T = spec.T](double zeta) {
        const double v = T - zeta + 1.0;
        return v * v;
    };
    spec.rebate_upper = [T = spec.T](double zeta) {
        const double v = T - zeta + 1.0;
        return 3.0 * v * v;
    };
    // time-reversed rebates are (t+1)^2 and 3(t+1)^2
    const PowerSum reversed{{1.0, 0.0}, {2.0, 1.0}, {1.0, 2.0}};
    spec.caputo_p = reversed.caputo_fn(alpha);
    spec.caputo_q = [inner = reversed.caputo_fn(alpha)](double t) {
        return 3.0 * inner(t);
    };
    return spec;
}

} // namespace tfbs
