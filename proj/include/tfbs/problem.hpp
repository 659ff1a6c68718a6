#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace tfbs {

using ScalarFn = std::function<double(double)>;
using FieldFn = std::function<double(double, double)>; // (x, t)

/// Fractional derivative (order alpha) of t^mu: zero for mu = 0,
/// Gamma(mu+1)/Gamma(mu+1-alpha) t^(mu-alpha) for mu > 0.
/// Throws InvalidParameter for mu < 0.
ScalarFn caputo_of_power(double mu, double alpha);

/// Sum of power terms c_j t^(mu_j), mu_j >= 0 - the class of boundary
/// data whose fractional derivative is available in closed form.
class PowerSum {
public:
    PowerSum() = default;
    PowerSum(std::initializer_list<std::pair<double, double>> terms); // {coeff, mu}

    void add_term(double coeff, double mu);

    double operator()(double t) const;
    double caputo(double alpha, double t) const;
    bool constant() const;

    ScalarFn fn() const;
    ScalarFn caputo_fn(double alpha) const;

private:
    std::vector<std::pair<double, double>> terms_; // (coeff, mu)
};

/// Double-barrier option pricing problem in its original variables:
/// underlying S in (S_l, S_r), backward time, terminal payoff and rebates
/// paid at the barriers. caputo_p/caputo_q, when present, are the
/// fractional derivatives (forward time) of the time-reversed rebates.
struct BlackScholesSpec {
    double alpha = 0.0;
    double S_l = 0.0, S_r = 0.0;
    double T = 0.0;
    double r = 0.0;      // risk-free rate
    double D = 0.0;      // dividend yield
    double varrho = 0.0; // volatility
    ScalarFn payoff;     // R(S)
    ScalarFn rebate_lower, rebate_upper; // P(zeta), Q(zeta)
    ScalarFn caputo_p, caputo_q;         // optional
};

/// Constant-coefficient form after x = ln S and time reversal:
/// D_t^alpha w = a w_xx + b w_x - c w, with a = varrho^2/2, b = r - a - D,
/// c = r.
struct ConstantCoeffSpec {
    double alpha = 0.0;
    double a = 0.0, b = 0.0, c = 0.0;
    double x_l = 0.0, x_r = 0.0;
    double T = 0.0;
    ScalarFn initial; // w(x, 0)
    ScalarFn p, q;    // boundary values in forward time
    ScalarFn caputo_p, caputo_q; // optional analytic fractional derivatives
};

/// Homogenized form with zero boundary values; f absorbs the boundary
/// lift. `lift` is the subtracted plane z(x,t), kept so callers can
/// reconstruct w = u + z; `exact`, when present, is a known solution.
struct HomogenizedSpec {
    double alpha = 0.0;
    double a = 0.0, b = 0.0, c = 0.0;
    double x_l = 0.0, x_r = 0.0;
    double T = 0.0;
    ScalarFn phi;  // u(x, 0)
    FieldFn f;     // source
    FieldFn lift;  // z(x, t); null when the problem was posed directly
    FieldFn exact; // optional
};

ConstantCoeffSpec to_constant_coeff(const BlackScholesSpec& spec);

/// Subtract the linear-in-x boundary lift. The fractional derivatives of
/// the boundary data must be supplied (here or inside `spec`) whenever the
/// boundaries are non-constant; throws MissingCaputo otherwise. Validates
/// that the homogenized initial datum vanishes at both endpoints.
HomogenizedSpec homogenize(const ConstantCoeffSpec& spec);
HomogenizedSpec homogenize(const ConstantCoeffSpec& spec, ScalarFn caputo_p,
                           ScalarFn caputo_q);

/// Built-in problems. example1 is a manufactured problem with a known
/// solution u = x^3 (1-x)^3 (t^alpha + t + 1); example2 is the
/// double-barrier problem with quadratic rebates, posed in homogenized
/// form (no exact solution).
HomogenizedSpec example1(double alpha);
HomogenizedSpec example2(double alpha);

/// The barrier-level data behind example2, used to exercise the
/// transformation chain.
BlackScholesSpec example2_black_scholes(double alpha);

} // namespace tfbs
