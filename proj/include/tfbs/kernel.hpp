#pragma once

#include <cmath>

namespace tfbs {

/// Power kernel omega_beta(t) = t^(beta-1) / Gamma(beta), t > 0.
inline double omega_weight(double beta, double t) {
    return std::pow(t, beta - 1.0) / std::tgamma(beta);
}

inline long double omega_weight_l(long double beta, long double t) {
    return powl(t, beta - 1.0L) / tgammal(beta);
}

/// Kernel of the fractional derivative of order alpha: omega_{1-alpha}.
inline double caputo_kernel(double alpha, double t) {
    return omega_weight(1.0 - alpha, t);
}

inline long double caputo_kernel_l(long double alpha, long double t) {
    return omega_weight_l(1.0L - alpha, t);
}

} // namespace tfbs
