#pragma once

#include <vector>

namespace tfbs {

/// Nodes and weights of a Gauss rule on [-1, 1], kept in extended
/// precision because downstream kernel compressions are certified to
/// absolute tolerances near the double rounding floor.
struct GaussRule {
    std::vector<long double> nodes;   // ascending in (-1, 1)
    std::vector<long double> weights; // positive
};

/// n-point Gauss-Legendre rule (weight 1).
GaussRule gauss_legendre(int n);

/// n-point Gauss-Jacobi rule with weight (1+x)^beta, beta > -1.
/// Used for integrands with an algebraic endpoint factor at x = -1.
GaussRule gauss_jacobi_left(int n, long double beta);

} // namespace tfbs
