#pragma once

#include <cstddef>
#include <vector>

namespace tfbs {

/// Sum-of-exponentials compression of the power kernel
/// omega_{1-alpha}(t) = t^(-alpha)/Gamma(1-alpha) on [delta_t, horizon]:
///
///     | omega_{1-alpha}(t) - sum_l weights[l] * exp(-nodes[l] * t) | <= epsilon
///
/// for every t in the certified interval. Nodes are strictly positive and
/// ascending, weights strictly positive. Immutable after construction and
/// safe to share across threads.
///
/// Construction integrates the Laplace representation
///     t^(-alpha) Gamma(1-alpha)^{-1} =
///         (Gamma(alpha) Gamma(1-alpha))^{-1} int_0^inf e^{-st} s^{alpha-1} ds
/// with a Gauss-Jacobi rule on an initial interval [0, A] (weight s^{alpha-1})
/// and Gauss-Legendre rules on dyadic panels [A 2^j, A 2^{j+1}]. Panel orders
/// come from a Bernstein-ellipse error model; a dense geometric sweep then
/// certifies the result and orders are escalated until the sweep passes.
struct SOEApproximation {
    double alpha = 0.0;
    double epsilon = 0.0;
    double delta_t = 0.0;
    double horizon = 0.0;

    std::vector<double> nodes;   // s^l, ascending, > 0
    std::vector<double> weights; // corresponding positive weights

    // Extended-precision copies; the certification sweep and eval_soe use
    // these because the absolute tolerance can sit below the double
    // rounding floor of the kernel magnitude at t = delta_t.
    std::vector<long double> nodes_ext;
    std::vector<long double> weights_ext;

    double max_error = 0.0; // certified sweep value from construction

    std::size_t size() const { return nodes.size(); }
};

/// Build a certified approximation. Throws InvalidParameter for
/// alpha outside (0,1), epsilon outside (0,1) or delta_t outside
/// (0, horizon); throws CertificationFailure if the dense sweep cannot be
/// driven below epsilon.
SOEApproximation build_soe(double alpha, double epsilon, double delta_t,
                           double horizon);

/// Evaluate sum_l weights[l] e^{-nodes[l] t}. Throws DomainError for
/// t < delta_t, where the approximation is not certified.
double eval_soe(const SOEApproximation& soe, double t);

/// Max of |exact kernel - SOE sum| over n_samples geometrically spaced
/// points of [delta_t, horizon] (endpoints included).
double soe_max_error(const SOEApproximation& soe, std::size_t n_samples);

} // namespace tfbs
