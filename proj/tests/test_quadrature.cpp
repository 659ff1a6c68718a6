#include "tfbs/quadrature.hpp"

#include "tfbs/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace tfbs;

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    for (int n : {1, 2, 5, 16, 64}) {
        const GaussRule rule = gauss_legendre(n);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
        // x^(2n-1) integrates to zero by symmetry, x^(2n-2) to 2/(2n-1)
        long double even = 0.0L, odd = 0.0L;
        for (int i = 0; i < n; ++i) {
            even += rule.weights[i] * powl(rule.nodes[i], 2 * n - 2);
            odd += rule.weights[i] * powl(rule.nodes[i], 2 * n - 1);
        }
        CHECK(std::fabs(static_cast<double>(even) - 2.0 / (2 * n - 1)) < 1e-14);
        CHECK(std::fabs(static_cast<double>(odd)) < 1e-14);
    }
}

TEST_CASE("Gauss-Legendre nodes ascend and weights are positive") {
    const GaussRule rule = gauss_legendre(32);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        CHECK(rule.weights[i] > 0.0L);
        if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        CHECK(std::fabs(static_cast<double>(rule.nodes[i])) < 1.0);
    }
}

TEST_CASE("Gauss-Jacobi handles the (1+x)^beta endpoint weight") {
    const double beta = -0.5; // alpha = 0.5 kernel exponent
    const GaussRule rule = gauss_jacobi_left(12, beta);
    // integral of (1+x)^(-1/2) cos(x) on [-1,1]; substituting x = u^2 - 1
    // removes the endpoint singularity for the oracle
    const double reference = oracle::integrate(
        [](double u) { return 2.0 * std::cos(u * u - 1.0); }, 0.0, std::sqrt(2.0),
        1e-14);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * cosl(rule.nodes[i]);
    CHECK(std::fabs(static_cast<double>(acc) - reference) < 1e-12);
}

TEST_CASE("Gauss-Jacobi mass matches the weight-function integral") {
    for (double beta : {-0.9, -0.5, -0.1}) {
        const GaussRule rule = gauss_jacobi_left(8, beta);
        long double mass = 0.0L;
        for (long double w : rule.weights) mass += w;
        // integral of (1+x)^beta over [-1,1] = 2^(beta+1)/(beta+1)
        const double expected = std::pow(2.0, beta + 1.0) / (beta + 1.0);
        CHECK(std::fabs(static_cast<double>(mass) - expected) < 1e-13);
        for (std::size_t i = 1; i < rule.nodes.size(); ++i)
            CHECK(rule.nodes[i] > rule.nodes[i - 1]);
    }
}

TEST_CASE("invalid quadrature parameters are rejected") {
    CHECK_THROWS_AS(gauss_legendre(0), InvalidParameter);
    CHECK_THROWS_AS(gauss_jacobi_left(4, -1.0L), InvalidParameter);
}
