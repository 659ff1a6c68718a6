#pragma once

#include "tfbs/mesh.hpp"
#include "tfbs/soe.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tfbs {

/// Discrete convolution kernel of one time level: the coefficients
/// A_{n-k}^{(n)} multiplying the increments u^k - u^{k-1} in the discrete
/// fractional derivative at t_{n-theta}. A[j] holds A_j^{(n)}, so A[0] is
/// the diagonal weight of the unknown increment.
struct KernelRow {
    enum class Mode { fast, direct };
    std::size_t n = 0;
    std::vector<double> A;
    Mode mode = Mode::fast;
};

/// Local coefficient a_0^{(n)} = ((1-theta) tau_n)^(1-alpha) / (tau_n Gamma(2-alpha)).
double local_coeff_a0(const TemporalMesh& mesh, std::size_t n, double alpha);

/// Exponential moments of one history interval against the base point
/// t_{n-theta}:
///   c^{(k,l)} = (1/tau_k) int_{t_{k-1}}^{t_k} e^{-s^l (t_{n-theta}-s)} ds
///   d^{(k,l)} =          int_{t_{k-1}}^{t_k} e^{-s^l (t_{n-theta}-s)}
///                        * 2(s - t_{k-1/2}) / (tau_k (tau_k + tau_{k+1})) ds
/// evaluated from cancellation-safe closed forms. Both are positive.
struct HistoryCoeffs {
    std::vector<double> c;
    std::vector<double> d;
};
HistoryCoeffs history_coeffs(const TemporalMesh& mesh, std::size_t n, std::size_t k,
                             const SOEApproximation& soe);

/// Scalar closed forms behind history_coeffs (gap is the distance from the
/// base point to the interval's right end, tau1 the following step).
double exp_average(double s, double gap, double tau);
double exp_quadratic_moment(double s, double gap, double tau, double tau1);

/// Upper admissibility bound on the SOE tolerance:
/// min{(7/11) omega_{1-alpha}(T), (theta/(1-alpha)) omega_{1-alpha}(T)}.
/// Below it the kernel positivity/monotonicity guarantees hold.
double soe_tolerance_bound(double alpha, double horizon);

/// SOE-compressed kernel row. Throws ToleranceViolation if the SOE
/// tolerance exceeds soe_tolerance_bound.
KernelRow assemble_fast_kernel_row(const TemporalMesh& mesh, std::size_t n,
                                   double alpha, const SOEApproximation& soe);

/// Classical (uncompressed) row: the same structure with the exponential
/// moments replaced by moments of the exact kernel, integrated with a
/// 64-point Gauss-Legendre rule per subinterval. Serves as the reference
/// for the fast path.
KernelRow assemble_direct_kernel_row(const TemporalMesh& mesh, std::size_t n,
                                     double alpha);

/// Per-node exponential accumulators of the fast history recursion; one
/// instance per solver run, advanced strictly in step order.
class FastHistory {
public:
    FastHistory(const TemporalMesh& mesh, const SOEApproximation& soe,
                std::size_t n_space);

    /// Advance the accumulators to level n (>= 2) using the previous
    /// increment, write the known part of the history sum into `known`,
    /// and return the coefficient of the still-unknown increment u^n - u^{n-1}
    /// (which the stepper folds into the system diagonal).
    double begin_step(std::size_t n, std::span<const double> grad_prev,
                      std::vector<double>& known);

    /// Finalize the accumulators once the solved increment is available.
    void complete_step(std::span<const double> grad_curr);

    std::size_t next_level() const { return expected_; }

private:
    const TemporalMesh* mesh_;
    const SOEApproximation* soe_;
    std::size_t n_space_;
    std::size_t expected_ = 2;
    bool pending_ = false;
    double rho_prev_ = 0.0;
    std::vector<double> accum_; // node-major, accum_[l * n_space_ + i]
    std::vector<double> b_;     // pending b^{(n-1,l)}
};

/// Complementary kernels P_m^{(n)} solving
///   sum_{j=k}^n P_{n-j}^{(n)} A_{j-k}^{(j)} = 1  for k = 1..n,
/// given the rows for levels 1..n. Returns P[m] = P_m^{(n)}.
/// Throws SingularKernel if any diagonal A_0^{(j)} <= 0.
std::vector<double> complementary_kernels(const std::vector<KernelRow>& rows);

} // namespace tfbs
