#pragma once

#include <cstddef>
#include <vector>

namespace tfbs {

/// Nonuniform temporal grid 0 = t_0 < t_1 < ... < t_N = T together with
/// step sizes, local step ratios and the fractional levels
/// t_{n-theta} = theta t_{n-1} + (1-theta) t_n, theta = alpha/2.
/// Immutable after construction.
struct TemporalMesh {
    std::vector<double> t;        // size N+1
    std::vector<double> tau;      // tau[k-1] = t_k - t_{k-1}, k = 1..N
    std::vector<double> rho;      // rho[k-1] = tau_k / tau_{k+1}, k = 1..N-1
    std::vector<double> t_offset; // t_offset[n-1] = t_{n-theta}, n = 1..N
    double alpha = 0.0;
    double theta = 0.0; // alpha / 2

    std::size_t levels() const { return t.empty() ? 0 : t.size() - 1; }
    double horizon() const { return t.back(); }

    // 1-based views matching the usual notation
    double step(std::size_t k) const { return tau[k - 1]; }
    double ratio(std::size_t k) const { return rho[k - 1]; }
    double offset(std::size_t n) const { return t_offset[n - 1]; }
    double min_step() const;
};

/// Graded mesh t_k = T (k/N)^gamma. Requires gamma >= 1, which keeps the
/// steps nondecreasing and hence the step-ratio condition satisfied.
TemporalMesh graded_mesh(double T, std::size_t N, double gamma, double alpha);

/// Wrap user-supplied points (validates strict monotonicity and t_0 = 0
/// only; ratio conditions are reported by the checks below, not enforced).
TemporalMesh mesh_from_points(std::vector<double> points, double alpha);

struct StepRatioCheck {
    double rho_max = 0.0;
    bool ok = true;
};

/// Maximum local step ratio and whether it satisfies rho <= 7/4.
StepRatioCheck check_m1(const TemporalMesh& mesh);

/// Graded-mesh regularity: tau_k <= C_gamma tau max{1, t_k^(1-1/gamma)}
/// truncated at 1, t_k <= C_gamma t_{k-1} and
/// tau_k/t_k <= C_gamma tau_{k-1}/t_{k-1} for k >= 2.
bool check_m2(const TemporalMesh& mesh, double gamma, double C_gamma);

/// Uniform spatial grid on [x_l, x_r] with M subintervals (M >= 4);
/// interior unknowns live at x_1..x_{M-1}.
struct SpatialMesh {
    double x_l = 0.0;
    double x_r = 0.0;
    std::size_t M = 0;
    double h = 0.0;
    std::vector<double> x; // size M+1

    std::size_t interior() const { return M - 1; }
};

SpatialMesh uniform_spatial(double x_l, double x_r, std::size_t M);

} // namespace tfbs
