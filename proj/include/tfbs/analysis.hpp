#pragma once

#include "tfbs/stepper.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tfbs {

enum class StudyAxis { time, space };

struct ConvergenceRow {
    std::size_t resolution = 0; // N (time axis) or M (space axis)
    double error = 0.0;
    std::optional<double> rate; // log2(error_prev / error), absent on first row
};

/// max_{1<=n<=N} sqrt(h sum_i (exact(x_i, t_n) - u_i^n)^2).
double l2_error_max(const SolutionGrid& grid, const FieldFn& exact);

/// Final-time discrete L2 difference between a coarse run and a run that
/// refines it along `axis`. Spatial comparisons restrict the fine solution
/// to the coarse nodes and require the grids to nest.
double self_reference_error(const SolutionGrid& coarse, const SolutionGrid& fine,
                            StudyAxis axis);

/// Errors and observed orders across successive doublings of one axis,
/// the counter-axis held fixed. Problems with a known solution are
/// measured against it; otherwise errors are self-referenced against a
/// dense run at `reference_resolution` along the studied axis.
std::vector<ConvergenceRow> convergence_study(const HomogenizedSpec& problem,
                                              std::size_t base_N, std::size_t base_M,
                                              std::size_t doublings, StudyAxis axis,
                                              double gamma,
                                              const SolveOptions& options = {},
                                              std::size_t reference_resolution = 1024);

/// Least-squares slope of log2(error) against log2(resolution), negated,
/// i.e. the observed convergence order over all rows.
double fitted_order(const std::vector<ConvergenceRow>& rows);

/// Random mesh with step ratios drawn from [0.6, 1.75]; satisfies the
/// step-ratio condition by construction.
TemporalMesh random_ratio_mesh(double T, std::size_t N, double alpha,
                               std::uint64_t seed);

/// Kernel-property sweep over a family of meshes: positivity/monotonicity,
/// the 4/11 lower bound, fast/direct agreement, the complementary-kernel
/// identity and its growth bound.
struct KernelPropertyReport {
    struct MeshResult {
        std::size_t levels = 0;
        double rho_max = 0.0;
        bool a1_fast = false;
        bool a2_fast = false;
        bool a1_direct = false;
        bool a2_direct = false;
        bool agreement = false;
        bool identity = false;
        bool psub = false;

        bool ok() const {
            return a1_fast && a2_fast && a1_direct && a2_direct && agreement &&
                   identity && psub;
        }
    };
    std::vector<MeshResult> results;
    std::size_t n_exponentials = 0;

    bool all_pass() const {
        for (const auto& r : results)
            if (!r.ok()) return false;
        return true;
    }
};

KernelPropertyReport verify_kernel_properties(double alpha,
                                              const std::vector<TemporalMesh>& meshes,
                                              double epsilon);

} // namespace tfbs
