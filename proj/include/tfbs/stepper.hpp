#pragma once

#include "tfbs/caputo.hpp"
#include "tfbs/mesh.hpp"
#include "tfbs/problem.hpp"
#include "tfbs/soe.hpp"
#include "tfbs/spatial.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace tfbs {

enum class HistoryMode { fast, direct };

struct SolveOptions {
    HistoryMode mode = HistoryMode::fast;
    double epsilon = 1e-12; // SOE tolerance (fast mode)
    bool allow_ratio_violation = false;
    // Optional pre-built compression to share across runs; must cover the
    // run (same alpha, delta_t <= (1-theta) min step, horizon >= T).
    const SOEApproximation* shared_soe = nullptr;
};

struct RunInfo {
    HistoryMode mode = HistoryMode::fast;
    double epsilon = 0.0;
    std::size_t n_exponentials = 0;
    double soe_max_error = 0.0;
    double setup_seconds = 0.0;
    double loop_seconds = 0.0;
};

/// Interior solution values over the space-time grid, level-major, with
/// the initial level included. Boundary values are identically zero in
/// the homogenized variables.
struct SolutionGrid {
    TemporalMesh tmesh;
    SpatialMesh smesh;
    std::vector<double> values; // (N+1) * (M-1)
    RunInfo info;

    std::span<const double> level(std::size_t n) const {
        const std::size_t m = smesh.interior();
        return {values.data() + n * m, m};
    }
    std::span<double> level(std::size_t n) {
        const std::size_t m = smesh.interior();
        return {values.data() + n * m, m};
    }
};

/// System matrix of one time level:
/// kernel_diag * H + (1-theta) [c H - (a/h^2 + b^2/(12a)) A - (b/(2h)) S].
/// Strictly diagonally dominant for admissible operators.
TriDiag assemble_system(double kernel_diag, const CompactOperator& op, double c,
                        double theta);

/// Right-hand side with the unknown arranged as u^n:
/// kernel_diag H u^{n-1} - H history
///   - theta [c H - (a/h^2 + b^2/(12a)) A - (b/(2h)) S] u^{n-1}
///   + H f^{n-theta} + fhat^{n-theta},
/// where f_bounds carries the source's analytic boundary values.
std::vector<double> assemble_rhs(double kernel_diag, std::span<const double> history,
                                 std::span<const double> u_prev,
                                 std::span<const double> f_interior,
                                 std::pair<double, double> f_bounds,
                                 const CompactOperator& op, double c, double theta);

/// Tridiagonal elimination without pivoting (valid under the assembly's
/// diagonal dominance); O(M) work.
std::vector<double> thomas_solve(const TriDiag& m, std::span<const double> rhs);

/// March the scheme over the whole grid. Initial values are phi sampled at
/// the interior nodes.
SolutionGrid solve(const HomogenizedSpec& problem, const TemporalMesh& tmesh,
                   const SpatialMesh& smesh, const SolveOptions& options = {});

/// Same, but starting from explicit interior values (used by stability
/// sweeps with random initial states).
SolutionGrid solve_from_initial(const HomogenizedSpec& problem,
                                const TemporalMesh& tmesh, const SpatialMesh& smesh,
                                std::vector<double> u0,
                                const SolveOptions& options = {});

} // namespace tfbs
