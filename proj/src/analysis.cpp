#include "tfbs/analysis.hpp"

#include "tfbs/errors.hpp"
#include "tfbs/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace tfbs {

double l2_error_max(const SolutionGrid& grid, const FieldFn& exact) {
    if (!exact) throw InvalidParameter("l2_error_max: no exact solution supplied");
    const std::size_t N = grid.tmesh.levels();
    const std::size_t m = grid.smesh.interior();
    double worst = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
        const auto u = grid.level(n);
        const double t = grid.tmesh.t[n];
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double diff = exact(grid.smesh.x[i + 1], t) - u[i];
            acc += diff * diff;
        }
        worst = std::max(worst, std::sqrt(grid.smesh.h * acc));
    }
    return worst;
}

double self_reference_error(const SolutionGrid& coarse, const SolutionGrid& fine,
                            StudyAxis axis) {
    const double T1 = coarse.tmesh.horizon();
    const double T2 = fine.tmesh.horizon();
    if (std::fabs(T1 - T2) > 1e-12 * std::max(T1, T2))
        throw IncompatibleGrids("self_reference_error: horizons differ");

    const auto uc = coarse.level(coarse.tmesh.levels());
    const auto uf = fine.level(fine.tmesh.levels());
    const std::size_t m = coarse.smesh.interior();

    double acc = 0.0;
    if (axis == StudyAxis::time) {
        if (fine.smesh.M != coarse.smesh.M)
            throw IncompatibleGrids("self_reference_error: spatial grids differ");
        for (std::size_t i = 0; i < m; ++i) {
            const double diff = uf[i] - uc[i];
            acc += diff * diff;
        }
    } else {
        if (fine.smesh.M % coarse.smesh.M != 0)
            throw IncompatibleGrids("self_reference_error: spatial grids do not nest");
        const std::size_t stride = fine.smesh.M / coarse.smesh.M;
        for (std::size_t i = 1; i < coarse.smesh.M; ++i) {
            const double diff = uf[i * stride - 1] - uc[i - 1];
            acc += diff * diff;
        }
    }
    return std::sqrt(coarse.smesh.h * acc);
}

std::vector<ConvergenceRow> convergence_study(const HomogenizedSpec& problem,
                                              std::size_t base_N, std::size_t base_M,
                                              std::size_t doublings, StudyAxis axis,
                                              double gamma, const SolveOptions& options,
                                              std::size_t reference_resolution) {
    const bool has_exact = static_cast<bool>(problem.exact);
    const std::size_t runs = doublings + 1;

    // One compression covers the whole study when built for the finest mesh.
    SOEApproximation shared;
    SolveOptions run_options = options;
    if (options.mode == HistoryMode::fast && !options.shared_soe) {
        std::size_t finest_N = base_N;
        if (axis == StudyAxis::time) {
            finest_N = base_N << doublings;
            if (!has_exact) finest_N = std::max(finest_N, reference_resolution);
        }
        const TemporalMesh finest = graded_mesh(problem.T, finest_N, gamma, problem.alpha);
        shared = build_soe(problem.alpha, options.epsilon,
                           (1.0 - finest.theta) * finest.min_step(), problem.T);
        run_options.shared_soe = &shared;
    }

    std::optional<SolutionGrid> reference;
    if (!has_exact) {
        const std::size_t ref_N =
            axis == StudyAxis::time ? reference_resolution : base_N;
        const std::size_t ref_M =
            axis == StudyAxis::space ? reference_resolution : base_M;
        reference = solve(problem, graded_mesh(problem.T, ref_N, gamma, problem.alpha),
                          uniform_spatial(problem.x_l, problem.x_r, ref_M), run_options);
    }

    std::vector<ConvergenceRow> rows;
    rows.reserve(runs);
    for (std::size_t k = 0; k < runs; ++k) {
        const std::size_t N = axis == StudyAxis::time ? (base_N << k) : base_N;
        const std::size_t M = axis == StudyAxis::space ? (base_M << k) : base_M;
        const SolutionGrid grid =
            solve(problem, graded_mesh(problem.T, N, gamma, problem.alpha),
                  uniform_spatial(problem.x_l, problem.x_r, M), run_options);
        ConvergenceRow row;
        row.resolution = axis == StudyAxis::time ? N : M;
        row.error = has_exact ? l2_error_max(grid, problem.exact)
                              : self_reference_error(grid, *reference, axis);
        if (!rows.empty()) row.rate = std::log2(rows.back().error / row.error);
        rows.push_back(std::move(row));
    }
    return rows;
}

double fitted_order(const std::vector<ConvergenceRow>& rows) {
    if (rows.size() < 2) throw InvalidParameter("fitted_order: need at least two rows");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& row : rows) {
        const double x = std::log2(static_cast<double>(row.resolution));
        const double y = std::log2(row.error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(rows.size());
    return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

TemporalMesh random_ratio_mesh(double T, std::size_t N, double alpha,
                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ratio(0.6, 1.75);
    std::vector<double> tau(N);
    tau[0] = 1.0;
    for (std::size_t k = 1; k < N; ++k) tau[k] = tau[k - 1] / ratio(rng);
    double total = 0.0;
    for (double s : tau) total += s;
    std::vector<double> points(N + 1);
    points[0] = 0.0;
    for (std::size_t k = 0; k < N; ++k) points[k + 1] = points[k] + tau[k] * T / total;
    points[N] = T;
    return mesh_from_points(std::move(points), alpha);
}

namespace {

bool row_monotone_positive(const KernelRow& row) {
    if (!(row.A.back() > 0.0)) return false;
    for (std::size_t j = 0; j + 1 < row.A.size(); ++j)
        if (row.A[j + 1] > row.A[j] * (1.0 + 1e-13)) return false;
    return true;
}

bool row_lower_bound(const KernelRow& row, const TemporalMesh& mesh, double alpha) {
    const std::size_t n = row.n;
    const double g2ma = std::tgamma(2.0 - alpha);
    for (std::size_t k = 1; k <= n; ++k) {
        const double lhs = row.A[n - k];
        const double rhs = 4.0 / 11.0 *
                           (std::pow(mesh.t[n] - mesh.t[k - 1], 1.0 - alpha) -
                            std::pow(mesh.t[n] - mesh.t[k], 1.0 - alpha)) /
                           (mesh.step(k) * g2ma);
        if (lhs < rhs * (1.0 - 1e-12)) return false;
    }
    return true;
}

} // namespace

KernelPropertyReport verify_kernel_properties(double alpha,
                                              const std::vector<TemporalMesh>& meshes,
                                              double epsilon) {
    if (meshes.empty())
        throw InvalidParameter("verify_kernel_properties: no meshes supplied");
    double cutoff = std::numeric_limits<double>::infinity();
    double horizon = 0.0;
    for (const TemporalMesh& mesh : meshes) {
        cutoff = std::min(cutoff, (1.0 - mesh.theta) * mesh.min_step());
        horizon = std::max(horizon, mesh.horizon());
    }
    const SOEApproximation soe = build_soe(alpha, epsilon, cutoff, horizon);

    KernelPropertyReport report;
    report.n_exponentials = soe.size();
    const double agree_tol = 10.0 * epsilon * static_cast<double>(soe.size());

    for (const TemporalMesh& mesh : meshes) {
        const std::size_t N = mesh.levels();
        KernelPropertyReport::MeshResult result;
        result.levels = N;
        result.rho_max = check_m1(mesh).rho_max;
        result.a1_fast = result.a2_fast = true;
        result.a1_direct = result.a2_direct = true;
        result.agreement = result.identity = result.psub = true;

        std::vector<KernelRow> fast_rows, direct_rows;
        fast_rows.reserve(N);
        direct_rows.reserve(N);
        for (std::size_t n = 1; n <= N; ++n) {
            fast_rows.push_back(assemble_fast_kernel_row(mesh, n, alpha, soe));
            direct_rows.push_back(assemble_direct_kernel_row(mesh, n, alpha));
            const KernelRow& fr = fast_rows.back();
            const KernelRow& dr = direct_rows.back();
            result.a2_fast &= row_monotone_positive(fr);
            result.a2_direct &= row_monotone_positive(dr);
            result.a1_fast &= row_lower_bound(fr, mesh, alpha);
            result.a1_direct &= row_lower_bound(dr, mesh, alpha);
            for (std::size_t j = 0; j < n; ++j)
                result.agreement &= std::fabs(fr.A[j] - dr.A[j]) <= agree_tol;
        }

        for (std::size_t n = 1; n <= N; ++n) {
            const std::vector<KernelRow> head(fast_rows.begin(), fast_rows.begin() + n);
            const std::vector<double> P = complementary_kernels(head);
            for (std::size_t k = 1; k <= n; ++k) {
                double sum = 0.0, scale = 0.0;
                for (std::size_t j = k; j <= n; ++j) {
                    const double term = P[n - j] * fast_rows[j - 1].A[j - k];
                    sum += term;
                    scale += std::fabs(term);
                }
                result.identity &= std::fabs(sum - 1.0) <= 1e-12 * std::max(1.0, scale);
            }
            for (int mexp = 0; mexp <= 1; ++mexp) {
                double sum = 0.0;
                for (std::size_t j = 1; j <= n; ++j)
                    sum += P[n - j] *
                           omega_weight(1.0 + (mexp - 1) * alpha, mesh.t[j]);
                const double bound = 2.75 * omega_weight(1.0 + mexp * alpha, mesh.t[n]);
                result.psub &= sum <= bound * (1.0 + 1e-12);
            }
        }
        report.results.push_back(result);
    }
    return report;
}

} // namespace tfbs
