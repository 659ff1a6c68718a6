#include "tfbs/stepper.hpp"

#include "tfbs/errors.hpp"

#include <chrono>
#include <optional>
#include <cmath>

namespace tfbs {

TriDiag assemble_system(double kernel_diag, const CompactOperator& op, double c,
                        double theta) {
    const double coef_h = kernel_diag + (1.0 - theta) * c;
    const double coef_a = -(1.0 - theta) * (op.a / (op.h * op.h) + op.b * op.b / (12.0 * op.a));
    const double coef_s = -(1.0 - theta) * op.b / (2.0 * op.h);
    const std::size_t m = op.M - 1;
    TriDiag sys;
    sys.diag.assign(m, coef_h * (10.0 / 12.0) + coef_a * (-2.0));
    sys.sub.assign(m - 1, coef_h * op.weight_left + coef_a - coef_s);
    sys.sup.assign(m - 1, coef_h * op.weight_right + coef_a + coef_s);
    return sys;
}

std::vector<double> assemble_rhs(double kernel_diag, std::span<const double> history,
                                 std::span<const double> u_prev,
                                 std::span<const double> f_interior,
                                 std::pair<double, double> f_bounds,
                                 const CompactOperator& op, double c, double theta) {
    const std::size_t m = op.M - 1;
    if (history.size() != m || u_prev.size() != m || f_interior.size() != m)
        throw DimensionMismatch("assemble_rhs: size mismatch");

    std::vector<double> averaged(m);
    for (std::size_t i = 0; i < m; ++i)
        averaged[i] = (kernel_diag - theta * c) * u_prev[i] - history[i];

    std::vector<double> rhs = tridiag_apply(op.H, averaged);
    const std::vector<double> au = tridiag_apply(op.A, u_prev);
    const std::vector<double> su = tridiag_apply(op.S, u_prev);
    const std::vector<double> hf = apply_H(op, f_interior, f_bounds.first, f_bounds.second);
    const double coef_a = theta * (op.a / (op.h * op.h) + op.b * op.b / (12.0 * op.a));
    const double coef_s = theta * op.b / (2.0 * op.h);
    for (std::size_t i = 0; i < m; ++i)
        rhs[i] += coef_a * au[i] + coef_s * su[i] + hf[i];
    return rhs;
}

std::vector<double> thomas_solve(const TriDiag& sys, std::span<const double> rhs) {
    const std::size_t m = sys.size();
    if (rhs.size() != m) throw DimensionMismatch("thomas_solve: size mismatch");
    std::vector<double> c_prime(m - 1), x(m);
    double pivot = sys.diag[0];
    if (pivot == 0.0) throw std::runtime_error("thomas_solve: zero pivot");
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < m; ++i) {
        c_prime[i - 1] = sys.sup[i - 1] / pivot;
        pivot = sys.diag[i] - sys.sub[i - 1] * c_prime[i - 1];
        if (pivot == 0.0) throw std::runtime_error("thomas_solve: zero pivot");
        x[i] = (rhs[i] - sys.sub[i - 1] * x[i - 1]) / pivot;
    }
    for (std::size_t i = m - 1; i-- > 0;)
        x[i] -= c_prime[i] * x[i + 1];
    return x;
}

namespace {

void validate_geometry(const HomogenizedSpec& problem, const TemporalMesh& tmesh,
                       const SpatialMesh& smesh) {
    if (std::fabs(problem.alpha - tmesh.alpha) > 1e-14)
        throw InvalidParameter("solve: mesh offset order differs from the problem's");
    const double span = problem.x_r - problem.x_l;
    if (std::fabs(smesh.x_l - problem.x_l) > 1e-12 * span ||
        std::fabs(smesh.x_r - problem.x_r) > 1e-12 * span)
        throw InvalidParameter("solve: spatial mesh does not cover the problem domain");
    if (std::fabs(tmesh.horizon() - problem.T) > 1e-12 * problem.T)
        throw InvalidParameter("solve: temporal mesh does not reach the horizon");
}

SolutionGrid solve_core(const HomogenizedSpec& problem, const TemporalMesh& tmesh,
                        const SpatialMesh& smesh, std::vector<double> u0,
                        const SolveOptions& options) {
    using clock = std::chrono::steady_clock;
    const auto t_setup = clock::now();

    validate_geometry(problem, tmesh, smesh);
    if (!options.allow_ratio_violation && !check_m1(tmesh).ok)
        throw MeshConditionError("solve: step ratio exceeds 7/4 "
                                 "(set allow_ratio_violation to force the run)");

    const std::size_t N = tmesh.levels();
    const std::size_t m = smesh.interior();
    if (u0.size() != m) throw DimensionMismatch("solve: initial data size mismatch");

    const CompactOperator op = build_operator(problem.a, problem.b, smesh.h, smesh.M);
    const double alpha = problem.alpha;
    const double theta = tmesh.theta;

    SolutionGrid grid;
    grid.tmesh = tmesh;
    grid.smesh = smesh;
    grid.values.assign((N + 1) * m, 0.0);
    std::copy(u0.begin(), u0.end(), grid.level(0).begin());
    grid.info.mode = options.mode;
    grid.info.epsilon = options.epsilon;

    const bool fast = options.mode == HistoryMode::fast;
    SOEApproximation soe_local;
    const SOEApproximation* soe = nullptr;
    if (fast && N >= 2) {
        const double cutoff = (1.0 - theta) * tmesh.min_step();
        if (options.shared_soe) {
            soe = options.shared_soe;
            if (std::fabs(soe->alpha - alpha) > 1e-14 ||
                soe->delta_t > cutoff * (1.0 + 1e-12) ||
                soe->horizon < tmesh.horizon() * (1.0 - 1e-12))
                throw InvalidParameter("solve: shared SOE does not cover this run");
        } else {
            soe_local = build_soe(alpha, options.epsilon, cutoff, tmesh.horizon());
            soe = &soe_local;
        }
        if (soe->epsilon > soe_tolerance_bound(alpha, tmesh.horizon()))
            throw ToleranceViolation("solve: SOE tolerance exceeds the "
                                     "kernel-property admissibility bound");
        grid.info.n_exponentials = soe->size();
        grid.info.soe_max_error = soe->max_error;
    }

    std::optional<FastHistory> history_state;
    if (soe) history_state.emplace(tmesh, *soe, m);
    grid.info.setup_seconds = std::chrono::duration<double>(clock::now() - t_setup).count();
    const auto t_loop = clock::now();

    std::vector<double> history(m, 0.0), f_interior(m), grad(m);
    for (std::size_t n = 1; n <= N; ++n) {
        double kernel_diag;
        if (n == 1) {
            kernel_diag = local_coeff_a0(tmesh, 1, alpha);
            std::fill(history.begin(), history.end(), 0.0);
        } else if (fast) {
            const auto u_prev = grid.level(n - 1);
            const auto u_prev2 = grid.level(n - 2);
            for (std::size_t i = 0; i < m; ++i) grad[i] = u_prev[i] - u_prev2[i];
            const double unknown = history_state->begin_step(n, grad, history);
            kernel_diag = local_coeff_a0(tmesh, n, alpha) + unknown;
        } else {
            const KernelRow row = assemble_direct_kernel_row(tmesh, n, alpha);
            kernel_diag = row.A[0];
            std::fill(history.begin(), history.end(), 0.0);
            for (std::size_t k = 1; k + 1 <= n; ++k) {
                const double weight = row.A[n - k];
                const auto uk = grid.level(k);
                const auto ukm = grid.level(k - 1);
                for (std::size_t i = 0; i < m; ++i)
                    history[i] += weight * (uk[i] - ukm[i]);
            }
        }

        const double t_off = tmesh.offset(n);
        for (std::size_t i = 0; i < m; ++i)
            f_interior[i] = problem.f ? problem.f(smesh.x[i + 1], t_off) : 0.0;
        const std::pair<double, double> f_bounds{
            problem.f ? problem.f(smesh.x_l, t_off) : 0.0,
            problem.f ? problem.f(smesh.x_r, t_off) : 0.0};

        const TriDiag sys = assemble_system(kernel_diag, op, problem.c, theta);
        const std::vector<double> rhs =
            assemble_rhs(kernel_diag, history, grid.level(n - 1), f_interior,
                         f_bounds, op, problem.c, theta);
        const std::vector<double> u_next = thomas_solve(sys, rhs);
        for (double v : u_next)
            if (!std::isfinite(v))
                throw NonFiniteSolution("solve: non-finite value at level " +
                                        std::to_string(n));
        std::copy(u_next.begin(), u_next.end(), grid.level(n).begin());

        if (fast && n >= 2) {
            const auto u_prev = grid.level(n - 1);
            for (std::size_t i = 0; i < m; ++i) grad[i] = u_next[i] - u_prev[i];
            history_state->complete_step(grad);
        }
    }
    grid.info.loop_seconds = std::chrono::duration<double>(clock::now() - t_loop).count();
    return grid;
}

} // namespace

SolutionGrid solve(const HomogenizedSpec& problem, const TemporalMesh& tmesh,
                   const SpatialMesh& smesh, const SolveOptions& options) {
    std::vector<double> u0(smesh.interior());
    for (std::size_t i = 0; i < u0.size(); ++i) u0[i] = problem.phi(smesh.x[i + 1]);
    return solve_core(problem, tmesh, smesh, std::move(u0), options);
}

SolutionGrid solve_from_initial(const HomogenizedSpec& problem,
                                const TemporalMesh& tmesh, const SpatialMesh& smesh,
                                std::vector<double> u0, const SolveOptions& options) {
    return solve_core(problem, tmesh, smesh, std::move(u0), options);
}

} // namespace tfbs
