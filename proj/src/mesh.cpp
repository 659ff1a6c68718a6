#include "tfbs/mesh.hpp"

#include "tfbs/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tfbs {

namespace {

TemporalMesh finalize(std::vector<double> points, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw InvalidParameter("temporal mesh: alpha must lie in (0,1)");
    if (points.size() < 2)
        throw InvalidParameter("temporal mesh: need at least one step");
    if (points.front() != 0.0)
        throw InvalidParameter("temporal mesh: t_0 must be 0");
    for (std::size_t k = 1; k < points.size(); ++k)
        if (!(points[k] > points[k - 1]))
            throw InvalidParameter("temporal mesh: points must increase strictly");

    TemporalMesh mesh;
    mesh.alpha = alpha;
    mesh.theta = 0.5 * alpha;
    mesh.t = std::move(points);
    const std::size_t N = mesh.t.size() - 1;
    mesh.tau.resize(N);
    mesh.t_offset.resize(N);
    for (std::size_t n = 1; n <= N; ++n) {
        mesh.tau[n - 1] = mesh.t[n] - mesh.t[n - 1];
        mesh.t_offset[n - 1] = mesh.theta * mesh.t[n - 1] + (1.0 - mesh.theta) * mesh.t[n];
    }
    mesh.rho.resize(N >= 2 ? N - 1 : 0);
    for (std::size_t k = 1; k + 1 <= N; ++k)
        mesh.rho[k - 1] = mesh.tau[k - 1] / mesh.tau[k];
    return mesh;
}

} // namespace

double TemporalMesh::min_step() const {
    return *std::min_element(tau.begin(), tau.end());
}

TemporalMesh graded_mesh(double T, std::size_t N, double gamma, double alpha) {
    if (!(T > 0.0)) throw InvalidParameter("graded_mesh: T must be positive");
    if (N < 1) throw InvalidParameter("graded_mesh: N must be >= 1");
    if (!(gamma >= 1.0))
        throw InvalidParameter("graded_mesh: gamma < 1 leaves the step-ratio "
                               "condition unverified");
    std::vector<double> points(N + 1);
    points[0] = 0.0;
    points[N] = T;
    for (std::size_t k = 1; k < N; ++k)
        points[k] = T * std::pow(static_cast<double>(k) / static_cast<double>(N), gamma);
    return finalize(std::move(points), alpha);
}

TemporalMesh mesh_from_points(std::vector<double> points, double alpha) {
    return finalize(std::move(points), alpha);
}

StepRatioCheck check_m1(const TemporalMesh& mesh) {
    StepRatioCheck result;
    for (double r : mesh.rho) result.rho_max = std::max(result.rho_max, r);
    result.ok = result.rho_max <= 1.75 * (1.0 + 1e-12);
    return result;
}

bool check_m2(const TemporalMesh& mesh, double gamma, double C_gamma) {
    if (!(C_gamma > 0.0)) throw InvalidParameter("check_m2: C_gamma must be positive");
    const std::size_t N = mesh.levels();
    const double slack = 1.0 + 1e-12;
    double tau_max = mesh.tau[0];
    for (std::size_t k = 1; k + 1 <= N; ++k) tau_max = std::max(tau_max, mesh.tau[k - 1]);
    for (std::size_t k = 1; k <= N; ++k) {
        const double cap = std::min(1.0, std::pow(mesh.t[k], 1.0 - 1.0 / gamma));
        if (mesh.tau[k - 1] > C_gamma * tau_max * cap * slack) return false;
    }
    for (std::size_t k = 2; k <= N; ++k) {
        if (mesh.t[k] > C_gamma * mesh.t[k - 1] * slack) return false;
        const double lhs = mesh.tau[k - 1] / mesh.t[k];
        const double rhs = mesh.tau[k - 2] / mesh.t[k - 1];
        if (lhs > C_gamma * rhs * slack) return false;
    }
    return true;
}

SpatialMesh uniform_spatial(double x_l, double x_r, std::size_t M) {
    if (!(x_r > x_l)) throw InvalidParameter("uniform_spatial: x_r must exceed x_l");
    if (M < 4) throw InvalidParameter("uniform_spatial: M must be >= 4");
    SpatialMesh mesh;
    mesh.x_l = x_l;
    mesh.x_r = x_r;
    mesh.M = M;
    mesh.h = (x_r - x_l) / static_cast<double>(M);
    mesh.x.resize(M + 1);
    for (std::size_t i = 0; i <= M; ++i)
        mesh.x[i] = x_l + static_cast<double>(i) * mesh.h;
    mesh.x[M] = x_r;
    return mesh;
}

} // namespace tfbs
