// Command-line front end: solves the homogenized pricing problem on graded
// meshes, runs convergence studies, and exposes the verification sweeps
// (SOE certification, kernel properties, operator spectra).

#include "tfbs/analysis.hpp"
#include "tfbs/errors.hpp"
#include "tfbs/problem.hpp"
#include "tfbs/stepper.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

namespace {

using namespace tfbs;

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9e", v);
    return buf;
}

// Problems are parametric in alpha, so "a problem" is a factory.
using ProblemFactory = std::function<HomogenizedSpec(double)>;

ProblemFactory load_custom_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--problem", "cannot open file " + path);
    nlohmann::json doc = nlohmann::json::parse(in);

    const double a = doc.at("a").get<double>();
    const double b = doc.value("b", 0.0);
    const double c = doc.value("c", 0.0);
    const double x_l = doc.value("x_l", 0.0);
    const double x_r = doc.value("x_r", 1.0);
    const double T = doc.value("T", 1.0);

    auto power_sum = [](const nlohmann::json& terms) {
        PowerSum sum;
        for (const auto& term : terms)
            sum.add_term(term.at(0).get<double>(), term.at(1).get<double>());
        return sum;
    };
    const PowerSum initial =
        doc.contains("initial") ? power_sum(doc["initial"]) : PowerSum{};
    const PowerSum p = doc.contains("p") ? power_sum(doc["p"]) : PowerSum{};
    const PowerSum q = doc.contains("q") ? power_sum(doc["q"]) : PowerSum{};

    // optional separable source terms [coeff, x-power, t-power]
    std::vector<std::array<double, 3>> source;
    if (doc.contains("source"))
        for (const auto& term : doc["source"])
            source.push_back({term.at(0).get<double>(), term.at(1).get<double>(),
                              term.at(2).get<double>()});

    return [=](double alpha) {
        ConstantCoeffSpec cc;
        cc.alpha = alpha;
        cc.a = a;
        cc.b = b;
        cc.c = c;
        cc.x_l = x_l;
        cc.x_r = x_r;
        cc.T = T;
        cc.initial = [initial](double x) { return initial(x); };
        cc.p = p.fn();
        cc.q = q.fn();
        cc.caputo_p = p.caputo_fn(alpha);
        cc.caputo_q = q.caputo_fn(alpha);
        HomogenizedSpec spec = homogenize(cc);
        if (!source.empty()) {
            const FieldFn lifted = spec.f;
            spec.f = [lifted, source](double x, double t) {
                double val = lifted ? lifted(x, t) : 0.0;
                for (const auto& term : source)
                    val += term[0] * (term[1] == 0.0 ? 1.0 : std::pow(x, term[1])) *
                           (term[2] == 0.0 ? 1.0 : std::pow(t, term[2]));
                return val;
            };
        }
        return spec;
    };
}

ProblemFactory make_factory(const std::string& name) {
    if (name == "example1") return [](double alpha) { return example1(alpha); };
    if (name == "example2") return [](double alpha) { return example2(alpha); };
    return load_custom_problem(name);
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw CLI::ValidationError("--output", "cannot open " + path);
    return file;
}

struct CommonOptions {
    std::string problem = "example1";
    double alpha = 0.5;
    double gamma = 0.0; // 0 means default 2/alpha
    double epsilon = 1e-12;
    std::string mode = "fast";
    std::string output;
};

SolveOptions solve_options(const CommonOptions& common) {
    SolveOptions opt;
    opt.mode = common.mode == "direct" ? HistoryMode::direct : HistoryMode::fast;
    opt.epsilon = common.epsilon;
    return opt;
}

void add_common(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--problem", common.problem,
                    "example1, example2 or a JSON problem file");
    cmd->add_option("--alpha", common.alpha, "fractional order in (0,1)")
        ->check(CLI::Range(1e-6, 1.0 - 1e-6));
    cmd->add_option("--gamma", common.gamma, "mesh grading exponent (default 2/alpha)");
    cmd->add_option("--epsilon", common.epsilon, "SOE tolerance (fast mode)");
    cmd->add_option("--mode", common.mode, "history mode: fast or direct")
        ->check(CLI::IsMember({"fast", "direct"}));
    cmd->add_option("-o,--output", common.output, "output path (default stdout)");
}

int run_solve(const CommonOptions& common, std::size_t N, std::size_t M) {
    const ProblemFactory factory = make_factory(common.problem);
    const HomogenizedSpec problem = factory(common.alpha);
    const double gamma = common.gamma > 0.0 ? common.gamma : 2.0 / common.alpha;
    const auto tmesh = graded_mesh(problem.T, N, gamma, common.alpha);
    const auto smesh = uniform_spatial(problem.x_l, problem.x_r, M);
    const SolutionGrid grid = solve(problem, tmesh, smesh, solve_options(common));

    std::ofstream file;
    std::ostream& out = open_output(common.output, file);
    out << "t,x,u\n";
    for (std::size_t n = 0; n <= N; ++n) {
        out << sci(tmesh.t[n]) << ',' << sci(smesh.x_l) << ',' << sci(0.0) << '\n';
        const auto level = grid.level(n);
        for (std::size_t i = 0; i < smesh.interior(); ++i)
            out << sci(tmesh.t[n]) << ',' << sci(smesh.x[i + 1]) << ','
                << sci(level[i]) << '\n';
        out << sci(tmesh.t[n]) << ',' << sci(smesh.x_r) << ',' << sci(0.0) << '\n';
    }
    std::cerr << "solved " << common.problem << " alpha=" << common.alpha
              << " N=" << N << " M=" << M
              << " (exponentials: " << grid.info.n_exponentials << ")\n";
    return 0;
}

int run_convergence(const CommonOptions& common, std::size_t N, std::size_t M,
                    std::size_t doublings, const std::string& axis_name,
                    std::size_t reference) {
    const ProblemFactory factory = make_factory(common.problem);
    const HomogenizedSpec problem = factory(common.alpha);
    const double gamma = common.gamma > 0.0 ? common.gamma : 2.0 / common.alpha;
    const StudyAxis axis = axis_name == "space" ? StudyAxis::space : StudyAxis::time;
    const auto rows = convergence_study(problem, N, M, doublings, axis, gamma,
                                        solve_options(common), reference);
    std::ofstream file;
    std::ostream& out = open_output(common.output, file);
    out << (axis == StudyAxis::time ? "N" : "M") << ",error,rate\n";
    for (const auto& row : rows) {
        out << row.resolution << ',' << sci(row.error) << ',';
        if (row.rate) out << sci(*row.rate);
        out << '\n';
    }
    return 0;
}

int run_verify_soe(double alpha, double epsilon, double delta_t, double horizon,
                   std::size_t samples) {
    try {
        const SOEApproximation soe = build_soe(alpha, epsilon, delta_t, horizon);
        const double err = soe_max_error(soe, samples);
        const bool pass = err <= epsilon && soe.size() <= 2000;
        std::printf("kernel compression alpha=%g epsilon=%.1e delta_t=%.1e: "
                    "terms=%zu max_error=%.3e %s\n",
                    alpha, epsilon, delta_t, soe.size(), err, pass ? "PASS" : "FAIL");
        return pass ? 0 : 1;
    } catch (const CertificationFailure& e) {
        std::printf("kernel compression alpha=%g epsilon=%.1e: FAIL (%s)\n", alpha,
                    epsilon, e.what());
        return 1;
    }
}

int run_verify_kernels(double alpha, double epsilon, std::size_t count,
                       std::size_t max_levels, std::uint64_t seed) {
    std::vector<TemporalMesh> meshes;
    for (double g : {1.0, 2.0, 4.0})
        meshes.push_back(graded_mesh(1.0, max_levels, g, alpha));
    std::mt19937_64 pick(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t N = 4 + pick() % (max_levels - 3);
        meshes.push_back(random_ratio_mesh(1.0, N, alpha, pick()));
    }
    const KernelPropertyReport report = verify_kernel_properties(alpha, meshes, epsilon);
    std::size_t failures = 0;
    for (const auto& r : report.results)
        if (!r.ok()) ++failures;
    std::printf("kernel properties alpha=%g epsilon=%.1e: %zu meshes "
                "(3 graded + %zu random), exponentials=%zu, failures=%zu %s\n",
                alpha, epsilon, report.results.size(), count, report.n_exponentials,
                failures, failures == 0 ? "PASS" : "FAIL");
    for (std::size_t i = 0; i < report.results.size(); ++i) {
        const auto& r = report.results[i];
        if (!r.ok())
            std::printf("  mesh %zu (N=%zu, rho_max=%.3f): a1_fast=%d a2_fast=%d "
                        "a1_direct=%d a2_direct=%d agree=%d identity=%d psub=%d\n",
                        i, r.levels, r.rho_max, r.a1_fast, r.a2_fast, r.a1_direct,
                        r.a2_direct, r.agreement, r.identity, r.psub);
    }
    return failures == 0 ? 0 : 1;
}

int run_verify_matrices(double a, double b, std::size_t M, std::size_t vectors,
                        std::uint64_t seed) {
    const CompactOperator op = build_operator(a, b, 1.0 / static_cast<double>(M), M);
    const MatrixPropertyReport report = matrix_property_checks(op, vectors, seed);
    std::printf("averaging-operator spectra a=%g b=%g M=%zu (%zu vectors):\n", a, b, M,
                vectors);
    std::printf("  H^T H Rayleigh range [%.15f, %.15f] in [5/12, 1]: %s\n",
                report.hth_min, report.hth_max, report.hth_ok ? "PASS" : "FAIL");
    std::printf("  max Rayleigh of H^T A + A H = %.3e <= 0: %s\n", report.hta_max,
                report.hta_ok ? "PASS" : "FAIL");
    std::printf("  max Rayleigh of the advection-diffusion combination = %.3e <= 0: %s\n",
                report.combo_max, report.combo_ok ? "PASS" : "FAIL");
    return report.all_ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fast high-order solver for the time-fractional Black-Scholes "
                 "equation on nonuniform meshes"};
    app.require_subcommand(1);

    CommonOptions common;
    std::size_t N = 64, M = 128, doublings = 4, reference = 1024, samples = 10000;
    std::size_t mesh_count = 100, max_levels = 64, vectors = 1000;
    std::string axis = "time";
    double delta_t = 1e-4, horizon = 1.0;
    double mat_a = 0.5, mat_b = 0.5;
    std::uint64_t seed = 20250810;

    CLI::App* solve_cmd = app.add_subcommand("solve", "solve once, dump t,x,u as CSV");
    add_common(solve_cmd, common);
    solve_cmd->add_option("--N", N, "number of time steps")->required();
    solve_cmd->add_option("--M", M, "number of spatial subintervals")->required();

    CLI::App* conv_cmd =
        app.add_subcommand("convergence", "error/rate table across doublings");
    add_common(conv_cmd, common);
    conv_cmd->add_option("--axis", axis, "time or space")
        ->check(CLI::IsMember({"time", "space"}));
    conv_cmd->add_option("--N", N, "base (time axis) or fixed (space axis) steps")
        ->required();
    conv_cmd->add_option("--M", M, "fixed (time axis) or base (space axis) intervals")
        ->required();
    conv_cmd->add_option("--doublings", doublings, "number of refinements");
    conv_cmd->add_option("--reference", reference,
                         "dense-run resolution for problems without an exact solution");

    CLI::App* soe_cmd =
        app.add_subcommand("verify-soe", "certify the kernel compression");
    soe_cmd->add_option("--alpha", common.alpha)->required();
    soe_cmd->add_option("--epsilon", common.epsilon);
    soe_cmd->add_option("--delta-t", delta_t);
    soe_cmd->add_option("--horizon", horizon);
    soe_cmd->add_option("--samples", samples);

    CLI::App* ker_cmd = app.add_subcommand(
        "verify-kernels", "kernel positivity/monotonicity/bound sweep");
    ker_cmd->add_option("--alpha", common.alpha)->required();
    ker_cmd->add_option("--epsilon", common.epsilon);
    ker_cmd->add_option("--meshes", mesh_count, "number of random meshes");
    ker_cmd->add_option("--max-N", max_levels);
    ker_cmd->add_option("--seed", seed);

    CLI::App* mat_cmd =
        app.add_subcommand("verify-matrices", "averaging-operator spectral checks");
    mat_cmd->add_option("--a", mat_a)->required();
    mat_cmd->add_option("--b", mat_b)->required();
    mat_cmd->add_option("--M", M)->required();
    mat_cmd->add_option("--vectors", vectors);
    mat_cmd->add_option("--seed", seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) return run_solve(common, N, M);
        if (conv_cmd->parsed())
            return run_convergence(common, N, M, doublings, axis, reference);
        if (soe_cmd->parsed())
            return run_verify_soe(common.alpha, common.epsilon, delta_t, horizon,
                                  samples);
        if (ker_cmd->parsed())
            return run_verify_kernels(common.alpha, common.epsilon, mesh_count,
                                      max_levels, seed);
        if (mat_cmd->parsed())
            return run_verify_matrices(mat_a, mat_b, M, vectors, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
