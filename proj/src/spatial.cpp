#include "tfbs/spatial.hpp"

#include "tfbs/errors.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace tfbs {

std::vector<double> tridiag_apply(const TriDiag& T, std::span<const double> v) {
    const std::size_t m = T.size();
    if (v.size() != m) throw DimensionMismatch("tridiag_apply: size mismatch");
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
        double acc = T.diag[i] * v[i];
        if (i > 0) acc += T.sub[i - 1] * v[i - 1];
        if (i + 1 < m) acc += T.sup[i] * v[i + 1];
        y[i] = acc;
    }
    return y;
}

CompactOperator build_operator(double a, double b, double h, std::size_t M) {
    if (!(a > 0.0)) throw InvalidParameter("build_operator: a must be positive");
    if (!(h > 0.0)) throw InvalidParameter("build_operator: h must be positive");
    if (M < 4) throw InvalidParameter("build_operator: M must be >= 4");
    if (b != 0.0 && h >= 2.0 * a / std::fabs(b))
        throw AdmissibilityError("build_operator: h >= 2a/|b| breaks the "
                                 "diagonal dominance of the averaging operator");

    CompactOperator op;
    op.a = a;
    op.b = b;
    op.h = h;
    op.M = M;
    const std::size_t m = M - 1;
    const double q = h * b / (24.0 * a);
    op.weight_left = 1.0 / 12.0 - q;
    op.weight_right = 1.0 / 12.0 + q;

    op.A.diag.assign(m, -2.0);
    op.A.sub.assign(m - 1, 1.0);
    op.A.sup.assign(m - 1, 1.0);

    op.S.diag.assign(m, 0.0);
    op.S.sub.assign(m - 1, -1.0);
    op.S.sup.assign(m - 1, 1.0);

    op.H.diag.assign(m, 10.0 / 12.0);
    op.H.sub.assign(m - 1, op.weight_left);
    op.H.sup.assign(m - 1, op.weight_right);
    return op;
}

std::vector<double> apply_H(const CompactOperator& op, std::span<const double> v,
                            double v_left, double v_right) {
    if (v.size() != op.M - 1) throw DimensionMismatch("apply_H: size mismatch");
    std::vector<double> y = tridiag_apply(op.H, v);
    y.front() += op.weight_left * v_left;
    y.back() += op.weight_right * v_right;
    return y;
}

MatrixPropertyReport matrix_property_checks(const CompactOperator& op,
                                            std::size_t n_vectors,
                                            std::uint64_t seed) {
    const std::size_t m = op.M - 1;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    MatrixPropertyReport report;
    report.hth_min = std::numeric_limits<double>::infinity();
    report.hth_max = -std::numeric_limits<double>::infinity();
    report.hta_max = -std::numeric_limits<double>::infinity();
    report.combo_max = -std::numeric_limits<double>::infinity();

    std::vector<double> w(m);
    for (std::size_t trial = 0; trial < n_vectors; ++trial) {
        double norm2 = 0.0;
        for (double& wi : w) {
            wi = gauss(rng);
            norm2 += wi * wi;
        }
        if (norm2 == 0.0) continue;
        const std::vector<double> Hw = tridiag_apply(op.H, w);
        const std::vector<double> Aw = tridiag_apply(op.A, w);
        const std::vector<double> Sw = tridiag_apply(op.S, w);
        double hh = 0.0, ha = 0.0, hs = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            hh += Hw[i] * Hw[i];
            ha += Hw[i] * Aw[i];
            hs += Hw[i] * Sw[i];
        }
        const double rq_hth = hh / norm2;
        const double rq_hta = 2.0 * ha / norm2;
        const double rq_combo =
            (op.a / (op.h * op.h) * 2.0 * ha + op.b / (2.0 * op.h) * 2.0 * hs) / norm2;
        report.hth_min = std::min(report.hth_min, rq_hth);
        report.hth_max = std::max(report.hth_max, rq_hth);
        report.hta_max = std::max(report.hta_max, rq_hta);
        report.combo_max = std::max(report.combo_max, rq_combo);
    }
    report.hth_ok = report.hth_min >= 5.0 / 12.0 - 1e-12 && report.hth_max <= 1.0 + 1e-12;
    report.hta_ok = report.hta_max <= 1e-10;
    report.combo_ok = report.combo_max <= 1e-10;
    return report;
}

} // namespace tfbs
