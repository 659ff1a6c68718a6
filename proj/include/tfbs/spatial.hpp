#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tfbs {

/// Tridiagonal matrix acting on the M-1 interior unknowns.
struct TriDiag {
    std::vector<double> sub;  // size M-2
    std::vector<double> diag; // size M-1
    std::vector<double> sup;  // size M-2

    std::size_t size() const { return diag.size(); }
};

/// y = T v.
std::vector<double> tridiag_apply(const TriDiag& T, std::span<const double> v);

/// Compact fourth-order machinery for a constant-coefficient operator
/// a u_xx + b u_x: the averaging matrix H = (1/12)A + (h b/(24a)) S + I,
/// the central-difference matrices A (second difference) and S (first
/// difference), and the boundary weights of the source correction vector.
struct CompactOperator {
    double a = 0.0;
    double b = 0.0;
    double h = 0.0;
    std::size_t M = 0;

    TriDiag H;
    TriDiag A;
    TriDiag S;

    double weight_left = 0.0;  // 1/12 - h b/(24 a)
    double weight_right = 0.0; // 1/12 + h b/(24 a)
};

/// Assemble the operator. Requires a > 0 and, for b != 0, the
/// diagonal-dominance admissibility h < 2a/|b| (throws AdmissibilityError
/// otherwise).
CompactOperator build_operator(double a, double b, double h, std::size_t M);

/// Apply the averaging operator to a grid function with the given
/// boundary values: returns H v plus the boundary contributions weighted
/// by weight_left / weight_right.
std::vector<double> apply_H(const CompactOperator& op, std::span<const double> v,
                            double v_left, double v_right);

/// Randomized Rayleigh-quotient verification of the operator's spectral
/// properties: 5/12 <= w^T H^T H w / w^T w <= 1, and negative
/// semi-definiteness of H^T A + A H and of
/// (a/h^2)(H^T A + A H) + (b/2h)(H^T S + S^T H).
struct MatrixPropertyReport {
    double hth_min = 0.0;
    double hth_max = 0.0;
    double hta_max = 0.0;
    double combo_max = 0.0;
    bool hth_ok = false;
    bool hta_ok = false;
    bool combo_ok = false;

    bool all_ok() const { return hth_ok && hta_ok && combo_ok; }
};

MatrixPropertyReport matrix_property_checks(const CompactOperator& op,
                                            std::size_t n_vectors = 1000,
                                            std::uint64_t seed = 0x5eed5eedULL);

} // namespace tfbs
