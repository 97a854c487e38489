#pragma once

#include <cstdint>
#include <vector>

#include "tau3sq/arith.hpp"
#include "tau3sq/common.hpp"

namespace tau3sq::theorem {

enum class LhsVariant {
    tau3_box,        // sum over 1 <= n1,n2,n3 <= sqrt(x) of tau3(n1^2+n2^2+n3^2)
    tau3_ball,       // sum over 1 <= |n|^2 <= x, n in Z^3 (via the exact identity)
    tau_box,         // tau instead of tau3, same box
    identity15_left,  // ball sum by direct lattice enumeration
    identity15_right  // sum_{n<=x} tau3(n) r3(n)
};

int64_t brute_lhs(LhsVariant variant, double x, const arith::DivisorTables& tables,
                  Exec exec = Exec::parallel);

// archimedean + arithmetic constants feeding the main-term prediction
struct MainTermInputs {
    int64_t Q = 0;           // singular-series truncation
    double C[3] = {0, 0, 0};  // C_0, C_1, C_2
    double J[3] = {0, 0, 0};  // J_0, J_1, J_2 (box) by the beta-quadrature path
    double K[3] = {0, 0, 0};  // K_0, K_1, K_2 (ball)
    double J_err[3] = {0, 0, 0};
    double K_err[3] = {0, 0, 0};
};

MainTermInputs main_term_inputs(int64_t Q, Exec exec = Exec::parallel);

struct ComparisonReport {
    double x = 0.0;
    int64_t lhs = 0;
    double t1 = 0.0, t2 = 0.0, t3 = 0.0;
    double predicted = 0.0;
    double ratio = 0.0;
    int64_t Q = 0;
};

// Main terms of the asymptotic.  The published displays carry an overall
// factor 1/2 too little (their source is the misprinted summation-formula
// main terms); the coefficients below are the corrected ones, pinned by the
// brute-force ratio tests.  Box:
//   (C0 J0 / 2) x^{3/2} log^2 x + (C1 J0 + C0 J1) x^{3/2} log x
//   + (C2 J0 + C1 J1 + C0 J2 / 2) x^{3/2}
// Ball: 4 C0 K0 x^{3/2} log^2 x + 8(C1 K0 + C0 K1) x^{3/2} log x
//   + 8(C2 K0 + C1 K1 + C0 K2 / 2) x^{3/2}
ComparisonReport predict_main_terms(LhsVariant variant, double x, const MainTermInputs& in);

ComparisonReport compare_one(LhsVariant variant, double x, const MainTermInputs& in,
                             const arith::DivisorTables& tables, Exec exec = Exec::parallel);

struct SweepResult {
    std::vector<ComparisonReport> reports;
    double ratio_decay_exponent = 0.0;  // slope of log|ratio-1| vs log x
};

SweepResult compare_sweep(LhsVariant variant, const std::vector<double>& x_list,
                          const MainTermInputs& in, const arith::DivisorTables& tables,
                          Exec exec = Exec::parallel);

struct C5Stabilization {
    std::vector<double> x;
    std::vector<double> estimate;           // (S_tau(x) - c1 x^{3/2} log x)/x^{3/2}
    std::vector<double> successive_deltas;  // estimate[i+1] - estimate[i]
    bool shrinking = false;  // |delta| falls by >= 1.2x per decade of x
};

C5Stabilization c5_stabilize(const std::vector<double>& x_list,
                             const arith::DivisorTables& tables, Exec exec = Exec::parallel);

// leading constant of the tau variant: 4 zeta(3) / (5 zeta(5))
double tau_variant_constant();

}  // namespace tau3sq::theorem
