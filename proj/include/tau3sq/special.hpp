#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tau3sq/common.hpp"

namespace tau3sq::special {

// frozen after verification against the series oracles below (see tests)
struct FundamentalConstants {
    double gamma = 0.5772156649015329;    // Euler constant
    double gamma1 = -0.0728158454836767;  // first Stieltjes constant
    double zeta3 = 1.2020569031595943;
    double zeta5 = 1.0369277551433699;
};

FundamentalConstants fundamental_constants();

// Euler-Maclaurin series oracles used to pin the literals
double euler_gamma_oracle(int64_t n);      // error O(n^-6)
double stieltjes_gamma1_oracle(int64_t n); // error O(log n / n^4)
double zeta_oracle(double s, int64_t n);   // error O(n^{-s-5})

// correction polynomials attached to the singular series;
// P_0 = 1 (the ell = 0 series carries no polynomial factor)
double P_ell(int ell, int64_t n, int64_t q);

struct SingularSeriesEstimate {
    int ell = 0;
    int64_t Q = 0;
    double value = 0.0;
    double imag_magnitude = 0.0;  // |Im| of the complex accumulation
    // absolute contributions per dyadic block [1,1],(1,2],(2,4],...,(Q/2,Q]
    std::vector<double> block_magnitudes;
    // signed complex block sums over the same ranges (for tail estimation)
    std::vector<cplx> block_signed;
    double fitted_tail_exponent = 0.0;
    double fit_residual = 0.0;
};

// per-q complex terms of C_ell, q = 1..Q, for all ell at once (shared sweep)
std::array<std::vector<cplx>, 3> singular_series_terms(int64_t Q, Exec exec = Exec::parallel);

SingularSeriesEstimate singular_series_partial(int ell, int64_t Q, Exec exec = Exec::parallel);

// Decay exponent of the tail of C_ell, estimated against a reference
// truncation Q_ref = 8 * max(Q_list):  fit of log|C(Q_ref) - C(Q)| vs log Q.
// The single-block differences |C(2Q) - C(Q)| oscillate through near-zeros
// (the q-terms are signed and sparse), so the multi-block tail is what is
// fitted; see the ledger note on this deviation.
double tail_decay_fit(int ell, const std::vector<int64_t>& Q_list, Exec exec = Exec::parallel);

// same, reusing precomputed terms (Q_ref = terms size - 1)
double tail_decay_fit_from_terms(const std::vector<cplx>& terms,
                                 const std::vector<int64_t>& Q_list,
                                 double* fit_residual = nullptr);

}  // namespace tau3sq::special
