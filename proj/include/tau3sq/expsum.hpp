#pragma once

#include <cstdint>
#include <vector>

#include "tau3sq/common.hpp"

namespace tau3sq::expsum {

// Direct-summation moduli are capped here; the error of compensated complex
// accumulation stays ~q*ulp, far below the q^3-scaled tolerances in use.
inline constexpr int64_t kModulusCap = 1'000'000;

// G(a,b;q) = sum_{d mod q} e((a d^2 + b d)/q), direct O(q) summation.
cplx gauss_sum(int64_t a, int64_t b, int64_t q);

// Closed form for odd q with (a,q)=1:
//   G(a,b;q) = e(-inv4*inva*b^2/q) * (a/q) * eps_q * sqrt(q),
//   eps_q = 1 (q=1 mod 4) or i (q=3 mod 4).
cplx gauss_sum_closed(int64_t a, int64_t b, int64_t q);

// G(a,0;q) for every residue a in one sweep (histogram of d^2 mod q, then a
// DFT row per a).  units_only skips non-invertible a (their slot is 0).
std::vector<cplx> gauss_sum_a_sweep(int64_t q, bool units_only = false);

// S(a,b;c) = sum over units x mod c of e((a x + b xbar)/c)
cplx kloosterman(int64_t a, int64_t b, int64_t c);

// parameters of the character sum C(b1,b2,b3,n,m,v;q); m is signed, absorbing
// the +- in front of the Kloosterman argument
struct CharSumParams {
    int64_t b1 = 0, b2 = 0, b3 = 0;
    int64_t n = 1;
    int64_t m = 0;
    int64_t v = 0;
    int64_t q = 1;
};

// C = sum over units a mod q of
//     e(-abar v/q) G(a,b1;q) G(a,b2;q) G(a,b3;q) S(-abar, m; q/n)
cplx charsum_C_direct(const CharSumParams& p);

// Same value via the multiplicative splitting  q = q1 q2 q3, q3 = q3_sf q3_ff:
// a product of twisted sums at the factor moduli, with the square-free odd
// part further split into twisted_T factors prime by prime.
cplx charsum_C_factored(const CharSumParams& p);

// T(b1,b2,b3,r1,r2m;p) for odd prime p, (p, 2 r1) = 1, evaluated through the
// Gauss-sum reduction:
//   eps_p^3 p^{3/2} sum over units z of (z/p) e(-inv4(4v+b1^2+b2^2+b3^2) zbar/p)
//   * S(-r1 zbar, r2m; p)
cplx twisted_T(int64_t b1, int64_t b2, int64_t b3, int64_t r1, int64_t r2m,
               int64_t v, int64_t p);

// closed form when p | m:  -(C/p) p^2 with C = -inv4(4v+b1^2+b2^2+b3^2),
// zero when p | 4v+sum b^2
cplx twisted_T_closed_pm(int64_t b1, int64_t b2, int64_t b3, int64_t v, int64_t p);

// closed form when p not| m and p | 4v+sum b^2:  eps_p p^{5/2} ((-r1 r2m)/p)
cplx twisted_T_closed_pv(int64_t r1, int64_t r2m, int64_t p);

// ---------------------------------------------------------------------------
// empirical bound survey: max |T|/p^{5/2} (exhaustive for p <= 13, sampled
// beyond) and the Weil ratio |S(a,b;c)| / (tau(c) gcd(a,b,c)^{1/2} c^{1/2})
// ---------------------------------------------------------------------------

struct BoundSurveyReport {
    struct TEntry {
        int64_t p = 0;
        double max_ratio = 0.0;
        int64_t b1 = 0, b2 = 0, b3 = 0, v = 0, r1 = 1, r2m = 0;
        bool exhaustive = false;
    };
    struct WeilEntry {
        int64_t c = 0;
        double max_ratio = 0.0;
        int64_t a = 0, b = 0;
    };
    int64_t prime_max = 0;
    int samples_per_prime = 0;
    uint64_t seed = 0;
    std::vector<TEntry> t_entries;
    double max_t_ratio = 0.0;
    std::vector<WeilEntry> weil_entries;
    double max_weil_ratio = 0.0;
};

BoundSurveyReport bound_survey(int64_t prime_max, int samples_per_prime,
                               uint64_t seed, Exec exec = Exec::parallel);

}  // namespace tau3sq::expsum
