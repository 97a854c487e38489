#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tau3sq/common.hpp"

namespace tau3sq::arith {

// ---------------------------------------------------------------------------
// divisor-function tables
//
// tau[n] = #divisors of n, tau3[n] = #{(d1,d2,d3): d1*d2*d3 = n}.
// tau is filled by a harmonic sweep, tau3 by one Dirichlet-convolution pass
// (tau3 = tau * 1), so tau3[n] = sum_{d|n} tau[n/d] holds by construction
// and is re-checked exhaustively in the tests.
// ---------------------------------------------------------------------------

struct DivisorTables {
    int64_t limit = 0;
    std::vector<uint32_t> tau;   // index 0 unused
    std::vector<uint32_t> tau3;  // index 0 unused
};

// Throws limit_error when 8*N bytes would exceed memory_budget_bytes.
DivisorTables sieve_divisor_tables(int64_t N,
                                   int64_t memory_budget_bytes = int64_t(6) << 30);

enum class R3Mode { all_integers, positive_box };

// Representation count r3(n) (all of Z^3) or the positive-box variant with
// every coordinate in [1, box_bound].
int64_t r3_counts(int64_t n, R3Mode mode, double box_bound = 0.0);

// sigma_{0,0}(k,l) = sum_{d1|l} sum_{d2 | l/d1, (d2,k)=1} 1
int64_t sigma00(int64_t k, int64_t l);

// multiplicative inverse of a mod q, in [1,q]; throws not_invertible_error
int64_t mod_inverse(int64_t a, int64_t q);

// Jacobi symbol (a/q) for odd q >= 1; throws even_modulus_error
int jacobi_symbol(int64_t a, int64_t q);

// Ramanujan sum c_q(b) = sum over units x mod q of e(bx/q)
//             = sum_{d | gcd(b,q)} d * mu(q/d).
// Agrees with kloosterman(b, 0, q); the tests check this exhaustively.
int64_t ramanujan_sum(int64_t b, int64_t q);

// ---------------------------------------------------------------------------
// the modulus factorization used by the character-sum reciprocity
//
//   q = q1*q2*q3, prime by prime:
//     p^e || q with p^e | n            -> q1   (so q1 | n)
//     p^e || q with p | n, p^e not| n  -> q2   (forces e >= 2: square-full)
//     p not| n                         -> q3
//   q3 = q3_sf * q3_ff with q3_sf odd square-free, 4*q3_ff square-full,
//   gcd(q3_sf, 2*q3_ff) = 1.
// ---------------------------------------------------------------------------

struct TriFactorization {
    int64_t q = 1, n = 1;
    int64_t q1 = 1, q2 = 1, q3 = 1;
    int64_t q3_sf = 1, q3_ff = 1;
};

TriFactorization factor_for_charsum(int64_t q, int64_t n);

// (sum_{d|n} log d, sum_{d|n} (log d)^2), natural log
std::pair<double, double> divisor_log_sums(int64_t n);

// small helpers shared across modules
std::vector<int64_t> divisors(int64_t n);
int64_t tau_count(int64_t n);
int mobius(int64_t n);
bool is_prime(int64_t n);
std::vector<int64_t> primes_up_to(int64_t n);
int64_t isqrt(int64_t n);

}  // namespace tau3sq::arith
