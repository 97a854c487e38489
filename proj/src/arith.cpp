#include "tau3sq/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tau3sq::arith {

int64_t isqrt(int64_t n) {
    if (n < 0) return -1;
    auto r = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

DivisorTables sieve_divisor_tables(int64_t N, int64_t memory_budget_bytes) {
    if (N < 1) throw limit_error("sieve limit must be >= 1");
    // two uint32 arrays of N+1 entries
    if (N + 1 > memory_budget_bytes / 8)
        throw limit_error("sieve limit exceeds memory budget");

    DivisorTables t;
    t.limit = N;
    t.tau.assign(static_cast<size_t>(N) + 1, 0);
    t.tau3.assign(static_cast<size_t>(N) + 1, 0);
    for (int64_t d = 1; d <= N; ++d)
        for (int64_t m = d; m <= N; m += d) t.tau[static_cast<size_t>(m)] += 1;
    for (int64_t d = 1; d <= N; ++d) {
        const uint32_t* src = t.tau.data();
        uint32_t* dst = t.tau3.data();
        for (int64_t m = d, k = 1; m <= N; m += d, ++k)
            dst[m] += src[k];  // tau3[m] += tau[m/d]
    }
    return t;
}

int64_t r3_counts(int64_t n, R3Mode mode, double box_bound) {
    if (n < 1) throw precondition_error("r3_counts requires n >= 1");
    if (mode == R3Mode::positive_box) {
        int64_t bb = static_cast<int64_t>(box_bound + 1e-9);
        int64_t count = 0;
        for (int64_t n1 = 1; n1 * n1 < n && n1 <= bb; ++n1) {
            for (int64_t n2 = 1; n1 * n1 + n2 * n2 < n && n2 <= bb; ++n2) {
                int64_t rem = n - n1 * n1 - n2 * n2;
                int64_t r = isqrt(rem);
                if (r * r == rem && r >= 1 && r <= bb) ++count;
            }
        }
        return count;
    }
    int64_t count = 0;
    int64_t s = isqrt(n);
    for (int64_t n1 = -s; n1 <= s; ++n1) {
        int64_t rem1 = n - n1 * n1;
        int64_t s2 = isqrt(rem1);
        for (int64_t n2 = -s2; n2 <= s2; ++n2) {
            int64_t rem = rem1 - n2 * n2;
            int64_t r = isqrt(rem);
            if (r * r == rem) count += (r == 0) ? 1 : 2;
        }
    }
    return count;
}

std::vector<int64_t> divisors(int64_t n) {
    std::vector<int64_t> ds;
    for (int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            ds.push_back(d);
            if (d != n / d) ds.push_back(n / d);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

int64_t tau_count(int64_t n) { return static_cast<int64_t>(divisors(n).size()); }

int64_t sigma00(int64_t k, int64_t l) {
    if (k < 1 || l < 1) throw precondition_error("sigma00 requires k,l >= 1");
    int64_t total = 0;
    for (int64_t d1 : divisors(l))
        for (int64_t d2 : divisors(l / d1))
            if (std::gcd(d2, k) == 1) ++total;
    return total;
}

int64_t mod_inverse(int64_t a, int64_t q) {
    if (q < 1) throw precondition_error("modulus must be positive");
    if (q == 1) return 1;
    int64_t a0 = ((a % q) + q) % q;
    // extended Euclid
    int64_t r0 = q, r1 = a0, s0 = 0, s1 = 1;
    while (r1 != 0) {
        int64_t t = r0 / r1;
        r0 -= t * r1;
        std::swap(r0, r1);
        s0 -= t * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw not_invertible_error("gcd(a,q) > 1");
    int64_t inv = ((s0 % q) + q) % q;
    return inv == 0 ? q : inv;
}

int jacobi_symbol(int64_t a, int64_t q) {
    if (q < 1 || q % 2 == 0) throw even_modulus_error("Jacobi symbol needs odd q >= 1");
    a = ((a % q) + q) % q;
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            int64_t r = q % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, q);
        if (a % 4 == 3 && q % 4 == 3) result = -result;
        a %= q;
    }
    return q == 1 ? result : 0;
}

int mobius(int64_t n) {
    int m = 1;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            m = -m;
        }
    }
    if (n > 1) m = -m;
    return m;
}

int64_t ramanujan_sum(int64_t b, int64_t q) {
    if (q < 1) throw precondition_error("modulus must be positive");
    int64_t g = std::gcd(((b % q) + q) % q, q);
    if (g == 0) g = q;  // b == 0 mod q
    int64_t total = 0;
    for (int64_t d : divisors(g)) total += d * mobius(q / d);
    return total;
}

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

std::vector<int64_t> primes_up_to(int64_t n) {
    std::vector<bool> comp(static_cast<size_t>(std::max<int64_t>(n + 1, 2)), false);
    std::vector<int64_t> ps;
    for (int64_t i = 2; i <= n; ++i) {
        if (!comp[static_cast<size_t>(i)]) {
            ps.push_back(i);
            for (int64_t j = i * i; j <= n; j += i) comp[static_cast<size_t>(j)] = true;
        }
    }
    return ps;
}

TriFactorization factor_for_charsum(int64_t q, int64_t n) {
    if (q < 1 || n < 1 || q % n != 0)
        throw precondition_error("factor_for_charsum requires n | q");
    TriFactorization f;
    f.q = q;
    f.n = n;
    auto assign = [&](int64_t p, int64_t pe) {
        if (n % p == 0) {
            if (n % pe == 0)
                f.q1 *= pe;
            else
                f.q2 *= pe;  // p | n but p^e not| n, so e >= 2
        } else {
            f.q3 *= pe;
            if (p == 2 || pe != p)
                f.q3_ff *= pe;
            else
                f.q3_sf *= p;
        }
    };
    int64_t rest = q;
    for (int64_t p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        int64_t pe = 1;
        while (rest % p == 0) {
            rest /= p;
            pe *= p;
        }
        assign(p, pe);
    }
    if (rest > 1) assign(rest, rest);
    return f;
}

std::pair<double, double> divisor_log_sums(int64_t n) {
    if (n < 1) throw precondition_error("divisor_log_sums requires n >= 1");
    kahan_sum s1, s2;
    for (int64_t d : divisors(n)) {
        double ld = std::log(static_cast<double>(d));
        s1.add(ld);
        s2.add(ld * ld);
    }
    return {s1.value(), s2.value()};
}

}  // namespace tau3sq::arith
