#include "tau3sq/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tau3sq/arith.hpp"

namespace tau3sq::expsum {

namespace {

int64_t reduce(int64_t a, int64_t q) { return ((a % q) + q) % q; }

std::vector<cplx> phase_table(int64_t q) {
    std::vector<cplx> t(static_cast<size_t>(q));
    for (int64_t k = 0; k < q; ++k)
        t[static_cast<size_t>(k)] = e_of(static_cast<double>(k) / static_cast<double>(q));
    return t;
}

void check_modulus(int64_t q) {
    if (q < 1) throw precondition_error("modulus must be positive");
    if (q > kModulusCap) throw limit_error("modulus exceeds direct-summation cap");
}

cplx eps_q(int64_t q) {
    // q odd: 1 for q = 1 mod 4, i for q = 3 mod 4
    return (q % 4 == 1) ? cplx{1.0, 0.0} : cplx{0.0, 1.0};
}

}  // namespace

cplx gauss_sum(int64_t a, int64_t b, int64_t q) {
    check_modulus(q);
    auto tab = phase_table(q);
    int64_t ar = reduce(a, q), br = reduce(b, q);
    kahan_csum acc;
    for (int64_t d = 0; d < q; ++d) {
        int64_t idx = (ar * ((d * d) % q) + br * d) % q;
        acc.add(tab[static_cast<size_t>(idx)]);
    }
    return acc.value();
}

cplx gauss_sum_closed(int64_t a, int64_t b, int64_t q) {
    check_modulus(q);
    if (q % 2 == 0) throw precondition_error("gauss_sum_closed requires odd q");
    if (std::gcd(reduce(a, q), q) != 1 && q != 1)
        throw precondition_error("gauss_sum_closed requires (a,q)=1");
    if (q == 1) return {1.0, 0.0};
    int64_t inva = arith::mod_inverse(a, q);
    int64_t inv4 = arith::mod_inverse(4, q);
    int64_t br = reduce(b, q);
    int64_t w = (((inv4 * inva) % q) * ((br * br) % q)) % q;
    cplx twist = e_of(-static_cast<double>(w) / static_cast<double>(q));
    double chi = arith::jacobi_symbol(a, q);
    return twist * chi * eps_q(q) * std::sqrt(static_cast<double>(q));
}

std::vector<cplx> gauss_sum_a_sweep(int64_t q, bool units_only) {
    check_modulus(q);
    // histogram of d^2 mod q, then each G(a,0;q) is a weighted DFT row
    std::vector<int32_t> hist(static_cast<size_t>(q), 0);
    for (int64_t d = 0; d < q; ++d) hist[static_cast<size_t>((d * d) % q)] += 1;
    std::vector<int64_t> support;
    for (int64_t r = 0; r < q; ++r)
        if (hist[static_cast<size_t>(r)] != 0) support.push_back(r);
    auto tab = phase_table(q);
    std::vector<cplx> out(static_cast<size_t>(q), cplx{0.0, 0.0});
    for (int64_t a = 0; a < q; ++a) {
        if (units_only && std::gcd(a == 0 ? q : a, q) != 1) continue;
        kahan_csum acc;
        for (int64_t r : support) {
            int64_t idx = (a * r) % q;
            acc.add(tab[static_cast<size_t>(idx)] *
                    static_cast<double>(hist[static_cast<size_t>(r)]));
        }
        out[static_cast<size_t>(a)] = acc.value();
    }
    return out;
}

cplx kloosterman(int64_t a, int64_t b, int64_t c) {
    check_modulus(c);
    if (c == 1) return {1.0, 0.0};
    auto tab = phase_table(c);
    int64_t ar = reduce(a, c), br = reduce(b, c);
    kahan_csum acc;
    for (int64_t x = 1; x <= c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        int64_t xinv = arith::mod_inverse(x, c);
        int64_t idx = (ar * (x % c) + br * xinv) % c;
        acc.add(tab[static_cast<size_t>(idx)]);
    }
    return acc.value();
}

cplx charsum_C_direct(const CharSumParams& p) {
    if (p.q < 1 || p.n < 1 || p.q % p.n != 0)
        throw precondition_error("charsum requires n | q");
    check_modulus(p.q);
    const int64_t q = p.q;
    auto tab = phase_table(q);
    int64_t vr = reduce(p.v, q);
    kahan_csum acc;
    for (int64_t a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        int64_t abar = arith::mod_inverse(a, q) % q;
        cplx term = tab[static_cast<size_t>(reduce(-abar * vr, q))];
        term *= gauss_sum(a, p.b1, q) * gauss_sum(a, p.b2, q) * gauss_sum(a, p.b3, q);
        term *= kloosterman(-abar, p.m, q / p.n);
        acc.add(term);
    }
    return acc.value();
}

namespace {

// sum over units g of modulus Q of
//   e(-gbar v/Q) G(g,b1;Q) G(g,b2;Q) G(g,b3;Q) S(kl_cof * (-gbar), kl_m; K)
// where K | Q (so reducing gbar mod K is consistent)
cplx twisted_block(int64_t b1, int64_t b2, int64_t b3, int64_t v, int64_t Q,
                   int64_t kl_cof, int64_t kl_m, int64_t K) {
    if (Q == 1) return {1.0, 0.0};  // single term, all factors 1 (K=1 forced)
    auto tab = phase_table(Q);
    int64_t vr = reduce(v, Q);
    kahan_csum acc;
    for (int64_t g = 1; g <= Q; ++g) {
        if (std::gcd(g, Q) != 1) continue;
        int64_t gbar = arith::mod_inverse(g, Q) % Q;
        cplx term = tab[static_cast<size_t>(reduce(-gbar * vr, Q))];
        term *= gauss_sum(g, b1, Q) * gauss_sum(g, b2, Q) * gauss_sum(g, b3, Q);
        int64_t kf = reduce(reduce(-gbar, K) * (kl_cof % K), K);
        term *= kloosterman(kf, kl_m, K);
        acc.add(term);
    }
    return acc.value();
}

int64_t inv_sq_times(int64_t m, int64_t x, int64_t mod) {
    // m * inv(x)^2 reduced mod `mod`; mod == 1 returns 0
    if (mod == 1) return 0;
    int64_t ix = arith::mod_inverse(x, mod) % mod;
    return reduce(reduce(m, mod) * ((ix * ix) % mod), mod);
}

}  // namespace

cplx charsum_C_factored(const CharSumParams& p) {
    if (p.q < 1 || p.n < 1 || p.q % p.n != 0)
        throw precondition_error("charsum requires n | q");
    auto f = arith::factor_for_charsum(p.q, p.n);
    const int64_t qp = f.q1 * f.q2;  // q'
    const int64_t qhat = qp / p.n;   // n | q1 q2 by construction
    const int64_t A = f.q3_sf, B = f.q3_ff;

    // C* at modulus q', Kloosterman S(-a1bar q3, m q3bar^2; qhat)
    int64_t cof_star = (qhat == 1) ? 0 : (f.q3 % qhat);
    int64_t m_star = (qhat == 1) ? 0 : inv_sq_times(p.m, f.q3, qhat);
    cplx c_star = twisted_block(p.b1, p.b2, p.b3, p.v, qp, cof_star, m_star, qhat);

    // C2** at the square-full part B: S(-gbar A q', m qhatbar^2 Abar^2; B)
    cplx c_ff{1.0, 0.0};
    if (B > 1) {
        int64_t cof = reduce((A % B) * (qp % B), B);
        int64_t km = inv_sq_times(inv_sq_times(p.m, qhat, B), A, B);
        c_ff = twisted_block(p.b1, p.b2, p.b3, p.v, B, cof, km, B);
    }

    // C1** over the odd square-free part, prime by prime via twisted_T
    cplx c_sf{1.0, 0.0};
    if (A > 1) {
        int64_t rest = A;
        for (int64_t pr = 3; rest > 1; pr += 2) {
            if (rest % pr != 0) continue;
            rest /= pr;
            int64_t pprime = A / pr;  // complementary factor of q3_sf
            int64_t r1 = reduce((qp % pr) * (B % pr) % pr * (pprime % pr), pr);
            int64_t r2m = reduce(p.m, pr);
            r2m = inv_sq_times(r2m, qhat, pr);
            r2m = inv_sq_times(r2m, B, pr);
            r2m = inv_sq_times(r2m, pprime, pr);
            c_sf *= twisted_T(p.b1, p.b2, p.b3, r1, r2m, p.v, pr);
        }
    }
    return c_star * c_ff * c_sf;
}

namespace {

// core of T: eps_p^3 p^{3/2} sum over units z of (z/p) e(-c zbar/p) S(-r1 zbar, r2m; p)
cplx twisted_T_core(int64_t c, int64_t r1, int64_t r2m, int64_t p,
                    const std::vector<cplx>& tab, const std::vector<int64_t>& inv,
                    const std::vector<int>& chi) {
    kahan_csum acc;
    for (int64_t z = 1; z < p; ++z) {
        int64_t zbar = inv[static_cast<size_t>(z)];
        cplx phase = tab[static_cast<size_t>(reduce(-c * zbar, p))];
        // S(-r1 zbar, r2m; p) inline
        kahan_csum kl;
        int64_t u = reduce(-r1 * zbar, p);
        for (int64_t x = 1; x < p; ++x) {
            int64_t idx = (u * x + reduce(r2m, p) * inv[static_cast<size_t>(x)]) % p;
            kl.add(tab[static_cast<size_t>(idx)]);
        }
        acc.add(static_cast<double>(chi[static_cast<size_t>(z)]) * phase * kl.value());
    }
    cplx e3 = (p % 4 == 1) ? cplx{1.0, 0.0} : cplx{0.0, -1.0};  // eps_p^3
    return e3 * std::pow(static_cast<double>(p), 1.5) * acc.value();
}

void check_odd_prime(int64_t p) {
    if (p < 3 || p % 2 == 0 || !arith::is_prime(p))
        throw precondition_error("twisted_T requires an odd prime modulus");
}

struct PrimeTables {
    std::vector<cplx> tab;
    std::vector<int64_t> inv;
    std::vector<int> chi;
    explicit PrimeTables(int64_t p) {
        tab = phase_table(p);
        inv.assign(static_cast<size_t>(p), 0);
        chi.assign(static_cast<size_t>(p), 0);
        for (int64_t z = 1; z < p; ++z) {
            inv[static_cast<size_t>(z)] = arith::mod_inverse(z, p) % p;
            chi[static_cast<size_t>(z)] = arith::jacobi_symbol(z, p);
        }
    }
};

}  // namespace

cplx twisted_T(int64_t b1, int64_t b2, int64_t b3, int64_t r1, int64_t r2m,
               int64_t v, int64_t p) {
    check_odd_prime(p);
    if (reduce(r1, p) == 0) throw precondition_error("twisted_T requires (r1,p)=1");
    PrimeTables t(p);
    int64_t inv4 = arith::mod_inverse(4, p);
    int64_t s = reduce(4 * v + b1 * b1 + b2 * b2 + b3 * b3, p);
    int64_t c = reduce(inv4 * s, p);
    return twisted_T_core(c, reduce(r1, p), reduce(r2m, p), p, t.tab, t.inv, t.chi);
}

cplx twisted_T_closed_pm(int64_t b1, int64_t b2, int64_t b3, int64_t v, int64_t p) {
    check_odd_prime(p);
    int64_t s = reduce(4 * v + b1 * b1 + b2 * b2 + b3 * b3, p);
    if (s == 0) return {0.0, 0.0};
    int64_t inv4 = arith::mod_inverse(4, p);
    int64_t C = reduce(-inv4 * s, p);
    double chi = arith::jacobi_symbol(C, p);
    return {-chi * static_cast<double>(p) * static_cast<double>(p), 0.0};
}

cplx twisted_T_closed_pv(int64_t r1, int64_t r2m, int64_t p) {
    check_odd_prime(p);
    double chi = arith::jacobi_symbol(reduce(-r1 * reduce(r2m, p), p), p);
    return eps_q(p) * chi * std::pow(static_cast<double>(p), 2.5);
}

BoundSurveyReport bound_survey(int64_t prime_max, int samples_per_prime,
                               uint64_t seed, Exec exec) {
    if (prime_max < 3) throw precondition_error("bound_survey requires prime_max >= 3");
    BoundSurveyReport rep;
    rep.prime_max = prime_max;
    rep.samples_per_prime = samples_per_prime;
    rep.seed = seed;

    auto primes = arith::primes_up_to(prime_max);
    std::vector<int64_t> odd_primes;
    for (int64_t p : primes)
        if (p >= 3) odd_primes.push_back(p);

    rep.t_entries.resize(odd_primes.size());
    parallel_for(exec, 0, static_cast<int64_t>(odd_primes.size()), [&](int64_t i) {
        int64_t p = odd_primes[static_cast<size_t>(i)];
        PrimeTables t(p);
        double p52 = std::pow(static_cast<double>(p), 2.5);
        BoundSurveyReport::TEntry ent;
        ent.p = p;
        int64_t inv4 = arith::mod_inverse(4, p);
        if (p <= 13) {
            // T depends on (b1,b2,b3,v) only through c = inv4*(4v + sum b^2);
            // with b = 0 every class c is realized by v = c, so the class
            // sweep is an exhaustive max over the full tuple space.
            ent.exhaustive = true;
            for (int64_t c = 0; c < p; ++c)
                for (int64_t r1 = 1; r1 < p; ++r1)
                    for (int64_t r2m = 0; r2m < p; ++r2m) {
                        double ratio =
                            std::abs(twisted_T_core(c, r1, r2m, p, t.tab, t.inv, t.chi)) / p52;
                        if (ratio > ent.max_ratio) {
                            ent.max_ratio = ratio;
                            ent.b1 = ent.b2 = ent.b3 = 0;
                            ent.v = c;
                            ent.r1 = r1;
                            ent.r2m = r2m;
                        }
                    }
        } else {
            ent.exhaustive = false;
            det_rng rng(splitmix64(seed ^ static_cast<uint64_t>(p)));
            for (int s = 0; s < samples_per_prime; ++s) {
                int64_t b1 = rng.range(0, p - 1), b2 = rng.range(0, p - 1),
                        b3 = rng.range(0, p - 1), v = rng.range(0, p - 1),
                        r1 = rng.range(1, p - 1), r2m = rng.range(0, p - 1);
                int64_t sq = reduce(4 * v + b1 * b1 + b2 * b2 + b3 * b3, p);
                int64_t c = reduce(inv4 * sq, p);
                double ratio =
                    std::abs(twisted_T_core(c, r1, r2m, p, t.tab, t.inv, t.chi)) / p52;
                if (ratio > ent.max_ratio) {
                    ent.max_ratio = ratio;
                    ent.b1 = b1;
                    ent.b2 = b2;
                    ent.b3 = b3;
                    ent.v = v;
                    ent.r1 = r1;
                    ent.r2m = r2m;
                }
            }
        }
        rep.t_entries[static_cast<size_t>(i)] = ent;
    });
    for (auto& e : rep.t_entries) rep.max_t_ratio = std::max(rep.max_t_ratio, e.max_ratio);

    // Weil ratios, exhaustive over all residues for each modulus c <= prime_max
    rep.weil_entries.resize(static_cast<size_t>(prime_max));
    parallel_for(exec, 1, prime_max + 1, [&](int64_t c) {
        auto tab = phase_table(c);
        std::vector<int64_t> inv(static_cast<size_t>(c), -1);
        for (int64_t x = 1; x <= c; ++x)
            if (std::gcd(x, c) == 1) inv[static_cast<size_t>(x % c)] = arith::mod_inverse(x, c) % c;
        double tauc = static_cast<double>(arith::tau_count(c));
        BoundSurveyReport::WeilEntry ent;
        ent.c = c;
        for (int64_t a = 0; a < c; ++a)
            for (int64_t b = 0; b < c; ++b) {
                kahan_csum acc;
                for (int64_t x = 0; x < c; ++x) {
                    if (inv[static_cast<size_t>(x)] < 0) continue;
                    acc.add(tab[static_cast<size_t>((a * x + b * inv[static_cast<size_t>(x)]) % c)]);
                }
                int64_t g = std::gcd(std::gcd(a == 0 ? c : a, b == 0 ? c : b), c);
                double bound = tauc * std::sqrt(static_cast<double>(g)) *
                               std::sqrt(static_cast<double>(c));
                double ratio = std::abs(acc.value()) / bound;
                if (ratio > ent.max_ratio) {
                    ent.max_ratio = ratio;
                    ent.a = a;
                    ent.b = b;
                }
            }
        rep.weil_entries[static_cast<size_t>(c - 1)] = ent;
    });
    for (auto& e : rep.weil_entries) rep.max_weil_ratio = std::max(rep.max_weil_ratio, e.max_ratio);
    return rep;
}

}  // namespace tau3sq::expsum
