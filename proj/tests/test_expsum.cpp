#include <doctest.h>

#include <cmath>
#include <numeric>

#include "tau3sq/arith.hpp"
#include "tau3sq/expsum.hpp"

using namespace tau3sq;
using namespace tau3sq::expsum;

namespace {

const double kSqrt3 = std::sqrt(3.0);

double cdist(cplx a, cplx b) {
    return std::max(std::abs(a.real() - b.real()), std::abs(a.imag() - b.imag()));
}

// literal-definition oracle for the twisted sum:
//   sum over units z of e(-v zbar/p) G(z,b1) G(z,b2) G(z,b3) S(-r1 zbar, r2m; p)
cplx twisted_T_literal(int64_t b1, int64_t b2, int64_t b3, int64_t r1, int64_t r2m, int64_t v,
                       int64_t p) {
    kahan_csum acc;
    for (int64_t z = 1; z < p; ++z) {
        int64_t zbar = arith::mod_inverse(z, p) % p;
        double frac = static_cast<double>(((p - (zbar * (v % p)) % p) % p)) /
                      static_cast<double>(p);
        cplx term = e_of(frac);
        term *= gauss_sum(z, b1, p) * gauss_sum(z, b2, p) * gauss_sum(z, b3, p);
        term *= kloosterman(-r1 * zbar, r2m, p);
        acc.add(term);
    }
    return acc.value();
}

}  // namespace

TEST_CASE("gauss sum direct") {
    CHECK(cdist(gauss_sum(1, 0, 1), {1.0, 0.0}) < 1e-15);
    CHECK(cdist(gauss_sum(1, 0, 3), {0.0, kSqrt3}) < 1e-14);
    CHECK(cdist(gauss_sum(1, 0, 2), {0.0, 0.0}) < 1e-14);
}

TEST_CASE("gauss sum closed form") {
    CHECK(cdist(gauss_sum_closed(1, 0, 5), {std::sqrt(5.0), 0.0}) < 1e-13);
    CHECK(cdist(gauss_sum_closed(2, 0, 3), {0.0, -kSqrt3}) < 1e-13);
    CHECK(cdist(gauss_sum_closed(1, 1, 3), gauss_sum(1, 1, 3)) < 1e-13);
    CHECK_THROWS_AS(gauss_sum_closed(1, 0, 4), precondition_error);
    CHECK_THROWS_AS(gauss_sum_closed(3, 1, 9), precondition_error);
    // exhaustive agreement on a subrange (the acceptance suite goes to q=99)
    for (int64_t q = 1; q <= 45; q += 2)
        for (int64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            for (int64_t b = -q; b <= q; ++b)
                REQUIRE(cdist(gauss_sum(a, b, q), gauss_sum_closed(a, b, q)) <= 1e-9);
        }
}

TEST_CASE("gauss sweep matches per-a sums") {
    for (int64_t q : {1, 2, 12, 45, 60}) {
        auto sweep = gauss_sum_a_sweep(q);
        for (int64_t a = 0; a < q; ++a) CHECK(cdist(sweep[a], gauss_sum(a, 0, q)) < 1e-11);
    }
}

TEST_CASE("kloosterman sums") {
    CHECK(cdist(kloosterman(0, 0, 1), {1.0, 0.0}) < 1e-15);
    CHECK(cdist(kloosterman(1, 0, 3), {-1.0, 0.0}) < 1e-14);
    CHECK(cdist(kloosterman(1, 1, 3), {-1.0, 0.0}) < 1e-14);
    for (int64_t c = 1; c <= 60; ++c)
        for (int64_t a = 0; a < c; ++a)
            for (int64_t b = 0; b < c; ++b) {
                cplx s = kloosterman(a, b, c);
                REQUIRE(std::abs(s.imag()) <= 1e-9);
                REQUIRE(cdist(s, kloosterman(b, a, c)) <= 1e-9);
            }
}

TEST_CASE("ramanujan sum equals the degenerate kloosterman sum") {
    for (int64_t c = 1; c <= 60; ++c)
        for (int64_t b = 0; b < c; ++b)
            CHECK(std::abs(kloosterman(b, 0, c).real() -
                           static_cast<double>(arith::ramanujan_sum(b, c))) < 1e-9);
}

TEST_CASE("character sum small cases") {
    CharSumParams p;
    p.q = 1;
    CHECK(cdist(charsum_C_direct(p), {1.0, 0.0}) < 1e-14);
    p.q = 2;
    CHECK(std::abs(charsum_C_direct(p)) < 1e-12);
    p.q = 3;  // frozen: the two unit classes cancel exactly
    CHECK(std::abs(charsum_C_direct(p)) < 1e-11);
}

TEST_CASE("character sum factorization") {
    {
        CharSumParams p;
        p.q = 7;
        p.b1 = 2;
        p.b2 = 5;
        p.b3 = 1;
        p.m = 3;
        p.v = 4;
        CHECK(cdist(charsum_C_direct(p), charsum_C_factored(p)) < 1e-9 * 7 * 7 * 7);
    }
    {
        CharSumParams p;
        p.q = 12;
        p.n = 1;
        p.b1 = 1;
        p.m = 1;
        p.v = 2;
        CHECK(std::abs(charsum_C_direct(p) - charsum_C_factored(p)) <= 1e-6 * 12.0 * 12 * 12);
    }
    {
        CharSumParams p;
        p.q = 45;
        p.n = 3;
        p.b1 = 0;
        p.b2 = 1;
        p.b3 = 2;
        p.m = 2;
        p.v = 1;
        CHECK(std::abs(charsum_C_direct(p) - charsum_C_factored(p)) <= 1e-6 * 45.0 * 45 * 45);
    }
    det_rng rng(7);
    for (int i = 0; i < 60; ++i) {
        CharSumParams p;
        p.q = rng.range(1, 60);
        auto divs = arith::divisors(p.q);
        p.n = divs[rng.below(divs.size())];
        p.b1 = rng.range(0, p.q - 1);
        p.b2 = rng.range(0, p.q - 1);
        p.b3 = rng.range(0, p.q - 1);
        p.m = rng.range(-p.q, p.q);
        p.v = rng.range(0, p.q - 1);
        double tol = 1e-6 * std::pow(static_cast<double>(p.q), 3.0);
        REQUIRE(std::abs(charsum_C_direct(p) - charsum_C_factored(p)) <= tol);
        // empirical Proposition 5.1 shape with constant 3
        auto f = arith::factor_for_charsum(p.q, p.n);
        double envelope = 3.0 * std::pow(static_cast<double>(p.q / f.q3_sf), 3.0) *
                          std::pow(static_cast<double>(f.q3_sf), 2.5) /
                          std::sqrt(static_cast<double>(p.n));
        REQUIRE(std::abs(charsum_C_direct(p)) <= envelope);
    }
}

TEST_CASE("twisted sum closed forms and oracle") {
    // all-degenerate point: eps_5^5 p^{5/2} ((-1)/5) = 5^{5/2}
    CHECK(cdist(twisted_T(0, 0, 0, 1, 1, 0, 5), {std::pow(5.0, 2.5), 0.0}) < 1e-9);

    // p | m branch at p = 3, b = (1,1,1), v = 0
    CHECK(cdist(twisted_T(1, 1, 1, 1, 0, 0, 3), twisted_T_closed_pm(1, 1, 1, 0, 3)) < 1e-10);

    // literal-definition oracle across small primes
    for (int64_t p : {3, 5, 7, 11, 13}) {
        det_rng rng(31 + p);
        for (int i = 0; i < 10; ++i) {
            int64_t b1 = rng.range(0, p - 1), b2 = rng.range(0, p - 1), b3 = rng.range(0, p - 1);
            int64_t v = rng.range(0, p - 1), r1 = rng.range(1, p - 1), r2m = rng.range(0, p - 1);
            REQUIRE(cdist(twisted_T(b1, b2, b3, r1, r2m, v, p),
                          twisted_T_literal(b1, b2, b3, r1, r2m, v, p)) < 1e-8);
        }
    }

    // Lemma 9.1 bound with the empirical constant at a sample point
    CHECK(std::abs(twisted_T(1, 2, 0, 2, 3, 1, 7)) <= 3.0 * std::pow(7.0, 2.5));

    // degenerate closed forms, exhaustive at p = 3, 5 (acceptance covers 13)
    for (int64_t p : {3, 5}) {
        int64_t inv4 = arith::mod_inverse(4, p);
        for (int64_t b1 = 0; b1 < p; ++b1)
            for (int64_t b2 = 0; b2 < p; ++b2)
                for (int64_t b3 = 0; b3 < p; ++b3) {
                    for (int64_t v = 0; v < p; ++v)
                        REQUIRE(cdist(twisted_T(b1, b2, b3, 1, 0, v, p),
                                      twisted_T_closed_pm(b1, b2, b3, v, p)) < 1e-6);
                    int64_t s = (b1 * b1 + b2 * b2 + b3 * b3) % p;
                    int64_t v = ((p - s) * inv4) % p;
                    for (int64_t r1 = 1; r1 < p; ++r1)
                        for (int64_t r2m = 1; r2m < p; ++r2m)
                            REQUIRE(cdist(twisted_T(b1, b2, b3, r1, r2m, v, p),
                                          twisted_T_closed_pv(r1, r2m, p)) < 1e-6);
                }
    }

    CHECK_THROWS_AS(twisted_T(0, 0, 0, 1, 1, 0, 9), precondition_error);
    CHECK_THROWS_AS(twisted_T(0, 0, 0, 1, 1, 0, 8), precondition_error);
    CHECK_THROWS_AS(twisted_T(0, 0, 0, 5, 1, 0, 5), precondition_error);
}

TEST_CASE("bound survey") {
    auto rep = bound_survey(13, 100, 0, Exec::parallel);
    CHECK(rep.max_t_ratio <= 3.0);
    CHECK(rep.max_t_ratio > 0.0);
    for (auto& e : rep.t_entries) CHECK(e.exhaustive);
    // Weil ratio at prime moduli sits at most at 1 (up to rounding)
    for (auto& w : rep.weil_entries)
        if (arith::is_prime(w.c)) CHECK(w.max_ratio <= 1.0 + 1e-9);
    // deterministic and execution-policy independent
    auto rep2 = bound_survey(13, 100, 0, Exec::serial);
    CHECK(rep.max_t_ratio == rep2.max_t_ratio);
    CHECK(rep.max_weil_ratio == rep2.max_weil_ratio);
}
