#include "tau3sq/special.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tau3sq/arith.hpp"
#include "tau3sq/expsum.hpp"

namespace tau3sq::special {

FundamentalConstants fundamental_constants() { return {}; }

double euler_gamma_oracle(int64_t n) {
    kahan_sum h;
    for (int64_t k = 1; k <= n; ++k) h.add(1.0 / static_cast<double>(k));
    double nn = static_cast<double>(n);
    return h.value() - std::log(nn) - 0.5 / nn + 1.0 / (12.0 * nn * nn) -
           1.0 / (120.0 * nn * nn * nn * nn);
}

double stieltjes_gamma1_oracle(int64_t n) {
    // gamma_1 = lim [ sum_{k<=n} log k / k - (log n)^2 / 2 ], accelerated by
    // Euler-Maclaurin: subtract f(n)/2 + f'(n)/12 with f = log(x)/x
    kahan_sum s;
    for (int64_t k = 2; k <= n; ++k) {
        double kk = static_cast<double>(k);
        s.add(std::log(kk) / kk);
    }
    double nn = static_cast<double>(n), ln = std::log(nn);
    return s.value() - 0.5 * ln * ln - 0.5 * ln / nn - (1.0 - ln) / (12.0 * nn * nn);
}

double zeta_oracle(double s, int64_t n) {
    kahan_sum acc;
    for (int64_t k = 1; k <= n; ++k) acc.add(std::pow(static_cast<double>(k), -s));
    double nn = static_cast<double>(n);
    acc.add(std::pow(nn, 1.0 - s) / (s - 1.0));
    acc.add(-0.5 * std::pow(nn, -s));
    acc.add(s / 12.0 * std::pow(nn, -s - 1.0));
    acc.add(-s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(nn, -s - 3.0));
    return acc.value();
}

double P_ell(int ell, int64_t n, int64_t q) {
    if (n < 1 || q < 1) throw precondition_error("P_ell requires n,q >= 1");
    if (ell == 0) return 1.0;
    const auto C = fundamental_constants();
    auto [sld, sld2] = arith::divisor_log_sums(n);
    double t = static_cast<double>(arith::tau_count(n));
    double ln = std::log(static_cast<double>(n));
    double lq = std::log(static_cast<double>(q));
    if (ell == 1) return (5.0 / 3.0) * ln - 3.0 * lq + 3.0 * C.gamma - sld / (3.0 * t);
    if (ell == 2)
        return ln * ln - 5.0 * lq * ln + 4.5 * lq * lq + 3.0 * C.gamma * C.gamma -
               3.0 * C.gamma1 + 7.0 * C.gamma * ln - 9.0 * C.gamma * lq +
               ((ln + lq - 5.0 * C.gamma) * sld - 1.5 * sld2) / t;
    throw precondition_error("P_ell defined for ell in {0,1,2}");
}

std::array<std::vector<cplx>, 3> singular_series_terms(int64_t Q, Exec exec) {
    if (Q < 1) throw precondition_error("singular series truncation must be >= 1");
    std::array<std::vector<cplx>, 3> terms;
    for (auto& t : terms) t.assign(static_cast<size_t>(Q) + 1, cplx{0.0, 0.0});

    parallel_for(exec, 1, Q + 1, [&](int64_t q) {
        // U(q) = sum over units a of G(a,0;q)^3
        auto sweep = expsum::gauss_sum_a_sweep(q, /*units_only=*/true);
        kahan_csum uacc;
        for (int64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            cplx g = sweep[static_cast<size_t>(a % q)];
            uacc.add(g * g * g);
        }
        cplx U = uacc.value();
        // S(-abar, 0; q/n) is the Ramanujan sum c_{q/n} at a unit argument,
        // hence independent of a (depends on gcd with the modulus only)
        double q5 = std::pow(static_cast<double>(q), 5.0);
        std::array<kahan_csum, 3> acc;
        for (int64_t n : arith::divisors(q)) {
            auto s_val = static_cast<double>(arith::ramanujan_sum(-1, q / n));
            if (s_val == 0.0) continue;
            double base = static_cast<double>(n) * static_cast<double>(arith::tau_count(n)) * s_val;
            for (int ell = 0; ell < 3; ++ell)
                acc[static_cast<size_t>(ell)].add(base * P_ell(ell, n, q) * U);
        }
        for (int ell = 0; ell < 3; ++ell)
            terms[static_cast<size_t>(ell)][static_cast<size_t>(q)] =
                acc[static_cast<size_t>(ell)].value() / q5;
    });
    return terms;
}

namespace {

SingularSeriesEstimate estimate_from_terms(int ell, const std::vector<cplx>& t) {
    SingularSeriesEstimate est;
    est.ell = ell;
    est.Q = static_cast<int64_t>(t.size()) - 1;
    kahan_csum total;
    for (int64_t q = 1; q <= est.Q; ++q) total.add(t[static_cast<size_t>(q)]);
    cplx v = total.value();
    est.value = v.real();
    est.imag_magnitude = std::abs(v.imag());
    // dyadic blocks [1,1],(1,2],(2,4],...
    for (int64_t lo = 1, hi = 1; lo <= est.Q; lo = hi + 1, hi = 2 * hi) {
        hi = std::min(hi, est.Q);
        kahan_sum mag;
        kahan_csum sgn;
        for (int64_t q = lo; q <= hi; ++q) {
            mag.add(std::abs(t[static_cast<size_t>(q)]));
            sgn.add(t[static_cast<size_t>(q)]);
        }
        est.block_magnitudes.push_back(mag.value());
        est.block_signed.push_back(sgn.value());
        if (hi == est.Q) break;
    }
    // crude self-fit from the trailing blocks (diagnostic; the rigorous tail
    // fit is tail_decay_fit with a larger reference truncation)
    if (est.block_signed.size() >= 4) {
        std::vector<double> xs, ys;
        double hi = static_cast<double>(est.Q);
        cplx tail{0.0, 0.0};
        for (size_t b = est.block_signed.size(); b-- > est.block_signed.size() - 3;) {
            tail += est.block_signed[b];
            double lo = hi / 2;
            if (std::abs(tail) > 0) {
                xs.push_back(std::log(lo));
                ys.push_back(std::log(std::abs(tail)));
            }
            hi = lo;
        }
        if (xs.size() >= 2) {
            double n = static_cast<double>(xs.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (size_t i = 0; i < xs.size(); ++i) {
                sx += xs[i];
                sy += ys[i];
                sxx += xs[i] * xs[i];
                sxy += xs[i] * ys[i];
            }
            est.fitted_tail_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            double a = (sy - est.fitted_tail_exponent * sx) / n, rss = 0;
            for (size_t i = 0; i < xs.size(); ++i) {
                double r = ys[i] - (a + est.fitted_tail_exponent * xs[i]);
                rss += r * r;
            }
            est.fit_residual = std::sqrt(rss / n);
        }
    }
    return est;
}

}  // namespace

SingularSeriesEstimate singular_series_partial(int ell, int64_t Q, Exec exec) {
    if (ell < 0 || ell > 2) throw precondition_error("ell in {0,1,2}");
    auto terms = singular_series_terms(Q, exec);
    return estimate_from_terms(ell, terms[static_cast<size_t>(ell)]);
}

double tail_decay_fit_from_terms(const std::vector<cplx>& terms,
                                 const std::vector<int64_t>& Q_list,
                                 double* fit_residual) {
    if (Q_list.size() < 3) throw precondition_error("need at least 3 truncations");
    int64_t Qref = static_cast<int64_t>(terms.size()) - 1;
    std::vector<double> xs, ys;
    for (int64_t Q : Q_list) {
        if (Q >= Qref) throw precondition_error("Q_list entries must be < reference truncation");
        kahan_csum tail;
        for (int64_t q = Q + 1; q <= Qref; ++q) tail.add(terms[static_cast<size_t>(q)]);
        double mag = std::abs(tail.value());
        if (mag > 0) {
            xs.push_back(std::log(static_cast<double>(Q)));
            ys.push_back(std::log(mag));
        }
    }
    if (xs.size() < 2) throw degenerate_fit_error("all tail blocks vanish");
    double n = static_cast<double>(xs.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (fit_residual) {
        double a = (sy - slope * sx) / n, rss = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
            double r = ys[i] - (a + slope * xs[i]);
            rss += r * r;
        }
        *fit_residual = std::sqrt(rss / n);
    }
    return slope;
}

double tail_decay_fit(int ell, const std::vector<int64_t>& Q_list, Exec exec) {
    if (ell < 0 || ell > 2) throw precondition_error("ell in {0,1,2}");
    int64_t qmax = *std::max_element(Q_list.begin(), Q_list.end());
    auto terms = singular_series_terms(8 * qmax, exec);
    return tail_decay_fit_from_terms(terms[static_cast<size_t>(ell)], Q_list);
}

}  // namespace tau3sq::special
