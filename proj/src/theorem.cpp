#include "tau3sq/theorem.hpp"

#include <algorithm>
#include <cmath>

#include "tau3sq/oscint.hpp"
#include "tau3sq/special.hpp"

namespace tau3sq::theorem {

namespace {

int64_t box_sum(double x, const std::vector<uint32_t>& table, int64_t limit, Exec exec) {
    int64_t s = arith::isqrt(static_cast<int64_t>(x + 1e-9));
    if (3 * s * s > limit) throw limit_error("divisor tables too small for the box sum");
    return reduce_ordered<int64_t>(exec, 1, s + 1, 8, [&](int64_t lo, int64_t hi) {
        int64_t partial = 0;
        for (int64_t n1 = lo; n1 < hi; ++n1) {
            int64_t a = n1 * n1;
            for (int64_t n2 = 1; n2 <= s; ++n2) {
                int64_t b = a + n2 * n2;
                const uint32_t* t = table.data() + b;
                int64_t inner = 0;
                for (int64_t n3 = 1; n3 <= s; ++n3) inner += t[n3 * n3];
                partial += inner;
            }
        }
        return partial;
    });
}

int64_t ball_direct(double x, const arith::DivisorTables& tables, Exec exec) {
    int64_t xi = static_cast<int64_t>(x + 1e-9);
    if (xi > tables.limit) throw limit_error("divisor tables too small for the ball sum");
    int64_t s = arith::isqrt(xi);
    return reduce_ordered<int64_t>(exec, -s, s + 1, 4, [&](int64_t lo, int64_t hi) {
        int64_t partial = 0;
        for (int64_t n1 = lo; n1 < hi; ++n1) {
            int64_t r1 = xi - n1 * n1;
            int64_t s2 = arith::isqrt(r1);
            for (int64_t n2 = -s2; n2 <= s2; ++n2) {
                int64_t base = n1 * n1 + n2 * n2;
                int64_t s3 = arith::isqrt(xi - base);
                for (int64_t n3 = -s3; n3 <= s3; ++n3) {
                    int64_t n = base + n3 * n3;
                    if (n >= 1) partial += tables.tau3[static_cast<size_t>(n)];
                }
            }
        }
        return partial;
    });
}

int64_t identity_right(double x, const arith::DivisorTables& tables, Exec exec) {
    int64_t xi = static_cast<int64_t>(x + 1e-9);
    if (xi > tables.limit) throw limit_error("divisor tables too small");
    return reduce_ordered<int64_t>(exec, 1, xi + 1, 256, [&](int64_t lo, int64_t hi) {
        int64_t partial = 0;
        for (int64_t n = lo; n < hi; ++n)
            partial += static_cast<int64_t>(tables.tau3[static_cast<size_t>(n)]) *
                       arith::r3_counts(n, arith::R3Mode::all_integers);
        return partial;
    });
}

}  // namespace

int64_t brute_lhs(LhsVariant variant, double x, const arith::DivisorTables& tables, Exec exec) {
    if (x < 1.0) throw precondition_error("x >= 1 required");
    switch (variant) {
        case LhsVariant::tau3_box:
            return box_sum(x, tables.tau3, tables.limit, exec);
        case LhsVariant::tau_box:
            return box_sum(x, tables.tau, tables.limit, exec);
        case LhsVariant::identity15_left:
            return ball_direct(x, tables, exec);
        case LhsVariant::identity15_right:
        case LhsVariant::tau3_ball:
            // ball variant deliberately shares the identity path (one triple
            // loop is enough; the identity itself is tested separately)
            return identity_right(x, tables, exec);
    }
    throw precondition_error("unknown variant");
}

MainTermInputs main_term_inputs(int64_t Q, Exec exec) {
    if (Q < 64) throw precondition_error("singular-series truncation must be >= 64");
    MainTermInputs in;
    in.Q = Q;
    auto terms = special::singular_series_terms(Q, exec);
    for (int ell = 0; ell < 3; ++ell) {
        kahan_csum acc;
        for (int64_t q = 1; q <= Q; ++q)
            acc.add(terms[static_cast<size_t>(ell)][static_cast<size_t>(q)]);
        in.C[ell] = acc.value().real();
    }
    for (int ell = 0; ell < 3; ++ell) {
        auto j = oscint::singular_integral(oscint::IntKind::J, ell);
        auto k = oscint::singular_integral(oscint::IntKind::K, ell);
        in.J[ell] = j.value;
        in.J_err[ell] = j.err_estimate;
        in.K[ell] = k.value;
        in.K_err[ell] = k.err_estimate;
    }
    return in;
}

ComparisonReport predict_main_terms(LhsVariant variant, double x, const MainTermInputs& in) {
    ComparisonReport rep;
    rep.x = x;
    rep.Q = in.Q;
    double L = std::log(x);
    double x32 = std::pow(x, 1.5);
    const double* C = in.C;
    if (variant == LhsVariant::tau3_box || variant == LhsVariant::tau_box) {
        const double* J = in.J;
        rep.t1 = 0.5 * C[0] * J[0] * x32 * L * L;
        rep.t2 = (C[1] * J[0] + C[0] * J[1]) * x32 * L;
        rep.t3 = (C[2] * J[0] + C[1] * J[1] + 0.5 * C[0] * J[2]) * x32;
    } else {
        const double* K = in.K;
        rep.t1 = 4.0 * C[0] * K[0] * x32 * L * L;
        rep.t2 = 8.0 * (C[1] * K[0] + C[0] * K[1]) * x32 * L;
        rep.t3 = 8.0 * (C[2] * K[0] + C[1] * K[1] + 0.5 * C[0] * K[2]) * x32;
    }
    rep.predicted = rep.t1 + rep.t2 + rep.t3;
    return rep;
}

ComparisonReport compare_one(LhsVariant variant, double x, const MainTermInputs& in,
                             const arith::DivisorTables& tables, Exec exec) {
    ComparisonReport rep = predict_main_terms(variant, x, in);
    rep.lhs = brute_lhs(variant, x, tables, exec);
    rep.ratio = (rep.predicted != 0.0) ? static_cast<double>(rep.lhs) / rep.predicted : 0.0;
    return rep;
}

SweepResult compare_sweep(LhsVariant variant, const std::vector<double>& x_list,
                          const MainTermInputs& in, const arith::DivisorTables& tables,
                          Exec exec) {
    if (x_list.empty()) throw precondition_error("x_list must be nonempty");
    SweepResult res;
    for (double x : x_list) res.reports.push_back(compare_one(variant, x, in, tables, exec));
    // least-squares slope of log|ratio - 1| vs log x
    std::vector<double> xs, ys;
    for (auto& r : res.reports) {
        double d = std::abs(r.ratio - 1.0);
        if (d > 0.0) {
            xs.push_back(std::log(r.x));
            ys.push_back(std::log(d));
        }
    }
    if (xs.size() >= 2) {
        double n = static_cast<double>(xs.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        res.ratio_decay_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return res;
}

double tau_variant_constant() {
    auto c = special::fundamental_constants();
    return 4.0 * c.zeta3 / (5.0 * c.zeta5);
}

C5Stabilization c5_stabilize(const std::vector<double>& x_list,
                             const arith::DivisorTables& tables, Exec exec) {
    if (x_list.size() < 3) throw precondition_error("need at least 3 x values");
    C5Stabilization out;
    double c1 = tau_variant_constant();
    for (double x : x_list) {
        auto s = static_cast<double>(brute_lhs(LhsVariant::tau_box, x, tables, exec));
        double x32 = std::pow(x, 1.5);
        out.x.push_back(x);
        out.estimate.push_back((s - c1 * x32 * std::log(x)) / x32);
    }
    for (size_t i = 0; i + 1 < out.estimate.size(); ++i)
        out.successive_deltas.push_back(out.estimate[i + 1] - out.estimate[i]);
    out.shrinking = true;
    for (size_t i = 0; i + 1 < out.successive_deltas.size(); ++i) {
        double decades = std::log10(out.x[i + 2] / out.x[i + 1]);
        double required = std::pow(1.2, decades);
        if (std::abs(out.successive_deltas[i + 1]) * required >
            std::abs(out.successive_deltas[i]))
            out.shrinking = false;
    }
    return out;
}

}  // namespace tau3sq::theorem
