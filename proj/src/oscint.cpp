#include "tau3sq/oscint.hpp"

#include <algorithm>
#include <cmath>

#include "tau3sq/quad.hpp"
#include "tau3sq/special.hpp"

namespace tau3sq::oscint {

namespace {

// asymptotic series of int_1^inf e^{izv^2} dv for large z:
//   (e^{iz}/(2iz)) * sum_k (2k-1)!!/(2iz)^k, truncated at the smallest term
cplx fresnel_tail_series(double z) {
    cplx i2z{0.0, 2.0 * z};
    cplx term{1.0, 0.0};
    kahan_csum acc;
    acc.add(term);
    double prev = 1.0;
    for (int k = 1; k <= 24; ++k) {
        term *= static_cast<double>(2 * k - 1) / i2z;
        double mag = std::abs(term);
        if (mag >= prev) break;
        acc.add(term);
        prev = mag;
        if (mag < 1e-18) break;
    }
    cplx eiz{std::cos(z), std::sin(z)};
    return eiz / i2z * acc.value();
}

cplx fresnel_asymptotic(double beta) {
    // int_0^1 = int_0^infty - int_1^infty, and int_1^infty equals
    // -(e^{iz}/(2iz)) sum_k (2k-1)!!/(2iz)^k by parts
    double z = kTwoPi * beta;
    cplx half_line = 0.5 * std::sqrt(kPi / z) * cplx{std::cos(kPi / 4), std::sin(kPi / 4)};
    return half_line + fresnel_tail_series(z);
}

cplx fresnel_panels(double beta) {
    double z = kTwoPi * std::abs(beta);
    int panels = 2 + static_cast<int>(z / 4.0);
    kahan_csum acc;
    for (int p = 0; p < panels; ++p) {
        double a = static_cast<double>(p) / panels, b = static_cast<double>(p + 1) / panels;
        acc.add(quad::gl_panel([&](double v) { return e_of(beta * v * v); }, a, b, 16));
    }
    return acc.value();
}

}  // namespace

cplx fresnel_unit(double beta) {
    if (beta == 0.0) return {1.0, 0.0};
    double ab = std::abs(beta);
    cplx val = (ab <= kFresnelCrossover) ? fresnel_panels(ab) : fresnel_asymptotic(ab);
    return (beta > 0) ? val : std::conj(val);
}

cplx psi0(double beta, double x) {
    if (x <= 0) throw precondition_error("psi0 requires x > 0");
    return std::sqrt(x) * fresnel_unit(beta * x);
}

namespace {

// exact antiderivatives used for the u -> 0 head and the oracle
double F_log(int ell, double u) {  // int (log u)^ell du
    if (u <= 0.0) return 0.0;
    double L = std::log(u);
    if (ell == 0) return u;
    if (ell == 1) return u * (L - 1.0);
    return u * (L * L - 2.0 * L + 2.0);
}
double G_log(int ell, double u) {  // int u (log u)^ell du
    if (u <= 0.0) return 0.0;
    double L = std::log(u);
    if (ell == 0) return 0.5 * u * u;
    if (ell == 1) return 0.5 * u * u * (L - 0.5);
    return 0.5 * u * u * (L * L - L + 0.5);
}
double H_log(int ell, double u) {  // int sqrt(u) (log u)^ell du
    if (u <= 0.0) return 0.0;
    double L = std::log(u), r = (2.0 / 3.0) * std::pow(u, 1.5);
    if (ell == 0) return r;
    if (ell == 1) return r * (L - 2.0 / 3.0);
    return r * (L * L - (4.0 / 3.0) * L + 8.0 / 9.0);
}

// int_a^b |log u|^ell du (a < b), exact
double abs_log_integral(int ell, double a, double b) {
    if (ell == 0) return b - a;
    double total = 0.0;
    double m = std::min(b, 1.0);
    if (a < m) {
        double piece = F_log(ell, m) - F_log(ell, a);
        total += (ell == 1) ? -piece : piece;  // (log u)^1 < 0 below 1
    }
    if (b > 1.0) total += F_log(ell, b) - F_log(ell, std::max(a, 1.0));
    return total;
}

}  // namespace

namespace {

// int_c^inf (log u)^ell e^{-i omega u} du by repeated integration by parts:
//   sum_j (1/(i omega))^{j+1} f^{(j)}(c) e^{-i omega c},
// f^{(j)}(u) = u^{-j} * (polynomial in log u) via the coefficient recurrence
// c^{j+1}_m = -j c^j_m + (m+1) c^j_{m+1}.  Valid once |omega| c >> 1; the
// terms shrink by ~ j/(|omega| c) so the cutoff below keeps them decaying.
cplx log_window_tail_series(double omega, int ell, double c) {
    double coeff[3] = {0.0, 0.0, 0.0};
    coeff[ell] = 1.0;
    double lc = std::log(c);
    cplx inv_iw = 1.0 / cplx{0.0, omega};
    cplx phase = cplx{std::cos(omega * c), -std::sin(omega * c)};
    cplx pw = inv_iw;
    double cpow = 1.0;
    kahan_csum acc;
    double prev = 1e300;
    for (int j = 0; j < 24; ++j) {
        double fj = (coeff[0] + lc * (coeff[1] + lc * coeff[2])) / cpow;
        cplx term = pw * fj * phase;
        double mag = std::abs(term);
        if (j > ell && mag >= prev) break;
        acc.add(term);
        prev = mag;
        if (mag < 1e-18) break;
        double next[3];
        for (int m = 0; m < 3; ++m)
            next[m] = -static_cast<double>(j) * coeff[m] + (m + 1 < 3 ? (m + 1) * coeff[m + 1] : 0.0);
        for (int m = 0; m < 3; ++m) coeff[m] = next[m];
        pw *= inv_iw;
        cpow *= c;
    }
    return acc.value();
}

}  // namespace

cplx window_transform(double beta, int ell, double lo, double hi) {
    if (!(lo >= 0.0) || !(hi > lo)) throw precondition_error("need 0 <= lo < hi");
    if (ell < 0 || ell > 2) throw precondition_error("ell in {0,1,2}");
    double omega = kTwoPi * beta;
    if (ell == 0) {
        if (std::abs(omega) * (hi - lo) < 1e-10)
            return cplx{hi - lo, 0.0} - cplx{0.0, kPi * beta * (hi * hi - lo * lo)};
        return (e_of(-beta * lo) - e_of(-beta * hi)) / cplx{0.0, omega};
    }
    kahan_csum acc;
    double start = lo;
    constexpr double kDelta = 1e-7;
    if (lo < kDelta) {
        // exact head with e(-beta u) ~ 1 - i omega u; dropped piece is
        // O(omega^2 delta^3 log^2 delta)
        double d = std::min(kDelta, hi);
        acc.add(cplx{F_log(ell, d) - F_log(ell, lo), 0.0});
        acc.add(cplx{0.0, -omega} * (G_log(ell, d) - G_log(ell, lo)));
        start = d;
    }
    if (start >= hi) return acc.value();
    // endpoint series beyond u* = 64/|omega|: quadrature cost stays bounded
    double ustar = hi;
    bool use_series = false;
    if (std::abs(omega) * hi >= 64.0) {
        ustar = std::max(start, 64.0 / std::abs(omega));
        use_series = true;
    }
    double u = start;
    double cap = (beta != 0.0) ? 6.0 / std::abs(omega) : (hi - lo);
    while (u < ustar) {
        double width = std::min(u, cap);  // doubling panels, phase-capped
        double next = std::min(u + width, ustar);
        acc.add(quad::gl_panel(
            [&](double t) {
                double L = std::log(t);
                return (ell == 1 ? L : L * L) * e_of(-beta * t);
            },
            u, next, 16));
        u = next;
    }
    if (use_series && ustar < hi) {
        acc.add(log_window_tail_series(omega, ell, ustar));
        acc.add(-log_window_tail_series(omega, ell, hi));
    }
    return acc.value();
}

namespace {

struct KindConfig {
    double lo, hi;
    double fr_scale;   // Fresnel factor is fresnel_unit(beta * fr_scale)
    bool log_at_zero;  // window starts at u = 0
};

KindConfig kind_config(IntKind kind, double x, double X) {
    switch (kind) {
        case IntKind::J:
            return {0.0, 3.0, 1.0, true};
        case IntKind::K:
            return {0.0, 1.0, 1.0, true};
        case IntKind::I:
        default:
            if (!(X > 1.0) || !(X <= 3.0 * x))
                throw precondition_error("I-kind requires 1 < X <= 3x");
            return {X / 2.0, X, x, false};
    }
}

// mu_j = int_0^inf (log t)^j e^{-it} dt = (d/ds)^j [Gamma(s) e^{-i pi s/2}] at s=1
cplx mu_moment(int j) {
    const double g = special::fundamental_constants().gamma;
    const cplx a{0.0, -kPi / 2.0};
    const cplx ea{0.0, -1.0};
    if (j == 0) return ea;
    cplx b = cplx{-g, 0.0} + a;
    if (j == 1) return b * ea;
    return (b * b + kPi * kPi / 6.0) * ea;
}

// For windows (0, hi] the transform decomposes exactly as
//   W_ell(beta) = (1/omega) sum_j C(ell,j)(-log omega)^{ell-j} mu_j
//               + (i/omega)(log hi)^ell e^{-i omega hi}
//               + O((log omega)^ell / omega^2)
// (the first line is int_0^inf, the boundary term is the leading piece of
// -int_{omega hi}^inf after the t = omega u substitution)
cplx window_tail_model(double beta, int ell, double hi) {
    double omega = kTwoPi * beta;
    double lw = std::log(omega);
    static const double binom[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
    cplx poly{0.0, 0.0};
    for (int j = 0; j <= ell; ++j)
        poly += binom[ell][j] * std::pow(-lw, ell - j) * mu_moment(j);
    double lh = std::log(hi);
    double lhp = (ell == 0) ? 1.0 : std::pow(lh, ell);
    cplx boundary = cplx{0.0, lhp} * cplx{std::cos(omega * hi), -std::sin(omega * hi)};
    return (poly + boundary) / omega;
}

double fresnel_env(double z_beta) {
    if (z_beta <= 0.25) return 1.0;
    return std::min(1.0, 0.3536 / std::sqrt(z_beta) + 0.08 / z_beta);
}

double window_env(double beta, int ell, double lo, double hi) {
    double i_abs = abs_log_integral(ell, lo, hi);
    if (beta <= 0.0) return i_abs;
    double omega = kTwoPi * beta;
    double Lw = std::log(2.0 + omega);
    double Lb = 1.0 + std::abs(std::log(hi)) + (lo > 0 ? std::abs(std::log(lo)) : 0.0);
    double decay = (3.0 * std::pow(Lw, ell) + 3.0 * std::pow(Lb, ell) + 2.0) / omega;
    return std::min(i_abs, decay);
}

// numeric upper bound for int_B^inf window_env * fresnel_env^3 d beta
double envelope_tail(double B, int ell, const KindConfig& c) {
    double total = 0.0;
    double lo = B;
    for (int k = 0; k < 240; ++k) {
        double hi = lo * 1.25;
        double f = window_env(lo, ell, c.lo, c.hi) * std::pow(fresnel_env(lo * c.fr_scale), 3);
        total += f * (hi - lo);  // envelopes decrease in beta: left edge is an upper value
        lo = hi;
        if (f * lo < 1e-18) break;
    }
    return total;
}

}  // namespace

OscIntegralResult singular_integral(IntKind kind, int ell, double x, double X) {
    if (ell < 0 || ell > 2) throw precondition_error("ell in {0,1,2}");
    KindConfig cfg = kind_config(kind, x, X);
    OscIntegralResult res;
    res.method = OscIntegralResult::Method::beta_quadrature;

    auto integrand = [&](double beta) {
        return window_transform(beta, ell, cfg.lo, cfg.hi) *
               std::pow(fresnel_unit(beta * cfg.fr_scale), 3);
    };

    double err = 0.0;
    double B;
    if (cfg.log_at_zero) {
        B = 256.0;
    } else {
        // I-kind: pure envelope truncation; the x^{-3/2} Fresnel decay keeps B small
        B = 32.0;
        while (envelope_tail(B, ell, cfg) > 1e-6) {
            B *= 2.0;
            if (B > double(1 << 24)) throw nonconvergence_error("beta cutoff search failed");
        }
        err += envelope_tail(B, ell, cfg);
    }
    res.beta_cutoff = B;

    // integrand is conjugate-symmetric in beta: integral = 2 Re int_0^B
    double freq = kTwoPi * (cfg.hi + 3.0 * cfg.fr_scale);
    double width = 6.0 / freq;
    int64_t panels = static_cast<int64_t>(B / width) + 1;
    kahan_csum main16;
    kahan_sum panel_err;
    for (int64_t p = 0; p < panels; ++p) {
        double a = B * static_cast<double>(p) / static_cast<double>(panels);
        double b = B * static_cast<double>(p + 1) / static_cast<double>(panels);
        cplx v16 = quad::gl_panel(integrand, a, b, 16);
        cplx v8 = quad::gl_panel(integrand, a, b, 8);
        main16.add(v16);
        panel_err.add(std::abs(v16 - v8));
        res.node_count += 24;
    }
    double value = 2.0 * main16.value().real();
    err += panel_err.value();

    if (cfg.log_at_zero) {
        // tail via the exact large-omega decomposition of the window times the
        // full Fresnel asymptotic: oscillatory quadrature on [B, B2], then the
        // non-oscillatory polynomial part alone on [B2, inf)
        const double B2 = 4096.0;
        auto tail_f = [&](double beta) {
            return window_tail_model(beta, ell, cfg.hi) *
                   std::pow(fresnel_asymptotic(beta * cfg.fr_scale), 3);
        };
        cplx t1 = quad::gl_oscillatory(tail_f, B, B2, freq, 12, 6.0, &res.node_count);
        // beyond B2: boundary term integrates by parts to O(B2^{-5/2}); keep
        // the smooth polynomial part, substitute beta = B2 e^t
        auto tail_smooth = [&](double t) {
            double beta = B2 * std::exp(t);
            double omega = kTwoPi * beta;
            double lw = std::log(omega);
            static const double binom[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
            cplx poly{0.0, 0.0};
            for (int j = 0; j <= ell; ++j)
                poly += binom[ell][j] * std::pow(-lw, ell - j) * mu_moment(j);
            cplx e3 = std::pow(fresnel_asymptotic(beta * cfg.fr_scale), 3);
            return poly / omega * e3 * beta;  // d beta = beta dt
        };
        cplx t2{0.0, 0.0};
        for (int p = 0; p < 10; ++p)
            t2 += quad::gl_panel(tail_smooth, 3.0 * p, 3.0 * (p + 1), 16);
        res.node_count += 160;
        value += 2.0 * (t1 + t2).real();
        // dropped pieces: second-order window remainder on [B, inf) and the
        // oscillating boundary term beyond B2 (integrated by parts once)
        double lb = std::log(kTwoPi * B);
        double drop1 = 2.0 * (ell + 1) * std::pow(lb + 2.0, ell) / (kTwoPi * B * cfg.hi) *
                       std::pow(fresnel_env(B * cfg.fr_scale), 3);
        double drop2 = 2.0 * std::pow(std::abs(std::log(cfg.hi)) + 1.0, ell) /
                       (kTwoPi * B2 * kTwoPi * cfg.hi) *
                       std::pow(fresnel_env(B2 * cfg.fr_scale), 3) * 4.0;
        err += drop1 + drop2;
        // window model vs quadrature mismatch at the splice, scaled by the
        // remaining Fresnel mass ~ B^{-1/2}
        cplx splice = integrand(B) - tail_f(B);
        err += std::abs(splice) * B * 0.5;
    }

    res.value = value;
    res.err_estimate = err;
    if (res.err_estimate > 1e-3) throw nonconvergence_error("singular integral error estimate too large");
    return res;
}

// ---------------------------------------------------------------------------
// geometric side: F(u) = vol{ v in [0,1]^3 : |v|^2 <= u } and its density
// ---------------------------------------------------------------------------

namespace {

// A'(w) = d/dw area{ (v1,v2) in [0,1]^2 : v1^2+v2^2 <= w }
double quarter_circle_density(double w) {
    if (w <= 0.0 || w >= 2.0) return 0.0;
    if (w <= 1.0) return kPi / 4.0;
    return kPi / 4.0 - std::acos(1.0 / std::sqrt(w));
}

}  // namespace

double cube_ball_density(double u) {
    if (u <= 0.0 || u >= 3.0) return 0.0;
    if (u <= 1.0) return kPi / 4.0 * std::sqrt(u);
    if (u <= 2.0) {
        // t in [0, t1]: w = u - t^2 > 1; substitute t = t1 sin(theta) to keep
        // the sqrt(w-1) endpoint analytic
        double t1 = std::sqrt(u - 1.0);
        double inner = quad::gl_panel(
            [&](double th) {
                double t = t1 * std::sin(th);
                return (kPi / 4.0 - std::acos(1.0 / std::sqrt(u - t * t))) * t1 * std::cos(th);
            },
            0.0, kPi / 2.0, 48);
        return (1.0 - t1) * kPi / 4.0 + inner;
    }
    double t2 = std::sqrt(u - 2.0);
    return quad::gl_panel([&](double t) { return quarter_circle_density(u - t * t); }, t2, 1.0,
                          48);
}

double cube_ball_volume(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 3.0) return 1.0;
    if (u <= 1.0) return kPi / 6.0 * std::pow(u, 1.5);
    if (u <= 2.0) {
        double r = std::sqrt(u);
        return kPi / 6.0 * u * r - kPi / 4.0 * (r - 1.0) * (r - 1.0) * (2.0 * r + 1.0);
    }
    // integrate the density from 2 upward, panels clustered at the sqrt kink
    double r2 = std::sqrt(2.0);
    double F2 = kPi / 6.0 * 2.0 * r2 - kPi / 4.0 * (r2 - 1.0) * (r2 - 1.0) * (2.0 * r2 + 1.0);
    double total = F2;
    double span = u - 2.0;
    double prev = 2.0;
    for (int k = 14; k >= 0; --k) {
        double edge = (k == 0) ? u : 2.0 + span * std::pow(0.5, k);
        if (edge <= prev) continue;
        total += quad::gl_panel([](double t) { return cube_ball_density(t); }, prev, edge, 24);
        prev = edge;
    }
    return total;
}

namespace {

// int over [a,b] of (c0 + log u)^ell * (pi/4) sqrt(u) du, exact (0 <= a <= b <= 1)
double sphere_part_exact(int ell, double c0, double a, double b) {
    static const double binom[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
    double total = 0.0;
    for (int i = 0; i <= ell; ++i)
        total += binom[ell][i] * std::pow(c0, ell - i) * (H_log(i, b) - H_log(i, a));
    return kPi / 4.0 * total;
}

// int over [a,b] subset (1,3] of (c0 + log u)^ell F'(u) du, panels clustered
// at the sqrt kinks u = 1, 2
double shell_part_quad(int ell, double c0, double a, double b) {
    double total = 0.0;
    auto f = [&](double u) {
        double L = c0 + std::log(u);
        double w = (ell == 0) ? 1.0 : ((ell == 1) ? L : L * L);
        return w * cube_ball_density(u);
    };
    auto run_range = [&](double lo, double hi, double kink) {
        if (hi <= lo) return;
        // geometric clustering toward `kink` (the left edge of the regime)
        double span = hi - lo;
        double prev = lo;
        int levels = 14;
        for (int k = levels; k >= 0; --k) {
            double edge = lo + span * std::pow(0.5, k);
            if (k == 0) edge = hi;
            if (edge <= prev) continue;
            total += quad::gl_panel(f, prev, edge, 24);
            prev = edge;
        }
        (void)kink;
    };
    double a1 = std::max(a, 1.0), b1 = std::min(b, 2.0);
    run_range(a1, b1, 1.0);
    double a2 = std::max(a, 2.0), b2 = std::min(b, 3.0);
    run_range(a2, b2, 2.0);
    return total;
}

}  // namespace

double geometric_oracle(IntKind kind, int ell, double x, double X) {
    if (ell < 0 || ell > 2) throw precondition_error("ell in {0,1,2}");
    switch (kind) {
        case IntKind::J:
            return sphere_part_exact(ell, 0.0, 0.0, 1.0) + shell_part_quad(ell, 0.0, 1.0, 3.0);
        case IntKind::K:
            return sphere_part_exact(ell, 0.0, 0.0, 1.0);
        case IntKind::I:
        default: {
            if (!(X > 1.0) || !(X <= 3.0 * x))
                throw precondition_error("I-kind requires 1 < X <= 3x");
            double a = X / (2.0 * x), b = X / x;
            a = std::min(a, 3.0);
            b = std::min(b, 3.0);
            double c0 = std::log(x);  // integrand is (log(x u))^ell
            double total = 0.0;
            if (a < 1.0) total += sphere_part_exact(ell, c0, a, std::min(b, 1.0));
            if (b > 1.0) total += shell_part_quad(ell, c0, std::max(a, 1.0), b);
            return total;
        }
    }
}

}  // namespace tau3sq::oscint
