#include <doctest.h>

#include <cmath>

#include "tau3sq/oscint.hpp"
#include "tau3sq/quad.hpp"

using namespace tau3sq;
using namespace tau3sq::oscint;

namespace {

double cdist(cplx a, cplx b) {
    return std::max(std::abs(a.real() - b.real()), std::abs(a.imag() - b.imag()));
}

// independent quadrature oracle for int_lo^hi (log u)^ell e(-beta u) du:
// exact tiny head, then phase-capped uniform panels at a different order
cplx window_oracle(double beta, int ell, double lo, double hi) {
    kahan_csum acc;
    double a = std::max(lo, 1e-12);
    if (lo < a) {
        double L = std::log(a);
        if (ell == 0)
            acc.add(cplx{a - lo, 0.0});
        else if (ell == 1)
            acc.add(cplx{a * (L - 1.0), 0.0});
        else
            acc.add(cplx{a * (L * L - 2 * L + 2), 0.0});
    }
    auto f = [&](double u) {
        double L = std::log(u);
        double lw = (ell == 0) ? 1.0 : ((ell == 1) ? L : L * L);
        return lw * e_of(-beta * u);
    };
    // geometric panels through the log-singular end, then phase-capped ones
    double mid = std::max(a, std::min(0.1, hi));
    double u = a;
    while (u < mid) {
        double next = std::min(2.0 * u, mid);
        acc.add(quad::gl_panel(f, u, next, 24));
        u = next;
    }
    if (mid < hi) {
        double width = std::min(0.05, 4.0 / (kTwoPi * std::abs(beta) + 1.0));
        int64_t panels = static_cast<int64_t>((hi - mid) / width) + 1;
        for (int64_t p = 0; p < panels; ++p) {
            double ua = mid + (hi - mid) * static_cast<double>(p) / static_cast<double>(panels);
            double ub =
                mid + (hi - mid) * static_cast<double>(p + 1) / static_cast<double>(panels);
            acc.add(quad::gl_panel(f, ua, ub, 24));
        }
    }
    return acc.value();
}

}  // namespace

TEST_CASE("fresnel unit values") {
    CHECK(fresnel_unit(0.0) == cplx{1.0, 0.0});
    // frozen regression value (independent high-precision quadrature)
    CHECK(cdist(fresnel_unit(1.0), {0.24412670303767038, 0.17170783918184912}) < 1e-10);
    CHECK(std::abs(fresnel_unit(1e4)) <= 0.01);
    CHECK(cdist(fresnel_unit(-1.0), std::conj(fresnel_unit(1.0))) == 0.0);
}

TEST_CASE("fresnel crossover continuity") {
    // both evaluation branches at the same points astride the switch
    for (double beta : {kFresnelCrossover - 1e-6, kFresnelCrossover, kFresnelCrossover + 1e-6}) {
        cplx by_panels = [&] {
            kahan_csum acc;
            int n = 64;
            for (int p = 0; p < n; ++p)
                acc.add(quad::gl_panel([&](double v) { return e_of(beta * v * v); },
                                       static_cast<double>(p) / n,
                                       static_cast<double>(p + 1) / n, 16));
            return acc.value();
        }();
        CHECK(cdist(fresnel_unit(beta), by_panels) <= 1e-8);
    }
}

TEST_CASE("psi0") {
    CHECK(psi0(0.0, 9.0).real() == doctest::Approx(3.0));
    CHECK(psi0(0.0, 9.0).imag() == 0.0);
    CHECK(cdist(psi0(0.7, 1.0), fresnel_unit(0.7)) < 1e-15);
    CHECK(cdist(psi0(1.0, 4.0), 2.0 * fresnel_unit(4.0)) < 1e-14);
    // |Psi0| <= C (x/(1+|beta|x))^{1/2} with C frozen at 1.05
    for (double x : {1.0, 4.0, 100.0})
        for (double beta : {0.0, 0.01, 0.3, 2.0, 55.0, 1000.0}) {
            double bound = 1.05 * std::sqrt(x / (1.0 + beta * x));
            CHECK(std::abs(psi0(beta, x)) <= bound);
        }
}

TEST_CASE("window transform") {
    CHECK(cdist(window_transform(0.0, 0, 0.0, 3.0), {3.0, 0.0}) < 1e-14);
    CHECK(cdist(window_transform(0.0, 1, 0.0, 1.0), {-1.0, 0.0}) < 1e-9);
    CHECK(std::abs(window_transform(1.0, 0, 0.0, 3.0)) < 1e-12);  // e(-3) = 1
    // closed form vs quadrature for ell = 0
    for (int i = 0; i < 50; ++i) {
        double beta = -100.0 + 200.0 * i / 49.0;
        CHECK(cdist(window_transform(beta, 0, 0.0, 3.0), window_oracle(beta, 0, 0.0, 3.0)) <=
              1e-9);
    }
    for (int ell : {1, 2})
        for (double beta : {0.0, 0.5, -3.0, 17.0, 120.0}) {
            CHECK(cdist(window_transform(beta, ell, 0.0, 3.0),
                        window_oracle(beta, ell, 0.0, 3.0)) <= 1e-9);
            CHECK(cdist(window_transform(beta, ell, 0.5, 2.0),
                        window_oracle(beta, ell, 0.5, 2.0)) <= 1e-9);
        }
}

TEST_CASE("cube-ball geometry") {
    CHECK(cube_ball_volume(3.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(cube_ball_volume(1.0) == doctest::Approx(kPi / 6.0).epsilon(1e-12));
    // density integrates back to the volume
    double acc = 0.0;
    int n = 4000;
    for (int i = 0; i < n; ++i)
        acc += quad::gl_panel([](double u) { return cube_ball_density(u); }, 3.0 * i / n,
                              3.0 * (i + 1) / n, 8);
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("geometric oracle closed values") {
    CHECK(geometric_oracle(IntKind::J, 0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(geometric_oracle(IntKind::K, 0) == doctest::Approx(kPi / 6.0).epsilon(1e-12));
    CHECK(geometric_oracle(IntKind::K, 1) == doctest::Approx(-kPi / 9.0).epsilon(1e-12));
    // frozen after the independent spherical-coordinates route below
    CHECK(geometric_oracle(IntKind::K, 2) == doctest::Approx(4.0 * kPi / 27.0).epsilon(1e-12));
    // octant surface measure pi r^2/2 against (2 log r)^2
    double spherical = quad::gl_panel(
        [](double r) { return 2.0 * kPi * r * r * std::log(r) * std::log(r); }, 0.0, 1.0, 64);
    CHECK(spherical == doctest::Approx(geometric_oracle(IntKind::K, 2)).epsilon(1e-6));
    // J values against an independent high-precision reference
    CHECK(geometric_oracle(IntKind::J, 1) == doctest::Approx(-0.18770452339403958).epsilon(1e-7));
    CHECK(geometric_oracle(IntKind::J, 2) == doctest::Approx(0.54373887500007156).epsilon(1e-7));
    // shell example: x = X means u in [1/2, 1]
    CHECK(geometric_oracle(IntKind::I, 0, 2000.0, 2000.0) ==
          doctest::Approx(kPi / 6.0 * (1.0 - std::pow(2.0, -1.5))).epsilon(1e-9));
}

TEST_CASE("dyadic shells exhaust the cube") {
    // shells with X <= 1 fall outside the I-kind contract; the mass they
    // carry is F(X/x) <= F(1/x), far below the tolerance
    double x = 1e4;
    kahan_sum acc;
    for (int j = 1; j <= 40; ++j) {
        double X = 3.0 * x / std::pow(2.0, j - 1);
        if (X <= 1.0) break;
        acc.add(geometric_oracle(IntKind::I, 0, x, X));
    }
    CHECK(std::abs(acc.value() - 1.0) <= 1e-4);
}

TEST_CASE("beta-quadrature matches the geometric oracle") {
    for (auto kind : {IntKind::J, IntKind::K}) {
        for (int ell = 0; ell <= 2; ++ell) {
            auto r = singular_integral(kind, ell);
            double oracle = geometric_oracle(kind, ell);
            CHECK(std::abs(r.value - oracle) <= std::max(1e-5, 3.0 * r.err_estimate));
        }
    }
    for (int ell = 0; ell <= 2; ++ell) {
        auto r = singular_integral(IntKind::I, ell, 50.0, 80.0);
        double oracle = geometric_oracle(IntKind::I, ell, 50.0, 80.0);
        CHECK(std::abs(r.value - oracle) <= std::max(1e-5, 3.0 * r.err_estimate));
    }
    auto j0 = singular_integral(IntKind::J, 0);
    CHECK(std::abs(j0.value - 1.0) <= 1e-5);
    CHECK(j0.method == OscIntegralResult::Method::beta_quadrature);
    CHECK(j0.beta_cutoff > 0.0);
    auto k0 = singular_integral(IntKind::K, 0);
    CHECK(std::abs(k0.value - kPi / 6.0) <= 1e-5);
}

TEST_CASE("I-kind preconditions") {
    CHECK_THROWS_AS(singular_integral(IntKind::I, 0, 1.0, 0.5), precondition_error);
    CHECK_THROWS_AS(singular_integral(IntKind::I, 0, 1.0, 4.0), precondition_error);
}
