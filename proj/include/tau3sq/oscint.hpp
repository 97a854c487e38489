#pragma once

#include <cstdint>

#include "tau3sq/common.hpp"

namespace tau3sq::oscint {

struct OscIntegralResult {
    double value = 0.0;
    double err_estimate = 0.0;
    enum class Method { beta_quadrature, geometric_oracle } method = Method::beta_quadrature;
    double beta_cutoff = 0.0;
    int64_t node_count = 0;
};

// int_0^1 e(beta v^2) dv.  Panel Gauss-Legendre for |beta| <= 6, the erf-type
// asymptotic series beyond; absolute error <= 1e-10 throughout.
cplx fresnel_unit(double beta);
inline constexpr double kFresnelCrossover = 6.0;

// Psi_0(beta) = int_0^sqrt(x) e(beta u^2) du = sqrt(x) * fresnel_unit(beta x)
cplx psi0(double beta, double x);

// int_lo^hi (log u)^ell e(-beta u) du;  ell = 0 closed form, ell >= 1 panel
// quadrature with the u -> 0 log-singularity split off exactly
cplx window_transform(double beta, int ell, double lo, double hi);

enum class IntKind { J, K, I };

// the beta-integral path: truncated at |beta| <= B from an envelope bound
// with tail <= 1e-6, panel Gauss-Legendre in between
OscIntegralResult singular_integral(IntKind kind, int ell, double x = 1.0, double X = 0.0);

// Fourier inversion collapses the beta integral to a region integral over the
// unit cube; evaluated by exact antiderivatives on [0,1] plus 1D quadrature
// of the cube-ball boundary density on (1,3]
double geometric_oracle(IntKind kind, int ell, double x = 1.0, double X = 0.0);

// d/du vol{ v in [0,1]^3 : |v|^2 <= u }
double cube_ball_density(double u);
// vol{ v in [0,1]^3 : |v|^2 <= u }
double cube_ball_volume(double u);

}  // namespace tau3sq::oscint
