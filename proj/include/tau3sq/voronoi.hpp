#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "tau3sq/arith.hpp"
#include "tau3sq/common.hpp"

namespace tau3sq::voronoi {

// C^inf bump: phi(y) supported on [1/2,1], equal to 1 on [1/2+1/M, 1-1/M],
// built from the exp(-1/t) ramp; evaluator is u -> phi(u/X)
class TestWindow {
  public:
    TestWindow(double X, double M);
    double X() const { return X_; }
    double M() const { return M_; }
    double shape(double y) const;                          // phi(y)
    double operator()(double u) const { return shape(u / X_); }
    double derivative_constant() const { return c_deriv_; }  // |phi^(j)| <= (cM)^j, j <= 4

  private:
    double X_, M_, c_deriv_;
};

TestWindow make_bump(double X, double M);

struct MellinConfig {
    double sigma = -0.5;  // contour abscissa, must satisfy sigma > -1-k
    double T = 0.0;       // truncation height; 0 = automatic
    int nodes = 0;        // diagnostic only; 0 = automatic
};

// (phitilde_beta(1), phitilde_beta'(1), phitilde_beta''(1)) where
// phitilde_beta^{(j)}(1) = int phi(u/X) e(-beta u) (log u)^j du
std::array<cplx, 3> mellin_moments(const TestWindow& w, double beta);

// Phi_k(y, beta) by vertical-line integration of
//   (pi^3 y)^k (1/2 pi i) int (pi^3 y)^{-s}
//        Gamma(((1+s+k)/2))^3 / Gamma(((-s+k)/2))^3 phitilde_beta(-s) ds
// All y-independent factors are precomputed on a master t-grid, so kernel
// evaluations cost one phase rotation per node.
class PhiKernelEvaluator {
  public:
    PhiKernelEvaluator(const TestWindow& w, double sigma, double beta, double y_max,
                       double T_override = 0.0);
    cplx phi(int k, double y) const;
    cplx phi_plus_minus(int sign, double y) const;  // Phi0 +- (1/(i pi^3 y)) Phi1
    double t_max() const { return Tmax_; }
    int64_t node_count() const { return static_cast<int64_t>(tn_.size()); }
    double tail_metric(int k) const;  // trailing L1 fraction of the integrand

  private:
    double sigma_, beta_, X_, Tmax_;
    bool symmetric_;  // beta == 0: conjugate symmetry halves the line
    std::vector<double> tn_, wn_;
    std::vector<cplx> base_[2];  // weight * Gamma-ratio_k * phitilde at nodes
    double l1_[2] = {0.0, 0.0};
};

// one-shot contour evaluation (builds a throwaway evaluator)
cplx phi_contour(double y, int k, const TestWindow& w, const MellinConfig& cfg, double beta);

// first-term stationary-phase expansion (Hankel-type kernel):
//   Phi_k ~ (pi^3 y)^{k+1} int phi(u/X) e(-beta u)
//           [a_k e(3(yu)^{1/3}) + b_k e(-3(yu)^{1/3})] du/(pi^3 y u)^{1/3}
// Only j = 1 coefficients are published; terms > 1 throws unless explicit
// higher coefficients are supplied.
cplx phi_asymptotic(double y, int k, const TestWindow& w, int terms, double beta);
cplx phi_asymptotic_with(double y, int k, const TestWindow& w, double beta,
                         const std::vector<std::pair<cplx, cplx>>& coeffs);
std::pair<cplx, cplx> phi_asymptotic_coefficients(int k);  // (a_k(1), b_k(1))

struct VoronoiReport {
    int64_t q = 1, a = 1;
    double X = 0.0, M = 0.0;
    int64_t dual_cutoff = 0;
    cplx lhs{};
    cplx main_terms{};
    cplx dual_sum{};
    double residual = 0.0;  // |LHS - RHS| / |LHS|
};

// Two-sided check of the summation formula: left side by sieved summation,
// right side = polynomial main terms + Kloosterman/Phi dual sum.
VoronoiReport voronoi_check(int64_t q, int64_t a, const TestWindow& w, int64_t dual_cutoff,
                            const arith::DivisorTables& tables, Exec exec = Exec::parallel);

int64_t default_dual_cutoff(int64_t q, double X, double M);

}  // namespace tau3sq::voronoi
