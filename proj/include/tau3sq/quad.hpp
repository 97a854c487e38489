#pragma once

#include <cstdint>
#include <vector>

#include "tau3sq/common.hpp"

namespace tau3sq::quad {

// Gauss-Legendre nodes/weights on [-1,1], Newton-refined; n in a fixed set
struct GLRule {
    std::vector<double> x, w;
};

const GLRule& gl_rule(int n);  // n in {8, 12, 16, 24, 32, 48, 64}

// single GL-n panel of f over [a,b]; F maps double -> double or cplx
template <class F>
auto gl_panel(F&& f, double a, double b, int n) {
    const GLRule& r = gl_rule(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    decltype(f(a)) acc{};
    for (size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(mid + half * r.x[i]);
    return acc * half;
}

// composite: panels chosen so that |freq| * width <= phase_budget
template <class F>
auto gl_oscillatory(F&& f, double a, double b, double max_freq, int n = 16,
                    double phase_budget = 6.0, int64_t* node_count = nullptr) {
    double width = (max_freq > 0) ? phase_budget / max_freq : (b - a);
    if (width <= 0 || width > b - a) width = b - a;
    int64_t panels = static_cast<int64_t>((b - a) / width) + 1;
    decltype(f(a)) acc{};
    double edge = a;
    for (int64_t i = 0; i < panels; ++i) {
        double next = (i + 1 == panels) ? b : a + (b - a) * static_cast<double>(i + 1) /
                                                     static_cast<double>(panels);
        acc += gl_panel(f, edge, next, n);
        edge = next;
    }
    if (node_count) *node_count += panels * n;
    return acc;
}

}  // namespace tau3sq::quad
