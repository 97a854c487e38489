#include "tau3sq/quad.hpp"

#include <array>
#include <cmath>
#include <map>

namespace tau3sq::quad {

namespace {

GLRule make_rule(int n) {
    GLRule r;
    r.x.resize(static_cast<size_t>(n));
    r.w.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev-angle initial guess
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double p0 = 0.0, p1 = 0.0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        r.x[static_cast<size_t>(n - 1 - i)] = x;
        r.w[static_cast<size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

}  // namespace

const GLRule& gl_rule(int n) {
    static const std::map<int, GLRule> rules = [] {
        std::map<int, GLRule> m;
        for (int n : {8, 12, 16, 24, 32, 48, 64}) m.emplace(n, make_rule(n));
        return m;
    }();
    auto it = rules.find(n);
    if (it == rules.end()) throw precondition_error("unsupported GL order");
    return it->second;
}

}  // namespace tau3sq::quad
