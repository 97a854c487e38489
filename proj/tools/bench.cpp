// Benchmark: OpenMP kernels against their serial reference paths.  The two
// paths share chunking and combine order, so outputs must match exactly;
// timings show the parallel speedup on data-parallel inner loops.

#include <chrono>
#include <cstdio>
#include <string>

#include "tau3sq/arith.hpp"
#include "tau3sq/expsum.hpp"
#include "tau3sq/special.hpp"
#include "tau3sq/theorem.hpp"

using namespace tau3sq;

namespace {

template <class F>
double time_s(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double ts, double tp, bool same) {
    std::printf("%-28s %10.3fs %10.3fs %8.2fx   %s\n", name, ts, tp, ts / tp,
                same ? "outputs identical" : "OUTPUT MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    double x = (argc > 1) ? std::stod(argv[1]) : 250000.0;
    std::printf("kernel benchmark (x = %.0f, %d thread(s))\n", x, max_threads());
    std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

    auto tables = arith::sieve_divisor_tables(3 * static_cast<int64_t>(x));

    int64_t s1 = 0, s2 = 0;
    double ts = time_s([&] { s1 = theorem::brute_lhs(theorem::LhsVariant::tau3_box, x, tables,
                                                     Exec::serial); });
    double tp = time_s([&] { s2 = theorem::brute_lhs(theorem::LhsVariant::tau3_box, x, tables,
                                                     Exec::parallel); });
    row("tau3 box sum", ts, tp, s1 == s2);

    special::SingularSeriesEstimate e1, e2;
    ts = time_s([&] { e1 = special::singular_series_partial(2, 512, Exec::serial); });
    tp = time_s([&] { e2 = special::singular_series_partial(2, 512, Exec::parallel); });
    row("singular series Q=512", ts, tp, e1.value == e2.value);

    expsum::BoundSurveyReport r1, r2;
    ts = time_s([&] { r1 = expsum::bound_survey(61, 200, 0, Exec::serial); });
    tp = time_s([&] { r2 = expsum::bound_survey(61, 200, 0, Exec::parallel); });
    row("bound survey p<=61", ts, tp, r1.max_t_ratio == r2.max_t_ratio);
    return 0;
}
