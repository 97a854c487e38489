// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.  Exit status 0 iff all pass.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iostream>

#include "tau3sq/acceptance.hpp"

int main(int argc, char** argv) {
    tau3sq::acceptance::AcceptanceOptions opts;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
            opts.seed = std::strtoull(argv[++i], nullptr, 10);
        if (std::strcmp(argv[i], "--serial") == 0) opts.exec = tau3sq::Exec::serial;
    }
    auto out = tau3sq::acceptance::run_acceptance(opts, &std::cout);
    std::printf("%s (%zu/%zu criteria)\n", out.all_pass ? "ALL PASS" : "FAILURES PRESENT",
                [&] {
                    size_t n = 0;
                    for (auto& r : out.results) n += r.pass ? 1 : 0;
                    return n;
                }(),
                out.results.size());
    return out.all_pass ? 0 : 1;
}
