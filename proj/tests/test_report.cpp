#include <doctest.h>

#include <cmath>

#include "tau3sq/report.hpp"

using namespace tau3sq;
using namespace tau3sq::report;

TEST_CASE("json round-trips full-precision doubles") {
    double values[] = {0.7596007299123457, 1.0 / 3.0, 1.2179813078741862, 1e-300, 1e300};
    for (double v : values) {
        ojson j;
        j["v"] = v;
        auto parsed = ojson::parse(j.dump());
        CHECK(parsed["v"].get<double>() == v);
        // and through the decimal formatter
        CHECK(std::stod(fmt_double(v)) == v);
    }
}

TEST_CASE("comparison csv schema") {
    CHECK(comparison_csv({}) == "x,lhs,t1,t2,t3,predicted,ratio,Q\n");
    theorem::ComparisonReport r;
    r.x = 100.0;
    r.lhs = 12345;
    r.t1 = 1.5;
    r.t2 = 2.5;
    r.t3 = 3.5;
    r.predicted = 7.5;
    r.ratio = 1646.0;
    r.Q = 256;
    auto text = comparison_csv({r});
    auto line = text.substr(text.find('\n') + 1);
    int commas = 0;
    for (char c : line)
        if (c == ',') ++commas;
    CHECK(commas == 7);  // 8 columns
    CHECK(line.find("12345") != std::string::npos);
}

TEST_CASE("kv csv flattening") {
    ojson j;
    j["a"] = 1;
    j["b"]["c"] = 0.5;
    j["d"] = {1, 2};
    auto text = kv_csv(j);
    CHECK(text.find("b.c,0.5") != std::string::npos);
    CHECK(text.find("d[1],2") != std::string::npos);
}
