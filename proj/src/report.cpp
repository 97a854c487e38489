#include "tau3sq/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace tau3sq::report {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ojson to_json(const theorem::ComparisonReport& r) {
    ojson j;
    j["x"] = r.x;
    j["lhs"] = r.lhs;
    j["t1"] = r.t1;
    j["t2"] = r.t2;
    j["t3"] = r.t3;
    j["predicted"] = r.predicted;
    j["ratio"] = r.ratio;
    j["Q"] = r.Q;
    return j;
}

ojson to_json(const theorem::MainTermInputs& in) {
    ojson j;
    j["Q"] = in.Q;
    j["C"] = {in.C[0], in.C[1], in.C[2]};
    j["J"] = {in.J[0], in.J[1], in.J[2]};
    j["K"] = {in.K[0], in.K[1], in.K[2]};
    j["J_err"] = {in.J_err[0], in.J_err[1], in.J_err[2]};
    j["K_err"] = {in.K_err[0], in.K_err[1], in.K_err[2]};
    return j;
}

ojson to_json(const special::SingularSeriesEstimate& e) {
    ojson j;
    j["ell"] = e.ell;
    j["Q"] = e.Q;
    j["value"] = e.value;
    j["imag_magnitude"] = e.imag_magnitude;
    j["block_magnitudes"] = e.block_magnitudes;
    j["fitted_tail_exponent"] = e.fitted_tail_exponent;
    j["fit_residual"] = e.fit_residual;
    return j;
}

ojson to_json(const oscint::OscIntegralResult& r) {
    ojson j;
    j["value"] = r.value;
    j["err_estimate"] = r.err_estimate;
    j["method"] = (r.method == oscint::OscIntegralResult::Method::beta_quadrature)
                      ? "beta-quadrature"
                      : "geometric-oracle";
    j["beta_cutoff"] = r.beta_cutoff;
    j["node_count"] = r.node_count;
    return j;
}

ojson to_json(const voronoi::VoronoiReport& r) {
    ojson j;
    j["q"] = r.q;
    j["a"] = r.a;
    j["X"] = r.X;
    j["M"] = r.M;
    j["dual_cutoff"] = r.dual_cutoff;
    j["lhs"] = {r.lhs.real(), r.lhs.imag()};
    j["main_terms"] = {r.main_terms.real(), r.main_terms.imag()};
    j["dual_sum"] = {r.dual_sum.real(), r.dual_sum.imag()};
    j["residual"] = r.residual;
    return j;
}

ojson to_json(const expsum::BoundSurveyReport& r) {
    ojson j;
    j["prime_max"] = r.prime_max;
    j["samples_per_prime"] = r.samples_per_prime;
    j["seed"] = r.seed;
    j["max_t_ratio"] = r.max_t_ratio;
    j["max_weil_ratio"] = r.max_weil_ratio;
    ojson te = ojson::array();
    for (auto& e : r.t_entries) {
        ojson x;
        x["p"] = e.p;
        x["max_ratio"] = e.max_ratio;
        x["tuple"] = {e.b1, e.b2, e.b3, e.v, e.r1, e.r2m};
        x["exhaustive"] = e.exhaustive;
        te.push_back(x);
    }
    j["twisted_sum"] = te;
    ojson we = ojson::array();
    for (auto& e : r.weil_entries) {
        ojson x;
        x["c"] = e.c;
        x["max_ratio"] = e.max_ratio;
        x["a"] = e.a;
        x["b"] = e.b;
        we.push_back(x);
    }
    j["weil"] = we;
    return j;
}

std::string comparison_csv(const std::vector<theorem::ComparisonReport>& rows) {
    std::string out = "x,lhs,t1,t2,t3,predicted,ratio,Q\n";
    for (auto& r : rows) {
        out += fmt_double(r.x) + "," + std::to_string(r.lhs) + "," + fmt_double(r.t1) + "," +
               fmt_double(r.t2) + "," + fmt_double(r.t3) + "," + fmt_double(r.predicted) + "," +
               fmt_double(r.ratio) + "," + std::to_string(r.Q) + "\n";
    }
    return out;
}

namespace {

void flatten(const ojson& j, const std::string& prefix, std::string& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out += prefix + ",";
        if (j.is_number_float())
            out += fmt_double(j.get<double>());
        else
            out += j.dump();
        out += "\n";
    }
}

}  // namespace

std::string kv_csv(const ojson& j) {
    std::string out = "key,value\n";
    flatten(j, "", out);
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open output file: " + path);
    f << text;
    if (!f) throw io_error("write failed: " + path);
}

}  // namespace tau3sq::report
