// tau3sq: verification and computation toolkit for the asymptotics of the
// triple divisor function summed over values of n1^2+n2^2+n3^2.
//
// Subcommands cover the individual layers (sieves, exponential sums, singular
// series, oscillatory integrals, the summation-formula check) plus the full
// acceptance run; every command is deterministic given its flags.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "tau3sq/acceptance.hpp"
#include "tau3sq/arith.hpp"
#include "tau3sq/expsum.hpp"
#include "tau3sq/oscint.hpp"
#include "tau3sq/report.hpp"
#include "tau3sq/special.hpp"
#include "tau3sq/theorem.hpp"
#include "tau3sq/voronoi.hpp"

namespace {

using namespace tau3sq;
using report::ojson;

struct GlobalOpts {
    std::string format = "json";
    std::string output;
    uint64_t seed = 0;
    int threads = 0;
    bool serial = false;
    Exec exec() const { return serial ? Exec::serial : Exec::parallel; }
};

void emit(const GlobalOpts& g, const ojson& j) {
    std::string text = (g.format == "csv") ? report::kv_csv(j) : j.dump(2) + "\n";
    report::write_text(g.output, text);
}

// ---------------------------------------------------------------------------
// sieve cache: magic, version, limit, then tau and tau3 as little-endian
// 64-bit counts
// ---------------------------------------------------------------------------

constexpr char kCacheMagic[8] = {'T', '3', 'S', 'Q', 'T', 'A', 'B', '1'};

void write_u64(std::ofstream& f, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    f.write(reinterpret_cast<char*>(b), 8);
}

uint64_t read_u64(std::ifstream& f) {
    unsigned char b[8];
    f.read(reinterpret_cast<char*>(b), 8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
    return v;
}

std::string cache_path(const std::string& dir, int64_t limit) {
    return dir + "/tau_tables_" + std::to_string(limit) + ".t3sq";
}

void save_tables(const std::string& dir, const arith::DivisorTables& t) {
    std::ofstream f(cache_path(dir, t.limit), std::ios::binary);
    if (!f) throw io_error("cannot write sieve cache");
    f.write(kCacheMagic, 8);
    write_u64(f, 1);  // version
    write_u64(f, static_cast<uint64_t>(t.limit));
    for (int64_t n = 0; n <= t.limit; ++n) write_u64(f, t.tau[static_cast<size_t>(n)]);
    for (int64_t n = 0; n <= t.limit; ++n) write_u64(f, t.tau3[static_cast<size_t>(n)]);
    if (!f) throw io_error("sieve cache write failed");
}

bool load_tables(const std::string& dir, int64_t limit, arith::DivisorTables& t) {
    std::ifstream f(cache_path(dir, limit), std::ios::binary);
    if (!f) return false;
    char magic[8];
    f.read(magic, 8);
    if (!f || std::string(magic, 8) != std::string(kCacheMagic, 8)) return false;
    if (read_u64(f) != 1) return false;
    auto lim = static_cast<int64_t>(read_u64(f));
    if (lim != limit) return false;
    t.limit = lim;
    t.tau.resize(static_cast<size_t>(lim) + 1);
    t.tau3.resize(static_cast<size_t>(lim) + 1);
    for (int64_t n = 0; n <= lim; ++n) t.tau[static_cast<size_t>(n)] = static_cast<uint32_t>(read_u64(f));
    for (int64_t n = 0; n <= lim; ++n) t.tau3[static_cast<size_t>(n)] = static_cast<uint32_t>(read_u64(f));
    return static_cast<bool>(f);
}

arith::DivisorTables tables_for(int64_t limit, const std::string& cache_dir) {
    arith::DivisorTables t;
    if (!cache_dir.empty() && load_tables(cache_dir, limit, t)) return t;
    t = arith::sieve_divisor_tables(limit);
    if (!cache_dir.empty()) save_tables(cache_dir, t);
    return t;
}

theorem::LhsVariant parse_variant(const std::string& s) {
    if (s == "tau3-box") return theorem::LhsVariant::tau3_box;
    if (s == "tau3-ball") return theorem::LhsVariant::tau3_ball;
    if (s == "tau-box") return theorem::LhsVariant::tau_box;
    if (s == "identity-1.5-left") return theorem::LhsVariant::identity15_left;
    if (s == "identity-1.5-right") return theorem::LhsVariant::identity15_right;
    throw CLI::ValidationError("unknown variant: " + s);
}

int64_t table_limit_for(theorem::LhsVariant v, double xmax) {
    auto xi = static_cast<int64_t>(xmax + 1e-9);
    switch (v) {
        case theorem::LhsVariant::tau3_box:
        case theorem::LhsVariant::tau_box: {
            int64_t s = arith::isqrt(xi);
            return 3 * s * s;
        }
        default:
            return xi;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for sums of tau_3 over three squares"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--format", g.format, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", g.output, "write the report to this path (default stdout)");
    app.add_option("--seed", g.seed, "seed for deterministic sampling");
    app.add_option("--threads", g.threads, "cap worker threads (0 = hardware)");
    app.add_flag("--serial", g.serial, "use the serial reference kernels");

    // sieve
    auto* sv = app.add_subcommand("sieve", "build (and optionally cache) divisor tables");
    int64_t sv_limit = 1000;
    std::string sv_cache;
    std::vector<int64_t> sv_inspect;
    sv->add_option("--limit", sv_limit, "table limit N")->required();
    sv->add_option("--cache-dir", sv_cache, "directory for the on-disk table cache");
    sv->add_option("--inspect", sv_inspect, "values n to report tau(n), tau3(n)");

    // lhs
    auto* lh = app.add_subcommand("lhs", "brute-force left-hand sides");
    std::string lh_variant = "tau3-box";
    double lh_x = 100.0;
    std::string lh_cache;
    lh->add_option("--variant", lh_variant,
                   "tau3-box|tau3-ball|tau-box|identity-1.5-left|identity-1.5-right");
    lh->add_option("--x", lh_x, "upper limit x")->required();
    lh->add_option("--cache-dir", lh_cache, "sieve cache directory");

    // constants
    auto* ct = app.add_subcommand("constants", "fundamental constants and singular series");
    int64_t ct_Q = 256;
    ct->add_option("--Q", ct_Q, "singular-series truncation");

    // integrals
    auto* ig = app.add_subcommand("integrals", "singular integrals with oracle deltas");
    std::string ig_kind = "J";
    int ig_ell = 0;
    double ig_x = 1.0, ig_X = 0.0;
    ig->add_option("--kind", ig_kind, "J|K|I")->check(CLI::IsMember({"J", "K", "I"}));
    ig->add_option("--ell", ig_ell, "log power 0|1|2");
    ig->add_option("--x", ig_x, "scale x (I only)");
    ig->add_option("--X", ig_X, "window top X (I only)");

    // predict
    auto* pd = app.add_subcommand("predict", "main-term prediction");
    std::string pd_variant = "tau3-box";
    double pd_x = 10000.0;
    int64_t pd_Q = 256;
    pd->add_option("--variant", pd_variant, "tau3-box|tau3-ball");
    pd->add_option("--x", pd_x)->required();
    pd->add_option("--Q", pd_Q);

    // compare
    auto* cp = app.add_subcommand("compare", "brute force vs prediction sweep");
    std::string cp_variant = "tau3-box";
    std::vector<double> cp_x;
    int64_t cp_Q = 256;
    std::string cp_cache;
    cp->add_option("--variant", cp_variant, "tau3-box|tau3-ball|tau-box");
    cp->add_option("--x", cp_x, "x values (repeatable)")->required();
    cp->add_option("--Q", cp_Q);
    cp->add_option("--cache-dir", cp_cache, "sieve cache directory");

    // charsum survey
    auto* cs = app.add_subcommand("charsum", "twisted character-sum bound survey");
    int64_t cs_pmax = 97;
    int cs_samples = 500;
    cs->add_option("--prime-max", cs_pmax);
    cs->add_option("--samples", cs_samples, "samples per prime beyond the exhaustive range");

    // voronoi
    auto* vo = app.add_subcommand("voronoi", "two-sided summation-formula check");
    int64_t vo_q = 1, vo_a = 1, vo_cutoff = 0;
    double vo_X = 2000.0, vo_M = 8.0;
    vo->add_option("--q", vo_q);
    vo->add_option("--a", vo_a);
    vo->add_option("--X", vo_X);
    vo->add_option("--M", vo_M);
    vo->add_option("--dual-cutoff", vo_cutoff, "0 = default heuristic");

    // verify-all
    auto* va = app.add_subcommand("verify-all", "run the full acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (g.threads > 0) set_thread_cap(g.threads);
        Exec exec = g.exec();

        if (*sv) {
            auto t = tables_for(sv_limit, sv_cache);
            ojson j;
            j["limit"] = t.limit;
            j["tau3_max"] = *std::max_element(t.tau3.begin() + 1, t.tau3.end());
            ojson rows = ojson::array();
            for (int64_t n : sv_inspect) {
                if (n < 1 || n > t.limit) throw precondition_error("inspect value out of range");
                rows.push_back({{"n", n},
                                {"tau", t.tau[static_cast<size_t>(n)]},
                                {"tau3", t.tau3[static_cast<size_t>(n)]}});
            }
            j["inspect"] = rows;
            emit(g, j);
        } else if (*lh) {
            auto variant = parse_variant(lh_variant);
            auto t = tables_for(table_limit_for(variant, lh_x), lh_cache);
            int64_t value = theorem::brute_lhs(variant, lh_x, t, exec);
            ojson j;
            j["variant"] = lh_variant;
            j["x"] = lh_x;
            j["value"] = value;
            emit(g, j);
        } else if (*ct) {
            auto fc = special::fundamental_constants();
            ojson j;
            j["gamma"] = fc.gamma;
            j["gamma_oracle_delta"] = std::abs(fc.gamma - special::euler_gamma_oracle(100000));
            j["gamma1"] = fc.gamma1;
            j["gamma1_oracle_delta"] =
                std::abs(fc.gamma1 - special::stieltjes_gamma1_oracle(100000));
            j["zeta3"] = fc.zeta3;
            j["zeta5"] = fc.zeta5;
            j["tau_variant_constant"] = theorem::tau_variant_constant();
            auto terms = special::singular_series_terms(8 * ct_Q, exec);
            for (int ell = 0; ell < 3; ++ell) {
                auto est = special::singular_series_partial(ell, ct_Q, exec);
                // reuse the wide sweep for a tail fit against the 8Q reference
                std::vector<int64_t> qs{ct_Q / 8, ct_Q / 4, ct_Q / 2, ct_Q};
                double resid = 0.0;
                double slope = special::tail_decay_fit_from_terms(
                    terms[static_cast<size_t>(ell)], qs, &resid);
                ojson e = report::to_json(est);
                e["tail_exponent_vs_8Q"] = slope;
                e["tail_fit_residual"] = resid;
                j["C" + std::to_string(ell)] = e;
            }
            emit(g, j);
        } else if (*ig) {
            oscint::IntKind kind = ig_kind == "J"   ? oscint::IntKind::J
                                   : ig_kind == "K" ? oscint::IntKind::K
                                                    : oscint::IntKind::I;
            auto r = oscint::singular_integral(kind, ig_ell, ig_x, ig_X);
            double oracle = oscint::geometric_oracle(kind, ig_ell, ig_x, ig_X);
            ojson j;
            j["kind"] = ig_kind;
            j["ell"] = ig_ell;
            if (kind == oscint::IntKind::I) {
                j["x"] = ig_x;
                j["X"] = ig_X;
            }
            j["quadrature"] = report::to_json(r);
            j["oracle"] = oracle;
            double delta = std::abs(r.value - oracle);
            j["oracle_delta"] = delta;
            emit(g, j);
            if (delta > std::max(1e-5, 3.0 * r.err_estimate)) return 1;
        } else if (*pd) {
            auto inputs = theorem::main_term_inputs(pd_Q, exec);
            auto rep = theorem::predict_main_terms(parse_variant(pd_variant), pd_x, inputs);
            ojson j;
            j["variant"] = pd_variant;
            j["inputs"] = report::to_json(inputs);
            j["prediction"] = report::to_json(rep);
            emit(g, j);
        } else if (*cp) {
            auto variant = parse_variant(cp_variant);
            double xmax = *std::max_element(cp_x.begin(), cp_x.end());
            auto t = tables_for(table_limit_for(variant, xmax), cp_cache);
            auto inputs = theorem::main_term_inputs(cp_Q, exec);
            auto sweep = theorem::compare_sweep(variant, cp_x, inputs, t, exec);
            if (g.format == "csv") {
                report::write_text(g.output, report::comparison_csv(sweep.reports));
            } else {
                ojson j;
                j["variant"] = cp_variant;
                j["inputs"] = report::to_json(inputs);
                ojson rows = ojson::array();
                for (auto& r : sweep.reports) rows.push_back(report::to_json(r));
                j["reports"] = rows;
                j["ratio_decay_exponent"] = sweep.ratio_decay_exponent;
                emit(g, j);
            }
        } else if (*cs) {
            auto survey = expsum::bound_survey(cs_pmax, cs_samples, g.seed, exec);
            emit(g, report::to_json(survey));
            if (survey.max_t_ratio > 3.0) return 1;
        } else if (*vo) {
            auto w = voronoi::make_bump(vo_X, vo_M);
            if (vo_cutoff <= 0) vo_cutoff = voronoi::default_dual_cutoff(vo_q, vo_X, vo_M);
            auto t = tables_for(static_cast<int64_t>(vo_X) + 1, "");
            auto rep = voronoi::voronoi_check(vo_q, vo_a, w, vo_cutoff, t, exec);
            emit(g, report::to_json(rep));
        } else if (*va) {
            acceptance::AcceptanceOptions opts;
            opts.seed = g.seed;
            opts.exec = exec;
            auto out = acceptance::run_acceptance(opts, &std::cout);
            if (!g.output.empty()) {
                std::string text = (g.format == "csv") ? report::kv_csv(out.artifacts)
                                                       : out.artifacts.dump(2) + "\n";
                report::write_text(g.output, text);
            }
            return out.all_pass ? 0 : 1;
        }
    } catch (const nonconvergence_error& e) {
        std::cerr << "nonconvergence: " << e.what() << "\n";
        return 3;
    } catch (const limit_error& e) {
        std::cerr << "limit: " << e.what() << "\n";
        return 4;
    } catch (const io_error& e) {
        std::cerr << "io: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    }
    return 0;
}
