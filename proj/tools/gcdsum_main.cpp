// Command-line front end: builds sieves, runs the verification suites, and
// emits CSV reports.  Exit codes: 0 all rows pass, 1 verification failure,
// 2 usage/config error, 3 I/O failure, 4 direct-path resource cap.

#include <CLI11.hpp>

#include "gcdsum/asymptotic.hpp"
#include "gcdsum/parallel.hpp"
#include "gcdsum/report.hpp"
#include "gcdsum/series.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace gcdsum;

namespace {

struct CommonOpts {
    int digits = 40;
    int threads = 1;
    std::string out;
};

struct GridOpts {
    uint64_t x_min = 1;
    uint64_t x_max = 100;
    uint64_t step = 1;
    double ratio = 0.0;  // > 1 selects a geometric grid

    std::vector<uint64_t> build() const {
        if (x_min < 1 || x_max < x_min)
            throw std::domain_error("grid: need 1 <= x-min <= x-max");
        if (ratio > 0.0) return make_geometric_grid(x_min, x_max, ratio);
        std::vector<uint64_t> g;
        for (uint64_t x = x_min; x <= x_max; x += step) g.push_back(x);
        return g;
    }
};

struct ParamOpts {
    int s = 2;
    double a = 0.0;
    bool has_a = false;
    int m = 1;
    int r = 1;
    std::string family = "phi_s";

    SweepParams to_params(bool theorem_scope) const {
        SweepParams p;
        p.s = s;
        p.m = m;
        p.r = r;
        if (has_a) p.a = a;
        auto fam = family_from_token(family);
        if (!fam) throw std::domain_error("unknown family: " + family);
        p.family = *fam;
        if ((p.family == Family::PhiSA || p.family == Family::PsiSA) && !p.a)
            throw std::domain_error("family " + family + " requires --a");
        p.validate(theorem_scope);
        return p;
    }
};

int write_out(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return 0;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        std::cerr << "cannot open " << path << " for writing\n";
        return 3;
    }
    os << content;
    os.flush();
    if (!os) {
        std::cerr << "write failed: " << path << "\n";
        return 3;
    }
    return 0;
}

int cmd_sieve(const CommonOpts& common, const std::string& function, uint64_t n, double expo,
              bool has_expo) {
    PrecisionContext ctx(common.digits);
    FunctionId id;
    if (function == "mobius") id = FunctionId::mobius();
    else if (function == "abs-mobius") id = FunctionId::abs_mobius();
    else if (function == "mangoldt") id = FunctionId::mangoldt();
    else if (function == "tau") id = FunctionId::tau();
    else if (function == "one") id = FunctionId::one();
    else if (function == "id") id = FunctionId::id_pow(has_expo ? expo : 1.0);
    else if (function == "sigma") id = FunctionId::sigma_pow(has_expo ? expo : 1.0);
    else if (function == "phi") id = FunctionId::jordan_phi(has_expo ? expo : 1.0);
    else if (function == "psi") id = FunctionId::dedekind_psi(has_expo ? expo : 1.0);
    else throw std::domain_error("unknown function: " + function);

    auto table = sieve(id, n, ctx);
    std::ostringstream os;
    write_table_csv(os, table, ctx.digits());
    return write_out(common.out, os.str());
}

int cmd_verify_identity(const CommonOpts& common, const ParamOpts& po, const GridOpts& go,
                        const std::string& which, const std::string& mode) {
    auto kind = identity_from_token(which);
    if (!kind) throw std::domain_error("unknown identity: " + which);
    if (mode != "fast" && mode != "direct")
        throw std::domain_error("mode must be fast or direct");
    PrecisionContext ctx(common.digits);
    SweepParams params = po.to_params(false);
    params.x_grid = go.build();
    auto rep = verify_identity(*kind, params, ctx,
                               mode == "direct" ? SumMode::Direct : SumMode::Fast);
    std::ostringstream os;
    write_report_csv(os, rep);
    int rc = write_out(common.out, os.str());
    if (rc != 0) return rc;
    return rep.all_pass() ? 0 : 1;
}

int cmd_verify_asymptotic(const CommonOpts& common, const ParamOpts& po, const GridOpts& go,
                          const std::string& theorem) {
    auto tag = theorem_from_token(theorem);
    if (!tag) throw std::domain_error("unknown theorem tag: " + theorem);
    PrecisionContext ctx(common.digits);
    SweepParams params = po.to_params(true);
    auto grid = go.build();
    auto series = residual_series(*tag, params, grid, ctx);
    auto env = envelope_test(series);

    std::ostringstream os;
    write_series_csv(os, series, ctx.digits(),
                     {{"s", std::to_string(params.s)},
                      {"a", params.a ? std::to_string(*params.a) : "none"},
                      {"m", std::to_string(params.m)},
                      {"monotone_ok", env.monotone_ok ? "1" : "0"},
                      {"anchored_ok", env.anchored_ok ? "1" : "0"},
                      {"fitted_slope", std::to_string(env.fitted_slope)}});
    int rc = write_out(common.out, os.str());
    if (rc != 0) return rc;
    bool pass = theorem_is_A(*tag) ? env.monotone_ok : env.anchored_ok;
    return pass ? 0 : 1;
}

int cmd_verify_dirichlet(const CommonOpts& common, const ParamOpts& po, double w, uint64_t n,
                         const std::string& series_sel, const std::string& family_sel) {
    PrecisionContext ctx(common.digits);
    std::vector<Family> fams;
    if (family_sel == "all")
        fams = {Family::PhiS, Family::PsiS, Family::PhiSA, Family::PsiSA};
    else {
        auto f = family_from_token(family_sel);
        if (!f) throw std::domain_error("unknown family: " + family_sel);
        fams = {*f};
    }
    std::vector<SeriesCheck> checks;
    for (Family fam : fams) {
        ParamOpts q = po;
        q.family = family_token(fam);
        if ((fam == Family::PhiSA || fam == Family::PsiSA) && !q.has_a) {
            q.has_a = true;
            q.a = -0.5;
        }
        SweepParams params = q.to_params(true);
        if (series_sel == "K" || series_sel == "both")
            checks.push_back(check_K(w, n, params, ctx));
        if (series_sel == "L" || series_sel == "both")
            checks.push_back(check_L(w, po.m, n, params, ctx));
    }
    std::ostringstream os;
    write_series_checks_csv(os, checks, ctx.digits(),
                            {{"family", family_sel},
                             {"series", series_sel},
                             {"s", std::to_string(po.s)},
                             {"m", std::to_string(po.m)}});
    int rc = write_out(common.out, os.str());
    if (rc != 0) return rc;
    for (const auto& c : checks)
        if (!c.pass) return 1;
    return 0;
}

int cmd_error_term(const CommonOpts& common, const ParamOpts& po, const GridOpts& go,
                   const std::string& which) {
    PrecisionContext ctx(common.digits);
    auto grid = go.build();
    ErrorTermSeries series;
    if (which == "delta" || which == "delta-a") {
        DivisorTables tables(grid.back(), ctx);
        series.label = which;
        for (uint64_t x : grid) {
            series.grid.push_back((double)x);
            series.values.push_back(which == "delta" ? tables.delta((double)x)
                                                     : tables.delta_a((double)x, po.a));
        }
        series.claimed_exponent = which == "delta" ? 1.0 / 3.0 : (1.0 + po.a) / 3.0 + 0.05;
    } else if (which == "d-s" || which == "d-tilde") {
        series.label = which;
        DVariant v = which == "d-s" ? DVariant::Mobius : DVariant::AbsMobius;
        for (uint64_t x : grid) {
            series.grid.push_back((double)x);
            series.values.push_back(d_correction((double)x, po.s, v, ctx));
        }
        series.claimed_exponent = 0.0;
    } else if (auto helper = helper_from_token(which)) {
        ParamOpts q = po;
        if (!q.has_a) {
            q.has_a = true;
            q.a = -0.5;
        }
        series = helper_sum_check(*helper, q.to_params(true), grid, ctx);
    } else if (auto tag = theorem_from_token(which)) {
        ParamOpts q = po;
        if (!q.has_a) {
            q.has_a = true;
            q.a = -0.5;
        }
        series = residual_series(*tag, q.to_params(true), grid, ctx);
    } else {
        throw std::domain_error("unknown error-term series: " + which);
    }
    std::ostringstream os;
    write_series_csv(os, series, ctx.digits(),
                     {{"s", std::to_string(po.s)},
                      {"a", po.has_a ? std::to_string(po.a) : "none"},
                      {"m", std::to_string(po.m)}});
    return write_out(common.out, os.str());
}

// The desk-scale verification matrix behind `report-all`: the exact identity
// sweeps, the lemma/theorem envelope suites, the Dirichlet-series checks and
// the special-function certification, one CSV per block.
struct MatrixTask {
    std::string name;
    std::function<std::pair<bool, std::string>()> run;  // (pass, csv body)
};

int cmd_report_all(const CommonOpts& common) {
    PrecisionContext ctx(common.digits);
    std::vector<MatrixTask> tasks;

    auto add_identity = [&](IdentityKind which, Family fam, int s, int m, int r) {
        SweepParams p;
        p.family = fam;
        p.s = s;
        p.m = m;
        p.r = r;
        if (fam == Family::PhiSA || fam == Family::PsiSA) p.a = -0.5;
        uint64_t hi = s == 2 ? 100 : 30;
        for (uint64_t x = 1; x <= hi; ++x) p.x_grid.push_back(x);
        std::string name = std::string("identity_") + identity_token(which) + "_" +
                           family_token(fam) + "_s" + std::to_string(s);
        if (which == IdentityKind::H) name += "_m" + std::to_string(m);
        if (which == IdentityKind::M) name += "_r" + std::to_string(r);
        tasks.push_back({name, [p, which, &ctx]() {
                             auto rep = verify_identity(which, p, ctx);
                             std::ostringstream os;
                             write_report_csv(os, rep);
                             return std::make_pair(rep.all_pass(), os.str());
                         }});
    };

    for (int s : {2, 3}) {
        for (Family fam :
             {Family::PhiS, Family::PsiS, Family::PhiSA, Family::PsiSA, Family::One}) {
            add_identity(IdentityKind::A, fam, s, 1, 1);
            for (int m : {1, 2, 4}) add_identity(IdentityKind::H, fam, s, m, 1);
            for (int r : {1, 2, 3}) add_identity(IdentityKind::M, fam, s, 1, r);
        }
    }

    auto grid = make_geometric_grid(100, 10000, 1.3);
    for (HelperTag tag : {HelperTag::Lemma31, HelperTag::Lemma32}) {
        for (bool psi : {false, true}) {
            SweepParams p;
            p.s = 2;
            p.a = -0.5;
            p.family = tag == HelperTag::Lemma31 ? (psi ? Family::PsiS : Family::PhiS)
                                                 : (psi ? Family::PsiSA : Family::PhiSA);
            std::string name = std::string("lemma_") + helper_token(tag) + "_" +
                               family_token(p.family);
            tasks.push_back({name, [p, tag, grid, &ctx]() {
                                 auto series = helper_sum_check(tag, p, grid, ctx);
                                 auto env = envelope_test(series);
                                 std::ostringstream os;
                                 write_series_csv(os, series, ctx.digits(),
                                                  {{"family", family_token(p.family)},
                                                   {"anchored_ok", env.anchored_ok ? "1" : "0"}});
                                 return std::make_pair(env.anchored_ok, os.str());
                             }});
        }
    }

    for (TheoremTag tag :
         {TheoremTag::APhi, TheoremTag::APsi, TheoremTag::APhiA, TheoremTag::APsiA,
          TheoremTag::H1Phi, TheoremTag::H1Psi, TheoremTag::H2mPhi, TheoremTag::H2mPsi,
          TheoremTag::H1PhiA, TheoremTag::H1PsiA, TheoremTag::H2mPhiA, TheoremTag::H2mPsiA}) {
        SweepParams p;
        p.s = 2;
        p.a = -0.5;
        p.m = 1;
        std::string name = std::string("theorem_") + theorem_token(tag);
        tasks.push_back({name, [p, tag, grid, &ctx]() {
                             auto series = residual_series(tag, p, grid, ctx);
                             auto env = envelope_test(series);
                             bool pass = theorem_is_A(tag) ? env.monotone_ok : env.anchored_ok;
                             std::ostringstream os;
                             write_series_csv(os, series, ctx.digits(),
                                              {{"monotone_ok", env.monotone_ok ? "1" : "0"},
                                               {"anchored_ok", env.anchored_ok ? "1" : "0"}});
                             return std::make_pair(pass, os.str());
                         }});
    }

    for (int s : {2, 3}) {
        for (Family fam : {Family::PhiS, Family::PsiS, Family::PhiSA, Family::PsiSA}) {
            SweepParams p;
            p.family = fam;
            p.s = s;
            p.a = -0.5;
            std::string name = std::string("dirichlet_") + family_token(fam) + "_s" +
                               std::to_string(s);
            tasks.push_back({name, [p, &ctx]() {
                                 std::vector<SeriesCheck> checks;
                                 bool pass = true;
                                 for (double w : {2.0, 3.0, 5.0}) {
                                     checks.push_back(check_K(w, 10000, p, ctx));
                                     for (int m : {1, 2})
                                         checks.push_back(check_L(w, m, 10000, p, ctx));
                                 }
                                 for (const auto& c : checks) pass = pass && c.pass;
                                 std::ostringstream os;
                                 write_series_checks_csv(
                                     os, checks, ctx.digits(),
                                     {{"family", family_token(p.family)},
                                      {"s", std::to_string(p.s)}});
                                 return std::make_pair(pass, os.str());
                             }});
        }
    }

    tasks.push_back({"special_functions", [&ctx]() {
                         bool ok = true;
                         std::ostringstream os;
                         Real bound = pow(ctx.real(10L), -(long)(ctx.digits() - 5));
                         os << "# suite=special_functions\ncheck,pass\n";
                         bool gauss = true;
                         for (int n = 2; n <= 500; ++n) {
                             Real acc(0L, ctx.bits());
                             for (int j = 1; j < n; ++j)
                                 acc += log_gamma(ctx.real((long)j) / ctx.real((long)n));
                             Real rhs = ctx.real((long)(n - 1)) / 2L * ctx.ln_2pi() -
                                        ln(ctx.real((long)n)) / 2L;
                             if (abs(acc - rhs) > ctx.real((long)n) * bound) gauss = false;
                         }
                         os << "gauss_product," << gauss << "\n";
                         bool refl = true;
                         for (int i = 1; i <= 99; ++i) {
                             Real x = ctx.real((long)i) / ctx.real(100L);
                             Real lhs = log_gamma(x) + log_gamma(1L - x);
                             Real rhs = ln(ctx.pi()) - ln(sin(ctx.pi() * x));
                             if (abs(lhs - rhs) > ctx.identity_tol() * 16L * (1L + abs(rhs)))
                                 refl = false;
                         }
                         os << "reflection," << refl << "\n";
                         bool mult = true;
                         for (int m = 0; m <= 12 && mult; ++m)
                             for (int n = 1; n <= 64; ++n) {
                                 Real acc(0L, ctx.bits());
                                 for (int j = 0; j < n; ++j)
                                     acc += bernoulli_poly(
                                         m, ctx.real((long)j) / ctx.real((long)n));
                                 Real rhs = pow(ctx.real((long)n), 1 - m) *
                                            ctx.real(bernoulli_number(m));
                                 if (abs(acc - rhs) > ctx.identity_tol() * (1L + abs(rhs))) {
                                     mult = false;
                                     break;
                                 }
                             }
                         os << "bernoulli_multiplication," << mult << "\n";
                         Real tol35 = pow(ctx.real(10L), -35L);
                         Real pi2 = ctx.pi() * ctx.pi();
                         bool z2 = abs(zeta(2.0, ctx) - pi2 / 6L) <= tol35;
                         bool z4 = abs(zeta(4.0, ctx) - pi2 * pi2 / 90L) <= tol35;
                         os << "zeta2," << z2 << "\nzeta4," << z4 << "\n";
                         ok = gauss && refl && mult && z2 && z4;
                         return std::make_pair(ok, os.str());
                     }});

    std::string dir = common.out.empty() ? "reports" : common.out;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        std::cerr << "cannot create output directory " << dir << "\n";
        return 3;
    }

    std::vector<std::pair<bool, std::string>> results(tasks.size());
    parallel_for_indexed(tasks.size(), common.threads,
                         [&](size_t i) { results[i] = tasks[i].run(); });

    bool all = true;
    for (size_t i = 0; i < tasks.size(); ++i) {
        std::string path = dir + "/" + tasks[i].name + ".csv";
        int rc = write_out(path, results[i].second);
        if (rc != 0) return rc;
        std::cout << (results[i].first ? "[PASS] " : "[FAIL] ") << tasks[i].name << "\n";
        all = all && results[i].first;
    }
    std::cout << (all ? "report-all: all blocks pass\n" : "report-all: failures present\n");
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gcd-sum weighted average verification toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key = value configuration file");
    app.allow_config_extras(false);

    CommonOpts common;
    app.add_option("--digits", common.digits, "working precision in decimal digits")
        ->envname("GCDSUM_DIGITS")
        ->check(CLI::Range(20, 200));
    app.add_option("--threads", common.threads, "worker threads for batch commands")
        ->check(CLI::Range(1, 256));
    app.add_option("--out", common.out, "output path (report-all: directory)");

    ParamOpts po;
    GridOpts go_vid, go_vas, go_err;
    auto add_params = [&](CLI::App* sub, bool with_mr = true) {
        sub->add_option("--s", po.s, "power-of-gcd exponent s");
        sub->add_option("--a", po.a, "shift a in (-1,0) for the s+a families")
            ->check(CLI::Range(-0.9999999, -1e-9))
            ->each([&](const std::string&) { po.has_a = true; });
        if (with_mr) {
            sub->add_option("--m", po.m, "Bernoulli weight index m");
            sub->add_option("--r", po.r, "power weight r");
        }
        sub->add_option("--family", po.family,
                        "f family: phi_s, psi_s, phi_sa, psi_sa, one");
    };
    auto add_grid = [&](CLI::App* sub, GridOpts& go, uint64_t lo, uint64_t hi, double ratio) {
        go.x_min = lo;
        go.x_max = hi;
        go.ratio = ratio;
        sub->add_option("--x-min", go.x_min, "grid start");
        sub->add_option("--x-max", go.x_max, "grid end");
        sub->add_option("--grid-step", go.step, "linear grid step");
        sub->add_option("--grid-ratio", go.ratio, "geometric grid ratio (> 1)");
    };

    // sieve
    auto* sc_sieve = app.add_subcommand("sieve", "dump an arithmetic function table");
    sc_sieve->fallthrough();
    std::string function = "mobius";
    uint64_t table_n = 100;
    double expo = 1.0;
    bool has_expo = false;
    sc_sieve->add_option("--function", function,
                         "mobius, abs-mobius, mangoldt, tau, one, id, sigma, phi, psi");
    sc_sieve->add_option("--N", table_n, "table length")->check(CLI::Range(1ull, 10000000ull));
    sc_sieve->add_option("--expo", expo, "exponent for id/sigma/phi/psi")
        ->each([&](const std::string&) { has_expo = true; });

    // verify-identity
    auto* sc_vid = app.add_subcommand("verify-identity", "check an exact identity over a sweep");
    sc_vid->fallthrough();
    std::string which = "A";
    std::string id_mode = "fast";
    sc_vid->add_option("--which", which, "identity: A, H or M");
    sc_vid->add_option("--mode", id_mode, "lhs evaluation: fast or direct (capped)");
    add_params(sc_vid);
    add_grid(sc_vid, go_vid, 1, 100, 0.0);

    // verify-asymptotic
    auto* sc_vas = app.add_subcommand("verify-asymptotic",
                                      "check a theorem residual envelope");
    sc_vas->fallthrough();
    std::string theorem = "A-phi";
    sc_vas->add_option("--theorem", theorem, "theorem tag, e.g. A-phi, H1-psi, H2m-phi-a");
    add_params(sc_vas);
    add_grid(sc_vas, go_vas, 100, 10000, 1.3);

    // verify-dirichlet
    auto* sc_vd = app.add_subcommand("verify-dirichlet",
                                     "check truncated Dirichlet series against closed forms");
    sc_vd->fallthrough();
    double w = 3.0;
    uint64_t trunc_n = 10000;
    std::string series_sel = "both", family_sel = "all";
    sc_vd->add_option("--w", w, "evaluation point, >= 2");
    sc_vd->add_option("--N", trunc_n, "truncation length")->check(CLI::Range(10ull, 10000000ull));
    sc_vd->add_option("--series", series_sel, "K, L or both");
    sc_vd->add_option("--family", family_sel, "family token or 'all'");
    sc_vd->add_option("--s", po.s, "exponent s");
    sc_vd->add_option("--a", po.a, "shift a")->each([&](const std::string&) { po.has_a = true; });
    sc_vd->add_option("--m", po.m, "Bernoulli index for the L series");

    // error-term
    auto* sc_err = app.add_subcommand("error-term", "dump an error-term series");
    sc_err->fallthrough();
    std::string err_which = "delta";
    sc_err->add_option("--which", err_which,
                       "delta, delta-a, d-s, d-tilde, a helper tag or a theorem tag");
    add_params(sc_err);
    add_grid(sc_err, go_err, 10, 100000, 1.3);

    // report-all
    app.add_subcommand("report-all", "run the full desk-scale verification matrix")
        ->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sc_sieve->parsed()) return cmd_sieve(common, function, table_n, expo, has_expo);
        if (sc_vid->parsed()) return cmd_verify_identity(common, po, go_vid, which, id_mode);
        if (sc_vas->parsed()) return cmd_verify_asymptotic(common, po, go_vas, theorem);
        if (sc_vd->parsed())
            return cmd_verify_dirichlet(common, po, w, trunc_n, series_sel, family_sel);
        if (sc_err->parsed()) return cmd_error_term(common, po, go_err, err_which);
        return cmd_report_all(common);
    } catch (const ResourceCapError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 4;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
