// Acceptance suite: runs every verification block at its stated tolerance
// and prints one pass/fail line per criterion.  Usage:
//   acceptance <path-to-gcdsum-cli> [threads]

#include "gcdsum/asymptotic.hpp"
#include "gcdsum/parallel.hpp"
#include "gcdsum/report.hpp"
#include "gcdsum/series.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace gcdsum;
namespace fs = std::filesystem;

namespace {

int g_threads = 2;
std::string g_cli;
std::vector<std::string> g_notes;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void note(const std::string& s) { g_notes.push_back(s); }

void flush_notes() {
    for (const auto& n : g_notes) std::printf("         %s\n", n.c_str());
    g_notes.clear();
}

bool report_criterion(int num, const char* desc, bool pass, double secs) {
    std::printf("[%s] criterion %d: %s (%.1f s)\n", pass ? "PASS" : "FAIL", num, desc, secs);
    flush_notes();
    std::fflush(stdout);
    return pass;
}

std::vector<Family> all_families() {
    return {Family::PhiS, Family::PsiS, Family::PhiSA, Family::PsiSA, Family::One};
}

SweepParams family_params(Family fam, int s) {
    SweepParams p;
    p.family = fam;
    p.s = s;
    if (fam == Family::PhiSA || fam == Family::PsiSA) p.a = -0.5;
    return p;
}

// ---------------------------------------------------------------------------
// criterion 1: exact identity suite at 1e-30 relative
// ---------------------------------------------------------------------------
bool criterion1(const PrecisionContext& ctx) {
    struct Job {
        IdentityKind which;
        SweepParams params;
        std::string name;
    };
    std::vector<Job> jobs;
    for (int s : {2, 3}) {
        uint64_t hi = s == 2 ? 100 : 30;
        for (Family fam : all_families()) {
            auto base = family_params(fam, s);
            for (uint64_t x = 1; x <= hi; ++x) base.x_grid.push_back(x);
            {
                Job j{IdentityKind::A, base, ""};
                j.name = std::string("A ") + family_token(fam) + " s=" + std::to_string(s);
                jobs.push_back(j);
            }
            for (int m : {1, 2, 4}) {
                Job j{IdentityKind::H, base, ""};
                j.params.m = m;
                j.name = std::string("H m=") + std::to_string(m) + " " + family_token(fam) +
                         " s=" + std::to_string(s);
                jobs.push_back(j);
            }
            for (int r : {1, 2, 3}) {
                Job j{IdentityKind::M, base, ""};
                j.params.r = r;
                j.name = std::string("M r=") + std::to_string(r) + " " + family_token(fam) +
                         " s=" + std::to_string(s);
                jobs.push_back(j);
            }
        }
    }
    std::vector<uint8_t> ok(jobs.size(), 0);
    parallel_for_indexed(jobs.size(), g_threads, [&](size_t i) {
        ok[i] = verify_identity(jobs[i].which, jobs[i].params, ctx).all_pass() ? 1 : 0;
    });
    bool pass = true;
    for (size_t i = 0; i < jobs.size(); ++i) {
        if (!ok[i]) {
            pass = false;
            note("identity sweep failed: " + jobs[i].name);
        }
    }
    return pass;
}

// ---------------------------------------------------------------------------
// criterion 2: oracle equivalence (gauss-fast vs direct A terms; nu closed
// vs direct Bernoulli loop)
// ---------------------------------------------------------------------------
bool criterion2(const PrecisionContext& ctx) {
    bool pass = true;
    mpfr_prec_t p = ctx.bits();

    for (int s : {2, 3}) {
        // largest x with sum_{k<=x} k^s <= 1e7
        uint64_t xmax = 1;
        __uint128_t total = 0;
        for (uint64_t k = 1;; ++k) {
            __uint128_t ks = 1;
            for (int i = 0; i < s; ++i) ks *= k;
            if (total + ks > 10000000) break;
            total += ks;
            xmax = k;
        }

        auto fams = all_families();
        std::vector<std::vector<Real>> fmu(fams.size());
        for (size_t fi = 0; fi < fams.size(); ++fi) {
            auto tables = make_sweep_tables(family_params(fams[fi], s), xmax, ctx);
            fmu[fi].assign(xmax + 1, Real(0L, p));
            for (uint64_t d = 1; d <= xmax; ++d) fmu[fi][d] = tables.f_mu->value(d, p);
        }

        // per-k inner terms, direct j-loop with the log Gamma grid shared
        // across families, against the Gauss-product fast form
        std::vector<std::vector<Real>> direct(fams.size(),
                                              std::vector<Real>(xmax + 1, Real(0L, p)));
        std::vector<std::vector<Real>> fast(fams.size(),
                                            std::vector<Real>(xmax + 1, Real(0L, p)));
        parallel_for_indexed(xmax, g_threads, [&](size_t idx) {
            uint64_t k = idx + 1;
            uint64_t ks = 1;
            for (int i = 0; i < s; ++i) ks *= k;
            auto divs = divisors(k);
            std::vector<uint64_t> dpow(divs.size());
            for (size_t i = 0; i < divs.size(); ++i) {
                uint64_t dp = 1;
                for (int q = 0; q < s; ++q) dp *= divs[i];
                dpow[i] = dp;
            }
            Real inv_ks = 1L / ctx.real(ks);
            // direct: coefficient-weighted log Gamma sum per family
            std::vector<Real> acc(fams.size(), Real(0L, p));
            Real x(p), lg(p);
            for (uint64_t j = 1; j <= ks; ++j) {
                mpfr_set_ui(x.raw(), j, MPFR_RNDN);
                mpfr_mul(x.raw(), x.raw(), inv_ks.raw(), MPFR_RNDN);
                lg = log_gamma(x);
                for (size_t fi = 0; fi < fams.size(); ++fi) {
                    Real coef(0L, p);
                    for (size_t di = 0; di < divs.size(); ++di)
                        if (j % dpow[di] == 0) coef += fmu[fi][divs[di]];
                    if (!coef.is_zero()) acc[fi] += coef * lg;
                }
            }
            for (size_t fi = 0; fi < fams.size(); ++fi) direct[fi][k] = acc[fi] * inv_ks;
            // fast: sum_{d|k} (f*mu)(d) G((k/d)^s) / k^s
            for (size_t fi = 0; fi < fams.size(); ++fi) {
                Real g(0L, p);
                for (uint64_t d : divs) {
                    uint64_t t = k / d;
                    if (t == 1) continue;
                    BigInt ts;
                    mpz_ui_pow_ui(ts.get_mpz_t(), t, (unsigned long)s);
                    g += fmu[fi][d] * (Real(BigInt(ts - 1), p) / 2L * ctx.ln_2pi() -
                                       ctx.real((long)s) / 2L * ln(ctx.real(t)));
                }
                fast[fi][k] = g * inv_ks;
            }
        });

        for (size_t fi = 0; fi < fams.size(); ++fi) {
            Real ad(0L, p), af(0L, p);
            for (uint64_t k = 1; k <= xmax; ++k) {
                ad += direct[fi][k];
                af += fast[fi][k];
                if (abs(ad - af) > ctx.identity_tol() * (1L + abs(af))) {
                    pass = false;
                    note("A oracle mismatch: " + std::string(family_token(fams[fi])) +
                         " s=" + std::to_string(s) + " at x=" + std::to_string(k));
                    break;
                }
            }
        }
    }

    // nu closed form vs direct Bernoulli-weighted loop for k^s <= 1e4
    {
        int s = 2;
        uint64_t kmax = 100;  // k^2 <= 1e4
        auto one = sieve(FunctionId::one(), kmax, ctx);
        for (Family fam : all_families()) {
            auto tables = make_sweep_tables(family_params(fam, s), kmax, ctx);
            std::vector<uint8_t> ok(kmax, 1);
            parallel_for_indexed(kmax, g_threads, [&](size_t idx) {
                uint64_t k = idx + 1;
                for (int m : {1, 2, 4}) {
                    Real closed = nu(k, s, m, *tables.f_mu, one, ctx);
                    Real direct = nu_direct(k, s, m, *tables.f_mu, one, ctx);
                    if (abs(closed - direct) > ctx.identity_tol() * (1L + abs(closed)))
                        ok[idx] = 0;
                }
            });
            for (uint64_t k = 1; k <= kmax; ++k)
                if (!ok[k - 1]) {
                    pass = false;
                    note("nu oracle mismatch: " + std::string(family_token(fam)) +
                         " k=" + std::to_string(k));
                }
        }
    }
    return pass;
}

// ---------------------------------------------------------------------------
// criterion 3: lemma residual envelopes, C anchored at x = 100, 2x slack
// ---------------------------------------------------------------------------
bool criterion3(const PrecisionContext& ctx) {
    auto grid = make_geometric_grid(100, 10000, 1.3);
    bool pass = true;
    struct Item {
        HelperTag tag;
        Family fam;
    };
    std::vector<Item> items{{HelperTag::Lemma31, Family::PhiS},
                            {HelperTag::Lemma31, Family::PsiS},
                            {HelperTag::Lemma32, Family::PhiSA},
                            {HelperTag::Lemma32, Family::PsiSA}};
    std::vector<ErrorTermSeries> series(items.size());
    parallel_for_indexed(items.size(), g_threads, [&](size_t i) {
        auto p = family_params(items[i].fam, 2);
        p.a = -0.5;
        series[i] = helper_sum_check(items[i].tag, p, grid, ctx);
    });
    for (size_t i = 0; i < items.size(); ++i) {
        auto env = envelope_test(series[i]);
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s %s: max/C(100) = %.2f (limit 2), slope %.3f",
                      helper_token(items[i].tag), family_token(items[i].fam),
                      env.max_normalized /
                          std::max(1e-300, std::abs(series[i].values[0].to_double()) /
                                               std::pow(series[i].grid[0],
                                                        series[i].claimed_exponent)),
                      env.fitted_slope);
        note(buf);
        if (!env.anchored_ok) pass = false;
    }
    return pass;
}

// ---------------------------------------------------------------------------
// criterion 4: theorem residual envelopes
// ---------------------------------------------------------------------------
bool criterion4(const PrecisionContext& ctx) {
    auto grid = make_geometric_grid(100, 10000, 1.3);
    SweepParams p;
    p.s = 2;
    p.a = -0.5;
    p.m = 1;

    bool pass = true;
    std::vector<TheoremTag> a_tags{TheoremTag::APhi, TheoremTag::APsi, TheoremTag::APhiA,
                                   TheoremTag::APsiA};
    std::vector<TheoremTag> h_tags{TheoremTag::H1Phi,  TheoremTag::H1Psi,
                                   TheoremTag::H2mPhi, TheoremTag::H2mPsi,
                                   TheoremTag::H1PhiA, TheoremTag::H1PsiA,
                                   TheoremTag::H2mPhiA, TheoremTag::H2mPsiA};
    std::vector<TheoremTag> tags = a_tags;
    tags.insert(tags.end(), h_tags.begin(), h_tags.end());

    std::vector<ErrorTermSeries> series(tags.size());
    parallel_for_indexed(tags.size(), g_threads,
                         [&](size_t i) { series[i] = residual_series(tags[i], p, grid, ctx); });

    for (size_t i = 0; i < tags.size(); ++i) {
        auto env = envelope_test(series[i]);
        bool is_a = theorem_is_A(tags[i]);
        bool ok = is_a ? env.monotone_ok : env.anchored_ok;
        char buf[200];
        std::snprintf(buf, sizeof(buf), "%-9s %s: %s, slope %.3f vs claimed %.3f",
                      theorem_token(tags[i]),
                      is_a ? "trend (max 2nd half <= max 1st half)" : "anchored 2x envelope",
                      ok ? "ok" : "EXCEEDED", env.fitted_slope, series[i].claimed_exponent);
        note(buf);
        if (!ok) pass = false;
    }
    return pass;
}

// ---------------------------------------------------------------------------
// criterion 5: Y residual-as-difference vs explicit formula
// ---------------------------------------------------------------------------
bool criterion5(const PrecisionContext& ctx) {
    SweepParams p;
    p.s = 2;
    DivisorTables tables(500, ctx);
    bool pass = true;
    std::vector<uint64_t> xs{10, 50, 100, 500};
    for (TheoremTag tag : {TheoremTag::APhi, TheoremTag::APsi}) {
        auto series = residual_series(tag, p, xs, ctx);
        for (size_t i = 0; i < xs.size(); ++i) {
            double x = (double)xs[i];
            Real alt = y_explicit(tag, x, p, tables, ctx);
            Real bound = y_crosscheck_bound(tag, x, p, ctx);
            if (abs(series.values[i] - alt) > bound) {
                pass = false;
                char buf[160];
                std::snprintf(buf, sizeof(buf), "%s x=%g: |diff|=%.3e > bound %.3e",
                              theorem_token(tag), x,
                              abs(series.values[i] - alt).to_double(), bound.to_double());
                note(buf);
            }
        }
    }
    return pass;
}

// ---------------------------------------------------------------------------
// criterion 6: Dirichlet-series closed forms within rigorous tail bounds
// ---------------------------------------------------------------------------
bool criterion6(const PrecisionContext& ctx) {
    struct Job {
        Family fam;
        int s;
    };
    std::vector<Job> jobs;
    for (int s : {2, 3})
        for (Family fam : {Family::PhiS, Family::PsiS, Family::PhiSA, Family::PsiSA})
            jobs.push_back({fam, s});

    std::vector<std::string> failures(jobs.size());
    parallel_for_indexed(jobs.size(), g_threads, [&](size_t i) {
        auto p = family_params(jobs[i].fam, jobs[i].s);
        std::string fail;
        for (double w : {2.0, 3.0, 5.0}) {
            auto ck = check_K(w, 10000, p, ctx);
            if (!ck.pass)
                fail += "K w=" + std::to_string((int)w) + " ";
            for (int m : {1, 2}) {
                auto cl = check_L(w, m, 10000, p, ctx);
                if (!cl.pass)
                    fail += "L m=" + std::to_string(m) + " w=" + std::to_string((int)w) + " ";
            }
        }
        failures[i] = fail;
    });
    bool pass = true;
    for (size_t i = 0; i < jobs.size(); ++i) {
        if (!failures[i].empty()) {
            pass = false;
            note(std::string(family_token(jobs[i].fam)) + " s=" + std::to_string(jobs[i].s) +
                 ": " + failures[i]);
        }
    }
    return pass;
}

// ---------------------------------------------------------------------------
// criterion 7: special-function certification
// ---------------------------------------------------------------------------
bool criterion7(const PrecisionContext& ctx) {
    bool pass = true;
    Real bound = pow(ctx.real(10L), -(long)(ctx.digits() - 5));

    std::vector<uint8_t> gauss_ok(499, 1);
    parallel_for_indexed(499, g_threads, [&](size_t i) {
        int n = (int)i + 2;
        Real acc(0L, ctx.bits());
        for (int j = 1; j < n; ++j) acc += log_gamma(ctx.real((long)j) / ctx.real((long)n));
        Real rhs = ctx.real((long)(n - 1)) / 2L * ctx.ln_2pi() - ln(ctx.real((long)n)) / 2L;
        if (abs(acc - rhs) > ctx.real((long)n) * bound) gauss_ok[i] = 0;
    });
    for (size_t i = 0; i < gauss_ok.size(); ++i)
        if (!gauss_ok[i]) {
            pass = false;
            note("gauss product failed at n=" + std::to_string(i + 2));
        }

    for (int i = 1; i <= 99; ++i) {
        Real x = ctx.real((long)i) / ctx.real(100L);
        Real lhs = log_gamma(x) + log_gamma(1L - x);
        Real rhs = ln(ctx.pi()) - ln(sin(ctx.pi() * x));
        if (abs(lhs - rhs) > ctx.identity_tol() * 16L * (1L + abs(rhs))) {
            pass = false;
            note("reflection failed at x=" + std::to_string(i) + "/100");
        }
    }

    for (int m = 0; m <= 12; ++m) {
        for (int n = 1; n <= 64; ++n) {
            Real acc(0L, ctx.bits());
            for (int j = 0; j < n; ++j)
                acc += bernoulli_poly(m, ctx.real((long)j) / ctx.real((long)n));
            Real rhs = pow(ctx.real((long)n), 1 - m) * ctx.real(bernoulli_number(m));
            if (abs(acc - rhs) > ctx.identity_tol() * (1L + abs(rhs))) {
                pass = false;
                note("multiplication theorem failed at m=" + std::to_string(m) +
                     " n=" + std::to_string(n));
            }
        }
    }

    Real tol35 = pow(ctx.real(10L), -35L);
    Real pi2 = ctx.pi() * ctx.pi();
    if (abs(zeta(2.0, ctx) - pi2 / 6L) > tol35) {
        pass = false;
        note("zeta(2) != pi^2/6 at 1e-35");
    }
    if (abs(zeta(4.0, ctx) - pi2 * pi2 / 90L) > tol35) {
        pass = false;
        note("zeta(4) != pi^4/90 at 1e-35");
    }
    return pass;
}

// ---------------------------------------------------------------------------
// criterion 8: worker-count determinism of the CSV bodies
// ---------------------------------------------------------------------------
bool criterion8() {
    fs::path base = fs::temp_directory_path() / "gcdsum_accept";
    fs::remove_all(base);
    fs::create_directories(base);
    auto dir1 = (base / "t1").string(), dir8 = (base / "t8").string();
    std::string cmd1 = "\"" + g_cli + "\" report-all --threads 1 --out \"" + dir1 + "\" > " +
                       (base / "log1.txt").string() + " 2>&1";
    std::string cmd8 = "\"" + g_cli + "\" report-all --threads 8 --out \"" + dir8 + "\" > " +
                       (base / "log8.txt").string() + " 2>&1";
    int rc1 = std::system(cmd1.c_str());
    int rc8 = std::system(cmd8.c_str());
    // report-all returns 1 when envelope blocks fail; both runs must agree
    if ((rc1 != 0 && rc1 != 256) || (rc8 != 0 && rc8 != 256) || rc1 != rc8) {
        note("report-all exit codes differ or crashed: " + std::to_string(rc1) + " vs " +
             std::to_string(rc8));
        return false;
    }

    auto slurp = [](const fs::path& p) {
        std::ifstream is(p, std::ios::binary);
        std::stringstream ss;
        ss << is.rdbuf();
        return ss.str();
    };
    size_t count = 0;
    bool pass = true;
    for (const auto& entry : fs::directory_iterator(dir1)) {
        if (entry.path().extension() != ".csv") continue;
        ++count;
        fs::path other = fs::path(dir8) / entry.path().filename();
        if (!fs::exists(other)) {
            note("missing in 8-thread run: " + entry.path().filename().string());
            pass = false;
            continue;
        }
        if (!csv_equal_modulo_timestamp(slurp(entry.path()), slurp(other))) {
            note("bodies differ: " + entry.path().filename().string());
            pass = false;
        }
    }
    if (count < 50) {
        note("unexpectedly few reports: " + std::to_string(count));
        pass = false;
    }
    note(std::to_string(count) + " report bodies compared");
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <gcdsum-cli-path> [threads]\n");
        return 2;
    }
    g_cli = argv[1];
    unsigned hw = std::thread::hardware_concurrency();
    g_threads = argc > 2 ? std::atoi(argv[2]) : (int)std::min(8u, hw ? hw : 2u);

    PrecisionContext ctx(40);
    bool all = true;
    {
        Timer t;
        all &= report_criterion(1, "exact identity suite (A/H/M, 5 families, s in {2,3})",
                                criterion1(ctx), t.seconds());
    }
    {
        Timer t;
        all &= report_criterion(2, "oracle equivalence (gauss-fast vs direct A; nu loops)",
                                criterion2(ctx), t.seconds());
    }
    {
        Timer t;
        all &= report_criterion(3, "lemma residual envelopes (anchored 2x at x=100)",
                                criterion3(ctx), t.seconds());
    }
    {
        Timer t;
        all &= report_criterion(4, "theorem residual envelopes", criterion4(ctx), t.seconds());
    }
    {
        Timer t;
        all &= report_criterion(5, "gamma-weighted residual cross-check (two routes)",
                                criterion5(ctx), t.seconds());
    }
    {
        Timer t;
        all &= report_criterion(6, "Dirichlet series truncations within tail bounds",
                                criterion6(ctx), t.seconds());
    }
    {
        Timer t;
        all &= report_criterion(7, "special-function certification", criterion7(ctx),
                                t.seconds());
    }
    {
        Timer t;
        all &= report_criterion(8, "worker-count determinism of CSV bodies", criterion8(),
                                t.seconds());
    }
    std::printf("%s\n", all ? "acceptance: all criteria pass"
                            : "acceptance: failures present (see notes above)");
    return all ? 0 : 1;
}
