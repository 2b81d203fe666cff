#include "gcdsum/sums.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gcdsum {

const char* family_token(Family f) {
    switch (f) {
        case Family::PhiS: return "phi_s";
        case Family::PsiS: return "psi_s";
        case Family::PhiSA: return "phi_sa";
        case Family::PsiSA: return "psi_sa";
        case Family::One: return "one";
        case Family::Custom: return "custom";
    }
    return "unknown";
}

std::optional<Family> family_from_token(const std::string& tok) {
    if (tok == "phi_s") return Family::PhiS;
    if (tok == "psi_s") return Family::PsiS;
    if (tok == "phi_sa" || tok == "phi_s+a") return Family::PhiSA;
    if (tok == "psi_sa" || tok == "psi_s+a") return Family::PsiSA;
    if (tok == "one") return Family::One;
    if (tok == "custom") return Family::Custom;
    return std::nullopt;
}

void SweepParams::validate(bool theorem_scope) const {
    int min_s = theorem_scope ? 2 : 1;
    if (s < min_s) throw std::domain_error("params: s must be >= " + std::to_string(min_s));
    if (m < 1) throw std::domain_error("params: m must be >= 1");
    if (r < 1) throw std::domain_error("params: r must be >= 1");
    bool needs_a = family == Family::PhiSA || family == Family::PsiSA;
    if (needs_a) {
        if (!a) throw std::domain_error("params: family requires a");
        if (!(*a > -1.0 && *a < 0.0)) throw std::domain_error("params: a must lie in (-1, 0)");
    }
    if (family == Family::Custom && !custom_f)
        throw std::domain_error("params: custom family requires a table");
    for (size_t i = 0; i < x_grid.size(); ++i) {
        if (x_grid[i] < 1) throw std::domain_error("params: grid points must be >= 1");
        if (i > 0 && x_grid[i] <= x_grid[i - 1])
            throw std::domain_error("params: grid must be strictly increasing");
    }
}

double SweepParams::family_exponent() const {
    if (family == Family::PhiSA || family == Family::PsiSA) return (double)s + a.value();
    return (double)s;
}

std::string SweepParams::family_label() const {
    if (family == Family::Custom && custom_f) return custom_f->name();
    return family_token(family);
}

SweepTables make_sweep_tables(const SweepParams& params, uint64_t n,
                              const PrecisionContext& ctx) {
    std::shared_ptr<const ArithTable> f;
    switch (params.family) {
        case Family::PhiS:
            f = std::make_shared<ArithTable>(sieve(FunctionId::jordan_phi(params.s), n, ctx));
            break;
        case Family::PsiS:
            f = std::make_shared<ArithTable>(sieve(FunctionId::dedekind_psi(params.s), n, ctx));
            break;
        case Family::PhiSA:
            f = std::make_shared<ArithTable>(
                sieve(FunctionId::jordan_phi(params.family_exponent()), n, ctx));
            break;
        case Family::PsiSA:
            f = std::make_shared<ArithTable>(
                sieve(FunctionId::dedekind_psi(params.family_exponent()), n, ctx));
            break;
        case Family::One:
            f = std::make_shared<ArithTable>(sieve(FunctionId::one(), n, ctx));
            break;
        case Family::Custom:
            if (!params.custom_f || params.custom_f->size() < n)
                throw std::invalid_argument("make_sweep_tables: custom table too short");
            f = params.custom_f;
            break;
    }
    auto mu = sieve(FunctionId::mobius(), n, ctx);
    auto f_mu = std::make_shared<ArithTable>(dirichlet_convolve(*f, mu));
    return {std::move(f), std::move(f_mu)};
}

Real anderson_apostol(uint64_t j, uint64_t k, const ArithTable& f, const ArithTable& g,
                      const PrecisionContext& ctx) {
    if (k > f.size() || k > g.size())
        throw std::out_of_range("anderson_apostol: table too short");
    uint64_t g0 = std::gcd(j, k);
    Real acc(0L, ctx.bits());
    for (uint64_t d : divisors(g0)) acc += f.value(d, ctx.bits()) * g.value(k / d, ctx.bits());
    return acc;
}

Real anderson_apostol_spower(uint64_t j, uint64_t k, int s, const ArithTable& f,
                             const ArithTable& g, const PrecisionContext& ctx) {
    if (k > f.size() || k > g.size())
        throw std::out_of_range("anderson_apostol_spower: table too short");
    uint64_t root = (j == 0) ? k : gcd_spower_root(j, k, s);
    Real acc(0L, ctx.bits());
    for (uint64_t d : divisors(root)) acc += f.value(d, ctx.bits()) * g.value(k / d, ctx.bits());
    return acc;
}

namespace {

// Thread-local Mobius values, grown on demand.
const std::vector<int8_t>& mobius_upto(uint64_t n) {
    thread_local std::vector<int8_t> mu;
    if (mu.size() < n + 1) mu = mobius_vector(std::max<uint64_t>(2 * n, 64));
    return mu;
}

}  // namespace

BigInt cohen_ramanujan(uint64_t j, uint64_t k, int s) {
    const auto& mu = mobius_upto(k);
    uint64_t root = (j == 0) ? k : gcd_spower_root(j, k, s);
    BigInt acc = 0;
    for (uint64_t d : divisors(root)) {
        if (mu[k / d] == 0) continue;
        BigInt p;
        mpz_ui_pow_ui(p.get_mpz_t(), d, (unsigned long)s);
        if (mu[k / d] > 0)
            acc += p;
        else
            acc -= p;
    }
    return acc;
}

Real ramanujan_exponential(uint64_t j, uint64_t k, const PrecisionContext& ctx) {
    Real acc(0L, ctx.bits());
    Real two_pi = ctx.pi() * 2L;
    for (uint64_t m = 1; m <= k; ++m) {
        if (std::gcd(m, k) != 1) continue;
        uint64_t rem = (uint64_t)(((__uint128_t)m * j) % k);
        acc += cos(two_pi * ctx.real(rem) / ctx.real(k));
    }
    return acc;
}

Real pillai(uint64_t n, const ArithTable* f, const PrecisionContext& ctx) {
    if (f && n > f->size()) throw std::out_of_range("pillai: table too short");
    auto phi = sieve(FunctionId::jordan_phi(1), n, ctx);
    Real acc(0L, ctx.bits());
    for (uint64_t d : divisors(n)) {
        Real fd = f ? f->value(d, ctx.bits()) : ctx.real(d);
        acc += fd * Real(phi.int_at(n / d), ctx.bits());
    }
    return acc;
}

Real pillai_direct(uint64_t n, const ArithTable* f, const PrecisionContext& ctx) {
    if (f && n > f->size()) throw std::out_of_range("pillai_direct: table too short");
    Real acc(0L, ctx.bits());
    for (uint64_t k = 1; k <= n; ++k) {
        uint64_t d = std::gcd(k, n);
        acc += f ? f->value(d, ctx.bits()) : ctx.real(d);
    }
    return acc;
}

namespace {

uint64_t checked_pow(uint64_t base, int e, uint64_t cap, const char* what) {
    __uint128_t p = 1;
    for (int i = 0; i < e; ++i) {
        p *= base;
        if (p > cap) throw ResourceCapError(what);
    }
    return (uint64_t)p;
}

}  // namespace

Real kappa(uint64_t k, int s, const ArithTable& f, const ArithTable& g,
           const PrecisionContext& ctx) {
    if (k > f.size() || k > g.size()) throw std::out_of_range("kappa: table too short");
    mpfr_prec_t p = ctx.bits();
    Real acc_ratio(0L, p);  // (f/id_s * g)(k)
    Real acc_conv(0L, p);   // (f*g)(k)
    Real acc_log(0L, p);    // (f * g log)(k)
    for (uint64_t d : divisors(k)) {
        uint64_t l = k / d;
        Real fd = f.value(d, p);
        if (fd.is_zero()) continue;
        Real gl = g.value(l, p);
        if (gl.is_zero()) continue;
        Real fg = fd * gl;
        BigInt ds;
        mpz_ui_pow_ui(ds.get_mpz_t(), d, (unsigned long)s);
        acc_ratio += fg / Real(ds, p);
        acc_conv += fg;
        if (l > 1) acc_log += fg * ln(ctx.real(l));
    }
    BigInt ks;
    mpz_ui_pow_ui(ks.get_mpz_t(), k, (unsigned long)s);
    Real inv_ks = 1L / Real(ks, p);
    return ctx.ln_sqrt_2pi() * (acc_ratio - acc_conv * inv_ks) -
           ctx.real((long)s) / 2L * inv_ks * acc_log;
}

Real kappa_direct(uint64_t k, int s, const ArithTable& f, const ArithTable& g,
                  const PrecisionContext& ctx) {
    uint64_t ks = checked_pow(k, s, kKappaDirectCap, "kappa_direct: k^s exceeds cap");
    mpfr_prec_t p = ctx.bits();
    Real acc(0L, p);
    Real inv_ks = 1L / ctx.real(ks);
    for (uint64_t j = 1; j <= ks; ++j) {
        Real sk = anderson_apostol_spower(j, k, s, f, g, ctx);
        if (sk.is_zero()) continue;
        acc += sk * log_gamma(ctx.real(j) * inv_ks);
    }
    return acc * inv_ks;
}

Real nu(uint64_t k, int s, int m, const ArithTable& f, const ArithTable& g,
        const PrecisionContext& ctx) {
    if (k > f.size() || k > g.size()) throw std::out_of_range("nu: table too short");
    BigRational bm = bernoulli_number(m);
    mpfr_prec_t p = ctx.bits();
    if (bm == 0) return Real(0L, p);
    Real acc(0L, p);
    for (uint64_t d : divisors(k)) {
        uint64_t l = k / d;
        Real fd = f.value(d, p);
        if (fd.is_zero()) continue;
        Real gl = g.value(l, p);
        if (gl.is_zero()) continue;
        BigInt ds, lms;
        mpz_ui_pow_ui(ds.get_mpz_t(), d, (unsigned long)s);
        mpz_ui_pow_ui(lms.get_mpz_t(), l, (unsigned long)(m * s));
        acc += fd * gl / Real(BigInt(ds * lms), p);
    }
    return Real(bm, p) * acc;
}

Real nu_direct(uint64_t k, int s, int m, const ArithTable& f, const ArithTable& g,
               const PrecisionContext& ctx) {
    uint64_t ks = checked_pow(k, s, kNuDirectCap, "nu_direct: k^s exceeds cap");
    mpfr_prec_t p = ctx.bits();
    Real acc(0L, p);
    Real inv_ks = 1L / ctx.real(ks);
    for (uint64_t j = 0; j < ks; ++j) {
        Real sk = anderson_apostol_spower(j, k, s, f, g, ctx);
        if (sk.is_zero()) continue;
        acc += sk * bernoulli_poly(m, ctx.real(j) * inv_ks);
    }
    return acc * inv_ks;
}

Real gauss_log_gamma_sum(uint64_t n, const PrecisionContext& ctx) {
    return ctx.real(BigInt((long)n - 1)) / 2L * ctx.ln_2pi() - ln(ctx.real(n)) / 2L;
}

namespace {

// Per-k inner terms of A^{(s)} over k = 1..x_max bucketed by k, fast mode:
// a_k = sum_{d|k} (f*mu)(d) G((k/d)^s) with the k^{-s} division applied
// during the final prefix walk.
std::vector<Real> a_buckets_fast(uint64_t xmax, int s, const ArithTable& f_mu,
                                 const PrecisionContext& ctx) {
    mpfr_prec_t p = ctx.bits();
    // G(t^s) for t = 1..xmax
    std::vector<Real> g(xmax + 1, Real(0L, p));
    for (uint64_t t = 2; t <= xmax; ++t) {
        BigInt ts;
        mpz_ui_pow_ui(ts.get_mpz_t(), t, (unsigned long)s);
        g[t] = Real(BigInt(ts - 1), p) / 2L * ctx.ln_2pi() -
               ctx.real((long)s) / 2L * ln(ctx.real(t));
    }
    std::vector<Real> a(xmax + 1, Real(0L, p));
    Real term(p);
    for (uint64_t d = 1; d <= xmax; ++d) {
        Real fd = f_mu.value(d, p);
        if (fd.is_zero()) continue;
        for (uint64_t t = 2; d * t <= xmax; ++t) {
            mpfr_mul(term.raw(), fd.raw(), g[t].raw(), MPFR_RNDN);
            mpfr_add(a[d * t].raw(), a[d * t].raw(), term.raw(), MPFR_RNDN);
        }
    }
    return a;
}

Real a_term_direct(uint64_t k, int s, const std::vector<Real>& fmu_real,
                   const PrecisionContext& ctx) {
    uint64_t ks = checked_pow(k, s, kADirectCap, "A_lhs direct: k^s exceeds cap");
    mpfr_prec_t p = ctx.bits();
    auto divs = divisors(k);
    std::vector<uint64_t> dpow(divs.size());
    for (size_t i = 0; i < divs.size(); ++i)
        dpow[i] = checked_pow(divs[i], s, kADirectCap, "A_lhs direct: d^s exceeds cap");
    Real inv_ks = 1L / ctx.real(ks);
    Real acc(0L, p), coef(p), x(p);
    for (uint64_t j = 1; j <= ks; ++j) {
        mpfr_set_ui(coef.raw(), 0, MPFR_RNDN);
        for (size_t i = 0; i < divs.size(); ++i)
            if (j % dpow[i] == 0)
                mpfr_add(coef.raw(), coef.raw(), fmu_real[divs[i]].raw(), MPFR_RNDN);
        if (coef.is_zero()) continue;
        mpfr_set_ui(x.raw(), j, MPFR_RNDN);
        mpfr_mul(x.raw(), x.raw(), inv_ks.raw(), MPFR_RNDN);
        acc += coef * log_gamma(x);
    }
    return acc * inv_ks;
}

std::vector<Real> fmu_reals(const ArithTable& f_mu, uint64_t n, const PrecisionContext& ctx) {
    std::vector<Real> v(n + 1, Real(0L, ctx.bits()));
    for (uint64_t d = 1; d <= n; ++d) v[d] = f_mu.value(d, ctx.bits());
    return v;
}

}  // namespace

Real A_lhs(double x, const SweepParams& params, SumMode mode, const PrecisionContext& ctx) {
    if (x < 1.0) throw std::domain_error("A_lhs: x must be >= 1");
    uint64_t xmax = (uint64_t)std::floor(x);
    auto tables = make_sweep_tables(params, xmax, ctx);
    Real acc(0L, ctx.bits());
    if (mode == SumMode::Fast) {
        auto a = a_buckets_fast(xmax, params.s, *tables.f_mu, ctx);
        for (uint64_t k = 2; k <= xmax; ++k) {
            if (a[k].is_zero()) continue;
            BigInt ks;
            mpz_ui_pow_ui(ks.get_mpz_t(), k, (unsigned long)params.s);
            acc += a[k] / Real(ks, ctx.bits());
        }
        return acc;
    }
    // direct: enforce the sum-of-k^s cap
    __uint128_t total = 0;
    for (uint64_t k = 1; k <= xmax; ++k) {
        __uint128_t ks = 1;
        for (int i = 0; i < params.s; ++i) ks *= k;
        total += ks;
        if (total > kADirectCap) throw ResourceCapError("A_lhs direct: sum k^s exceeds cap");
    }
    auto fr = fmu_reals(*tables.f_mu, xmax, ctx);
    for (uint64_t k = 1; k <= xmax; ++k) acc += a_term_direct(k, params.s, fr, ctx);
    return acc;
}

std::vector<Real> A_lhs_sweep(const SweepParams& params, const PrecisionContext& ctx) {
    uint64_t xmax = params.x_max();
    auto tables = make_sweep_tables(params, xmax, ctx);
    auto a = a_buckets_fast(xmax, params.s, *tables.f_mu, ctx);
    std::vector<Real> out;
    out.reserve(params.x_grid.size());
    Real acc(0L, ctx.bits());
    size_t gi = 0;
    for (uint64_t k = 1; k <= xmax && gi < params.x_grid.size(); ++k) {
        if (!a[k].is_zero()) {
            BigInt ks;
            mpz_ui_pow_ui(ks.get_mpz_t(), k, (unsigned long)params.s);
            acc += a[k] / Real(ks, ctx.bits());
        }
        while (gi < params.x_grid.size() && params.x_grid[gi] == k) {
            out.push_back(acc);
            ++gi;
        }
    }
    while (gi < params.x_grid.size()) {
        out.push_back(acc);
        ++gi;
    }
    return out;
}

namespace {

// Prefix sums Z_e[y] = sum_{l<=y} l^{-e}.
std::vector<Real> inverse_power_prefix(uint64_t n, unsigned long e, const PrecisionContext& ctx) {
    mpfr_prec_t p = ctx.bits();
    std::vector<Real> z(n + 1, Real(0L, p));
    Real term(p);
    for (uint64_t l = 1; l <= n; ++l) {
        BigInt le;
        mpz_ui_pow_ui(le.get_mpz_t(), l, e);
        mpfr_set_z(term.raw(), le.get_mpz_t(), MPFR_RNDN);
        mpfr_ui_div(term.raw(), 1, term.raw(), MPFR_RNDN);
        mpfr_add(z[l].raw(), z[l - 1].raw(), term.raw(), MPFR_RNDN);
    }
    return z;
}

Real h_value(uint64_t x, const SweepParams& params, const ArithTable& f_mu,
             const std::vector<Real>& zprefix, const PrecisionContext& ctx) {
    BigRational bm = bernoulli_number(params.m);
    mpfr_prec_t p = ctx.bits();
    if (bm == 0) return Real(0L, p);
    Real acc(0L, p);
    for (uint64_t d = 1; d <= x; ++d) {
        Real fd = f_mu.value(d, p);
        if (fd.is_zero()) continue;
        BigInt ds;
        mpz_ui_pow_ui(ds.get_mpz_t(), d, (unsigned long)params.s);
        acc += fd * zprefix[x / d] / Real(ds, p);
    }
    return Real(bm, p) * acc;
}

}  // namespace

Real H_lhs(double x, const SweepParams& params, const PrecisionContext& ctx) {
    if (x < 1.0) throw std::domain_error("H_lhs: x must be >= 1");
    uint64_t xmax = (uint64_t)std::floor(x);
    auto tables = make_sweep_tables(params, xmax, ctx);
    auto z = inverse_power_prefix(xmax, (unsigned long)(params.m * params.s), ctx);
    return h_value(xmax, params, *tables.f_mu, z, ctx);
}

std::vector<Real> H_lhs_sweep(const SweepParams& params, const PrecisionContext& ctx) {
    uint64_t xmax = params.x_max();
    auto tables = make_sweep_tables(params, xmax, ctx);
    auto z = inverse_power_prefix(xmax, (unsigned long)(params.m * params.s), ctx);
    std::vector<Real> out;
    out.reserve(params.x_grid.size());
    for (uint64_t x : params.x_grid) out.push_back(h_value(x, params, *tables.f_mu, z, ctx));
    return out;
}

Real H_lhs_direct(double x, const SweepParams& params, const PrecisionContext& ctx) {
    if (x < 1.0) throw std::domain_error("H_lhs_direct: x must be >= 1");
    uint64_t xmax = (uint64_t)std::floor(x);
    auto tables = make_sweep_tables(params, xmax, ctx);
    auto fr = fmu_reals(*tables.f_mu, xmax, ctx);
    mpfr_prec_t p = ctx.bits();
    Real acc(0L, p);
    for (uint64_t k = 1; k <= xmax; ++k) {
        uint64_t ks = checked_pow(k, params.s, kNuDirectCap, "H_lhs_direct: k^s exceeds cap");
        auto divs = divisors(k);
        std::vector<uint64_t> dpow(divs.size());
        for (size_t i = 0; i < divs.size(); ++i) {
            __uint128_t dp = 1;
            for (int q = 0; q < params.s; ++q) dp *= divs[i];
            dpow[i] = (uint64_t)dp;
        }
        Real inv_ks = 1L / ctx.real(ks);
        Real inner(0L, p), coef(p);
        for (uint64_t j = 0; j < ks; ++j) {
            mpfr_set_ui(coef.raw(), 0, MPFR_RNDN);
            for (size_t i = 0; i < divs.size(); ++i)
                if (j % dpow[i] == 0)
                    mpfr_add(coef.raw(), coef.raw(), fr[divs[i]].raw(), MPFR_RNDN);
            if (coef.is_zero()) continue;
            inner += coef * bernoulli_poly(params.m, ctx.real(j) * inv_ks);
        }
        acc += inner * inv_ks;
    }
    return acc;
}

namespace {

// W_r[y] = sum_{t<=y} S_r(t^s) / t^{s(r+1)} with S_r the exact power sum.
std::vector<Real> faulhaber_prefix(uint64_t n, int s, int r, const PrecisionContext& ctx) {
    mpfr_prec_t p = ctx.bits();
    std::vector<Real> w(n + 1, Real(0L, p));
    for (uint64_t t = 1; t <= n; ++t) {
        BigInt ts;
        mpz_ui_pow_ui(ts.get_mpz_t(), t, (unsigned long)s);
        BigRational sr = exact_power_sum(ts, r);
        BigInt tsr1;
        mpz_ui_pow_ui(tsr1.get_mpz_t(), t, (unsigned long)(s * (r + 1)));
        sr /= BigRational(tsr1);
        w[t] = w[t - 1] + Real(sr, p);
    }
    return w;
}

Real m_value(uint64_t x, const SweepParams& params, const ArithTable& f_mu,
             const std::vector<Real>& wprefix, const PrecisionContext& ctx) {
    mpfr_prec_t p = ctx.bits();
    Real acc(0L, p);
    for (uint64_t d = 1; d <= x; ++d) {
        Real fd = f_mu.value(d, p);
        if (fd.is_zero()) continue;
        BigInt ds;
        mpz_ui_pow_ui(ds.get_mpz_t(), d, (unsigned long)params.s);
        acc += fd * wprefix[x / d] / Real(ds, p);
    }
    return acc;
}

}  // namespace

Real M_lhs(double x, const SweepParams& params, SumMode mode, const PrecisionContext& ctx) {
    if (x < 1.0) throw std::domain_error("M_lhs: x must be >= 1");
    uint64_t xmax = (uint64_t)std::floor(x);
    auto tables = make_sweep_tables(params, xmax, ctx);
    mpfr_prec_t p = ctx.bits();
    if (mode == SumMode::Fast) {
        auto w = faulhaber_prefix(xmax, params.s, params.r, ctx);
        return m_value(xmax, params, *tables.f_mu, w, ctx);
    }
    __uint128_t total = 0;
    for (uint64_t k = 1; k <= xmax; ++k) {
        __uint128_t ks = 1;
        for (int i = 0; i < params.s; ++i) ks *= k;
        total += ks;
        if (total > kADirectCap) throw ResourceCapError("M_lhs direct: sum k^s exceeds cap");
    }
    auto fr = fmu_reals(*tables.f_mu, xmax, ctx);
    Real acc(0L, p);
    for (uint64_t k = 1; k <= xmax; ++k) {
        uint64_t ks = 1;
        for (int i = 0; i < params.s; ++i) ks *= k;
        auto divs = divisors(k);
        std::vector<uint64_t> dpow(divs.size());
        for (size_t i = 0; i < divs.size(); ++i) {
            __uint128_t dp = 1;
            for (int q = 0; q < params.s; ++q) dp *= divs[i];
            dpow[i] = (uint64_t)dp;
        }
        Real inner(0L, p), coef(p), jr(p);
        for (uint64_t j = 1; j <= ks; ++j) {
            mpfr_set_ui(coef.raw(), 0, MPFR_RNDN);
            for (size_t i = 0; i < divs.size(); ++i)
                if (j % dpow[i] == 0)
                    mpfr_add(coef.raw(), coef.raw(), fr[divs[i]].raw(), MPFR_RNDN);
            if (coef.is_zero()) continue;
            mpfr_set_ui(jr.raw(), j, MPFR_RNDN);
            mpfr_pow_ui(jr.raw(), jr.raw(), (unsigned long)params.r, MPFR_RNDN);
            inner += coef * jr;
        }
        BigInt ksr1;
        mpz_ui_pow_ui(ksr1.get_mpz_t(), k, (unsigned long)(params.s * (params.r + 1)));
        acc += inner / Real(ksr1, p);
    }
    return acc;
}

std::vector<Real> M_lhs_sweep(const SweepParams& params, const PrecisionContext& ctx) {
    uint64_t xmax = params.x_max();
    auto tables = make_sweep_tables(params, xmax, ctx);
    auto w = faulhaber_prefix(xmax, params.s, params.r, ctx);
    std::vector<Real> out;
    out.reserve(params.x_grid.size());
    for (uint64_t x : params.x_grid) out.push_back(m_value(x, params, *tables.f_mu, w, ctx));
    return out;
}

}  // namespace gcdsum
