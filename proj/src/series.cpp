#include "gcdsum/series.hpp"

#include "gcdsum/report.hpp"

#include <cmath>
#include <ostream>

namespace gcdsum {

namespace {

void check_tail_args(double w, uint64_t n) {
    if (!(w > 1.0)) throw std::domain_error("tail bound: requires w > 1");
    if (n < 1) throw std::domain_error("tail bound: requires N >= 1");
}

}  // namespace

Real tail_zeta(double w, uint64_t n, const PrecisionContext& ctx) {
    check_tail_args(w, n);
    Real rn = ctx.real(n);
    Real wm1 = ctx.real(w - 1.0);
    Real n1mw = pow(rn, ctx.real(1.0 - w));
    return n1mw / wm1 + n1mw / rn;
}

Real tail_zeta_log(double w, uint64_t n, const PrecisionContext& ctx) {
    check_tail_args(w, n);
    Real rn = ctx.real(n);
    Real wm1 = ctx.real(w - 1.0);
    Real n1mw = pow(rn, ctx.real(1.0 - w));
    return n1mw * (ln(rn) / wm1 + 1L / (wm1 * wm1)) + ln(rn * 2L) * n1mw / rn;
}

Real tail_tau(double w, uint64_t n, const PrecisionContext& ctx) {
    check_tail_args(w, n);
    Real rn = ctx.real(n);
    Real wm1 = ctx.real(w - 1.0);
    Real n1mw = pow(rn, ctx.real(1.0 - w));
    Real lnn = ln(rn);
    return n1mw * (lnn + 1L) / wm1 + n1mw +
           zeta(w, ctx) * (n1mw / wm1 + n1mw / rn);
}

Real tail_tau_log(double w, uint64_t n, const PrecisionContext& ctx) {
    check_tail_args(w, n);
    Real rn = ctx.real(n);
    Real wm1 = ctx.real(w - 1.0);
    Real n1mw = pow(rn, ctx.real(1.0 - w));
    Real lnn = ln(rn);
    Real inner = n1mw * (lnn * (lnn + 1L) / wm1 + (lnn + 1L) / (wm1 * wm1)) +
                 n1mw * ln(rn * 2L) +
                 (-zeta_deriv(w, ctx)) * (n1mw / wm1 + n1mw / rn);
    return inner * 2L;
}

namespace {

void check_series_args(double w, const SweepParams& params) {
    if (w < kSeriesMinW)
        throw std::domain_error("dirichlet series: w below the adopted threshold 2");
    params.validate(true);
}

Real inv_power(uint64_t k, double w, const PrecisionContext& ctx) {
    if (w == std::floor(w)) {
        Real r = ctx.real(k);
        return pow(r, -(long)w);
    }
    return pow(ctx.real(k), ctx.real(-w));
}

// Dirichlet series F(u) of the family f itself, evaluated at u = w + s.
Real family_series(double w, const SweepParams& params, const PrecisionContext& ctx) {
    double s = (double)params.s;
    double a = params.a.value_or(-0.5);
    switch (params.family) {
        case Family::PhiS: return zeta(w, ctx) / zeta(w + s, ctx);
        case Family::PsiS: return zeta(w, ctx) * zeta(w + s, ctx) / zeta(2.0 * w + 2.0 * s, ctx);
        case Family::PhiSA: return zeta(w - a, ctx) / zeta(w + s, ctx);
        case Family::PsiSA:
            return zeta(w - a, ctx) * zeta(w + s, ctx) / zeta(2.0 * w + 2.0 * s, ctx);
        case Family::One: return zeta(w + s, ctx);
        case Family::Custom:
            throw std::domain_error("dirichlet series: no closed form for custom tables");
    }
    throw std::logic_error("family_series: unhandled family");
}

}  // namespace

Real K_truncated(double w, uint64_t n, const SweepParams& params, const PrecisionContext& ctx) {
    check_series_args(w, params);
    if (n < 10) throw std::domain_error("K_truncated: N must be >= 10");
    auto tables = make_sweep_tables(params, n, ctx);
    auto one = sieve(FunctionId::one(), n, ctx);
    Real acc(0L, ctx.bits());
    for (uint64_t k = 2; k <= n; ++k)
        acc += kappa(k, params.s, *tables.f_mu, one, ctx) * inv_power(k, w, ctx);
    return acc;
}

Real K_closed(double w, const SweepParams& params, const PrecisionContext& ctx) {
    check_series_args(w, params);
    double s = (double)params.s;
    Real F = family_series(w, params, ctx);
    Real zw = zeta(w, ctx);
    Real zws = zeta(w + s, ctx);
    return ctx.ln_sqrt_2pi() * F * (zw / zws - 1L) +
           ctx.real((long)params.s) / 2L * F * zeta_deriv(w + s, ctx) / zws;
}

Real L_truncated(double w, int m, uint64_t n, const SweepParams& params,
                 const PrecisionContext& ctx) {
    check_series_args(w, params);
    if (n < 10) throw std::domain_error("L_truncated: N must be >= 10");
    if (bernoulli_number(m) == 0) return Real(0L, ctx.bits());
    auto tables = make_sweep_tables(params, n, ctx);
    auto one = sieve(FunctionId::one(), n, ctx);
    Real acc(0L, ctx.bits());
    for (uint64_t k = 1; k <= n; ++k)
        acc += nu(k, params.s, m, *tables.f_mu, one, ctx) * inv_power(k, w, ctx);
    return acc;
}

Real L_closed(double w, int m, const SweepParams& params, const PrecisionContext& ctx) {
    check_series_args(w, params);
    BigRational bm = bernoulli_number(m);
    if (bm == 0) return Real(0L, ctx.bits());
    double s = (double)params.s;
    Real F = family_series(w, params, ctx);
    return Real(bm, ctx.bits()) * F * zeta(w + (double)m * s, ctx) / zeta(w + s, ctx);
}

namespace {

// Largest |(f*mu)(d)|/d^s over the table; >= 1 because d = 1 gives f(1) = 1,
// and for the implemented families the multiplicative local factors keep it
// at exactly 1.
Real family_majorant(uint64_t n, const SweepParams& params, const PrecisionContext& ctx) {
    auto tables = make_sweep_tables(params, n, ctx);
    mpfr_prec_t p = ctx.bits();
    Real best(0L, p);
    for (uint64_t d = 1; d <= n; ++d) {
        BigInt ds;
        mpz_ui_pow_ui(ds.get_mpz_t(), d, (unsigned long)params.s);
        Real v = abs(tables.f_mu->value(d, p)) / Real(ds, p);
        if (v > best) best = v;
    }
    return best;
}

}  // namespace

Real kappa_tail_bound(double w, uint64_t n, const SweepParams& params,
                      const PrecisionContext& ctx) {
    check_series_args(w, params);
    double s = (double)params.s;
    Real cf = family_majorant(n, params, ctx);
    Real t1 = tail_zeta(w, n, ctx);
    Real bound = ctx.ln_sqrt_2pi() * (tail_tau(w, n, ctx) + zeta(s, ctx) * t1) +
                 ctx.real((long)params.s) / 2L * (-zeta_deriv(s, ctx)) * t1;
    return cf * bound;
}

Real nu_tail_bound(double w, int m, uint64_t n, const SweepParams& params,
                   const PrecisionContext& ctx) {
    check_series_args(w, params);
    BigRational bm = bernoulli_number(m);
    if (bm == 0) return Real(0L, ctx.bits());
    Real cf = family_majorant(n, params, ctx);
    Real babs(bm, ctx.bits());
    return abs(babs) * cf * zeta((double)(m * params.s), ctx) * tail_zeta(w, n, ctx);
}

SeriesCheck check_K(double w, uint64_t n, const SweepParams& params,
                    const PrecisionContext& ctx) {
    SeriesCheck c{w, n, K_truncated(w, n, params, ctx), K_closed(w, params, ctx),
                  kappa_tail_bound(w, n, params, ctx), false};
    c.pass = abs(c.truncated - c.closed) <= c.tail_bound;
    return c;
}

SeriesCheck check_L(double w, int m, uint64_t n, const SweepParams& params,
                    const PrecisionContext& ctx) {
    SeriesCheck c{w, n, L_truncated(w, m, n, params, ctx), L_closed(w, m, params, ctx),
                  nu_tail_bound(w, m, n, params, ctx), false};
    c.pass = abs(c.truncated - c.closed) <= c.tail_bound;
    return c;
}

void write_series_checks_csv(std::ostream& os, const std::vector<SeriesCheck>& checks, int digits,
                             const std::vector<std::pair<std::string, std::string>>& metadata) {
    for (const auto& [k, v] : metadata) detail::write_metadata_line(os, k, v);
    os << "w,N,truncated,closed,tail_bound,pass\n";
    for (const auto& c : checks) {
        char wb[40];
        std::snprintf(wb, sizeof(wb), "%g", c.w);
        os << wb << "," << c.truncation << "," << detail::format_real(c.truncated, digits) << ","
           << detail::format_real(c.closed, digits) << ","
           << detail::format_real(c.tail_bound, digits) << "," << (c.pass ? 1 : 0) << "\n";
    }
}

}  // namespace gcdsum
