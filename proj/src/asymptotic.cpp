#include "gcdsum/asymptotic.hpp"

#include "gcdsum/report.hpp"
#include "gcdsum/series.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace gcdsum {

EnvelopeResult envelope_test(const ErrorTermSeries& series) {
    EnvelopeResult res{true, true, 0.0, true, 0.0};
    size_t n = series.values.size();
    if (n == 0) return res;

    auto env = [&](double x) {
        double e = std::pow(x, series.claimed_exponent);
        if (series.log_factor_power > 0)
            e *= std::pow(std::log(std::max(x, 2.0)), series.log_factor_power);
        return e;
    };

    std::vector<double> u(n);
    for (size_t i = 0; i < n; ++i)
        u[i] = std::abs(series.values[i].to_double()) / env(series.grid[i]);

    double max_first = 0.0, max_second = 0.0;
    for (size_t i = 0; i < n; ++i)
        (i < n / 2 ? max_first : max_second) = std::max(i < n / 2 ? max_first : max_second, u[i]);
    res.monotone_ok = n < 2 || max_second <= max_first;
    res.max_normalized = std::max(max_first, max_second);

    double anchor = u[0];
    for (size_t i = 0; i < n; ++i)
        if (u[i] > 2.0 * anchor) res.anchored_ok = false;

    // informational log-log slope over points clear of sign-change dips
    double maxabs = 0.0;
    for (size_t i = 0; i < n; ++i)
        maxabs = std::max(maxabs, std::abs(series.values[i].to_double()));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (size_t i = 0; i < n; ++i) {
        double v = std::abs(series.values[i].to_double());
        if (v <= 1e-3 * maxabs || v == 0.0) continue;
        double lx = std::log(series.grid[i]), ly = std::log(v);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++cnt;
    }
    if (cnt >= 2 && sxx * cnt - sx * sx > 1e-12) {
        res.fitted_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
        res.slope_ok = res.fitted_slope <= series.claimed_exponent + 0.1;
    } else {
        res.fitted_slope = series.claimed_exponent;
        res.slope_ok = true;
    }
    return res;
}

std::vector<uint64_t> make_geometric_grid(uint64_t lo, uint64_t hi, double ratio) {
    if (lo < 1 || hi < lo || ratio <= 1.0)
        throw std::domain_error("make_geometric_grid: need 1 <= lo <= hi, ratio > 1");
    std::vector<uint64_t> g;
    double x = (double)lo;
    while (x < (double)hi) {
        uint64_t xi = (uint64_t)std::llround(x);
        if (g.empty() || xi > g.back()) g.push_back(xi);
        x *= ratio;
    }
    if (g.empty() || g.back() != hi) g.push_back(hi);
    return g;
}

DivisorTables::DivisorTables(uint64_t n, const PrecisionContext& ctx)
    : ctx_(ctx), n_(n), z1ma_(0L, ctx.bits()), z1pa_(0L, ctx.bits()), zma_(0L, ctx.bits()) {
    auto tau = sieve(FunctionId::tau(), n, ctx);
    tau_prefix_.resize(n + 1);
    tau_prefix_[0] = 0;
    for (uint64_t i = 1; i <= n; ++i) tau_prefix_[i] = tau_prefix_[i - 1] + tau.int_at(i);
}

Real DivisorTables::delta(double x) const {
    if (x < 1.0 || x > (double)n_) throw std::out_of_range("delta: x outside table");
    uint64_t xi = (uint64_t)std::floor(x);
    Real rx = ctx_.real(x);
    Real out(tau_prefix_[xi], ctx_.bits());
    out -= rx * ln(rx);
    out -= (ctx_.euler_gamma() * 2L - 1L) * rx;
    return out;
}

Real DivisorTables::delta_a(double x, double a) {
    if (x < 1.0 || x > (double)n_) throw std::out_of_range("delta_a: x outside table");
    if (!(a > -1.0 && a < 0.0)) throw std::domain_error("delta_a: a must lie in (-1, 0)");
    if (a != a_ || sigma_prefix_.empty()) {
        a_ = a;
        auto sig = sieve(FunctionId::sigma_pow(a), n_, ctx_);
        sigma_prefix_.assign(n_ + 1, Real(0L, ctx_.bits()));
        for (uint64_t i = 1; i <= n_; ++i) sigma_prefix_[i] = sigma_prefix_[i - 1] + sig.real_at(i);
        z1ma_ = zeta(1.0 - a, ctx_);
        z1pa_ = zeta(1.0 + a, ctx_);
        zma_ = zeta(-a, ctx_);
    }
    uint64_t xi = (uint64_t)std::floor(x);
    Real rx = ctx_.real(x);
    Real out = sigma_prefix_[xi];
    out -= z1ma_ * rx;
    out -= z1pa_ / ctx_.real(1.0 + a) * pow(rx, ctx_.real(1.0 + a));
    out += zma_ / 2L;
    return out;
}

Real delta(double x, const PrecisionContext& ctx) {
    DivisorTables t((uint64_t)std::floor(x), ctx);
    return t.delta(x);
}

Real delta_a(double x, double a, const PrecisionContext& ctx) {
    DivisorTables t((uint64_t)std::floor(x), ctx);
    return t.delta_a(x, a);
}

namespace {

// -sum_{d<=x} kernel(d)/d^s theta(x/d), exact sawtooth values at integer x.
Real sawtooth_mobius_sum(double x, int s, DVariant variant, const std::vector<int8_t>& mu,
                         const PrecisionContext& ctx) {
    uint64_t xi = (uint64_t)std::floor(x);
    bool integral = (x == (double)xi);
    mpfr_prec_t p = ctx.bits();
    Real acc(0L, p);
    for (uint64_t d = 1; d <= xi; ++d) {
        int coef = variant == DVariant::Mobius ? mu[d] : std::abs(mu[d]);
        if (coef == 0) continue;
        Real th = integral ? theta_saw_rational(BigInt(xi), BigInt(d), p)
                           : theta_saw(ctx.real(x) / ctx.real(d));
        BigInt ds;
        mpz_ui_pow_ui(ds.get_mpz_t(), d, (unsigned long)s);
        if (coef > 0)
            acc -= th / Real(ds, p);
        else
            acc += th / Real(ds, p);
    }
    return acc;
}

}  // namespace

Real d_correction(double x, int s, DVariant variant, const PrecisionContext& ctx) {
    if (x < 1.0) throw std::domain_error("d_correction: x must be >= 1");
    if (s < 2) throw std::domain_error("d_correction: s must be >= 2");
    auto mu = mobius_vector((uint64_t)std::floor(x));
    Real acc = sawtooth_mobius_sum(x, s, variant, mu, ctx);
    if (variant == DVariant::Mobius)
        acc -= 1L / (zeta((double)s, ctx) * 2L);
    else
        acc -= zeta((double)s, ctx) / (zeta(2.0 * s, ctx) * 2L);
    return acc;
}

const char* theorem_token(TheoremTag tag) {
    switch (tag) {
        case TheoremTag::APhi: return "A-phi";
        case TheoremTag::APhiA: return "A-phi-a";
        case TheoremTag::APsi: return "A-psi";
        case TheoremTag::APsiA: return "A-psi-a";
        case TheoremTag::H1Phi: return "H1-phi";
        case TheoremTag::H1Psi: return "H1-psi";
        case TheoremTag::H2mPhi: return "H2m-phi";
        case TheoremTag::H2mPsi: return "H2m-psi";
        case TheoremTag::H1PhiA: return "H1-phi-a";
        case TheoremTag::H1PsiA: return "H1-psi-a";
        case TheoremTag::H2mPhiA: return "H2m-phi-a";
        case TheoremTag::H2mPsiA: return "H2m-psi-a";
    }
    return "?";
}

std::optional<TheoremTag> theorem_from_token(const std::string& tok) {
    for (TheoremTag t :
         {TheoremTag::APhi, TheoremTag::APhiA, TheoremTag::APsi, TheoremTag::APsiA,
          TheoremTag::H1Phi, TheoremTag::H1Psi, TheoremTag::H2mPhi, TheoremTag::H2mPsi,
          TheoremTag::H1PhiA, TheoremTag::H1PsiA, TheoremTag::H2mPhiA, TheoremTag::H2mPsiA})
        if (tok == theorem_token(t)) return t;
    return std::nullopt;
}

Family theorem_family(TheoremTag tag) {
    switch (tag) {
        case TheoremTag::APhi:
        case TheoremTag::H1Phi:
        case TheoremTag::H2mPhi: return Family::PhiS;
        case TheoremTag::APsi:
        case TheoremTag::H1Psi:
        case TheoremTag::H2mPsi: return Family::PsiS;
        case TheoremTag::APhiA:
        case TheoremTag::H1PhiA:
        case TheoremTag::H2mPhiA: return Family::PhiSA;
        default: return Family::PsiSA;
    }
}

bool theorem_is_A(TheoremTag tag) {
    return tag == TheoremTag::APhi || tag == TheoremTag::APhiA || tag == TheoremTag::APsi ||
           tag == TheoremTag::APsiA;
}

namespace {

bool theorem_needs_a(TheoremTag tag) {
    Family f = theorem_family(tag);
    return f == Family::PhiSA || f == Family::PsiSA;
}

// x-coefficients of the displayed main terms; main(x) = c_xlnx x ln x
// + c_x x + c_x1a x^{1+a} + c_const (+ the D-term for the H_1 statements).
struct MainTermCoefs {
    Real c_xlnx, c_x, c_x1a, c_const;
    bool d_term = false;
    DVariant d_variant = DVariant::Mobius;

    MainTermCoefs(TheoremTag tag, const SweepParams& params, const PrecisionContext& ctx)
        : c_xlnx(0L, ctx.bits()),
          c_x(0L, ctx.bits()),
          c_x1a(0L, ctx.bits()),
          c_const(0L, ctx.bits()) {
        int s = params.s;
        double a = params.a.value_or(-0.5);
        const Real& L = ctx.ln_sqrt_2pi();
        Real two_g_minus_1 = ctx.euler_gamma() * 2L - 1L;
        switch (tag) {
            case TheoremTag::APhi: {
                Real z1 = zeta(s + 1.0, ctx), zd1 = zeta_deriv(s + 1.0, ctx);
                Real inv_sq = 1L / (z1 * z1);
                c_xlnx = L * inv_sq;
                c_x = ctx.real((long)s) * zd1 / 2L * inv_sq +
                      L * inv_sq * (two_g_minus_1 - 2L * zd1 / z1 - z1);
                break;
            }
            case TheoremTag::APsi: {
                Real z1 = zeta(s + 1.0, ctx), zd1 = zeta_deriv(s + 1.0, ctx);
                Real z2 = zeta(2.0 * s + 2.0, ctx), zd2 = zeta_deriv(2.0 * s + 2.0, ctx);
                c_xlnx = L / z2;
                c_x = ctx.real((long)s) * zd1 / (2L * z2) +
                      L / z2 * (two_g_minus_1 - 2L * zd2 / z2 - z1);
                break;
            }
            case TheoremTag::APhiA: {
                Real z1 = zeta(s + 1.0, ctx);
                Real zsa = zeta(s + a + 1.0, ctx), zdsa = zeta_deriv(s + a + 1.0, ctx);
                Real one_a = ctx.real(1.0 + a);
                c_x = L * zeta(1.0 - a, ctx) / (z1 * z1);
                c_x1a = ctx.real((long)s) * zdsa / (2L * one_a * zsa * zsa) +
                        L / one_a * (zeta(1.0 + a, ctx) / (zsa * zsa) - 1L / zsa);
                break;
            }
            case TheoremTag::APsiA: {
                Real z2 = zeta(2.0 * s + 2.0, ctx);
                Real zsa = zeta(s + a + 1.0, ctx), zdsa = zeta_deriv(s + a + 1.0, ctx);
                Real z2a = zeta(2.0 * s + 2.0 * a + 2.0, ctx);
                Real one_a = ctx.real(1.0 + a);
                c_x = L * zeta(1.0 - a, ctx) / z2;
                c_x1a = ctx.real((long)s) * zdsa / (2L * one_a * z2a) +
                        L / one_a * (zeta(1.0 + a, ctx) / z2a - zsa / z2a);
                break;
            }
            case TheoremTag::H1Phi:
                c_x = -1L / (2L * zeta(s + 1.0, ctx));
                d_term = true;
                d_variant = DVariant::Mobius;
                break;
            case TheoremTag::H1Psi:
                c_x = -zeta(s + 1.0, ctx) / (2L * zeta(2.0 * s + 2.0, ctx));
                d_term = true;
                d_variant = DVariant::AbsMobius;
                break;
            case TheoremTag::H2mPhi: {
                Real B(bernoulli_number(2 * params.m), ctx.bits());
                Real z1 = zeta(s + 1.0, ctx);
                c_x = B * zeta(2.0 * params.m * s + 1.0, ctx) / (z1 * z1);
                Real zs = zeta((double)s, ctx);
                c_const = -B * zeta(2.0 * params.m * s, ctx) / (2L * zs * zs);
                break;
            }
            case TheoremTag::H2mPsi: {
                Real B(bernoulli_number(2 * params.m), ctx.bits());
                c_x = B * zeta(2.0 * params.m * s + 1.0, ctx) / zeta(2.0 * s + 2.0, ctx);
                c_const = -B * zeta(2.0 * params.m * s, ctx) / (2L * zeta(2.0 * s, ctx));
                break;
            }
            case TheoremTag::H1PhiA:
                c_x1a = -1L / (2L * ctx.real(1.0 + a) * zeta(s + a + 1.0, ctx));
                c_const = -zeta(-a, ctx) / (2L * zeta((double)s, ctx));
                break;
            case TheoremTag::H1PsiA:
                c_x1a = -zeta(s + a + 1.0, ctx) /
                        (2L * ctx.real(1.0 + a) * zeta(2.0 * s + 2.0 * a + 2.0, ctx));
                c_const = -zeta(-a, ctx) * zeta((double)s, ctx) / (2L * zeta(2.0 * s, ctx));
                break;
            case TheoremTag::H2mPhiA: {
                Real B(bernoulli_number(2 * params.m), ctx.bits());
                Real zsa = zeta(s + a + 1.0, ctx);
                c_x1a = B * zeta(2.0 * params.m * s + a + 1.0, ctx) /
                        (ctx.real(1.0 + a) * zsa * zsa);
                Real zs = zeta((double)s, ctx);
                c_const = B * zeta(-a, ctx) * zeta(2.0 * params.m * s, ctx) / (zs * zs);
                break;
            }
            case TheoremTag::H2mPsiA: {
                Real B(bernoulli_number(2 * params.m), ctx.bits());
                c_x1a = B * zeta(2.0 * params.m * s + a + 1.0, ctx) /
                        (ctx.real(1.0 + a) * zeta(2.0 * s + 2.0 * a + 2.0, ctx));
                c_const = B * zeta(-a, ctx) * zeta(2.0 * params.m * s, ctx) /
                          zeta(2.0 * s, ctx);
                break;
            }
        }
    }

    Real eval(double x, double a, const PrecisionContext& ctx) const {
        Real rx = ctx.real(x);
        Real out = c_const;
        if (!c_xlnx.is_zero()) out += c_xlnx * rx * ln(rx);
        if (!c_x.is_zero()) out += c_x * rx;
        if (!c_x1a.is_zero()) out += c_x1a * pow(rx, ctx.real(1.0 + a));
        return out;
    }
};

}  // namespace

Real main_term(TheoremTag tag, double x, const SweepParams& params, const PrecisionContext& ctx) {
    SweepParams p = params;
    p.family = theorem_family(tag);
    if (theorem_needs_a(tag) && !p.a) throw std::domain_error("main_term: tag requires a");
    p.validate(true);
    MainTermCoefs coefs(tag, p, ctx);
    Real out = coefs.eval(x, p.a.value_or(-0.5), ctx);
    if (coefs.d_term) out -= d_correction(x, p.s, coefs.d_variant, ctx) / 2L;
    return out;
}

ErrorTermSeries residual_series(TheoremTag tag, const SweepParams& params,
                                const std::vector<uint64_t>& grid, const PrecisionContext& ctx) {
    SweepParams p = params;
    p.family = theorem_family(tag);
    p.x_grid = grid;
    if (theorem_is_A(tag)) {
        // Gamma-weighted sums
    } else if (tag == TheoremTag::H1Phi || tag == TheoremTag::H1Psi ||
               tag == TheoremTag::H1PhiA || tag == TheoremTag::H1PsiA) {
        p.m = 1;
    } else {
        p.m = 2 * params.m;
    }
    p.validate(true);

    std::vector<Real> lhs = theorem_is_A(tag) ? A_lhs_sweep(p, ctx) : H_lhs_sweep(p, ctx);

    SweepParams cp = params;
    cp.family = p.family;
    MainTermCoefs coefs(tag, cp, ctx);
    std::vector<int8_t> mu;
    if (coefs.d_term) mu = mobius_vector(grid.back());

    ErrorTermSeries out;
    out.label = theorem_token(tag);
    double a = params.a.value_or(-0.5);
    if (tag == TheoremTag::APhi || tag == TheoremTag::APsi) {
        out.claimed_exponent = 0.55;
    } else if (tag == TheoremTag::APhiA || tag == TheoremTag::APsiA) {
        out.claimed_exponent = (1.0 + a) / 3.0 + 0.05;
    } else if (theorem_needs_a(tag)) {
        out.claimed_exponent = a;
    } else {
        out.claimed_exponent = 1.0 - params.s;
        out.log_factor_power = 1;
    }

    Real zs(0L, ctx.bits()), z2s(0L, ctx.bits());
    if (coefs.d_term) {
        zs = zeta((double)params.s, ctx);
        z2s = zeta(2.0 * params.s, ctx);
    }
    out.grid.reserve(grid.size());
    out.values.reserve(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        double x = (double)grid[i];
        Real main = coefs.eval(x, a, ctx);
        if (coefs.d_term) {
            Real d = sawtooth_mobius_sum(x, params.s, coefs.d_variant, mu, ctx);
            if (coefs.d_variant == DVariant::Mobius)
                d -= 1L / (zs * 2L);
            else
                d -= zs / (z2s * 2L);
            main -= d / 2L;
        }
        out.grid.push_back(x);
        out.values.push_back(lhs[i] - main);
    }
    return out;
}

Real y_explicit(TheoremTag tag, double x, const SweepParams& params, DivisorTables& tables,
                const PrecisionContext& ctx) {
    if (tag != TheoremTag::APhi && tag != TheoremTag::APsi)
        throw std::domain_error("y_explicit: only the phi_s / psi_s Gamma-weighted tags");
    bool psi = tag == TheoremTag::APsi;
    int s = params.s;
    uint64_t xi = (uint64_t)std::floor(x);
    mpfr_prec_t p = ctx.bits();

    auto mu = sieve(FunctionId::mobius(), xi, ctx);
    auto lam = sieve(FunctionId::mangoldt(), xi, ctx);
    auto kernel1 = psi ? dirichlet_convolve(mu, sieve(FunctionId::abs_mobius(), xi, ctx))
                       : dirichlet_convolve(mu, mu);
    auto kernel2 = psi ? dirichlet_convolve(sieve(FunctionId::abs_mobius(), xi, ctx), lam)
                       : dirichlet_convolve(mu, lam);

    Real sum_delta(0L, p), sum_theta(0L, p);
    std::vector<int8_t> muv = mobius_vector(xi);
    for (uint64_t d = 1; d <= xi; ++d) {
        BigInt ds;
        mpz_ui_pow_ui(ds.get_mpz_t(), d, (unsigned long)s);
        Real inv_ds = 1L / Real(ds, p);
        if (kernel1.int_at(d) != 0)
            sum_delta += Real(kernel1.int_at(d), p) * inv_ds * tables.delta(x / (double)d);
        const Real& k2 = kernel2.real_at(d);
        if (!k2.is_zero()) {
            Real th = (x == (double)xi) ? theta_saw_rational(BigInt(xi), BigInt(d), p)
                                        : theta_saw(ctx.real(x) / ctx.real(d));
            sum_theta += k2 * inv_ds * th;
        }
    }

    Real zs = zeta((double)s, ctx);
    Real zds = zeta_deriv((double)s, ctx);
    Real constant = psi ? -ctx.real((long)s) * zds / (4L * zeta(2.0 * s, ctx))
                        : -ctx.real((long)s) * zds / (4L * zs * zs);
    Real dterm = d_correction(x, s, psi ? DVariant::AbsMobius : DVariant::Mobius, ctx);

    return ctx.ln_sqrt_2pi() * sum_delta + ctx.real((long)s) / 2L * sum_theta + constant -
           ctx.ln_sqrt_2pi() * dterm;
}

Real y_crosscheck_bound(TheoremTag tag, double x, const SweepParams& params,
                        const PrecisionContext& ctx) {
    if (tag != TheoremTag::APhi && tag != TheoremTag::APsi)
        throw std::domain_error("y_crosscheck_bound: only the phi_s / psi_s tags");
    int s = params.s;
    uint64_t n = (uint64_t)std::floor(x);
    Real rx = ctx.real(x);
    // dropped tails: the divisor-weighted sums behind the x ln x / x terms
    // (kernels bounded by tau), the plain Mobius tails and the Lambda-type
    // tails (kernel bounded by ln d)
    Real b1 = rx * ln(rx) * tail_tau(s + 1.0, n, ctx) + rx * tail_tau_log(s + 1.0, n, ctx) +
              abs(ctx.euler_gamma() * 2L - 1L) * rx * tail_tau(s + 1.0, n, ctx);
    Real b2 = rx * tail_zeta(s + 1.0, n, ctx) + tail_zeta((double)s, n, ctx) / 2L;
    Real b3 = rx * tail_zeta_log(s + 1.0, n, ctx) + tail_zeta_log((double)s, n, ctx) / 2L;
    return ctx.ln_sqrt_2pi() * (b1 + b2) + ctx.real((long)s) / 2L * b3;
}

const char* helper_token(HelperTag tag) {
    switch (tag) {
        case HelperTag::MuMu: return "mu-mu";
        case HelperTag::MuMuLog: return "mu-mu-log";
        case HelperTag::MuAbsMu: return "mu-absmu";
        case HelperTag::SigmaNeg: return "sigma-neg";
        case HelperTag::SigmaShift: return "sigma-shift";
        case HelperTag::PowerSum: return "power-sum";
        case HelperTag::Lemma31: return "lemma31";
        case HelperTag::Lemma32: return "lemma32";
    }
    return "?";
}

std::optional<HelperTag> helper_from_token(const std::string& tok) {
    for (HelperTag t : {HelperTag::MuMu, HelperTag::MuMuLog, HelperTag::MuAbsMu,
                        HelperTag::SigmaNeg, HelperTag::SigmaShift, HelperTag::PowerSum,
                        HelperTag::Lemma31, HelperTag::Lemma32})
        if (tok == helper_token(t)) return t;
    return std::nullopt;
}

ErrorTermSeries helper_sum_check(HelperTag tag, const SweepParams& params,
                                 const std::vector<uint64_t>& grid, const PrecisionContext& ctx) {
    if (grid.empty()) throw std::domain_error("helper_sum_check: empty grid");
    uint64_t xmax = grid.back();
    int s = params.s;
    int m = params.m;
    double a = params.a.value_or(-0.5);
    mpfr_prec_t p = ctx.bits();

    ErrorTermSeries out;
    out.label = helper_token(tag);
    out.grid.assign(grid.begin(), grid.end());
    out.values.reserve(grid.size());

    auto eval_prefix = [&](const ArithTable& tab, double weight, auto&& constant_at) {
        for (uint64_t x : grid) {
            Real sum = weighted_partial_sum(tab, (double)x, weight, ctx);
            out.values.push_back(sum - constant_at((double)x));
        }
    };

    switch (tag) {
        case HelperTag::MuMu: {
            auto mu = sieve(FunctionId::mobius(), xmax, ctx);
            auto mumu = dirichlet_convolve(mu, mu);
            Real c = 1L / (zeta(s + 1.0, ctx) * zeta(s + 1.0, ctx));
            eval_prefix(mumu, s + 1.0, [&](double) { return c; });
            out.claimed_exponent = -s;
            out.log_factor_power = 1;
            break;
        }
        case HelperTag::MuMuLog: {
            auto mu = sieve(FunctionId::mobius(), xmax, ctx);
            auto mumu = dirichlet_convolve(mu, mu);
            std::vector<Real> v;
            v.reserve(xmax);
            for (uint64_t d = 1; d <= xmax; ++d) {
                Real t = (d == 1) ? Real(0L, p) : Real(mumu.int_at(d), p) * ln(ctx.real(d));
                v.push_back(t);
            }
            auto tab = ArithTable::reals("mumu_log", std::move(v));
            Real z1 = zeta(s + 1.0, ctx);
            Real c = 2L * zeta_deriv(s + 1.0, ctx) / (z1 * z1 * z1);
            eval_prefix(tab, s + 1.0, [&](double) { return c; });
            out.claimed_exponent = -s;
            out.log_factor_power = 2;
            break;
        }
        case HelperTag::MuAbsMu: {
            auto mu = sieve(FunctionId::mobius(), xmax, ctx);
            auto amu = sieve(FunctionId::abs_mobius(), xmax, ctx);
            auto conv = dirichlet_convolve(mu, amu);
            Real c = 1L / zeta(2.0 * s + 2.0, ctx);
            eval_prefix(conv, s + 1.0, [&](double) { return c; });
            out.claimed_exponent = -s;
            out.log_factor_power = 1;
            break;
        }
        case HelperTag::SigmaNeg: {
            auto sig = sieve(FunctionId::sigma_pow(-2.0 * m * s), xmax, ctx);
            Real z1 = zeta(2.0 * m * s + 1.0, ctx), z0 = zeta(2.0 * m * s, ctx);
            eval_prefix(sig, 0.0, [&](double x) { return z1 * ctx.real(x) - z0 / 2L; });
            out.claimed_exponent = 1.0 - 2.0 * m * s;
            break;
        }
        case HelperTag::SigmaShift: {
            auto sig = sieve(FunctionId::sigma_pow(a + 2.0 * m * s), xmax, ctx);
            Real z1 = zeta(a + 2.0 * m * s + 1.0, ctx);
            Real z0 = zeta(-a, ctx) * zeta(2.0 * m * s, ctx);
            eval_prefix(sig, 2.0 * m * s, [&](double x) {
                return z1 / ctx.real(1.0 + a) * pow(ctx.real(x), ctx.real(1.0 + a)) + z0;
            });
            out.claimed_exponent = a;
            break;
        }
        case HelperTag::PowerSum: {
            auto id_a = sieve(FunctionId::id_pow(a), xmax, ctx);
            Real zma = zeta(-a, ctx);
            eval_prefix(id_a, 0.0, [&](double x) {
                return pow(ctx.real(x), ctx.real(1.0 + a)) / ctx.real(1.0 + a) + zma;
            });
            out.claimed_exponent = a;
            break;
        }
        case HelperTag::Lemma31: {
            bool psi = params.family == Family::PsiS || params.family == Family::PsiSA;
            auto f = sieve(psi ? FunctionId::dedekind_psi(s) : FunctionId::jordan_phi(s), xmax,
                           ctx);
            Real c = psi ? zeta(s + 1.0, ctx) / zeta(2.0 * s + 2.0, ctx)
                         : 1L / zeta(s + 1.0, ctx);
            auto mu = mobius_vector(xmax);
            Real zs = zeta((double)s, ctx), z2s = zeta(2.0 * s, ctx);
            for (uint64_t x : grid) {
                Real sum = weighted_partial_sum(f, (double)x, (double)s, ctx);
                Real d = sawtooth_mobius_sum((double)x, s,
                                             psi ? DVariant::AbsMobius : DVariant::Mobius, mu,
                                             ctx);
                if (psi)
                    d -= zs / (z2s * 2L);
                else
                    d -= 1L / (zs * 2L);
                out.values.push_back(sum - c * ctx.real(x) - d);
            }
            out.claimed_exponent = 1.0 - s;
            break;
        }
        case HelperTag::Lemma32: {
            bool psi = params.family == Family::PsiS || params.family == Family::PsiSA;
            double expo = s + a;
            auto f = sieve(psi ? FunctionId::dedekind_psi(expo) : FunctionId::jordan_phi(expo),
                           xmax, ctx);
            Real zsa = zeta(s + a + 1.0, ctx);
            Real c1 = psi ? zsa / (ctx.real(1.0 + a) * zeta(2.0 * s + 2.0 * a + 2.0, ctx))
                          : 1L / (ctx.real(1.0 + a) * zsa);
            Real c0 = psi ? zeta(-a, ctx) * zeta((double)s, ctx) / zeta(2.0 * s, ctx)
                          : zeta(-a, ctx) / zeta((double)s, ctx);
            eval_prefix(f, (double)s, [&](double x) {
                return c1 * pow(ctx.real(x), ctx.real(1.0 + a)) + c0;
            });
            out.claimed_exponent = a;
            break;
        }
    }
    return out;
}

void write_series_csv(std::ostream& os, const ErrorTermSeries& series, int digits,
                      const std::vector<std::pair<std::string, std::string>>& metadata) {
    detail::write_metadata_line(os, "series", series.label);
    detail::write_metadata_line(os, "claimed_exponent", std::to_string(series.claimed_exponent));
    detail::write_metadata_line(os, "log_power", std::to_string(series.log_factor_power));
    for (const auto& [k, v] : metadata) detail::write_metadata_line(os, k, v);
    os << "x,value,normalized,claimed_bound\n";
    auto env = [&](double x) {
        double e = std::pow(x, series.claimed_exponent);
        if (series.log_factor_power > 0)
            e *= std::pow(std::log(std::max(x, 2.0)), series.log_factor_power);
        return e;
    };
    double anchor = series.values.empty()
                        ? 0.0
                        : std::abs(series.values[0].to_double()) / env(series.grid[0]);
    for (size_t i = 0; i < series.values.size(); ++i) {
        double x = series.grid[i];
        double normalized = std::abs(series.values[i].to_double()) / env(x);
        char nb[64], cb[64];
        std::snprintf(nb, sizeof(nb), "%.12g", normalized);
        std::snprintf(cb, sizeof(cb), "%.12g", 2.0 * anchor * env(x));
        os << ((x == (double)(long long)x) ? std::to_string((long long)x)
                                           : std::to_string(x))
           << "," << detail::format_real(series.values[i], digits) << "," << nb << "," << cb
           << "\n";
    }
}

}  // namespace gcdsum
