#include "gcdsum/identity.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

namespace gcdsum {

const char* identity_token(IdentityKind k) {
    switch (k) {
        case IdentityKind::A: return "A";
        case IdentityKind::H: return "H";
        case IdentityKind::M: return "M";
    }
    return "?";
}

std::optional<IdentityKind> identity_from_token(const std::string& tok) {
    if (tok == "A" || tok == "a") return IdentityKind::A;
    if (tok == "H" || tok == "h") return IdentityKind::H;
    if (tok == "M" || tok == "m") return IdentityKind::M;
    return std::nullopt;
}

bool VerificationReport::all_pass() const {
    for (const auto& r : rows)
        if (!r.pass) return false;
    return true;
}

RhsTables make_rhs_tables(const SweepParams& params, uint64_t n, const PrecisionContext& ctx) {
    RhsTables t;
    t.base = make_sweep_tables(params, n, ctx);
    auto phi_s = sieve(FunctionId::jordan_phi(params.s), n, ctx);
    auto lambda = sieve(FunctionId::mangoldt(), n, ctx);
    t.f_phi_s = std::make_shared<ArithTable>(dirichlet_convolve(*t.base.f, phi_s));
    t.f_lambda = std::make_shared<ArithTable>(dirichlet_convolve(*t.base.f, lambda));
    return t;
}

Real rhs_A(double x, const SweepParams& params, const RhsTables& tables,
           const PrecisionContext& ctx) {
    double s = (double)params.s;
    Real acc = ctx.ln_sqrt_2pi() * (weighted_partial_sum(*tables.f_phi_s, x, s, ctx) -
                                    weighted_partial_sum(*tables.base.f, x, s, ctx));
    acc -= ctx.real((long)params.s) / 2L * weighted_partial_sum(*tables.f_lambda, x, s, ctx);
    return acc;
}

namespace {

// sum_{d<=x} (f*mu)(d) d^{-s} Z(floor(x/d)) with Z a prefix table.
Real fmu_hyperbola(uint64_t x, int s, const ArithTable& f_mu, const std::vector<Real>& z,
                   const PrecisionContext& ctx) {
    mpfr_prec_t p = ctx.bits();
    Real acc(0L, p);
    for (uint64_t d = 1; d <= x; ++d) {
        Real fd = f_mu.value(d, p);
        if (fd.is_zero()) continue;
        BigInt ds;
        mpz_ui_pow_ui(ds.get_mpz_t(), d, (unsigned long)s);
        acc += fd * z[x / d] / Real(ds, p);
    }
    return acc;
}

std::vector<Real> inv_power_prefix(uint64_t n, unsigned long e, const PrecisionContext& ctx) {
    std::vector<Real> z(n + 1, Real(0L, ctx.bits()));
    Real term(ctx.bits());
    for (uint64_t l = 1; l <= n; ++l) {
        BigInt le;
        mpz_ui_pow_ui(le.get_mpz_t(), l, e);
        mpfr_set_z(term.raw(), le.get_mpz_t(), MPFR_RNDN);
        mpfr_ui_div(term.raw(), 1, term.raw(), MPFR_RNDN);
        mpfr_add(z[l].raw(), z[l - 1].raw(), term.raw(), MPFR_RNDN);
    }
    return z;
}

}  // namespace

Real rhs_H(double x, const SweepParams& params, const RhsTables& tables,
           const PrecisionContext& ctx) {
    uint64_t xi = (uint64_t)std::floor(x);
    mpfr_prec_t p = ctx.bits();
    BigRational bm = bernoulli_number(params.m);
    if (bm == 0) return Real(0L, p);
    if (params.m == 1) {
        // B_1 sum_{dl<=x} (f*mu)(d)/(dl)^s telescopes to -(1/2) sum f(n)/n^s
        return Real(BigRational(-1, 2), p) *
               weighted_partial_sum(*tables.base.f, x, (double)params.s, ctx);
    }
    // regroup by n = dl: sum_n ((f*mu)/id_s * id_{-ms})(n)
    std::vector<Real> fmu_over(xi, Real(0L, p));
    for (uint64_t d = 1; d <= xi; ++d) {
        BigInt ds;
        mpz_ui_pow_ui(ds.get_mpz_t(), d, (unsigned long)params.s);
        fmu_over[d - 1] = tables.base.f_mu->value(d, p) / Real(ds, p);
    }
    auto lhs_tab = ArithTable::reals("fmu_over_ids", std::move(fmu_over));
    auto id_negms = sieve(FunctionId::id_pow(-(double)(params.m * params.s)), xi, ctx);
    auto conv = dirichlet_convolve(lhs_tab, id_negms);
    return Real(bm, p) * weighted_partial_sum(conv, x, 0.0, ctx);
}

Real rhs_M(double x, const SweepParams& params, const RhsTables& tables,
           const PrecisionContext& ctx) {
    uint64_t xi = (uint64_t)std::floor(x);
    mpfr_prec_t p = ctx.bits();
    int r = params.r;
    Real acc = weighted_partial_sum(*tables.base.f, x, (double)params.s, ctx) / 2L;

    // (1/(r+1)) sum_{dl<=x} (f*mu)(d)/d^s : the l-count is floor(x/d)
    std::vector<Real> count(xi + 1, Real(0L, p));
    for (uint64_t l = 1; l <= xi; ++l) count[l] = ctx.real(l);
    Real middle = fmu_hyperbola(xi, params.s, *tables.base.f_mu, count, ctx);
    Real inv_r1 = 1L / ctx.real((long)(r + 1));
    acc += inv_r1 * middle;

    for (int mm = 1; 2 * mm <= r; ++mm) {
        auto z = inv_power_prefix(xi, (unsigned long)(2 * mm * params.s), ctx);
        Real piece = fmu_hyperbola(xi, params.s, *tables.base.f_mu, z, ctx);
        Real coef(BigRational(binomial(r + 1, 2 * mm)) * bernoulli_number(2 * mm), p);
        acc += inv_r1 * coef * piece;
    }
    return acc;
}

namespace {

std::string utc_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

VerificationReport verify_identity(IdentityKind which, const SweepParams& params,
                                   const PrecisionContext& ctx, SumMode mode) {
    params.validate(false);
    if (params.x_grid.empty()) throw std::domain_error("verify_identity: empty x grid");

    VerificationReport rep;
    rep.which = which;
    rep.params = params;
    rep.digits = ctx.digits();
    rep.version = GCDSUM_VERSION;
    rep.timestamp = utc_timestamp();

    uint64_t xmax = params.x_max();
    std::vector<Real> lhs;
    if (mode == SumMode::Direct) {
        rep.mode = "direct";
        lhs.reserve(params.x_grid.size());
        for (uint64_t x : params.x_grid) {
            switch (which) {
                case IdentityKind::A:
                    lhs.push_back(A_lhs((double)x, params, SumMode::Direct, ctx));
                    break;
                case IdentityKind::H:
                    lhs.push_back(H_lhs_direct((double)x, params, ctx));
                    break;
                case IdentityKind::M:
                    lhs.push_back(M_lhs((double)x, params, SumMode::Direct, ctx));
                    break;
            }
        }
    } else {
        switch (which) {
            case IdentityKind::A:
                lhs = A_lhs_sweep(params, ctx);
                rep.mode = "gauss-fast";
                break;
            case IdentityKind::H:
                lhs = H_lhs_sweep(params, ctx);
                rep.mode = "prefix";
                break;
            case IdentityKind::M:
                lhs = M_lhs_sweep(params, ctx);
                rep.mode = "faulhaber";
                break;
        }
    }

    auto tables = make_rhs_tables(params, xmax, ctx);
    rep.rows.reserve(params.x_grid.size());
    for (size_t i = 0; i < params.x_grid.size(); ++i) {
        double x = (double)params.x_grid[i];
        Real rhs(0L, ctx.bits());
        switch (which) {
            case IdentityKind::A: rhs = rhs_A(x, params, tables, ctx); break;
            case IdentityKind::H: rhs = rhs_H(x, params, tables, ctx); break;
            case IdentityKind::M: rhs = rhs_M(x, params, tables, ctx); break;
        }
        ReportRow row{x, lhs[i], rhs, abs(lhs[i] - rhs), Real(0L, ctx.bits()), false};
        row.tolerance = ctx.identity_tol() * (1L + abs(row.lhs));
        row.pass = row.abs_residual <= row.tolerance;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace gcdsum
