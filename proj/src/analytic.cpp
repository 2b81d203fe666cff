#include "gcdsum/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace gcdsum {

namespace {

std::mutex g_bernoulli_mutex;
std::vector<BigRational> g_bernoulli;  // B_0, B_1, ...

// Decimal digits carried by a binary precision.
int digits_of_prec(mpfr_prec_t p) { return (int)((double)p * 0.30102999566398) + 1; }

}  // namespace

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigRational bernoulli_number(int n) {
    if (n < 0) throw std::domain_error("bernoulli_number: n must be >= 0");
    if (n > kBernoulliCap) throw std::domain_error("bernoulli_number: n exceeds cap 200");
    std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
    if (g_bernoulli.empty()) {
        g_bernoulli.emplace_back(1);
        g_bernoulli.emplace_back(-1, 2);
    }
    // Sum C(i+1,k) B_k = 0 for i >= 1, solved for B_i.
    while ((int)g_bernoulli.size() <= n) {
        int i = (int)g_bernoulli.size();
        if (i % 2 == 1) {
            g_bernoulli.emplace_back(0);
            continue;
        }
        BigRational acc(0);
        for (int k = 0; k < i; ++k) {
            if (k > 1 && k % 2 == 1) continue;
            acc += BigRational(binomial(i + 1, k)) * g_bernoulli[k];
        }
        acc /= BigRational(i + 1);
        g_bernoulli.push_back(-acc);
    }
    return g_bernoulli[n];
}

namespace {

std::mutex g_bpoly_mutex;
// bernoulli_poly coefficient rows: row m holds coef[j] of x^j, j = 0..m.
std::vector<std::vector<BigRational>> g_bpoly;

const std::vector<BigRational>& bpoly_row(int m) {
    std::lock_guard<std::mutex> lock(g_bpoly_mutex);
    while ((int)g_bpoly.size() <= m) {
        int mm = (int)g_bpoly.size();
        std::vector<BigRational> row((size_t)mm + 1);
        for (int j = 0; j <= mm; ++j)
            row[j] = BigRational(binomial(mm, j)) * bernoulli_number(mm - j);
        g_bpoly.push_back(std::move(row));
    }
    return g_bpoly[m];
}

}  // namespace

Real bernoulli_poly(int m, const Real& x) {
    if (m < 0 || m > kBernoulliCap) throw std::domain_error("bernoulli_poly: m out of range");
    const auto& row = bpoly_row(m);
    mpfr_prec_t p = x.prec();
    Real acc(row[m], p);
    for (int j = m - 1; j >= 0; --j) {
        acc *= x;
        acc += Real(row[j], p);
    }
    return acc;
}

BigRational bernoulli_poly_exact(int m, const BigInt& y) {
    if (m < 0 || m > kBernoulliCap) throw std::domain_error("bernoulli_poly_exact: m out of range");
    const auto& row = bpoly_row(m);
    BigRational acc = row[m];
    BigRational yy(y);
    for (int j = m - 1; j >= 0; --j) {
        acc *= yy;
        acc += row[j];
    }
    return acc;
}

BigRational exact_power_sum(const BigInt& n, int r) {
    if (r < 0) throw std::domain_error("exact_power_sum: r must be >= 0");
    if (n <= 0) return BigRational(0);
    // (B_{r+1}(n+1) - B_{r+1})/(r+1) counts l = 0..n; drop 0^r for r = 0.
    BigRational top = bernoulli_poly_exact(r + 1, n + 1) - bernoulli_number(r + 1);
    BigRational s = top / BigRational(r + 1);
    if (r == 0) s -= 1;
    return s;
}

namespace {

// Stirling coefficients B_{2j} / (2j (2j-1)), realized at a fixed precision.
struct StirlingCache {
    mpfr_prec_t prec = 0;
    std::vector<Real> coef;  // coef[j-1] for j = 1, 2, ...
};

thread_local StirlingCache t_stirling;

const std::vector<Real>& stirling_coefs(mpfr_prec_t prec, int count) {
    auto& c = t_stirling;
    if (c.prec != prec) {
        c.coef.clear();
        c.prec = prec;
    }
    while ((int)c.coef.size() < count) {
        int j = (int)c.coef.size() + 1;
        BigRational q = bernoulli_number(2 * j) / BigRational((2 * j) * (2 * j - 1));
        c.coef.emplace_back(q, prec);
    }
    return c.coef;
}

}  // namespace

namespace {

// Scratch-reusing Stirling evaluator; hot loops make millions of calls, so
// constants and temporaries are kept per thread and precision.
struct LogGammaWork {
    mpfr_prec_t outp = 0;
    mpfr_prec_t p = 0;
    long shift_to = 0;
    Real ln_sqrt_2pi;
    Real z, prod, t, acc, zpow, u, term, eps;

    void setup(mpfr_prec_t out_prec) {
        outp = out_prec;
        p = out_prec + 32;
        int d = digits_of_prec(p);
        shift_to = std::max(16L, (long)std::ceil(0.5 * d));
        Real two_pi = make_pi(p);
        mpfr_mul_2ui(two_pi.raw(), two_pi.raw(), 1, MPFR_RNDN);
        ln_sqrt_2pi = ln(two_pi) / 2L;
        for (Real* r : {&z, &prod, &t, &acc, &zpow, &u, &term, &eps})
            mpfr_set_prec(r->raw(), p);
        mpfr_set_ui_2exp(eps.raw(), 1, -(p - 8), MPFR_RNDN);
    }

    void eval(mpfr_srcptr x) {
        // log Gamma(x) = Stirling(x + K) - log( x (x+1) ... (x+K-1) )
        long K = 0;
        if (mpfr_cmp_si(x, shift_to) < 0) {
            K = shift_to - (long)std::floor(mpfr_get_d(x, MPFR_RNDD));
            mpfr_set(prod.raw(), x, MPFR_RNDN);
            for (long i = 1; i < K; ++i) {
                mpfr_add_si(t.raw(), x, i, MPFR_RNDN);
                mpfr_mul(prod.raw(), prod.raw(), t.raw(), MPFR_RNDN);
            }
        }
        mpfr_add_si(z.raw(), x, K, MPFR_RNDN);

        // (z - 1/2) ln z - z + ln sqrt(2pi) + sum_j c_j z^{1-2j}
        mpfr_log(t.raw(), z.raw(), MPFR_RNDN);
        mpfr_set(acc.raw(), z.raw(), MPFR_RNDN);
        mpfr_sub_d(acc.raw(), acc.raw(), 0.5, MPFR_RNDN);
        mpfr_mul(acc.raw(), acc.raw(), t.raw(), MPFR_RNDN);
        mpfr_sub(acc.raw(), acc.raw(), z.raw(), MPFR_RNDN);
        mpfr_add(acc.raw(), acc.raw(), ln_sqrt_2pi.raw(), MPFR_RNDN);

        mpfr_ui_div(zpow.raw(), 1, z.raw(), MPFR_RNDN);
        mpfr_mul(u.raw(), zpow.raw(), zpow.raw(), MPFR_RNDN);
        int max_terms = kBernoulliCap / 2;
        const auto& coef = stirling_coefs(p, max_terms);
        for (int j = 1; j <= max_terms; ++j) {
            mpfr_mul(term.raw(), coef[j - 1].raw(), zpow.raw(), MPFR_RNDN);
            mpfr_add(acc.raw(), acc.raw(), term.raw(), MPFR_RNDN);
            mpfr_abs(term.raw(), term.raw(), MPFR_RNDN);
            if (mpfr_cmp(term.raw(), eps.raw()) < 0) break;
            mpfr_mul(zpow.raw(), zpow.raw(), u.raw(), MPFR_RNDN);
        }

        if (K > 0) {
            mpfr_log(t.raw(), prod.raw(), MPFR_RNDN);
            mpfr_sub(acc.raw(), acc.raw(), t.raw(), MPFR_RNDN);
        }
    }
};

thread_local LogGammaWork t_lgamma;

}  // namespace

Real log_gamma(const Real& x) {
    if (x.sign() <= 0) throw std::domain_error("log_gamma: argument must be positive");
    if (x == 1 || x == 2) return Real(0L, x.prec());
    auto& w = t_lgamma;
    if (w.outp != x.prec()) w.setup(x.prec());
    w.eval(x.raw());
    Real out(x.prec());
    mpfr_set(out.raw(), w.acc.raw(), MPFR_RNDN);
    return out;
}

namespace {

// B_{2k} / (2k)! at a fixed precision, for the Euler-Maclaurin tail.
struct EmCache {
    mpfr_prec_t prec = 0;
    std::vector<Real> coef;  // coef[k-1] for k = 1, 2, ...
};

thread_local EmCache t_em;

const std::vector<Real>& em_coefs(mpfr_prec_t prec, int count) {
    auto& c = t_em;
    if (c.prec != prec) {
        c.coef.clear();
        c.prec = prec;
    }
    while ((int)c.coef.size() < count) {
        int k = (int)c.coef.size() + 1;
        BigInt fact;
        mpz_fac_ui(fact.get_mpz_t(), 2 * k);
        BigRational q = bernoulli_number(2 * k) / BigRational(fact);
        c.coef.emplace_back(q, prec);
    }
    return c.coef;
}

}  // namespace

Real zeta_em(const Real& sigma, int deriv, int cutoff, int order) {
    if (deriv != 0 && deriv != 1) throw std::domain_error("zeta_em: deriv must be 0 or 1");
    if (cutoff < 2) cutoff = 2;
    if (2 * order > kBernoulliCap) throw std::domain_error("zeta_em: order too large");
    mpfr_prec_t outp = sigma.prec();
    mpfr_prec_t p = outp + 32;
    long N = cutoff;

    Real s(sigma);
    mpfr_prec_round(s.raw(), p, MPFR_RNDN);
    Real acc(0L, p), dacc(0L, p);
    Real npow(p), lnn(p), t(p);
    for (long n = 1; n < N; ++n) {
        mpfr_set_si(t.raw(), n, MPFR_RNDN);
        mpfr_log(lnn.raw(), t.raw(), MPFR_RNDN);
        mpfr_mul(npow.raw(), lnn.raw(), s.raw(), MPFR_RNDN);
        mpfr_neg(npow.raw(), npow.raw(), MPFR_RNDN);
        mpfr_exp(npow.raw(), npow.raw(), MPFR_RNDN);  // n^{-s}
        acc += npow;
        if (deriv) {
            mpfr_mul(t.raw(), npow.raw(), lnn.raw(), MPFR_RNDN);
            dacc -= t;
        }
    }

    Real rn(p);
    mpfr_set_si(rn.raw(), N, MPFR_RNDN);
    Real lnN = ln(rn);
    Real Npow = exp(-(s * lnN));  // N^{-s}
    Real sm1 = s - 1L;
    Real T1 = Npow * rn / sm1;  // N^{1-s}/(s-1)
    acc += T1;
    Real half(0.5, p);
    acc += Npow * half;
    if (deriv) {
        dacc += -T1 * lnN - T1 / sm1;
        dacc += -Npow * half * lnN;
    }

    // Correction terms: q_k (s)(s+1)...(s+2k-2) N^{-s-2k+1}, q_k = B_{2k}/(2k)!
    const auto& coef = em_coefs(p, order);
    Real P = s;                 // Pochhammer (s)_{2k-1}
    Real H = 1L / s;            // sum 1/(s+i), i = 0..2k-2
    Real zp = Npow * rn;        // N^{-s-2k+1}, starts at N^{1-s}
    Real invN2 = 1L / (rn * rn);
    zp *= invN2;                // N^{-s-1}
    for (int k = 1; k <= order; ++k) {
        if (k > 1) {
            Real a = s + (long)(2 * k - 3);
            Real b = s + (long)(2 * k - 2);
            P *= a * b;
            H += 1L / a + 1L / b;
            zp *= invN2;
        }
        Real term = coef[k - 1] * P * zp;
        acc += term;
        if (deriv) dacc += term * (H - lnN);
    }

    Real out = deriv ? dacc : acc;
    mpfr_prec_round(out.raw(), outp, MPFR_RNDN);
    return out;
}

namespace {

void check_zeta_domain(const Real& sigma, int deriv) {
    if (sigma == 1) throw std::domain_error("zeta: pole at sigma = 1");
    if (sigma.sign() <= 0) throw std::domain_error("zeta: sigma must be positive");
    if (deriv == 1 && sigma <= 1) throw std::domain_error("zeta_deriv: requires sigma > 1");
}

Real zeta_dispatch(const Real& sigma, int deriv, const PrecisionContext& ctx) {
    check_zeta_domain(sigma, deriv);
    int cutoff = std::max(16, ctx.digits() + 8);
    int order = std::max(10, (int)std::ceil(0.75 * ctx.digits()));
    if (2 * order > kBernoulliCap) order = kBernoulliCap / 2;
    return zeta_em(sigma, deriv, cutoff, order);
}

}  // namespace

Real zeta(const Real& sigma, const PrecisionContext& ctx) { return zeta_dispatch(sigma, 0, ctx); }
Real zeta(double sigma, const PrecisionContext& ctx) { return zeta(ctx.real(sigma), ctx); }
Real zeta_deriv(const Real& sigma, const PrecisionContext& ctx) { return zeta_dispatch(sigma, 1, ctx); }
Real zeta_deriv(double sigma, const PrecisionContext& ctx) { return zeta_deriv(ctx.real(sigma), ctx); }

Real euler_gamma_value(mpfr_prec_t prec) {
    mpfr_prec_t p = prec + 32;
    int d = digits_of_prec(p);
    long N = std::max(24L, (long)std::ceil(0.8 * d));

    BigRational harmonic(0);
    for (long n = 1; n <= N; ++n) harmonic += BigRational(1, n);
    Real acc(harmonic, p);
    Real rn((unsigned long)N, p);
    acc -= ln(rn);
    acc -= 1L / (2L * rn);

    // + sum_k B_{2k} / (2k N^{2k})
    Real invN2 = 1L / (rn * rn);
    Real zp = invN2;
    Real eps(p);
    mpfr_set_ui_2exp(eps.raw(), 1, -(p - 8), MPFR_RNDN);
    for (int k = 1; 2 * k <= kBernoulliCap; ++k) {
        Real term(bernoulli_number(2 * k) / BigRational(2 * k), p);
        term *= zp;
        acc += term;
        if (abs(term) < eps) break;
        zp *= invN2;
    }
    mpfr_prec_round(acc.raw(), prec, MPFR_RNDN);
    return acc;
}

Real theta_saw(const Real& x) {
    if (x.sign() < 0) throw std::domain_error("theta_saw: x must be >= 0");
    Real r = x - floor(x);
    r -= Real(0.5, x.prec());
    return r;
}

Real theta_saw_rational(const BigInt& p, const BigInt& q, mpfr_prec_t prec) {
    BigInt r = p % q;
    Real out(r, prec);
    out /= Real(q, prec);
    out -= Real(0.5, prec);
    return out;
}

namespace {

mpfr_prec_t context_bits(int digits) {
    if (digits < 20) throw std::domain_error("PrecisionContext: digits must be >= 20");
    return (mpfr_prec_t)std::ceil((double)digits * 3.32192809488736) + 64;
}

}  // namespace

PrecisionContext::PrecisionContext(int digits)
    : digits_(digits),
      bits_(context_bits(digits)),
      identity_tol_(bits_),
      pi_(make_pi(bits_)),
      ln_2pi_(bits_),
      ln_sqrt_2pi_(bits_),
      euler_gamma_(euler_gamma_value(bits_)) {
    BigInt denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), 10, (unsigned long)(digits - 10));
    identity_tol_ = Real(1L, bits_) / Real(denom, bits_);
    Real two_pi = pi_;
    mpfr_mul_2ui(two_pi.raw(), two_pi.raw(), 1, MPFR_RNDN);
    ln_2pi_ = ln(two_pi);
    ln_sqrt_2pi_ = ln_2pi_ / 2L;
}

}  // namespace gcdsum
