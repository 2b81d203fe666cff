#include "gcdsum/arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gcdsum {

ArithTable ArithTable::exact(std::string name, std::vector<BigInt> values) {
    if (values.empty()) throw std::invalid_argument("ArithTable: empty table");
    ArithTable t(std::move(name), Kind::ExactInt, values.size());
    t.ints_ = std::move(values);
    return t;
}

ArithTable ArithTable::rational(std::string name, std::vector<BigRational> values) {
    if (values.empty()) throw std::invalid_argument("ArithTable: empty table");
    ArithTable t(std::move(name), Kind::ExactRat, values.size());
    t.rats_ = std::move(values);
    return t;
}

ArithTable ArithTable::reals(std::string name, std::vector<Real> values) {
    if (values.empty()) throw std::invalid_argument("ArithTable: empty table");
    ArithTable t(std::move(name), Kind::RealVal, values.size());
    t.reals_ = std::move(values);
    return t;
}

Real ArithTable::value(uint64_t n, mpfr_prec_t prec) const {
    switch (kind_) {
        case Kind::ExactInt: return Real(ints_[n - 1], prec);
        case Kind::ExactRat: return Real(rats_[n - 1], prec);
        default: {
            Real r = reals_[n - 1];
            if (r.prec() < prec) mpfr_prec_round(r.raw(), prec, MPFR_RNDN);
            return r;
        }
    }
}

std::string FunctionId::label() const {
    auto expo = [&](const char* base) {
        std::string s(base);
        s += "_";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", exponent);
        s += buf;
        return s;
    };
    switch (kind) {
        case Kind::Mobius: return "mobius";
        case Kind::AbsMobius: return "abs_mobius";
        case Kind::Mangoldt: return "mangoldt";
        case Kind::Tau: return "tau";
        case Kind::One: return "one";
        case Kind::IdPow: return expo("id");
        case Kind::SigmaPow: return expo("sigma");
        case Kind::JordanPhi: return expo("phi");
        case Kind::DedekindPsi: return expo("psi");
    }
    return "unknown";
}

std::vector<int8_t> mobius_vector(uint64_t n) {
    std::vector<int8_t> mu(n + 1, 0);
    std::vector<uint32_t> spf(n + 1, 0);
    std::vector<uint32_t> primes;
    mu[1] = 1;
    for (uint64_t i = 2; i <= n; ++i) {
        if (spf[i] == 0) {
            spf[i] = (uint32_t)i;
            mu[i] = -1;
            primes.push_back((uint32_t)i);
        }
        for (uint32_t p : primes) {
            if (p > spf[i] || (uint64_t)p * i > n) break;
            spf[p * i] = p;
            mu[p * i] = (i % p == 0) ? 0 : (int8_t)(-mu[i]);
        }
    }
    return mu;
}

std::vector<std::pair<uint64_t, uint32_t>> mangoldt_tags(uint64_t n) {
    std::vector<std::pair<uint64_t, uint32_t>> tags(n, {0, 0});
    std::vector<bool> composite(n + 1, false);
    for (uint64_t p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        for (uint64_t q = p * p; q <= n; q += p) composite[q] = true;
        uint64_t q = p;
        uint32_t e = 1;
        while (q <= n) {
            tags[q - 1] = {p, e};
            if (q > n / p) break;
            q *= p;
            ++e;
        }
    }
    return tags;
}

namespace {

bool integral_exponent(double a) { return a == std::floor(a) && std::abs(a) < 1e15; }

std::vector<BigInt> exact_powers(uint64_t n, unsigned long e) {
    std::vector<BigInt> p(n + 1);
    for (uint64_t i = 1; i <= n; ++i) mpz_ui_pow_ui(p[i].get_mpz_t(), i, e);
    return p;
}

// l^a for l = 1..n at working precision, a arbitrary real.
std::vector<Real> real_powers(uint64_t n, double a, mpfr_prec_t prec) {
    std::vector<Real> p;
    p.reserve(n + 1);
    p.emplace_back(1L, prec);  // unused slot 0
    Real expo(a, prec);
    Real t(prec);
    for (uint64_t i = 1; i <= n; ++i) {
        mpfr_set_ui(t.raw(), i, MPFR_RNDN);
        mpfr_log(t.raw(), t.raw(), MPFR_RNDN);
        mpfr_mul(t.raw(), t.raw(), expo.raw(), MPFR_RNDN);
        mpfr_exp(t.raw(), t.raw(), MPFR_RNDN);
        p.push_back(t);
    }
    return p;
}

ArithTable sieve_totient_family(const FunctionId& f, uint64_t n, const PrecisionContext& ctx,
                                bool dedekind) {
    double s = f.exponent;
    if (s <= 0.0)
        throw std::domain_error("sieve: totient-family exponent must be positive");
    auto mu = mobius_vector(n);
    if (integral_exponent(s)) {
        auto pw = exact_powers(n, (unsigned long)s);
        std::vector<BigInt> v(n, 0);
        for (uint64_t d = 1; d <= n; ++d) {
            if (mu[d] == 0) continue;
            int coef = dedekind ? 1 : mu[d];
            for (uint64_t l = 1; l * d <= n; ++l) {
                if (coef > 0)
                    v[l * d - 1] += pw[l];
                else
                    v[l * d - 1] -= pw[l];
            }
        }
        return ArithTable::exact(f.label(), std::move(v));
    }
    auto pw = real_powers(n, s, ctx.bits());
    std::vector<Real> v(n, Real(0L, ctx.bits()));
    for (uint64_t d = 1; d <= n; ++d) {
        if (mu[d] == 0) continue;
        int coef = dedekind ? 1 : mu[d];
        for (uint64_t l = 1; l * d <= n; ++l) {
            if (coef > 0)
                mpfr_add(v[l * d - 1].raw(), v[l * d - 1].raw(), pw[l].raw(), MPFR_RNDN);
            else
                mpfr_sub(v[l * d - 1].raw(), v[l * d - 1].raw(), pw[l].raw(), MPFR_RNDN);
        }
    }
    return ArithTable::reals(f.label(), std::move(v));
}

}  // namespace

ArithTable sieve(const FunctionId& f, uint64_t n, const PrecisionContext& ctx) {
    if (n == 0) throw std::domain_error("sieve: N must be >= 1");
    if (!std::isfinite(f.exponent)) throw std::domain_error("sieve: exponent must be finite");
    switch (f.kind) {
        case FunctionId::Kind::Mobius:
        case FunctionId::Kind::AbsMobius: {
            auto mu = mobius_vector(n);
            bool absval = f.kind == FunctionId::Kind::AbsMobius;
            std::vector<BigInt> v(n);
            for (uint64_t i = 1; i <= n; ++i) v[i - 1] = absval ? std::abs(mu[i]) : mu[i];
            return ArithTable::exact(f.label(), std::move(v));
        }
        case FunctionId::Kind::Tau: {
            std::vector<uint32_t> tau(n, 0);
            for (uint64_t d = 1; d <= n; ++d)
                for (uint64_t m = d; m <= n; m += d) ++tau[m - 1];
            std::vector<BigInt> v(n);
            for (uint64_t i = 0; i < n; ++i) v[i] = tau[i];
            return ArithTable::exact(f.label(), std::move(v));
        }
        case FunctionId::Kind::One:
            return ArithTable::exact(f.label(), std::vector<BigInt>(n, BigInt(1)));
        case FunctionId::Kind::IdPow: {
            double a = f.exponent;
            if (integral_exponent(a) && a >= 0.0) {
                auto pw = exact_powers(n, (unsigned long)a);
                std::vector<BigInt> v(pw.begin() + 1, pw.end());
                return ArithTable::exact(f.label(), std::move(v));
            }
            auto pw = real_powers(n, a, ctx.bits());
            std::vector<Real> v(pw.begin() + 1, pw.end());
            return ArithTable::reals(f.label(), std::move(v));
        }
        case FunctionId::Kind::SigmaPow: {
            double a = f.exponent;
            if (integral_exponent(a) && a >= 0.0) {
                auto pw = exact_powers(n, (unsigned long)a);
                std::vector<BigInt> v(n, 0);
                for (uint64_t d = 1; d <= n; ++d)
                    for (uint64_t m = d; m <= n; m += d) v[m - 1] += pw[d];
                return ArithTable::exact(f.label(), std::move(v));
            }
            auto pw = real_powers(n, a, ctx.bits());
            std::vector<Real> v(n, Real(0L, ctx.bits()));
            for (uint64_t d = 1; d <= n; ++d)
                for (uint64_t m = d; m <= n; m += d)
                    mpfr_add(v[m - 1].raw(), v[m - 1].raw(), pw[d].raw(), MPFR_RNDN);
            return ArithTable::reals(f.label(), std::move(v));
        }
        case FunctionId::Kind::JordanPhi:
            return sieve_totient_family(f, n, ctx, false);
        case FunctionId::Kind::DedekindPsi:
            return sieve_totient_family(f, n, ctx, true);
        case FunctionId::Kind::Mangoldt: {
            auto tags = mangoldt_tags(n);
            std::vector<Real> v;
            v.reserve(n);
            Real t(ctx.bits());
            for (uint64_t i = 0; i < n; ++i) {
                if (tags[i].first == 0) {
                    v.emplace_back(0L, ctx.bits());
                } else {
                    mpfr_set_ui(t.raw(), tags[i].first, MPFR_RNDN);
                    mpfr_log(t.raw(), t.raw(), MPFR_RNDN);
                    v.push_back(t);
                }
            }
            return ArithTable::reals(f.label(), std::move(v));
        }
    }
    throw std::logic_error("sieve: unhandled function kind");
}

ArithTable dirichlet_convolve(const ArithTable& f, const ArithTable& g) {
    if (f.size() != g.size())
        throw std::invalid_argument("dirichlet_convolve: table lengths differ");
    uint64_t n = f.size();
    std::string name = f.name() + "*" + g.name();

    bool exact = f.kind() == ArithTable::Kind::ExactInt && g.kind() == ArithTable::Kind::ExactInt;
    if (exact) {
        std::vector<BigInt> h(n, 0);
        for (uint64_t d = 1; d <= n; ++d) {
            const BigInt& fd = f.int_at(d);
            if (fd == 0) continue;
            for (uint64_t e = 1; d * e <= n; ++e) {
                const BigInt& ge = g.int_at(e);
                if (ge == 0) continue;
                mpz_addmul(h[d * e - 1].get_mpz_t(), fd.get_mpz_t(), ge.get_mpz_t());
            }
        }
        return ArithTable::exact(std::move(name), std::move(h));
    }

    bool anyreal = f.kind() == ArithTable::Kind::RealVal || g.kind() == ArithTable::Kind::RealVal;
    if (!anyreal) {
        std::vector<BigRational> h(n, BigRational(0));
        for (uint64_t d = 1; d <= n; ++d) {
            BigRational fd = f.kind() == ArithTable::Kind::ExactRat ? f.rat_at(d)
                                                                    : BigRational(f.int_at(d));
            if (fd == 0) continue;
            for (uint64_t e = 1; d * e <= n; ++e) {
                BigRational ge = g.kind() == ArithTable::Kind::ExactRat ? g.rat_at(e)
                                                                        : BigRational(g.int_at(e));
                h[d * e - 1] += fd * ge;
            }
        }
        return ArithTable::rational(std::move(name), std::move(h));
    }

    mpfr_prec_t prec = 64;
    if (f.kind() == ArithTable::Kind::RealVal) prec = std::max(prec, f.real_at(1).prec());
    if (g.kind() == ArithTable::Kind::RealVal) prec = std::max(prec, g.real_at(1).prec());
    std::vector<Real> h(n, Real(0L, prec));
    Real t(prec);
    for (uint64_t d = 1; d <= n; ++d) {
        Real fd = f.value(d, prec);
        if (fd.is_zero()) continue;
        for (uint64_t e = 1; d * e <= n; ++e) {
            Real ge = g.value(e, prec);
            if (ge.is_zero()) continue;
            mpfr_mul(t.raw(), fd.raw(), ge.raw(), MPFR_RNDN);
            mpfr_add(h[d * e - 1].raw(), h[d * e - 1].raw(), t.raw(), MPFR_RNDN);
        }
    }
    return ArithTable::reals(std::move(name), std::move(h));
}

std::vector<uint64_t> divisors(uint64_t k) {
    std::vector<uint64_t> small, large;
    for (uint64_t d = 1; d * d <= k; ++d) {
        if (k % d != 0) continue;
        small.push_back(d);
        if (d != k / d) large.push_back(k / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

uint64_t gcd_spower(uint64_t j, uint64_t k, int s) {
    uint64_t root = gcd_spower_root(j, k, s);
    uint64_t p = 1;
    for (int i = 0; i < s; ++i) p *= root;
    return p;
}

uint64_t gcd_spower_root(uint64_t j, uint64_t k, int s) {
    if (j == 0 || k == 0) throw std::domain_error("gcd_spower: j, k must be >= 1");
    if (s < 1) throw std::domain_error("gcd_spower: s must be >= 1");
    uint64_t best = 1;
    for (uint64_t d : divisors(k)) {
        if (d <= best) continue;
        __uint128_t p = 1;
        bool fits = true;
        for (int i = 0; i < s; ++i) {
            p *= d;
            if (p > j) {
                fits = false;
                break;
            }
        }
        if (fits && j % (uint64_t)p == 0) best = d;
    }
    return best;
}

Real weighted_partial_sum(const ArithTable& f, double x, double s_weight,
                          const PrecisionContext& ctx) {
    if (x < 1.0) throw std::domain_error("weighted_partial_sum: x must be >= 1");
    uint64_t limit = (uint64_t)std::floor(x);
    if (limit > f.size()) throw std::out_of_range("weighted_partial_sum: x exceeds table length");
    mpfr_prec_t p = ctx.bits();
    Real acc(0L, p);
    bool integral = integral_exponent(s_weight);
    Real expo(s_weight, p);
    Real t(p), term(p);
    for (uint64_t n = 1; n <= limit; ++n) {
        term = f.value(n, p);
        if (term.is_zero()) continue;
        if (s_weight != 0.0) {
            if (integral) {
                mpfr_set_ui(t.raw(), n, MPFR_RNDN);
                mpfr_pow_si(t.raw(), t.raw(), (long)s_weight, MPFR_RNDN);
            } else {
                mpfr_set_ui(t.raw(), n, MPFR_RNDN);
                mpfr_log(t.raw(), t.raw(), MPFR_RNDN);
                mpfr_mul(t.raw(), t.raw(), expo.raw(), MPFR_RNDN);
                mpfr_exp(t.raw(), t.raw(), MPFR_RNDN);
            }
            mpfr_div(term.raw(), term.raw(), t.raw(), MPFR_RNDN);
        }
        acc += term;
    }
    return acc;
}

}  // namespace gcdsum
