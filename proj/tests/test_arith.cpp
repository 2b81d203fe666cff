#include <doctest.h>

#include "gcdsum/analytic.hpp"
#include "gcdsum/arith.hpp"

#include <numeric>
#include <random>

using namespace gcdsum;

namespace {

const PrecisionContext& ctx() {
    static PrecisionContext c(40);
    return c;
}

bool near(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol; }

}  // namespace

TEST_CASE("mobius sieve values") {
    auto t = sieve(FunctionId::mobius(), 6, ctx());
    long expect[] = {1, -1, -1, 0, -1, 1};
    for (uint64_t n = 1; n <= 6; ++n) CHECK(t.int_at(n) == expect[n - 1]);
    CHECK_THROWS_AS(sieve(FunctionId::mobius(), 0, ctx()), std::domain_error);
}

TEST_CASE("jordan and dedekind sieve values (direct divisor-sum oracle)") {
    auto phi2 = sieve(FunctionId::jordan_phi(2), 6, ctx());
    long e_phi[] = {1, 3, 8, 12, 24, 24};
    for (uint64_t n = 1; n <= 6; ++n) CHECK(phi2.int_at(n) == e_phi[n - 1]);

    auto psi2 = sieve(FunctionId::dedekind_psi(2), 6, ctx());
    long e_psi[] = {1, 5, 10, 20, 26, 50};
    for (uint64_t n = 1; n <= 6; ++n) CHECK(psi2.int_at(n) == e_psi[n - 1]);

    // oracle: phi_s(n) = sum_{d|n} mu(d) (n/d)^s, psi_s with |mu|
    auto mu = mobius_vector(200);
    auto phi3 = sieve(FunctionId::jordan_phi(3), 200, ctx());
    auto psi3 = sieve(FunctionId::dedekind_psi(3), 200, ctx());
    for (uint64_t n = 1; n <= 200; ++n) {
        BigInt p = 0, q = 0;
        for (uint64_t d : divisors(n)) {
            BigInt pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), n / d, 3);
            p += mu[d] * pw;
            q += std::abs(mu[d]) * pw;
        }
        CHECK(phi3.int_at(n) == p);
        CHECK(psi3.int_at(n) == q);
    }
    CHECK_THROWS_AS(sieve(FunctionId::jordan_phi(0), 5, ctx()), std::domain_error);
    CHECK_THROWS_AS(sieve(FunctionId::jordan_phi(-1), 5, ctx()), std::domain_error);
}

TEST_CASE("tau partial sum") {
    auto tau = sieve(FunctionId::tau(), 16, ctx());
    BigInt acc = 0;
    for (uint64_t n = 1; n <= 16; ++n) acc += tau.int_at(n);
    CHECK(acc == 50);
}

TEST_CASE("real-exponent sieves match per-n evaluation") {
    const auto& c = ctx();
    Real tol = c.identity_tol();
    double a = -0.5;
    auto sig = sieve(FunctionId::sigma_pow(a), 64, c);
    auto phi = sieve(FunctionId::jordan_phi(2 + a), 64, c);
    auto mu = mobius_vector(64);
    for (uint64_t n = 1; n <= 64; ++n) {
        Real s(0L, c.bits()), p(0L, c.bits());
        for (uint64_t d : divisors(n)) {
            s += pow(c.real(d), c.real(a));
            if (mu[d] != 0) p += c.real((long)mu[d]) * pow(c.real(n / d), c.real(2 + a));
        }
        CHECK(near(sig.real_at(n), s, tol));
        CHECK(near(phi.real_at(n), p, tol));
    }
}

TEST_CASE("mangoldt table and tags") {
    const auto& c = ctx();
    auto lam = sieve(FunctionId::mangoldt(), 32, c);
    auto tags = mangoldt_tags(32);
    for (uint64_t n = 1; n <= 32; ++n) {
        auto [p, e] = tags[n - 1];
        if (p == 0) {
            CHECK(lam.real_at(n).is_zero());
        } else {
            uint64_t q = 1;
            for (uint32_t i = 0; i < e; ++i) q *= p;
            CHECK(q == n);
            CHECK(near(lam.real_at(n), ln(c.real(p)), c.identity_tol()));
        }
    }
    CHECK(tags[16 - 1] == std::pair<uint64_t, uint32_t>{2, 4});
    CHECK(tags[27 - 1] == std::pair<uint64_t, uint32_t>{3, 3});
    CHECK(tags[12 - 1] == std::pair<uint64_t, uint32_t>{0, 0});
}

TEST_CASE("dirichlet convolution identities") {
    const auto& c = ctx();
    uint64_t n = 512;
    auto mu = sieve(FunctionId::mobius(), n, c);
    auto one = sieve(FunctionId::one(), n, c);

    // mu * 1 = unit
    auto eps = dirichlet_convolve(mu, one);
    CHECK(eps.int_at(1) == 1);
    for (uint64_t i = 2; i <= n; ++i) CHECK(eps.int_at(i) == 0);

    // 1 * 1 = tau
    auto tau = sieve(FunctionId::tau(), n, c);
    auto oo = dirichlet_convolve(one, one);
    for (uint64_t i = 1; i <= n; ++i) CHECK(oo.int_at(i) == tau.int_at(i));

    // id_2 * mu = phi_2 at n = 6
    auto id2 = sieve(FunctionId::id_pow(2), n, c);
    auto conv = dirichlet_convolve(id2, mu);
    CHECK(conv.int_at(6) == 24);

    CHECK_THROWS_AS(dirichlet_convolve(mu, sieve(FunctionId::one(), 8, c)),
                    std::invalid_argument);
}

TEST_CASE("convolution is commutative and associative on random exact tables") {
    std::mt19937_64 rng(12345);
    uint64_t n = 128;
    auto randtab = [&](const char* name) {
        std::vector<BigInt> v(n);
        for (auto& x : v) x = (long)(rng() % 19) - 9;
        return ArithTable::exact(name, std::move(v));
    };
    for (int rep = 0; rep < 5; ++rep) {
        auto f = randtab("f"), g = randtab("g"), h = randtab("h");
        auto fg = dirichlet_convolve(f, g);
        auto gf = dirichlet_convolve(g, f);
        auto fg_h = dirichlet_convolve(fg, h);
        auto f_gh = dirichlet_convolve(f, dirichlet_convolve(g, h));
        for (uint64_t i = 1; i <= n; ++i) {
            CHECK(fg.int_at(i) == gf.int_at(i));
            CHECK(fg_h.int_at(i) == f_gh.int_at(i));
        }
    }
}

TEST_CASE("sum of phi_s over divisors is n^s") {
    const auto& c = ctx();
    uint64_t n = 10000;
    for (int s : {1, 2, 3}) {
        auto phi = sieve(FunctionId::jordan_phi(s), n, c);
        auto one = sieve(FunctionId::one(), n, c);
        auto conv = dirichlet_convolve(phi, one);
        for (uint64_t i = 1; i <= n; ++i) {
            BigInt pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), i, s);
            CHECK(conv.int_at(i) == pw);
        }
    }
}

TEST_CASE("convolution factorizations used by the A-identity") {
    // (phi_s*phi_s)(n)/n^s = sum_{de=n} ((mu*mu)(d)/d^s) tau(e), s = 2
    // (psi_s*phi_s)(n)/n^s = sum_{de=n} ((mu*|mu|)(d)/d^s) tau(e)
    const auto& c = ctx();
    uint64_t n = 1000;
    auto mu = sieve(FunctionId::mobius(), n, c);
    auto amu = sieve(FunctionId::abs_mobius(), n, c);
    auto tau = sieve(FunctionId::tau(), n, c);
    auto phi = sieve(FunctionId::jordan_phi(2), n, c);
    auto psi = sieve(FunctionId::dedekind_psi(2), n, c);
    auto mumu = dirichlet_convolve(mu, mu);
    auto muam = dirichlet_convolve(mu, amu);
    auto pp = dirichlet_convolve(phi, phi);
    auto sp = dirichlet_convolve(psi, phi);
    for (uint64_t i = 1; i <= n; ++i) {
        BigRational lhs_pp(pp.int_at(i)), lhs_sp(sp.int_at(i));
        BigInt isq(i);
        isq *= isq;
        lhs_pp /= BigRational(isq);
        lhs_sp /= BigRational(isq);
        BigRational rhs_pp(0), rhs_sp(0);
        for (uint64_t d : divisors(i)) {
            BigInt dsq(d);
            dsq *= dsq;
            rhs_pp += BigRational(mumu.int_at(d) * tau.int_at(i / d)) / BigRational(dsq);
            rhs_sp += BigRational(muam.int_at(d) * tau.int_at(i / d)) / BigRational(dsq);
        }
        CHECK(lhs_pp == rhs_pp);
        CHECK(lhs_sp == rhs_sp);
    }
}

TEST_CASE("exact hyperbola identity for phi_s partial sums") {
    // sum_{n<=x} phi_s(n)/n^s = sum_{d<=x} (mu(d)/d^s) floor(x/d), s = 2
    const auto& c = ctx();
    uint64_t N = 10000;
    auto phi = sieve(FunctionId::jordan_phi(2), N, c);
    auto mu = mobius_vector(N);
    Real tol = c.identity_tol();
    for (uint64_t x : {1ull, 7ull, 100ull, 3163ull, 10000ull}) {
        Real lhs = weighted_partial_sum(phi, (double)x, 2.0, c);
        Real rhs(0L, c.bits());
        for (uint64_t d = 1; d <= x; ++d) {
            if (mu[d] == 0) continue;
            rhs += c.real((long)mu[d]) * c.real(x / d) / pow(c.real(d), 2L);
        }
        CHECK(near(lhs, rhs, tol * (1L + abs(lhs))));
    }
}

TEST_CASE("weighted partial sums") {
    const auto& c = ctx();
    auto one = sieve(FunctionId::one(), 10, c);
    CHECK(weighted_partial_sum(one, 3.0, 0.0, c) == c.real(3L));

    auto phi2 = sieve(FunctionId::jordan_phi(2), 10, c);
    CHECK(near(weighted_partial_sum(phi2, 2.0, 2.0, c), c.real(BigRational(7, 4)),
               c.identity_tol()));

    auto mu = sieve(FunctionId::mobius(), 10, c);
    CHECK(near(weighted_partial_sum(mu, 4.0, 2.0, c), c.real(BigRational(23, 36)),
               c.identity_tol()));

    CHECK_THROWS_AS(weighted_partial_sum(mu, 11.0, 2.0, c), std::out_of_range);
}

TEST_CASE("greatest common s-power divisor") {
    CHECK(gcd_spower(8, 2, 2) == 4);
    CHECK(gcd_spower(5, 6, 1) == 1);
    for (uint64_t j : {1ull, 2ull, 17ull, 64ull})
        for (int s : {1, 2, 3}) CHECK(gcd_spower(j, 1, s) == 1);
    // s = 1 reduces to gcd
    for (uint64_t j = 1; j <= 40; ++j)
        for (uint64_t k = 1; k <= 40; ++k) CHECK(gcd_spower(j, k, 1) == std::gcd(j, k));
    // brute force for s = 2, 3
    for (int s : {2, 3}) {
        for (uint64_t j = 1; j <= 60; ++j) {
            for (uint64_t k = 1; k <= 20; ++k) {
                uint64_t best = 1;
                for (uint64_t d = 1; d <= k; ++d) {
                    if (k % d != 0) continue;
                    uint64_t p = 1;
                    bool of = false;
                    for (int i = 0; i < s; ++i) {
                        if (p > j / d + 1) { of = true; break; }
                        p *= d;
                    }
                    if (!of && p <= j && j % p == 0 && p > best) best = p;
                }
                CHECK(gcd_spower(j, k, s) == best);
            }
        }
    }
}
