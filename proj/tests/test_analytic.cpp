#include <doctest.h>

#include "gcdsum/analytic.hpp"

#include <cmath>
#include <vector>

using namespace gcdsum;

namespace {

const PrecisionContext& ctx() {
    static PrecisionContext c(40);
    return c;
}

bool near(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol; }

// Akiyama-Tanigawa scheme, an independent route to the Bernoulli numbers
// (yields the B_1 = +1/2 convention; even indices coincide).
BigRational bernoulli_at(int n) {
    std::vector<BigRational> t(n + 1);
    for (int j = 0; j <= n; ++j) t[j] = BigRational(1, j + 1);
    for (int i = 1; i <= n; ++i)
        for (int j = 0; j <= n - i; ++j) t[j] = BigRational(j + 1) * (t[j] - t[j + 1]);
    return t[0];
}

}  // namespace

TEST_CASE("bernoulli numbers: base values and recurrence oracle") {
    CHECK(bernoulli_number(0) == BigRational(1));
    CHECK(bernoulli_number(1) == BigRational(-1, 2));
    CHECK(bernoulli_number(2) == BigRational(1, 6));
    CHECK(bernoulli_number(12) == BigRational(-691, 2730));
    for (int n = 0; n <= 60; n += 2) CHECK(bernoulli_number(n) == bernoulli_at(n));
    for (int m = 1; m <= 30; ++m) CHECK(bernoulli_number(2 * m + 1) == 0);
    CHECK_THROWS_AS(bernoulli_number(201), std::domain_error);
    CHECK_THROWS_AS(bernoulli_number(-1), std::domain_error);
}

TEST_CASE("bernoulli polynomial values") {
    const auto& c = ctx();
    Real tol = c.identity_tol();
    CHECK(near(bernoulli_poly(2, c.real(0L)), c.real(BigRational(1, 6)), tol));
    CHECK(near(bernoulli_poly(2, c.real(0.5)), c.real(BigRational(-1, 12)), tol));
    for (double x : {0.0, 0.25, 1.0})
        CHECK(near(bernoulli_poly(1, c.real(x)), c.real(x) - c.real(0.5), tol));
}

TEST_CASE("bernoulli multiplication theorem") {
    // sum_{j=0}^{n-1} B_m(j/n) = n^{1-m} B_m
    const auto& c = ctx();
    Real tol = c.identity_tol();
    for (int m = 0; m <= 12; ++m) {
        for (int n : {1, 2, 3, 5, 8, 16, 33, 64}) {
            Real acc(0L, c.bits());
            for (int j = 0; j < n; ++j) {
                Real x = c.real((long)j) / c.real((long)n);
                acc += bernoulli_poly(m, x);
            }
            Real rhs = pow(c.real((long)n), 1 - m) * c.real(bernoulli_number(m));
            CHECK(near(acc, rhs, tol * (1L + abs(rhs))));
        }
    }
}

TEST_CASE("exact power sums via Faulhaber") {
    CHECK(exact_power_sum(BigInt(1), 5) == BigRational(1));
    CHECK(exact_power_sum(BigInt(4), 1) == BigRational(10));
    CHECK(exact_power_sum(BigInt(4), 2) == BigRational(30));
    // brute force cross-check
    for (int r = 0; r <= 6; ++r) {
        BigInt direct = 0;
        for (long n = 1; n <= 50; ++n) {
            BigInt p;
            mpz_ui_pow_ui(p.get_mpz_t(), n, r);
            direct += p;
        }
        CHECK(exact_power_sum(BigInt(50), r) == BigRational(direct));
    }
}

TEST_CASE("log_gamma: special values") {
    const auto& c = ctx();
    CHECK(log_gamma(c.real(1L)).is_zero());
    // Gamma(1/2) = sqrt(pi)
    Real lg_half = log_gamma(c.real(0.5));
    CHECK(near(lg_half, ln(c.pi()) / 2L, c.identity_tol()));
    CHECK_THROWS_AS(log_gamma(c.real(0L)), std::domain_error);
    CHECK_THROWS_AS(log_gamma(c.real(-2.5)), std::domain_error);
}

TEST_CASE("log_gamma: Gauss product oracle") {
    // prod_{j=1}^{n-1} Gamma(j/n) = (2 pi)^{(n-1)/2} / sqrt(n)
    const auto& c = ctx();
    Real bound = c.real(BigInt(10));
    bound = pow(bound, -(long)(c.digits() - 5));
    for (int n : {2, 3, 4, 7, 10, 48, 131, 500}) {
        Real acc(0L, c.bits());
        for (int j = 1; j < n; ++j) acc += log_gamma(c.real((long)j) / c.real((long)n));
        Real rhs = c.real((long)(n - 1)) / 2L * c.ln_2pi() - ln(c.real((long)n)) / 2L;
        CHECK(abs(acc - rhs) <= c.real((long)n) * bound);
    }
}

TEST_CASE("log_gamma: reflection identity grid") {
    // log Gamma(x) + log Gamma(1-x) = ln pi - ln sin(pi x)
    const auto& c = ctx();
    Real tol = c.identity_tol() * 16L;
    for (int i = 1; i <= 99; ++i) {
        Real x = c.real((long)i) / c.real(100L);
        Real lhs = log_gamma(x) + log_gamma(1L - x);
        Real rhs = ln(c.pi()) - ln(sin(c.pi() * x));
        CHECK(near(lhs, rhs, tol * (1L + abs(rhs))));
    }
}

TEST_CASE("zeta: closed forms and frozen oracles") {
    const auto& c = ctx();
    Real pi2 = c.pi() * c.pi();
    Real tol35 = pow(c.real(10L), -35L);
    CHECK(near(zeta(2.0, c), pi2 / 6L, tol35));
    CHECK(near(zeta(4.0, c), pi2 * pi2 / 90L, tol35));

    // direct-summation bracket for zeta(3): S_N + int_{N+1} <= zeta(3) <= S_N + int_N
    long N = 4000;
    Real s3(0L, c.bits());
    for (long n = 1; n <= N; ++n) s3 += 1L / pow(c.real(n), 3L);
    Real lo = s3 + 1L / (2L * pow(c.real(N + 1), 2L));
    Real hi = s3 + 1L / (2L * pow(c.real(N), 2L));
    Real z3 = zeta(3.0, c);
    CHECK(lo <= z3);
    CHECK(z3 <= hi);
    CHECK(near(z3, Real("1.2020569031595942854", c.bits()), c.real(1e-18)));

    // zeta'(2): direct -sum log n / n^2 bracket plus frozen value
    Real sd(0L, c.bits());
    for (long n = 2; n <= N; ++n) sd -= ln(c.real(n)) / pow(c.real(n), 2L);
    Real tail_hi = (ln(c.real(N)) + 1L) / c.real(N);
    Real tail_lo = (ln(c.real(N + 1)) + 1L) / c.real(N + 1);
    Real zd = zeta_deriv(2.0, c);
    CHECK(sd - tail_hi <= zd);
    CHECK(zd <= sd - tail_lo);
    CHECK(near(zd, Real("-0.9375482543158437537", c.bits()), c.real(1e-18)));
}

TEST_CASE("zeta: two Euler-Maclaurin orders agree") {
    const auto& c = ctx();
    for (double s : {0.5, 1.5, 2.0, 3.0, 5.0, 9.0}) {
        Real a = zeta_em(c.real(s), 0, c.digits() + 8, 30);
        Real b = zeta_em(c.real(s), 0, 2 * c.digits(), 44);
        CHECK(near(a, b, c.identity_tol() * (1L + abs(a))));
    }
}

TEST_CASE("zeta: domain errors") {
    const auto& c = ctx();
    CHECK_THROWS_AS(zeta(1.0, c), std::domain_error);
    CHECK_THROWS_AS(zeta(0.0, c), std::domain_error);
    CHECK_THROWS_AS(zeta(-0.5, c), std::domain_error);
    CHECK_THROWS_AS(zeta_deriv(0.7, c), std::domain_error);
}

TEST_CASE("euler gamma") {
    const auto& c = ctx();
    CHECK(near(c.euler_gamma(), Real("0.57721566490153286", c.bits()), c.real(1e-16)));
    // harmonic-sum sanity: sum_{n<=1e6} 1/n - ln 1e6 agrees to 6 decimals
    double h = 0.0, comp = 0.0;
    for (long n = 1; n <= 1000000; ++n) {
        double y = 1.0 / (double)n - comp;
        double t = h + y;
        comp = (t - h) - y;
        h = t;
    }
    double approx = h - std::log(1e6);
    CHECK(std::abs(approx - c.euler_gamma().to_double()) < 1e-6);
}

TEST_CASE("sawtooth") {
    const auto& c = ctx();
    CHECK(theta_saw(c.real(3L)) == c.real(-0.5));
    CHECK(theta_saw(c.real(2.5)).is_zero());
    CHECK(theta_saw(c.real(0.25)) == c.real(-0.25));
    CHECK(theta_saw_rational(BigInt(8), BigInt(3), c.bits()) ==
          c.real(2L) / c.real(3L) - c.real(0.5));
    CHECK_THROWS_AS(theta_saw(c.real(-1L)), std::domain_error);
}
