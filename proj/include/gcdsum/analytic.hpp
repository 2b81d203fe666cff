#pragma once

#include "gcdsum/real.hpp"

namespace gcdsum {

/// Largest n accepted by bernoulli_number (policy cap).
constexpr int kBernoulliCap = 200;

/// Exact Bernoulli number B_n under the B_1 = -1/2 convention
/// (generating function t e^{xt}/(e^t - 1) at x = 0).  Memoized.
BigRational bernoulli_number(int n);

/// Binomial coefficient C(n, k) as an exact integer.
BigInt binomial(unsigned long n, unsigned long k);

/// Bernoulli polynomial B_m(x) = sum_k C(m,k) B_k x^{m-k} at the precision
/// carried by x.
Real bernoulli_poly(int m, const Real& x);

/// Exact B_m(y) at an integer argument.
BigRational bernoulli_poly_exact(int m, const BigInt& y);

/// Exact power sum 1^r + 2^r + ... + n^r via Faulhaber's formula,
/// S_r(n) = (B_{r+1}(n+1) - B_{r+1}) / (r+1).
BigRational exact_power_sum(const BigInt& n, int r);

/// log Gamma(x) for x > 0 by upward argument shift followed by the Stirling
/// series; uniform accuracy on (0, 1].  log_gamma(1) = 0 exactly.
Real log_gamma(const Real& x);

/// Riemann zeta at real sigma in (0,1) u (1,oo) by Euler-Maclaurin,
/// with truncation orders derived from ctx.
Real zeta(const Real& sigma, const PrecisionContext& ctx);
Real zeta(double sigma, const PrecisionContext& ctx);

/// zeta'(sigma) for sigma > 1, term-by-term differentiated Euler-Maclaurin.
Real zeta_deriv(const Real& sigma, const PrecisionContext& ctx);
Real zeta_deriv(double sigma, const PrecisionContext& ctx);

/// Euler-Maclaurin zeta evaluation with explicit cutoff (number of directly
/// summed terms) and correction order; deriv is 0 or 1.  The public zeta()
/// wrappers pick these from ctx; tests compare two distinct orders.
Real zeta_em(const Real& sigma, int deriv, int cutoff, int order);

/// Euler's constant at the given binary precision (harmonic-sum limit
/// accelerated by Euler-Maclaurin).
Real euler_gamma_value(mpfr_prec_t prec);

/// Sawtooth theta(x) = x - floor(x) - 1/2, in [-1/2, 1/2).
Real theta_saw(const Real& x);

/// theta(p/q) for nonnegative rationals, exact at the given precision.
Real theta_saw_rational(const BigInt& p, const BigInt& q, mpfr_prec_t prec);

}  // namespace gcdsum
