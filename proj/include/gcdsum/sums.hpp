#pragma once

#include "gcdsum/analytic.hpp"
#include "gcdsum/arith.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gcdsum {

/// Raised when a direct-path policy cap would be exceeded (CLI exit code 4).
struct ResourceCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The multiplicative families the sweeps run over: f = phi_s, psi_s,
/// phi_{s+a}, psi_{s+a}, the constant 1, or a caller-supplied table.
enum class Family { PhiS, PsiS, PhiSA, PsiSA, One, Custom };

const char* family_token(Family f);
std::optional<Family> family_from_token(const std::string& tok);

/// Parameter bundle for a verification sweep.
struct SweepParams {
    int s = 2;
    std::optional<double> a;  // required by the s+a families, in (-1, 0)
    int m = 1;
    int r = 1;
    Family family = Family::PhiS;
    std::vector<uint64_t> x_grid;
    std::shared_ptr<const ArithTable> custom_f;

    void validate(bool theorem_scope) const;
    double family_exponent() const;  // s or s+a
    std::string family_label() const;
    uint64_t x_max() const { return x_grid.empty() ? 0 : x_grid.back(); }
};

/// f and f*mu on 1..N for the sweep family.
struct SweepTables {
    std::shared_ptr<const ArithTable> f;
    std::shared_ptr<const ArithTable> f_mu;
};
SweepTables make_sweep_tables(const SweepParams& params, uint64_t n, const PrecisionContext& ctx);

/// Anderson-Apostol sum s_k(j) = sum_{d | gcd(k,j)} f(d) g(k/d).
Real anderson_apostol(uint64_t j, uint64_t k, const ArithTable& f, const ArithTable& g,
                      const PrecisionContext& ctx);

/// s-power variant s_k^{(s)}(j) = sum over d | k with d^s | j of f(d) g(k/d);
/// such d are exactly the divisors of the s-th root of (j, k^s)_s.
/// j = 0 admits every divisor of k.
Real anderson_apostol_spower(uint64_t j, uint64_t k, int s, const ArithTable& f,
                             const ArithTable& g, const PrecisionContext& ctx);

/// Cohen-Ramanujan sum c_k^{(s)}(j) = sum_{d^s | (j,k^s)_s} d^s mu(k/d), exact.
BigInt cohen_ramanujan(uint64_t j, uint64_t k, int s);

/// Ramanujan sum c_k(j) by the exponential-sum definition, as an oracle:
/// sum over 1 <= m <= k, gcd(m,k) = 1 of cos(2 pi m j / k).
Real ramanujan_exponential(uint64_t j, uint64_t k, const PrecisionContext& ctx);

/// Pillai gcd-sum P_f(n) = sum_{k=1}^n f(gcd(k,n)) via sum_{d|n} f(d) phi(n/d);
/// null f means f = id.
Real pillai(uint64_t n, const ArithTable* f, const PrecisionContext& ctx);
Real pillai_direct(uint64_t n, const ArithTable* f, const PrecisionContext& ctx);

inline constexpr uint64_t kKappaDirectCap = 1000000000;  // k^s cap, direct path
inline constexpr uint64_t kNuDirectCap = 1000000;        // k^s cap, direct path

/// Gamma-weighted average kappa^{(s)}(k; f, g) via its closed form
///   ln sqrt(2pi) (f/id_s * g)(k) - ln sqrt(2pi) (f*g)(k)/k^s
///   - (s / 2k^s) (f * g log)(k).
Real kappa(uint64_t k, int s, const ArithTable& f, const ArithTable& g,
           const PrecisionContext& ctx);

/// Direct j-loop oracle (1/k^s) sum_j s_k^{(s)}(j) log Gamma(j/k^s).
Real kappa_direct(uint64_t k, int s, const ArithTable& f, const ArithTable& g,
                  const PrecisionContext& ctx);

/// Bernoulli-weighted average nu_m^{(s)}(k; f, g) via its closed form
///   B_m sum_{dl=k} f(d)/d^s g(l)/l^{ms}.
Real nu(uint64_t k, int s, int m, const ArithTable& f, const ArithTable& g,
        const PrecisionContext& ctx);

/// Direct oracle (1/k^s) sum_{j=0}^{k^s-1} B_m(j/k^s) s_k^{(s)}(j).
Real nu_direct(uint64_t k, int s, int m, const ArithTable& f, const ArithTable& g,
               const PrecisionContext& ctx);

enum class SumMode { Direct, Fast };

inline constexpr uint64_t kADirectCap = 1000000000;  // cap on sum of k^s

/// A^{(s)}(x; f) = sum_{k<=x} k^{-s} sum_{j=1}^{k^s} log Gamma(j/k^s)
///                 sum_{d|k, d^s|j} (f*mu)(d).
/// Fast mode folds the inner j-sum through the Gauss product
/// G(n) = ((n-1)/2) ln 2pi - (1/2) ln n; direct mode runs the j-loop.
Real A_lhs(double x, const SweepParams& params, SumMode mode, const PrecisionContext& ctx);

/// H_m^{(s)}(x; f) = B_m sum_{dl<=x} (f*mu)(d) d^{-s} l^{-ms}, evaluated
/// d-outer against prefix sums of l^{-ms}.
Real H_lhs(double x, const SweepParams& params, const PrecisionContext& ctx);

/// Direct Bernoulli-weighted double loop for H (oracle, small x).
Real H_lhs_direct(double x, const SweepParams& params, const PrecisionContext& ctx);

/// M_r^{(s)}(x; f) = sum_{k<=x} k^{-s(r+1)} sum_{j=1}^{k^s} j^r
///                   sum_{d|k, d^s|j} (f*mu)(d).
/// Fast mode sums the inner progression with exact Faulhaber power sums.
Real M_lhs(double x, const SweepParams& params, SumMode mode, const PrecisionContext& ctx);

/// Per-k A-term and sweep versions used by engines: values of the partial
/// sums at each grid point of params.x_grid, threads may split grid points.
std::vector<Real> A_lhs_sweep(const SweepParams& params, const PrecisionContext& ctx);
std::vector<Real> H_lhs_sweep(const SweepParams& params, const PrecisionContext& ctx);
std::vector<Real> M_lhs_sweep(const SweepParams& params, const PrecisionContext& ctx);

/// Gauss-product sum G(n) = sum_{j=1}^{n} log Gamma(j/n)
///                        = ((n-1)/2) ln 2pi - (1/2) ln n.
Real gauss_log_gamma_sum(uint64_t n, const PrecisionContext& ctx);

}  // namespace gcdsum
