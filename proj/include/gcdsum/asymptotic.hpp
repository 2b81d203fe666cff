#pragma once

#include "gcdsum/identity.hpp"

#include <string>
#include <vector>

namespace gcdsum {

/// Residuals of one asymptotic claim on an increasing x grid, tagged with
/// the O-bound exponent (and log power) the claim asserts.
struct ErrorTermSeries {
    std::string label;
    std::vector<double> grid;
    std::vector<Real> values;
    double claimed_exponent = 0.0;
    int log_factor_power = 0;
};

/// Envelope diagnostics for an ErrorTermSeries: u_i = |v_i| / (x^e (ln x)^L).
struct EnvelopeResult {
    bool monotone_ok;     // max u over the second half <= max over the first half
    bool anchored_ok;     // u_i <= 2 u_0 for all i (constant fitted at the anchor)
    double fitted_slope;  // log-log OLS slope of |v| vs x, informational
    bool slope_ok;        // fitted_slope <= claimed_exponent + 0.1
    double max_normalized;
};
EnvelopeResult envelope_test(const ErrorTermSeries& series);

/// Geometric grid of distinct integers covering [lo, hi] at the given ratio.
std::vector<uint64_t> make_geometric_grid(uint64_t lo, uint64_t hi, double ratio = 1.3);

/// Shared prefix-sum tables for the divisor-problem error terms.
class DivisorTables {
  public:
    DivisorTables(uint64_t n, const PrecisionContext& ctx);

    uint64_t size() const { return n_; }

    /// Dirichlet divisor error Delta(x) = sum_{n<=x} tau(n) - x ln x - (2g-1)x.
    Real delta(double x) const;

    /// Generalized error Delta_a(x) = sum sigma_a(n) - z(1-a)x
    ///   - (z(1+a)/(1+a)) x^{1+a} + z(-a)/2, for -1 < a < 0.
    Real delta_a(double x, double a);

  private:
    const PrecisionContext ctx_;
    uint64_t n_;
    std::vector<BigInt> tau_prefix_;
    double a_ = 1.0;
    std::vector<Real> sigma_prefix_;
    Real z1ma_, z1pa_, zma_;
};

/// One-shot wrappers over DivisorTables.
Real delta(double x, const PrecisionContext& ctx);
Real delta_a(double x, double a, const PrecisionContext& ctx);

/// Sawtooth-weighted Mobius correction functions:
///   D_s(x)  = -sum_{d<=x} (mu(d)/d^s)  theta(x/d) - 1/(2 zeta(s))
///   D~_s(x) = -sum_{d<=x} (|mu|(d)/d^s) theta(x/d) - zeta(s)/(2 zeta(2s)).
enum class DVariant { Mobius, AbsMobius };
Real d_correction(double x, int s, DVariant variant, const PrecisionContext& ctx);

enum class TheoremTag {
    APhi,     // A^{(s)}(x; phi_s)
    APhiA,    // A^{(s)}(x; phi_{s+a})
    APsi,     // A^{(s)}(x; psi_s)
    APsiA,    // A^{(s)}(x; psi_{s+a})
    H1Phi,    // H_1^{(s)}(x; phi_s)
    H1Psi,
    H2mPhi,   // H_{2m}^{(s)}(x; phi_s)
    H2mPsi,
    H1PhiA,
    H1PsiA,
    H2mPhiA,
    H2mPsiA,
};

const char* theorem_token(TheoremTag tag);
std::optional<TheoremTag> theorem_from_token(const std::string& tok);
Family theorem_family(TheoremTag tag);
bool theorem_is_A(TheoremTag tag);

/// Displayed main terms of the theorem for the given tag at x; the D_s-type
/// correction terms of the H_1 statements are included.
Real main_term(TheoremTag tag, double x, const SweepParams& params, const PrecisionContext& ctx);

/// residual(x) = LHS(x) - main_term(x) over the grid, with the claimed
/// O-exponent attached: 0.5+eps for the Gamma-weighted phi_s/psi_s sweeps,
/// (1+a)/3+eps for their s+a variants, 1-s (log 1) for the Bernoulli
/// x-linear statements, a for the x^{1+a} ones.  eps = 0.05.
ErrorTermSeries residual_series(TheoremTag tag, const SweepParams& params,
                                const std::vector<uint64_t>& grid, const PrecisionContext& ctx);

/// Explicit oscillating-term formula for the Gamma-weighted residual
/// (phi_s and psi_s cases), the alternative route to residual_series:
///   ln sqrt(2pi) sum_{d<=x} (mu*mu)(d)/d^s Delta(x/d)
///   + (s/2) sum_{d<=x} (mu*Lambda)(d)/d^s theta(x/d)
///   - s zeta'(s)/(4 zeta(s)^2) - ln sqrt(2pi) D_s(x)
/// with mu*|mu|, |mu|*Lambda, zeta(2s)-constants and D~_s in the psi case.
Real y_explicit(TheoremTag tag, double x, const SweepParams& params, DivisorTables& tables,
                const PrecisionContext& ctx);

/// Rigorous majorant for |Y_def - Y_explicit| at integer x: the exact tail
/// terms dropped between the two routes, each bounded by integral
/// comparison; O(x^{1-s} (ln x)^2).
Real y_crosscheck_bound(TheoremTag tag, double x, const SweepParams& params,
                        const PrecisionContext& ctx);

enum class HelperTag {
    MuMu,        // sum (mu*mu)(d)/d^{s+1} -> 1/zeta(s+1)^2
    MuMuLog,     // log-weighted variant -> 2 zeta'(s+1)/zeta(s+1)^3
    MuAbsMu,     // sum (mu*|mu|)(d)/d^{s+1} -> 1/zeta(2s+2)
    SigmaNeg,    // sum sigma_{-2ms}(l) -> zeta(2ms+1) x - zeta(2ms)/2
    SigmaShift,  // sum sigma_{a+2ms}(l)/l^{2ms}
    PowerSum,    // sum n^a -> x^{1+a}/(1+a) + zeta(-a)
    Lemma31,     // sum f_s(n)/n^s vs main + D-term, f = phi_s or psi_s
    Lemma32,     // sum f_{s+a}(n)/n^s vs main + constant
};

const char* helper_token(HelperTag tag);
std::optional<HelperTag> helper_from_token(const std::string& tok);

/// Residual series for the auxiliary summation formulas.
ErrorTermSeries helper_sum_check(HelperTag tag, const SweepParams& params,
                                 const std::vector<uint64_t>& grid, const PrecisionContext& ctx);

/// Series CSV: metadata preamble then `x,value,normalized,claimed_bound`
/// rows, where normalized = |value| / (x^e (ln x)^L) and claimed_bound is
/// the envelope anchored at the first grid point.
void write_series_csv(std::ostream& os, const ErrorTermSeries& series, int digits,
                      const std::vector<std::pair<std::string, std::string>>& metadata);

}  // namespace gcdsum
