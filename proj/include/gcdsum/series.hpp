#pragma once

#include "gcdsum/sums.hpp"

#include <iosfwd>

namespace gcdsum {

/// Rigorous tail majorants by integral comparison, for real w > 1:
///   tail_zeta:     sum_{d>N} d^{-w}
///   tail_zeta_log: sum_{d>N} ln d / d^w
///   tail_tau:      sum_{d>N} tau(d) / d^w
///   tail_tau_log:  sum_{d>N} tau(d) ln d / d^w
Real tail_zeta(double w, uint64_t n, const PrecisionContext& ctx);
Real tail_zeta_log(double w, uint64_t n, const PrecisionContext& ctx);
Real tail_tau(double w, uint64_t n, const PrecisionContext& ctx);
Real tail_tau_log(double w, uint64_t n, const PrecisionContext& ctx);

/// One truncation-vs-closed-form comparison of a Dirichlet series value.
struct SeriesCheck {
    double w;
    uint64_t truncation;
    Real truncated;
    Real closed;
    Real tail_bound;
    bool pass;  // |truncated - closed| <= tail_bound
};

inline constexpr double kSeriesMinW = 2.0;  // adopted convergence threshold

/// K^{(s)}(w; f*mu, 1) truncated at N: sum_{k<=N} kappa^{(s)}(k; f*mu, 1) / k^w.
Real K_truncated(double w, uint64_t n, const SweepParams& params, const PrecisionContext& ctx);

/// Closed forms of Corollary-type zeta expressions for the four families,
/// e.g. K^{(s)}(w; phi_s*mu) = ln sqrt(2pi) (z(w)/z(w+s)) (z(w)/z(w+s) - 1)
///      + (s/2) z(w) z'(w+s) / z(w+s)^2.
Real K_closed(double w, const SweepParams& params, const PrecisionContext& ctx);

/// L_m^{(s)}(w; f*mu, 1) truncated / closed, e.g. for phi_s:
/// B_m z(w) z(w+ms) / z(w+s)^2.
Real L_truncated(double w, int m, uint64_t n, const SweepParams& params,
                 const PrecisionContext& ctx);
Real L_closed(double w, int m, const SweepParams& params, const PrecisionContext& ctx);

/// Majorant-based tail bounds: |kappa(k)| <= C_f (ln sqrt(2pi) tau(k)
/// + zeta(s) ln sqrt(2pi) + (s/2)(-zeta'(s))) with C_f the table maximum of
/// |(f*mu)(d)|/d^s; |nu(k)| <= |B_m| C_f zeta(ms).
Real kappa_tail_bound(double w, uint64_t n, const SweepParams& params,
                      const PrecisionContext& ctx);
Real nu_tail_bound(double w, int m, uint64_t n, const SweepParams& params,
                   const PrecisionContext& ctx);

SeriesCheck check_K(double w, uint64_t n, const SweepParams& params, const PrecisionContext& ctx);
SeriesCheck check_L(double w, int m, uint64_t n, const SweepParams& params,
                    const PrecisionContext& ctx);

/// CSV rows `w,N,truncated,closed,tail_bound,pass` with metadata preamble.
void write_series_checks_csv(std::ostream& os, const std::vector<SeriesCheck>& checks, int digits,
                             const std::vector<std::pair<std::string, std::string>>& metadata);

}  // namespace gcdsum
