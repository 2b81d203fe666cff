#pragma once

#include "gcdsum/sums.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace gcdsum {

enum class IdentityKind { A, H, M };

const char* identity_token(IdentityKind k);
std::optional<IdentityKind> identity_from_token(const std::string& tok);

struct ReportRow {
    double x;
    Real lhs, rhs, abs_residual, tolerance;
    bool pass;
};

/// Ordered per-x comparison of an identity's two sides plus run metadata;
/// the universal CLI output.
struct VerificationReport {
    IdentityKind which = IdentityKind::A;
    SweepParams params;
    int digits = 40;
    std::string mode;
    std::string timestamp;
    std::string version;
    std::vector<ReportRow> rows;

    bool all_pass() const;
};

/// Tables the right-hand sides draw on: f, f*mu, f*phi_s, f*Lambda on 1..N.
struct RhsTables {
    SweepTables base;
    std::shared_ptr<const ArithTable> f_phi_s;
    std::shared_ptr<const ArithTable> f_lambda;
};
RhsTables make_rhs_tables(const SweepParams& params, uint64_t n, const PrecisionContext& ctx);

/// RHS of the Gamma-weighted identity:
///   ln sqrt(2pi) sum (f*phi_s)(n)/n^s - ln sqrt(2pi) sum f(n)/n^s
///   - (s/2) sum (f*Lambda)(n)/n^s.
Real rhs_A(double x, const SweepParams& params, const RhsTables& tables,
           const PrecisionContext& ctx);

/// RHS of the Bernoulli-weighted identity.  For m = 1 this is evaluated as
/// -(1/2) sum f(n)/n^s; for even m as sum_{n<=x} of the convolution
/// ((f*mu)/id_s * id_{-ms})(n), a different grouping than the H_lhs loop.
Real rhs_H(double x, const SweepParams& params, const RhsTables& tables,
           const PrecisionContext& ctx);

/// RHS of the power-weighted identity: (1/2) sum f(n)/n^s
///   + (1/(r+1)) sum_{dl<=x} (f*mu)(d)/d^s
///   + (1/(r+1)) sum_{m=1}^{[r/2]} C(r+1,2m) B_{2m} sum_{dl<=x} (f*mu)(d) d^{-s} l^{-2ms}.
Real rhs_M(double x, const SweepParams& params, const RhsTables& tables,
           const PrecisionContext& ctx);

/// Runs lhs vs rhs over params.x_grid; a row passes when
/// |lhs - rhs| <= identity_tol (1 + |lhs|).  Direct mode evaluates the
/// left-hand sides by their verbatim j-loops (subject to the policy caps).
VerificationReport verify_identity(IdentityKind which, const SweepParams& params,
                                   const PrecisionContext& ctx,
                                   SumMode mode = SumMode::Fast);

}  // namespace gcdsum
