#pragma once

#include "gcdsum/real.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace gcdsum {

/// Named immutable table of an arithmetic function on 1..N, either exact
/// (big integers / rationals) or real at working precision.
class ArithTable {
  public:
    enum class Kind { ExactInt, ExactRat, RealVal };

    static ArithTable exact(std::string name, std::vector<BigInt> values);
    static ArithTable rational(std::string name, std::vector<BigRational> values);
    static ArithTable reals(std::string name, std::vector<Real> values);

    const std::string& name() const { return name_; }
    uint64_t size() const { return n_; }
    Kind kind() const { return kind_; }

    const BigInt& int_at(uint64_t n) const { return ints_[n - 1]; }
    const BigRational& rat_at(uint64_t n) const { return rats_[n - 1]; }
    const Real& real_at(uint64_t n) const { return reals_[n - 1]; }

    /// Value at n converted to a Real of the given precision.
    Real value(uint64_t n, mpfr_prec_t prec) const;

    const std::vector<BigInt>& ints() const { return ints_; }
    const std::vector<Real>& real_values() const { return reals_; }

  private:
    ArithTable(std::string name, Kind kind, uint64_t n)
        : name_(std::move(name)), kind_(kind), n_(n) {}
    std::string name_;
    Kind kind_;
    uint64_t n_;
    std::vector<BigInt> ints_;
    std::vector<BigRational> rats_;
    std::vector<Real> reals_;
};

/// Identifies a sievable arithmetic function.  Exponent applies to the
/// id_a / sigma_a / jordan_phi / dedekind_psi families.
struct FunctionId {
    enum class Kind {
        Mobius,
        AbsMobius,
        Mangoldt,
        Tau,
        One,
        IdPow,
        SigmaPow,
        JordanPhi,
        DedekindPsi,
    };

    Kind kind = Kind::One;
    double exponent = 0.0;

    static FunctionId mobius() { return {Kind::Mobius, 0.0}; }
    static FunctionId abs_mobius() { return {Kind::AbsMobius, 0.0}; }
    static FunctionId mangoldt() { return {Kind::Mangoldt, 0.0}; }
    static FunctionId tau() { return {Kind::Tau, 0.0}; }
    static FunctionId one() { return {Kind::One, 0.0}; }
    static FunctionId id_pow(double a) { return {Kind::IdPow, a}; }
    static FunctionId sigma_pow(double a) { return {Kind::SigmaPow, a}; }
    static FunctionId jordan_phi(double s) { return {Kind::JordanPhi, s}; }
    static FunctionId dedekind_psi(double s) { return {Kind::DedekindPsi, s}; }

    std::string label() const;
};

/// Sieve the named function on 1..N.  Integer families come out exact, real
/// exponent families (and Mangoldt) come out at ctx working precision.
/// Divisor-sweep construction, O(N log N).
ArithTable sieve(const FunctionId& f, uint64_t n, const PrecisionContext& ctx);

/// Mobius values -1/0/1 on 1..N (plain ints, shared by sieves and sums).
std::vector<int8_t> mobius_vector(uint64_t n);

/// Prime-power tags for the von Mangoldt function: entry n-1 is (p, e) when
/// n = p^e, (0, 0) otherwise.  Lets tests regenerate log p at any precision.
std::vector<std::pair<uint64_t, uint32_t>> mangoldt_tags(uint64_t n);

/// Dirichlet convolution h(n) = sum_{d|n} f(d) g(n/d); exact when both
/// operands are exact.
ArithTable dirichlet_convolve(const ArithTable& f, const ArithTable& g);

/// Greatest common s-power divisor (j, k^s)_s = max{d^s : d^s | j, d | k}.
uint64_t gcd_spower(uint64_t j, uint64_t k, int s);

/// The d achieving the maximum above, i.e. the integer s-th root of
/// (j, k^s)_s; every divisor counted by the s-power Anderson-Apostol sum
/// divides it.
uint64_t gcd_spower_root(uint64_t j, uint64_t k, int s);

/// sum_{n <= x} f(n) / n^{s_weight} at ctx working precision, summed in
/// index order (deterministic regardless of thread count).
Real weighted_partial_sum(const ArithTable& f, double x, double s_weight,
                          const PrecisionContext& ctx);

/// Divisors of k in increasing order.
std::vector<uint64_t> divisors(uint64_t k);

}  // namespace gcdsum
