#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace gcdsum {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Multiprecision real backed by MPFR.  A value carries its own precision;
/// binary operations produce results at the wider operand's precision.
class Real {
  public:
    Real() { mpfr_init2(v_, 64); }
    explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); }

    Real(long v, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, v, MPFR_RNDN);
    }
    Real(unsigned long v, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_ui(v_, v, MPFR_RNDN);
    }
    Real(double v, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, v, MPFR_RNDN);
    }
    Real(const BigInt& v, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
    }
    Real(const BigRational& v, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
    }
    Real(std::string_view decimal, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_str(v_, std::string(decimal).c_str(), 10, MPFR_RNDN);
    }

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    BigInt floor_to_int() const {
        BigInt z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
        return z;
    }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    bool is_integer() const { return mpfr_integer_p(v_) != 0; }

    /// Decimal rendering with `digits` significant digits ("%.*Rg").
    std::string str(int digits) const;

    Real& operator+=(const Real& o) {
        widen(o.prec());
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator-=(const Real& o) {
        widen(o.prec());
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator*=(const Real& o) {
        widen(o.prec());
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator/=(const Real& o) {
        widen(o.prec());
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator+=(long o) {
        mpfr_add_si(v_, v_, o, MPFR_RNDN);
        return *this;
    }
    Real& operator-=(long o) {
        mpfr_sub_si(v_, v_, o, MPFR_RNDN);
        return *this;
    }
    Real& operator*=(long o) {
        mpfr_mul_si(v_, v_, o, MPFR_RNDN);
        return *this;
    }
    Real& operator/=(long o) {
        mpfr_div_si(v_, v_, o, MPFR_RNDN);
        return *this;
    }

    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }
    friend Real operator+(Real a, long b) { return a += b; }
    friend Real operator-(Real a, long b) { return a -= b; }
    friend Real operator*(Real a, long b) { return a *= b; }
    friend Real operator/(Real a, long b) { return a /= b; }
    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator-(long a, const Real& b) {
        Real r(b.prec());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(long a, const Real& b) {
        Real r(b.prec());
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

  private:
    void widen(mpfr_prec_t p) {
        if (p > prec()) mpfr_prec_round(v_, p, MPFR_RNDN);
    }
    mpfr_t v_;
};

Real abs(const Real& x);
Real floor(const Real& x);
Real sqrt(const Real& x);
Real ln(const Real& x);
Real exp(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real pow(const Real& base, long e);
Real pow(const Real& base, const Real& e);
Real make_pi(mpfr_prec_t prec);

/// Working precision in significant decimal digits plus the tolerances and
/// cached constants derived from it.  Guard bits keep ~1e6-term accumulations
/// well below the identity tolerance 10^-(digits-10).
class PrecisionContext {
  public:
    explicit PrecisionContext(int digits = 40);

    int digits() const { return digits_; }
    mpfr_prec_t bits() const { return bits_; }

    const Real& identity_tol() const { return identity_tol_; }
    const Real& pi() const { return pi_; }
    const Real& ln_2pi() const { return ln_2pi_; }
    const Real& ln_sqrt_2pi() const { return ln_sqrt_2pi_; }
    const Real& euler_gamma() const { return euler_gamma_; }

    Real real(long v) const { return Real(v, bits_); }
    Real real(unsigned long v) const { return Real(v, bits_); }
    Real real(double v) const { return Real(v, bits_); }
    Real real(const BigInt& v) const { return Real(v, bits_); }
    Real real(const BigRational& v) const { return Real(v, bits_); }

  private:
    int digits_;
    mpfr_prec_t bits_;
    Real identity_tol_;
    Real pi_;
    Real ln_2pi_;
    Real ln_sqrt_2pi_;
    Real euler_gamma_;
};

}  // namespace gcdsum
