#include "gcdsum/real.hpp"

#include <stdexcept>

namespace gcdsum {

std::string Real::str(int digits) const {
    if (digits < 1) digits = 1;
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Real abs(const Real& x) {
    Real r(x.prec());
    mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real floor(const Real& x) {
    Real r(x.prec());
    mpfr_floor(r.raw(), x.raw());
    return r;
}

Real sqrt(const Real& x) {
    Real r(x.prec());
    mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real ln(const Real& x) {
    Real r(x.prec());
    mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real exp(const Real& x) {
    Real r(x.prec());
    mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real sin(const Real& x) {
    Real r(x.prec());
    mpfr_sin(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real cos(const Real& x) {
    Real r(x.prec());
    mpfr_cos(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real pow(const Real& base, long e) {
    Real r(base.prec());
    mpfr_pow_si(r.raw(), base.raw(), e, MPFR_RNDN);
    return r;
}

Real pow(const Real& base, const Real& e) {
    Real r(base.prec() > e.prec() ? base.prec() : e.prec());
    mpfr_pow(r.raw(), base.raw(), e.raw(), MPFR_RNDN);
    return r;
}

Real make_pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

}  // namespace gcdsum
