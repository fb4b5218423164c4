#include "stmax/bigfloat.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace stmax {

Real::Real(mpfr_prec_t prec) {
    mpfr_init2(x_, prec);
    mpfr_set_zero(x_, 1);
}

Real::Real(const Real& o) {
    mpfr_init2(x_, o.prec());
    mpfr_set(x_, o.x_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(x_, o.prec());
    mpfr_swap(x_, o.x_);
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(x_, o.prec());
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(x_, o.x_);
    return *this;
}

Real::~Real() { mpfr_clear(x_); }

Real Real::of_ui(unsigned long v, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui(r.x_, v, MPFR_RNDN);
    return r;
}

Real Real::of_si(long v, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.x_, v, MPFR_RNDN);
    return r;
}

Real Real::of_z(const mpz_class& v, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_z(r.x_, v.get_mpz_t(), MPFR_RNDN);
    return r;
}

Real Real::of_q(const mpq_class& v, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_q(r.x_, v.get_mpq_t(), MPFR_RNDN);
    return r;
}

Real Real::ln_z(const mpz_class& v, mpfr_prec_t prec) { return of_z(v, prec).ln(); }

Real Real::ln_q(const mpq_class& v, mpfr_prec_t prec) {
    // ln(num) - ln(den) keeps full precision for extreme ratios
    return ln_z(v.get_num(), prec) - ln_z(v.get_den(), prec);
}

Real Real::ln() const {
    Real r(prec());
    mpfr_log(r.x_, x_, MPFR_RNDN);
    return r;
}

Real Real::sqrt() const {
    Real r(prec());
    mpfr_sqrt(r.x_, x_, MPFR_RNDN);
    return r;
}

Real Real::abs() const {
    Real r(prec());
    mpfr_abs(r.x_, x_, MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_add(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_div(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
}

Real Real::operator-() const {
    Real r(prec());
    mpfr_neg(r.x_, x_, MPFR_RNDN);
    return r;
}

std::string Real::decimal(std::size_t digits) const {
    if (digits == 0) digits = static_cast<std::size_t>(prec() * 0.30103) + 2;
    int need = mpfr_snprintf(nullptr, 0, "%.*Rg", static_cast<int>(digits), x_);
    std::vector<char> buf(need + 1);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", static_cast<int>(digits), x_);
    return std::string(buf.data());
}

}  // namespace stmax
