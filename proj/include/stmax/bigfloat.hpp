#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>

namespace stmax {

// Owning wrapper over an mpfr_t with value-type semantics. Binary
// operations round to the wider operand's precision.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 128);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }

    static Real of_ui(unsigned long v, mpfr_prec_t prec);
    static Real of_si(long v, mpfr_prec_t prec);
    static Real of_z(const mpz_class& v, mpfr_prec_t prec);
    static Real of_q(const mpq_class& v, mpfr_prec_t prec);
    static Real ln_z(const mpz_class& v, mpfr_prec_t prec);  // v > 0
    static Real ln_q(const mpq_class& v, mpfr_prec_t prec);  // v > 0

    Real ln() const;
    Real sqrt() const;
    Real abs() const;

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);
    Real operator-() const;

    int cmp(const Real& o) const { return mpfr_cmp(x_, o.x_); }
    bool operator<(const Real& o) const { return cmp(o) < 0; }
    bool operator<=(const Real& o) const { return cmp(o) <= 0; }
    bool operator>(const Real& o) const { return cmp(o) > 0; }
    bool operator>=(const Real& o) const { return cmp(o) >= 0; }
    bool operator==(const Real& o) const { return cmp(o) == 0; }

    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

    // Round-trip-safe decimal; digit count derived from precision when 0.
    std::string decimal(std::size_t digits = 0) const;

    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }

private:
    mpfr_t x_;
};

}  // namespace stmax
