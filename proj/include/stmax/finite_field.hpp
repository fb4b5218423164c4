#pragma once

// Exact arithmetic in GF(p^k). Elements are dense little-endian
// coefficient vectors over Z_p, reduced modulo a monic irreducible
// polynomial chosen deterministically (lexicographically smallest,
// constant term compared first).

#include <cstdint>
#include <string>
#include <vector>

#include "stmax/errors.hpp"

namespace stmax {

struct FieldElem {
    // k residues in [0, p), constant term first
    std::vector<std::uint32_t> c;

    friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

// Decomposes q = p^k; returns false when q is not a prime power (or q < 2).
bool is_prime_power(std::uint64_t q, std::uint32_t* p_out = nullptr, std::uint32_t* k_out = nullptr);

class FieldSpec {
  public:
    // Throws NotAPrimePower for q < 2 or q with two distinct prime factors.
    static FieldSpec make(std::uint64_t q);

    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    std::uint64_t q() const { return q_; }
    // Monic, length k+1, low-to-high, modulus[k] == 1.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    FieldElem zero() const;
    FieldElem one() const;
    bool is_zero(const FieldElem& a) const;

    // Enumeration order: base-p counting with the constant term as the
    // fastest digit; index 0 is 0, index 1 is 1.
    FieldElem from_index(std::uint64_t i) const;
    std::uint64_t index_of(const FieldElem& a) const;
    std::vector<FieldElem> elements() const;

    FieldElem add(const FieldElem& a, const FieldElem& b) const;
    FieldElem sub(const FieldElem& a, const FieldElem& b) const;
    FieldElem neg(const FieldElem& a) const;
    FieldElem mul(const FieldElem& a, const FieldElem& b) const;
    FieldElem inv(const FieldElem& a) const;  // throws DivisionByZero on 0
    FieldElem pow(const FieldElem& a, std::uint64_t e) const;

    std::string to_string(const FieldElem& a) const;

  private:
    FieldSpec() = default;
    std::uint32_t p_ = 0;
    std::uint32_t k_ = 0;
    std::uint64_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
};

namespace detail {
// Trial division by every monic divisor of degree 1..k/2; exact for all k.
bool poly_irreducible(const std::vector<std::uint32_t>& coeffs, std::uint32_t p);
}

}  // namespace stmax
