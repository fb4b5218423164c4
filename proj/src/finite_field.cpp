#include "stmax/finite_field.hpp"

#include <algorithm>
#include <cassert>

namespace stmax {

namespace {

// Dense little-endian polynomial helpers over Z_p. Vectors may carry
// trailing zeros; degree is the last nonzero index.

void trim(std::vector<std::uint32_t>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod d in place, d monic
void poly_mod(std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& d, std::uint32_t p) {
    const std::size_t dd = d.size() - 1;
    trim(a);
    while (a.size() > dd) {
        std::uint32_t lead = a.back();
        std::size_t shift = a.size() - 1 - dd;
        if (lead != 0) {
            for (std::size_t i = 0; i < dd; ++i) {
                std::uint64_t v = a[shift + i] + static_cast<std::uint64_t>(p - d[i] % p) * lead % p;
                a[shift + i] = static_cast<std::uint32_t>(v % p);
            }
        }
        a.pop_back();
        trim(a);
    }
}

std::vector<std::uint32_t> poly_mul(const std::vector<std::uint32_t>& a,
                                    const std::vector<std::uint32_t>& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = static_cast<std::uint32_t>(
                (r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
        }
    }
    return r;
}

}  // namespace

namespace detail {

bool poly_irreducible(const std::vector<std::uint32_t>& coeffs, std::uint32_t p) {
    const std::size_t k = coeffs.size() - 1;
    assert(coeffs[k] == 1);
    if (k == 1) return true;
    // a nontrivial factorization has a monic factor of degree <= k/2
    std::vector<std::uint32_t> divisor;
    for (std::size_t d = 1; d <= k / 2; ++d) {
        divisor.assign(d + 1, 0);
        divisor[d] = 1;
        // iterate over all p^d choices of lower coefficients
        while (true) {
            std::vector<std::uint32_t> rem(coeffs);
            poly_mod(rem, divisor, p);
            if (rem.empty()) return false;
            std::size_t i = 0;
            while (i < d && ++divisor[i] == p) divisor[i++] = 0;
            if (i == d) break;
        }
    }
    return true;
}

}  // namespace detail

bool is_prime_power(std::uint64_t q, std::uint32_t* p_out, std::uint32_t* k_out) {
    if (q < 2) return false;
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = q;  // q itself prime
    std::uint32_t k = 0;
    std::uint64_t t = q;
    while (t > 1) {
        if (t % p != 0) return false;
        t /= p;
        ++k;
    }
    if (p_out) *p_out = static_cast<std::uint32_t>(p);
    if (k_out) *k_out = k;
    return true;
}

FieldSpec FieldSpec::make(std::uint64_t q) {
    std::uint32_t p = 0, k = 0;
    if (!is_prime_power(q, &p, &k)) {
        throw NotAPrimePower("q = " + std::to_string(q) + " is not a prime power");
    }
    FieldSpec f;
    f.p_ = p;
    f.k_ = k;
    f.q_ = q;
    if (k == 1) {
        f.modulus_ = {0, 1};  // x; unused, arithmetic reduces to Z_p
        return f;
    }
    // Smallest candidate under lexicographic comparison of (c0,...,c_{k-1})
    // with the constant term compared first: enumerate c0 as the slowest
    // digit and take the first irreducible.
    std::vector<std::uint32_t> cand(k + 1, 0);
    cand[k] = 1;
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < k; ++i) total *= p;
    for (std::uint64_t m = 0; m < total; ++m) {
        std::uint64_t x = m;
        for (std::uint32_t i = k; i-- > 0;) {  // c0 gets the most significant digits
            cand[i] = static_cast<std::uint32_t>(x % p);
            x /= p;
        }
        if (detail::poly_irreducible(cand, p)) {
            f.modulus_ = cand;
            return f;
        }
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

FieldElem FieldSpec::zero() const {
    return FieldElem{std::vector<std::uint32_t>(k_, 0)};
}

FieldElem FieldSpec::one() const {
    FieldElem e = zero();
    e.c[0] = 1 % p_;
    return e;
}

bool FieldSpec::is_zero(const FieldElem& a) const {
    return std::all_of(a.c.begin(), a.c.end(), [](std::uint32_t v) { return v == 0; });
}

FieldElem FieldSpec::from_index(std::uint64_t i) const {
    assert(i < q_);
    FieldElem e = zero();
    for (std::uint32_t d = 0; d < k_; ++d) {
        e.c[d] = static_cast<std::uint32_t>(i % p_);
        i /= p_;
    }
    return e;
}

std::uint64_t FieldSpec::index_of(const FieldElem& a) const {
    std::uint64_t i = 0;
    for (std::uint32_t d = k_; d-- > 0;) i = i * p_ + a.c[d];
    return i;
}

std::vector<FieldElem> FieldSpec::elements() const {
    std::vector<FieldElem> out;
    out.reserve(q_);
    for (std::uint64_t i = 0; i < q_; ++i) out.push_back(from_index(i));
    return out;
}

FieldElem FieldSpec::add(const FieldElem& a, const FieldElem& b) const {
    FieldElem r = zero();
    for (std::uint32_t i = 0; i < k_; ++i) r.c[i] = (a.c[i] + b.c[i]) % p_;
    return r;
}

FieldElem FieldSpec::sub(const FieldElem& a, const FieldElem& b) const {
    FieldElem r = zero();
    for (std::uint32_t i = 0; i < k_; ++i) r.c[i] = (a.c[i] + p_ - b.c[i]) % p_;
    return r;
}

FieldElem FieldSpec::neg(const FieldElem& a) const {
    return sub(zero(), a);
}

FieldElem FieldSpec::mul(const FieldElem& a, const FieldElem& b) const {
    std::vector<std::uint32_t> prod = poly_mul(a.c, b.c, p_);
    poly_mod(prod, modulus_, p_);
    prod.resize(k_, 0);
    return FieldElem{std::move(prod)};
}

FieldElem FieldSpec::pow(const FieldElem& a, std::uint64_t e) const {
    FieldElem r = one();
    FieldElem base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

FieldElem FieldSpec::inv(const FieldElem& a) const {
    if (is_zero(a)) throw DivisionByZero("inverse of zero in GF(" + std::to_string(q_) + ")");
    // a^(q-2); the multiplicative group has order q-1
    return pow(a, q_ - 2);
}

std::string FieldSpec::to_string(const FieldElem& a) const {
    if (k_ == 1) return std::to_string(a.c[0]);
    std::string s = "[";
    for (std::uint32_t i = 0; i < k_; ++i) {
        if (i) s += ",";
        s += std::to_string(a.c[i]);
    }
    return s + "]";
}

}  // namespace stmax
