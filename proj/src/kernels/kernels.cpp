#include "stmax/kernels.hpp"

#include <atomic>
#include <bit>
#include <cassert>

namespace stmax::kern {

namespace {

std::uint64_t and_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += std::popcount(a[i] & b[i]);
    return s;
}

std::uint64_t popcount_scalar(const std::uint64_t* a, std::size_t n) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += std::popcount(a[i]);
    return s;
}

// Reference semantics for the mod-p axpy: plain 64-bit widening mul + %.
void mod_axpy_scalar(std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
                     std::uint32_t c, const ModCtx& m) {
    const std::uint64_t p = m.p;
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] = static_cast<std::uint32_t>((dst[i] + static_cast<std::uint64_t>(c) * src[i]) % p);
    }
}

struct Dispatch {
    detail::AndPopcountFn and_popcount = and_popcount_scalar;
    detail::PopcountFn popcount = popcount_scalar;
    detail::ModAxpyFn mod_axpy = mod_axpy_scalar;
    Isa isa = Isa::Scalar;
};

Dispatch g_dispatch;
std::atomic<bool> g_initialized{false};

void init_dispatch(Isa want) {
    Dispatch d;
    if (want == Isa::Avx2 && detail::cpu_has_avx2() && detail::avx2_and_popcount()) {
        d.and_popcount = detail::avx2_and_popcount();
        d.popcount = detail::avx2_popcount();
        d.mod_axpy = detail::avx2_mod_axpy();
        d.isa = Isa::Avx2;
    }
    g_dispatch = d;
    g_initialized.store(true, std::memory_order_release);
}

void ensure_init() {
    if (!g_initialized.load(std::memory_order_acquire)) init_dispatch(best_isa());
}

}  // namespace

Isa best_isa() {
    return (detail::cpu_has_avx2() && detail::avx2_and_popcount()) ? Isa::Avx2 : Isa::Scalar;
}

Isa active_isa() {
    ensure_init();
    return g_dispatch.isa;
}

void set_isa(Isa isa) {
    init_dispatch(isa);
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    ensure_init();
    return g_dispatch.and_popcount(a, b, n);
}

std::uint64_t popcount(const std::uint64_t* a, std::size_t n) {
    ensure_init();
    return g_dispatch.popcount(a, n);
}

void mod_axpy(std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
              std::uint32_t c, const ModCtx& m) {
    ensure_init();
    g_dispatch.mod_axpy(dst, src, n, c, m);
}

ModCtx::ModCtx(std::uint32_t modulus) : p(modulus) {
    assert(p % 2 == 1 && p > 1 && p < (1u << 31));
    // Newton iteration for p^{-1} mod 2^32
    std::uint32_t x = p;
    for (int i = 0; i < 5; ++i) x *= 2u - p * x;
    assert(x * p == 1u);
    p_neg_inv = ~x + 1u;  // -p^{-1}
    // 2^64 mod p
    r2 = static_cast<std::uint32_t>(
        ((static_cast<std::uint64_t>(1) << 62) % p * 4) % p);
}

std::uint32_t ModCtx::mont_mul(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t t = static_cast<std::uint64_t>(a) * b;
    std::uint32_t m = static_cast<std::uint32_t>(t) * p_neg_inv;
    std::uint64_t u = (t + static_cast<std::uint64_t>(m) * p) >> 32;
    if (u >= p) u -= p;
    return static_cast<std::uint32_t>(u);
}

std::uint32_t ModCtx::to_mont(std::uint32_t x) const {
    return mont_mul(x, r2);
}

std::uint32_t ModCtx::mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t ModCtx::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1 % p;
    std::uint32_t base = a % p;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

std::uint32_t ModCtx::inv(std::uint32_t a) const {
    // p prime
    return pow(a, p - 2);
}

}  // namespace stmax::kern
