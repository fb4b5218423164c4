#pragma once

// Hot inner-loop kernels: bit-row popcounts and mod-p row updates.
// Each kernel has a scalar reference implementation and an AVX2 variant;
// the active variant is chosen at runtime from CPU capabilities and can
// be overridden (tests run both and compare results word for word).

#include <cstddef>
#include <cstdint>

namespace stmax::kern {

enum class Isa { Scalar, Avx2 };

// Best ISA the running CPU supports.
Isa best_isa();
// Currently selected ISA.
Isa active_isa();
// Select an ISA; silently clamps to best_isa(). Scalar always works.
void set_isa(Isa isa);

// popcount(a[0..n) & b[0..n))
std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);

// popcount(a[0..n))
std::uint64_t popcount(const std::uint64_t* a, std::size_t n);

// Montgomery context for an odd modulus p < 2^31.
struct ModCtx {
    std::uint32_t p;
    std::uint32_t p_neg_inv;  // -p^{-1} mod 2^32
    std::uint32_t r2;         // 2^64 mod p

    explicit ModCtx(std::uint32_t modulus);

    // a*b mod p for plain residues a, b < p
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    // a^e mod p
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    // a^{-1} mod p (p prime, a != 0)
    std::uint32_t inv(std::uint32_t a) const;

    // REDC(a*b): returns a*b*2^{-32} mod p, inputs < p
    std::uint32_t mont_mul(std::uint32_t a, std::uint32_t b) const;
    // x*2^32 mod p
    std::uint32_t to_mont(std::uint32_t x) const;
};

// dst[i] = (dst[i] + c * src[i]) mod p, all values < p
void mod_axpy(std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
              std::uint32_t c, const ModCtx& m);

// Internal: AVX2 entry points, null on platforms without them.
namespace detail {
using AndPopcountFn = std::uint64_t (*)(const std::uint64_t*, const std::uint64_t*, std::size_t);
using PopcountFn = std::uint64_t (*)(const std::uint64_t*, std::size_t);
using ModAxpyFn = void (*)(std::uint32_t*, const std::uint32_t*, std::size_t, std::uint32_t, const ModCtx&);

AndPopcountFn avx2_and_popcount();
PopcountFn avx2_popcount();
ModAxpyFn avx2_mod_axpy();
bool cpu_has_avx2();
}  // namespace detail

}  // namespace stmax::kern
