// AVX2 variants. Compiled with per-function target attributes so the TU
// builds without -mavx2 and the code only runs after a cpuid check.

#include "stmax/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define STMAX_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#else
#define STMAX_HAVE_AVX2_BUILD 0
#endif

namespace stmax::kern::detail {

#if STMAX_HAVE_AVX2_BUILD

namespace {

// Nibble-LUT popcount of a & b, accumulated through vpsadbw.
__attribute__((target("avx2")))
std::uint64_t and_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    const __m256i lut = _mm256_setr_epi8(
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = _mm256_and_si256(
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i)),
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i)));
        __m256i lo = _mm256_and_si256(v, low_mask);
        __m256i hi = _mm256_and_si256(_mm256_srli_epi32(v, 4), low_mask);
        __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                                      _mm256_shuffle_epi8(lut, hi));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += static_cast<std::uint64_t>(__builtin_popcountll(a[i] & b[i]));
    return s;
}

__attribute__((target("avx2")))
std::uint64_t popcount_avx2(const std::uint64_t* a, std::size_t n) {
    const __m256i lut = _mm256_setr_epi8(
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i lo = _mm256_and_si256(v, low_mask);
        __m256i hi = _mm256_and_si256(_mm256_srli_epi32(v, 4), low_mask);
        __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                                      _mm256_shuffle_epi8(lut, hi));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += static_cast<std::uint64_t>(__builtin_popcountll(a[i]));
    return s;
}

// Montgomery REDC on four u64 lanes holding values < p < 2^31.
__attribute__((target("avx2")))
inline __m256i mont_mul4(__m256i a, __m256i b, __m256i pv, __m256i ninv) {
    __m256i t = _mm256_mul_epu32(a, b);                    // a*b, < 2^62
    __m256i m = _mm256_mul_epu32(t, ninv);                 // low32(t)*n', keep low 32 via next mul
    __m256i t2 = _mm256_add_epi64(t, _mm256_mul_epu32(m, pv));
    __m256i u = _mm256_srli_epi64(t2, 32);                 // < 2p
    __m256i lt = _mm256_cmpgt_epi64(pv, u);                // p > u ? ~0 : 0
    return _mm256_sub_epi64(u, _mm256_andnot_si256(lt, pv));
}

__attribute__((target("avx2")))
void mod_axpy_avx2(std::uint32_t* dst, const std::uint32_t* src, std::size_t n,
                   std::uint32_t c, const ModCtx& ctx) {
    const std::uint32_t c_mont = ctx.to_mont(c % ctx.p);
    const __m256i cm = _mm256_set1_epi64x(c_mont);
    const __m256i pv = _mm256_set1_epi64x(ctx.p);
    const __m256i ninv = _mm256_set1_epi64x(ctx.p_neg_inv);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i se = s;                                    // even u32 lanes (mul_epu32 reads low 32)
        __m256i so = _mm256_srli_epi64(s, 32);
        __m256i pe = mont_mul4(se, cm, pv, ninv);          // c*src mod p, even
        __m256i po = mont_mul4(so, cm, pv, ninv);
        __m256i de = _mm256_and_si256(d, _mm256_set1_epi64x(0xffffffffll));
        __m256i dor = _mm256_srli_epi64(d, 32);
        __m256i re = _mm256_add_epi64(de, pe);
        __m256i ro = _mm256_add_epi64(dor, po);
        __m256i lte = _mm256_cmpgt_epi64(pv, re);
        __m256i lto = _mm256_cmpgt_epi64(pv, ro);
        re = _mm256_sub_epi64(re, _mm256_andnot_si256(lte, pv));
        ro = _mm256_sub_epi64(ro, _mm256_andnot_si256(lto, pv));
        __m256i out = _mm256_or_si256(re, _mm256_slli_epi64(ro, 32));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), out);
    }
    const std::uint64_t p = ctx.p;
    for (; i < n; ++i) {
        dst[i] = static_cast<std::uint32_t>((dst[i] + static_cast<std::uint64_t>(c) * src[i]) % p);
    }
}

}  // namespace

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }
AndPopcountFn avx2_and_popcount() { return &and_popcount_avx2; }
PopcountFn avx2_popcount() { return &popcount_avx2; }
ModAxpyFn avx2_mod_axpy() { return &mod_axpy_avx2; }

#else

bool cpu_has_avx2() { return false; }
AndPopcountFn avx2_and_popcount() { return nullptr; }
PopcountFn avx2_popcount() { return nullptr; }
ModAxpyFn avx2_mod_axpy() { return nullptr; }

#endif

}  // namespace stmax::kern::detail
