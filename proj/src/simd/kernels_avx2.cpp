#include "qd/simd.hpp"

#include <immintrin.h>

namespace qd::simd::detail {

namespace {

struct ModP {
    __m256d p, invp, zero;

    explicit ModP(std::uint32_t prime)
        : p(_mm256_set1_pd(prime)), invp(_mm256_set1_pd(1.0 / prime)), zero(_mm256_setzero_pd()) {}

    // Inputs in [0, p); products stay below 2^52 so every step is exact.
    __m256d mul(__m256d a, __m256d b) const {
        __m256d prod = _mm256_mul_pd(a, b);
        __m256d q = _mm256_floor_pd(_mm256_mul_pd(prod, invp));
        __m256d r = _mm256_sub_pd(prod, _mm256_mul_pd(q, p));
        r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), p));
        return _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, p, _CMP_GE_OQ), p));
    }
    __m256d add(__m256d a, __m256d b) const {
        __m256d r = _mm256_add_pd(a, b);
        return _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, p, _CMP_GE_OQ), p));
    }
};

__m256d load4(const std::uint32_t* v) {
    return _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(v)));
}
void store4(std::uint32_t* v, __m256d x) { _mm_storeu_si128(reinterpret_cast<__m128i*>(v), _mm256_cvttpd_epi32(x)); }

}  // namespace

void fp2_poly_eval_avx2(const Fp2& F, const std::uint32_t* c0, const std::uint32_t* c1, int degree,
                        const std::uint32_t* x0, const std::uint32_t* x1, std::size_t count, std::uint32_t* out0,
                        std::uint32_t* out1) {
    const ModP M(F.p);
    const __m256d n = _mm256_set1_pd(F.n % F.p);
    std::size_t m = 0;
    for (; m + 4 <= count; m += 4) {
        __m256d a = load4(x0 + m), b = load4(x1 + m);
        __m256d r0 = _mm256_setzero_pd(), r1 = _mm256_setzero_pd();
        for (int i = degree; i >= 0; --i) {
            __m256d t0 = M.add(M.mul(r0, a), M.mul(n, M.mul(r1, b)));
            __m256d t1 = M.add(M.mul(r0, b), M.mul(r1, a));
            r0 = M.add(t0, _mm256_set1_pd(c0[i]));
            r1 = M.add(t1, _mm256_set1_pd(c1[i]));
        }
        store4(out0 + m, r0);
        store4(out1 + m, r1);
    }
    if (m < count) fp2_poly_eval_scalar(F, c0, c1, degree, x0 + m, x1 + m, count - m, out0 + m, out1 + m);
}

void grid_eval_mod2k_avx2(const std::uint32_t* a, int dt, int du, unsigned k, const std::uint32_t* T,
                          const std::uint32_t* U, std::size_t count, std::uint32_t* out) {
    const __m256i mask = _mm256_set1_epi32(static_cast<int>(k >= 32 ? 0xffffffffu : ((1u << k) - 1u)));
    std::size_t m = 0;
    for (; m + 8 <= count; m += 8) {
        __m256i t = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(T + m));
        __m256i u = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(U + m));
        __m256i acc = _mm256_setzero_si256();
        for (int i = dt; i >= 0; --i) {
            __m256i row = _mm256_setzero_si256();
            for (int j = du; j >= 0; --j)
                row = _mm256_add_epi32(_mm256_mullo_epi32(row, u), _mm256_set1_epi32(static_cast<int>(a[i * (du + 1) + j])));
            acc = _mm256_add_epi32(_mm256_mullo_epi32(acc, t), row);
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + m), _mm256_and_si256(acc, mask));
    }
    if (m < count) grid_eval_mod2k_scalar(a, dt, du, k, T + m, U + m, count - m, out + m);
}

}  // namespace qd::simd::detail
