#include "qd/simd.hpp"

#include <arm_neon.h>

namespace qd::simd::detail {

namespace {

struct ModP {
    float64x2_t p, invp;

    explicit ModP(std::uint32_t prime) : p(vdupq_n_f64(prime)), invp(vdupq_n_f64(1.0 / prime)) {}

    float64x2_t mul(float64x2_t a, float64x2_t b) const {
        float64x2_t prod = vmulq_f64(a, b);
        float64x2_t q = vrndmq_f64(vmulq_f64(prod, invp));
        float64x2_t r = vsubq_f64(prod, vmulq_f64(q, p));
        r = vbslq_f64(vcltzq_f64(r), vaddq_f64(r, p), r);
        return vbslq_f64(vcgeq_f64(r, p), vsubq_f64(r, p), r);
    }
    float64x2_t add(float64x2_t a, float64x2_t b) const {
        float64x2_t r = vaddq_f64(a, b);
        return vbslq_f64(vcgeq_f64(r, p), vsubq_f64(r, p), r);
    }
};

float64x2_t load2(const std::uint32_t* v) { return vcvtq_f64_u64(vmovl_u32(vld1_u32(v))); }
void store2(std::uint32_t* v, float64x2_t x) { vst1_u32(v, vmovn_u64(vcvtq_u64_f64(x))); }

}  // namespace

void fp2_poly_eval_neon(const Fp2& F, const std::uint32_t* c0, const std::uint32_t* c1, int degree,
                        const std::uint32_t* x0, const std::uint32_t* x1, std::size_t count, std::uint32_t* out0,
                        std::uint32_t* out1) {
    const ModP M(F.p);
    const float64x2_t n = vdupq_n_f64(F.n % F.p);
    std::size_t m = 0;
    for (; m + 2 <= count; m += 2) {
        float64x2_t a = load2(x0 + m), b = load2(x1 + m);
        float64x2_t r0 = vdupq_n_f64(0), r1 = vdupq_n_f64(0);
        for (int i = degree; i >= 0; --i) {
            float64x2_t t0 = M.add(M.mul(r0, a), M.mul(n, M.mul(r1, b)));
            float64x2_t t1 = M.add(M.mul(r0, b), M.mul(r1, a));
            r0 = M.add(t0, vdupq_n_f64(c0[i]));
            r1 = M.add(t1, vdupq_n_f64(c1[i]));
        }
        store2(out0 + m, r0);
        store2(out1 + m, r1);
    }
    if (m < count) fp2_poly_eval_scalar(F, c0, c1, degree, x0 + m, x1 + m, count - m, out0 + m, out1 + m);
}

void grid_eval_mod2k_neon(const std::uint32_t* a, int dt, int du, unsigned k, const std::uint32_t* T,
                          const std::uint32_t* U, std::size_t count, std::uint32_t* out) {
    const uint32x4_t mask = vdupq_n_u32(k >= 32 ? 0xffffffffu : ((1u << k) - 1u));
    std::size_t m = 0;
    for (; m + 4 <= count; m += 4) {
        uint32x4_t t = vld1q_u32(T + m), u = vld1q_u32(U + m);
        uint32x4_t acc = vdupq_n_u32(0);
        for (int i = dt; i >= 0; --i) {
            uint32x4_t row = vdupq_n_u32(0);
            for (int j = du; j >= 0; --j) row = vmlaq_u32(vdupq_n_u32(a[i * (du + 1) + j]), row, u);
            acc = vmlaq_u32(row, acc, t);
        }
        vst1q_u32(out + m, vandq_u32(acc, mask));
    }
    if (m < count) grid_eval_mod2k_scalar(a, dt, du, k, T + m, U + m, count - m, out + m);
}

}  // namespace qd::simd::detail
