#include "qd/simd.hpp"

#include <cstdlib>
#include <stdexcept>

namespace qd::simd {

namespace {
std::optional<Isa> g_override;

std::uint32_t mask_for(unsigned k) { return k >= 32 ? 0xffffffffu : ((1u << k) - 1u); }
}  // namespace

std::string isa_name(Isa isa) {
    switch (isa) {
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
        default: return "scalar";
    }
}

std::optional<Isa> parse_isa(const std::string& name) {
    if (name == "scalar") return Isa::Scalar;
    if (name == "avx2") return Isa::Avx2;
    if (name == "neon") return Isa::Neon;
    return std::nullopt;
}

bool isa_supported(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2:
#if defined(QD_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::Neon:
#if defined(QD_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Isa detected_isa() {
    if (isa_supported(Isa::Avx2)) return Isa::Avx2;
    if (isa_supported(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
}

void set_isa_override(std::optional<Isa> isa) {
    if (isa && !isa_supported(*isa)) throw std::invalid_argument("instruction set not supported: " + isa_name(*isa));
    g_override = isa;
}

Isa active_isa() {
    if (g_override) return *g_override;
    if (const char* env = std::getenv("QUADDYN_ISA")) {
        auto isa = parse_isa(env);
        if (isa && isa_supported(*isa)) return *isa;
    }
    return detected_isa();
}

void fp2_poly_eval(Isa isa, const Fp2& F, const std::uint32_t* c0, const std::uint32_t* c1, int degree,
                   const std::uint32_t* x0, const std::uint32_t* x1, std::size_t count, std::uint32_t* out0,
                   std::uint32_t* out1) {
    if (F.p < 2 || F.p >= (1u << 26)) throw std::invalid_argument("fp2_poly_eval needs 2 <= p < 2^26");
    if (!isa_supported(isa)) throw std::invalid_argument("instruction set not supported: " + isa_name(isa));
    switch (isa) {
#if defined(QD_HAVE_AVX2)
        case Isa::Avx2: return detail::fp2_poly_eval_avx2(F, c0, c1, degree, x0, x1, count, out0, out1);
#endif
#if defined(QD_HAVE_NEON)
        case Isa::Neon: return detail::fp2_poly_eval_neon(F, c0, c1, degree, x0, x1, count, out0, out1);
#endif
        default: return detail::fp2_poly_eval_scalar(F, c0, c1, degree, x0, x1, count, out0, out1);
    }
}

void grid_eval_mod2k(Isa isa, const std::uint32_t* a, int dt, int du, unsigned k, const std::uint32_t* T,
                     const std::uint32_t* U, std::size_t count, std::uint32_t* out) {
    if (k == 0 || k > 32) throw std::invalid_argument("grid_eval_mod2k needs 1 <= k <= 32");
    if (!isa_supported(isa)) throw std::invalid_argument("instruction set not supported: " + isa_name(isa));
    switch (isa) {
#if defined(QD_HAVE_AVX2)
        case Isa::Avx2: return detail::grid_eval_mod2k_avx2(a, dt, du, k, T, U, count, out);
#endif
#if defined(QD_HAVE_NEON)
        case Isa::Neon: return detail::grid_eval_mod2k_neon(a, dt, du, k, T, U, count, out);
#endif
        default: return detail::grid_eval_mod2k_scalar(a, dt, du, k, T, U, count, out);
    }
}

namespace detail {

namespace {
std::uint64_t mulm(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }
}  // namespace

void fp2_poly_eval_scalar(const Fp2& F, const std::uint32_t* c0, const std::uint32_t* c1, int degree,
                          const std::uint32_t* x0, const std::uint32_t* x1, std::size_t count, std::uint32_t* out0,
                          std::uint32_t* out1) {
    const std::uint64_t p = F.p, n = F.n;
    for (std::size_t m = 0; m < count; ++m) {
        std::uint64_t r0 = 0, r1 = 0;
        for (int i = degree; i >= 0; --i) {
            std::uint64_t t0 = (mulm(r0, x0[m], p) + mulm(n, mulm(r1, x1[m], p), p)) % p;
            std::uint64_t t1 = (mulm(r0, x1[m], p) + mulm(r1, x0[m], p)) % p;
            r0 = (t0 + c0[i]) % p;
            r1 = (t1 + c1[i]) % p;
        }
        out0[m] = static_cast<std::uint32_t>(r0);
        out1[m] = static_cast<std::uint32_t>(r1);
    }
}

void grid_eval_mod2k_scalar(const std::uint32_t* a, int dt, int du, unsigned k, const std::uint32_t* T,
                            const std::uint32_t* U, std::size_t count, std::uint32_t* out) {
    const std::uint32_t mask = mask_for(k);
    for (std::size_t m = 0; m < count; ++m) {
        std::uint32_t acc = 0;
        for (int i = dt; i >= 0; --i) {
            std::uint32_t row = 0;
            for (int j = du; j >= 0; --j) row = row * U[m] + a[i * (du + 1) + j];
            acc = acc * T[m] + row;
        }
        out[m] = acc & mask;
    }
}

}  // namespace detail

}  // namespace qd::simd
