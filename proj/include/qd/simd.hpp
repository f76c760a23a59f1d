#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace qd::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string isa_name(Isa isa);
std::optional<Isa> parse_isa(const std::string& name);

// Best variant the running CPU supports.
Isa detected_isa();
bool isa_supported(Isa isa);
// detected_isa() unless QUADDYN_ISA or set_isa_override() picks a supported one.
Isa active_isa();
void set_isa_override(std::optional<Isa> isa);

// F_{p^2} = F_p[s]/(s^2 - n); deg-1 fields pass zero s-parts. Requires p < 2^26.
struct Fp2 {
    std::uint32_t p, n;
};

// out = f(x) for each of the count points x, f given by (c0[i] + c1[i] s) x^i.
void fp2_poly_eval(Isa isa, const Fp2& F, const std::uint32_t* c0, const std::uint32_t* c1, int degree,
                   const std::uint32_t* x0, const std::uint32_t* x1, std::size_t count, std::uint32_t* out0,
                   std::uint32_t* out1);

// out = sum a[i][j] T^i U^j mod 2^k at (T[m], U[m]); a is row-major with (du + 1) columns, k <= 32.
void grid_eval_mod2k(Isa isa, const std::uint32_t* a, int dt, int du, unsigned k, const std::uint32_t* T,
                     const std::uint32_t* U, std::size_t count, std::uint32_t* out);

namespace detail {
void fp2_poly_eval_scalar(const Fp2&, const std::uint32_t*, const std::uint32_t*, int, const std::uint32_t*,
                          const std::uint32_t*, std::size_t, std::uint32_t*, std::uint32_t*);
void grid_eval_mod2k_scalar(const std::uint32_t*, int, int, unsigned, const std::uint32_t*, const std::uint32_t*,
                            std::size_t, std::uint32_t*);
void fp2_poly_eval_avx2(const Fp2&, const std::uint32_t*, const std::uint32_t*, int, const std::uint32_t*,
                        const std::uint32_t*, std::size_t, std::uint32_t*, std::uint32_t*);
void grid_eval_mod2k_avx2(const std::uint32_t*, int, int, unsigned, const std::uint32_t*, const std::uint32_t*,
                          std::size_t, std::uint32_t*);
void fp2_poly_eval_neon(const Fp2&, const std::uint32_t*, const std::uint32_t*, int, const std::uint32_t*,
                        const std::uint32_t*, std::size_t, std::uint32_t*, std::uint32_t*);
void grid_eval_mod2k_neon(const std::uint32_t*, int, int, unsigned, const std::uint32_t*, const std::uint32_t*,
                          std::size_t, std::uint32_t*);
}  // namespace detail

}  // namespace qd::simd
