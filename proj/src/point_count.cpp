#include "point_count.hpp"

#include "qd/simd.hpp"

#include <vector>

namespace qd::detail {

std::uint64_t count_affine(const FiniteField& F, const Poly<FFElem>& h, const Poly<FFElem>& g) {
    const auto elems = F.elements();
    if (F.p() == 2) {
        std::uint64_t total = 0;
        for (const FFElem& x : elems) {
            FFElem hx = h.eval(x), gx = g.eval(x);
            if (hx.is_zero()) total += 1;
            else total += (gx / (hx * hx)).trace_f2() == 0 ? 2 : 0;
        }
        return total;
    }
    // y solutions per x: 1 + chi(h^2 + 4g)
    Poly<FFElem> D = h * h + g.scaled(F.from_int(4));
    const std::uint32_t p = static_cast<std::uint32_t>(F.p());
    const std::uint32_t n = F.deg() == 2 ? static_cast<std::uint32_t>(F.nonresidue()) : 0;
    const int deg = D.degree();
    std::vector<std::uint32_t> c0(deg + 1), c1(deg + 1);
    for (int i = 0; i <= deg; ++i) {
        c0[i] = static_cast<std::uint32_t>(D.coeff(i).c0());
        c1[i] = static_cast<std::uint32_t>(D.coeff(i).c1());
    }
    std::vector<std::uint32_t> x0(elems.size()), x1(elems.size()), v0(elems.size()), v1(elems.size());
    for (std::size_t m = 0; m < elems.size(); ++m) {
        x0[m] = static_cast<std::uint32_t>(elems[m].c0());
        x1[m] = static_cast<std::uint32_t>(elems[m].c1());
    }
    simd::fp2_poly_eval(simd::active_isa(), simd::Fp2{p, n}, c0.data(), c1.data(), deg, x0.data(), x1.data(),
                        elems.size(), v0.data(), v1.data());

    std::vector<char> square(p, 0);
    for (std::uint64_t a = 0; a < p; ++a) square[a * a % p] = 1;
    std::uint64_t total = 0;
    for (std::size_t m = 0; m < elems.size(); ++m) {
        if (v0[m] == 0 && v1[m] == 0) {
            total += 1;
            continue;
        }
        // a in F_{p^2} is a square iff its norm is a square in F_p
        std::uint64_t norm = v0[m];
        if (F.deg() == 2) {
            std::uint64_t a = v0[m], b = v1[m];
            norm = (a * a % p + (p - n) * (b * b % p)) % p;
        }
        total += square[norm] ? 2 : 0;
    }
    return total;
}

}  // namespace qd::detail
