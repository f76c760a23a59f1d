#pragma once

// Integer polynomials and arithmetic modulo an integer m.

#include "nmod_poly.hpp"
#include "qd/poly.hpp"

#include <vector>

namespace qd::zpoly {

using ZPoly = std::vector<Integer>;

void trim(ZPoly& a);
int deg(const ZPoly& a);
// Primitive integer polynomial with positive leading coefficient, and the
// rational scalar with p = scalar * result.
ZPoly primitive_part(const Poly<Rational>& p, Rational* scalar = nullptr);
ZPoly primitive_part(const ZPoly& p);
Poly<Rational> to_rational(const ZPoly& a);
Integer content(const ZPoly& a);
Integer norm2_ceil(const ZPoly& a);

nmod::NPoly reduce(const ZPoly& a, std::uint64_t p);
ZPoly lift(const nmod::NPoly& a);

ZPoly mul_mod(const ZPoly& a, const ZPoly& b, const Integer& m);
ZPoly sub_mod(const ZPoly& a, const ZPoly& b, const Integer& m);
ZPoly add_mod(const ZPoly& a, const ZPoly& b, const Integer& m);
ZPoly scale_mod(const ZPoly& a, const Integer& s, const Integer& m);
// Division by a monic b modulo m.
void divrem_monic_mod(const ZPoly& a, const ZPoly& b, const Integer& m, ZPoly& q, ZPoly& r);
ZPoly symmetric(const ZPoly& a, const Integer& m);

// Exact division over Z; false when b does not divide a.
bool divides(const ZPoly& a, const ZPoly& b, ZPoly* quotient);

// Lift a factorization f = lc(f) * prod(factors) mod p (monic, pairwise
// coprime) to modulus p^(2^j) >= bound.  Returns monic lifted factors and m.
std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<nmod::NPoly>& factors, std::uint64_t p,
                               const Integer& bound, Integer& modulus);

}  // namespace qd::zpoly
