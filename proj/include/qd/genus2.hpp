#pragma once

#include "qd/ff.hpp"
#include "qd/jacobian.hpp"
#include "qd/quad.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qd {

using QPoly = Poly<Rational>;
using KPoly = Poly<QuadElem>;
using KJacobian = Jacobian<QuadElem>;
using KClass = DivClass<QuadElem>;
using KPoint = CurvePoint<QuadElem>;

// y^2 + h(x) y = g(x) over Q.
struct HypCurve {
    QPoly h, g;

    static HypCurve odd_even(QPoly f) { return {QPoly(Rational(0)), std::move(f)}; }  // y^2 = f
    QPoly completed() const { return g.scaled(Rational(4)) + h * h; }  // 4g + h^2
};

// floor((deg(4g + h^2) - 1) / 2); throws for a non-squarefree model.
int curve_genus(const HypCurve& C);

// Whether the model has good reduction at p (smooth as a weighted projective model of its genus).
bool good_reduction(const HypCurve& C, std::uint64_t p);

// #X(F_{p^deg}) for deg in {1, 2}; points at infinity included.
std::uint64_t count_points_ff(const HypCurve& C, std::uint64_t p, int deg);

struct JacobianOrders {
    std::int64_t n1, n2;  // #X(F_p), #X(F_{p^2})
    std::int64_t s1, s2;  // Frobenius polynomial T^4 - s1 T^3 + s2 T^2 - p s1 T + p^2
    Integer jp, jp2;      // #J(F_p), #J(F_{p^2})
};

JacobianOrders jacobian_orders(const HypCurve& C, std::uint64_t p);

// Invariant factors (n1 | n2) of E(F_{p^deg}) for a long Weierstrass model
// y^2 + (a1 x + a3) y = x^3 + a2 x^2 + a4 x + a6.
std::pair<std::uint64_t, std::uint64_t> elliptic_group_structure(const HypCurve& E, std::uint64_t p, int deg);

// gcd of #J(F_{p^deg}) (genus 2) or #E(F_{p^deg}) (genus 1) over the primes.
Integer torsion_bound(const HypCurve& C, const std::vector<std::uint64_t>& primes, int deg = 2);

// The model over K = Q(sqrt d); inf+ is where y ~ rho x^3 with rho = (-h3 + sqrt(h3^2 + 4 g6)) / 2.
KJacobian jacobian_over(const HypCurve& C, long d);

struct TwoTorsion {
    std::vector<KPoint> weierstrass;  // K-rational Weierstrass points
    std::vector<KPoly> quadratic_factors;  // K-irreducible quadratic factors of f
    std::vector<KClass> classes;  // all K-rational 2-torsion classes, O included
};

// For y^2 = f of genus 2 over K = Q(sqrt d).
TwoTorsion weierstrass_and_2torsion(const HypCurve& C, long d);

// Quadratic factors of a rational polynomial that are irreducible over K (monic).
std::vector<KPoly> quadratic_factors_over(const QPoly& f, long d);

std::optional<long> point_order(const KJacobian& J, const KClass& D, long bound = 200);

// Classes (u, v) of exact order 3 with u = x^2 - t x + n and v = v1 x + v0 over K.
// A double root of u gives the tangent classes {P, P}.
std::vector<KClass> order3_classes(const HypCurve& C, const QuadElem& t, const QuadElem& n);
bool order3_certify(const HypCurve& C, const QuadElem& t, const QuadElem& n);

std::string to_string(const KPoint& P);
std::string to_string(const KClass& D);

}  // namespace qd
