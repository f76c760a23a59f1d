#include "qd/genus2.hpp"

#include "qd/factor.hpp"
#include "qd/text.hpp"
#include "point_count.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <stdexcept>

namespace qd {

namespace {

using FPoly = Poly<FFElem>;

FPoly reduce_poly(const QPoly& f, const FiniteField& F) {
    std::vector<FFElem> c;
    for (const auto& a : f.coeffs()) c.push_back(F.from_rational(a));
    return FPoly(std::move(c), F.zero());
}

KPoly to_k(const QPoly& f, long d) {
    return f.map([d](const Rational& a) { return QuadElem(a, d); });
}

bool denominators_prime_to(const QPoly& f, std::uint64_t p) {
    for (const auto& a : f.coeffs())
        if (mpz_divisible_ui_p(a.get_den_mpz_t(), p)) return false;
    return true;
}

// u^k * f(1/u)
template <class R>
Poly<R> reversed(const Poly<R>& f, int k) {
    std::vector<R> c(static_cast<std::size_t>(k + 1), f.zero_coeff());
    for (int i = 0; i <= f.degree() && i <= k; ++i) c[static_cast<std::size_t>(k - i)] = f.coeff(static_cast<std::size_t>(i));
    return Poly<R>(std::move(c), f.zero_coeff());
}

// Monic polynomial whose roots have power sums S[1..n].
QPoly from_power_sums(const std::vector<Rational>& S) {
    const int n = static_cast<int>(S.size()) - 1;
    std::vector<Rational> E(static_cast<std::size_t>(n + 1));
    E[0] = 1;
    for (int k = 1; k <= n; ++k) {
        Rational acc(0);
        for (int i = 1; i <= k; ++i)
            acc += ((i % 2) ? 1 : -1) * E[static_cast<std::size_t>(k - i)] * S[static_cast<std::size_t>(i)];
        E[static_cast<std::size_t>(k)] = acc / k;
    }
    std::vector<Rational> c(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(n - k)] = ((k % 2) ? -1 : 1) * E[static_cast<std::size_t>(k)];
    return QPoly(c, Rational(0));
}

}  // namespace

int curve_genus(const HypCurve& C) {
    QPoly F = C.completed();
    if (F.degree() < 1) throw std::invalid_argument("degenerate model");
    if (gcd(F, F.derivative()).degree() > 0) throw std::invalid_argument("model is not squarefree");
    return (F.degree() - 1) / 2;
}

bool good_reduction(const HypCurve& C, std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    int gen = curve_genus(C);
    if (!denominators_prime_to(C.h, p) || !denominators_prime_to(C.g, p)) return false;
    FiniteField F(p, 1);
    if (p != 2) {
        FPoly f = reduce_poly(C.completed(), F);
        if (f.degree() != 2 * gen + 1 && f.degree() != 2 * gen + 2) return false;
        return gcd(f, f.derivative()).degree() == 0;
    }
    FPoly h = reduce_poly(C.h, F), g = reduce_poly(C.g, F);
    if (h.is_zero() || h.degree() > gen + 1 || g.degree() > 2 * gen + 2) return false;
    // singular affine points: h(x) = 0 and h'(x)^2 g(x) = g'(x)^2
    auto smooth = [](const FPoly& hh, const FPoly& gg) {
        FPoly dh = hh.derivative(), dg = gg.derivative();
        FPoly cond = dh * dh * gg + dg * dg;
        if (cond.is_zero()) return false;
        return gcd(hh, cond).degree() == 0;
    };
    if (!smooth(h, g)) return false;
    FPoly hr = reversed(h, gen + 1), gr = reversed(g, 2 * gen + 2);
    if (!is_zero(hr.coeff(0))) return true;
    FPoly dh = hr.derivative(), dg = gr.derivative();
    return !(dh.coeff(0) * dh.coeff(0) * gr.coeff(0) == dg.coeff(0) * dg.coeff(0));
}

std::uint64_t count_points_ff(const HypCurve& C, std::uint64_t p, int deg) {
    if (deg != 1 && deg != 2) throw std::invalid_argument("deg must be 1 or 2");
    if (!good_reduction(C, p)) throw std::invalid_argument("bad reduction at " + std::to_string(p));
    FiniteField F(p, deg);
    if (F.q() > 1000000) throw std::invalid_argument("field too large");
    int gen = curve_genus(C);
    FPoly h = reduce_poly(C.h, F), g = reduce_poly(C.g, F);

    std::uint64_t affine = detail::count_affine(F, h, g);

    // points at infinity: roots of T^2 + h_{g+1} T - g_{2g+2}
    const FFElem a = h.coeff(static_cast<std::size_t>(gen + 1));
    const FFElem b = -g.coeff(static_cast<std::size_t>(2 * gen + 2));
    std::uint64_t inf;
    if (p == 2) {
        if (a.is_zero()) inf = 1;
        else inf = (b / (a * a)).trace_f2() == 0 ? 2 : 0;
    } else {
        FFElem disc = a * a - b * F.from_int(4);
        inf = disc.is_zero() ? 1 : (disc.is_square() ? 2 : 0);
    }
    return affine + inf;
}

JacobianOrders jacobian_orders(const HypCurve& C, std::uint64_t p) {
    if (curve_genus(C) != 2) throw std::invalid_argument("jacobian_orders needs a genus-2 curve");
    JacobianOrders J{};
    J.n1 = static_cast<std::int64_t>(count_points_ff(C, p, 1));
    J.n2 = static_cast<std::int64_t>(count_points_ff(C, p, 2));
    const std::int64_t pp = static_cast<std::int64_t>(p);
    J.s1 = pp + 1 - J.n1;
    std::int64_t twice = J.s1 * J.s1 - (pp * pp + 1 - J.n2);
    if (twice % 2 != 0) throw std::logic_error("inconsistent point counts");
    J.s2 = twice / 2;
    auto P = [&](std::int64_t T) {
        Integer t(T), s1(J.s1), s2(J.s2), q(pp);
        return Integer(t * t * t * t - s1 * t * t * t + s2 * t * t - q * s1 * t + q * q);
    };
    J.jp = P(1);
    J.jp2 = P(1) * P(-1);
    return J;
}

namespace {

struct EPoint {
    bool inf = true;
    FFElem x, y;
};

struct EllipticFF {
    FFElem a1, a2, a3, a4, a6;

    EPoint neg(const EPoint& P) const {
        if (P.inf) return P;
        return {false, P.x, -P.y - a1 * P.x - a3};
    }
    EPoint add(const EPoint& P, const EPoint& Q) const {
        if (P.inf) return Q;
        if (Q.inf) return P;
        FFElem lam, nu;
        if (P.x == Q.x) {
            FFElem den = P.y + P.y + a1 * P.x + a3;
            if (!(P.y == Q.y) || den.is_zero()) return EPoint{};
            const FFElem two = one_like(a1) + one_like(a1), three = two + one_like(a1);
            lam = (three * P.x * P.x + two * a2 * P.x + a4 - a1 * P.y) / den;
            nu = (-P.x * P.x * P.x + a4 * P.x + two * a6 - a3 * P.y) / den;
        } else {
            lam = (Q.y - P.y) / (Q.x - P.x);
            nu = (P.y * Q.x - Q.y * P.x) / (Q.x - P.x);
        }
        FFElem x3 = lam * lam + a1 * lam - a2 - P.x - Q.x;
        FFElem y3 = -(lam + a1) * x3 - nu - a3;
        return {false, x3, y3};
    }
    EPoint mul(EPoint P, std::uint64_t k) const {
        EPoint acc;
        while (k) {
            if (k & 1) acc = add(acc, P);
            k >>= 1;
            if (k) P = add(P, P);
        }
        return acc;
    }
};

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        out.push_back(q);
        while (n % q == 0) n /= q;
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> elliptic_group_structure(const HypCurve& E, std::uint64_t p, int deg) {
    if (curve_genus(E) != 1 || E.g.degree() != 3 || E.h.degree() > 1 || E.g.lead() != Rational(1))
        throw std::invalid_argument("expected a long Weierstrass model");
    if (!good_reduction(E, p)) throw std::invalid_argument("bad reduction at " + std::to_string(p));
    FiniteField F(p, deg);
    if (F.q() > 100000) throw std::invalid_argument("field too large");
    EllipticFF ec{F.from_rational(E.h.coeff(1)), F.from_rational(E.g.coeff(2)), F.from_rational(E.h.coeff(0)),
                  F.from_rational(E.g.coeff(1)), F.from_rational(E.g.coeff(0))};

    const auto elems = F.elements();
    // square roots by table: key c0 * p + c1
    std::unordered_map<std::uint64_t, std::vector<FFElem>> roots;
    for (const FFElem& y : elems) {
        FFElem s = y * y;
        roots[s.c0() * p + s.c1()].push_back(y);
    }
    std::vector<EPoint> pts{EPoint{}};
    for (const FFElem& x : elems) {
        FFElem b = ec.a1 * x + ec.a3;
        FFElem c = x * x * x + ec.a2 * x * x + ec.a4 * x + ec.a6;
        if (p == 2) {
            for (const FFElem& y : elems)
                if (y * y + b * y == c) pts.push_back({false, x, y});
            continue;
        }
        // (2y + b)^2 = b^2 + 4c
        FFElem two = F.from_int(2), disc = b * b + F.from_int(4) * c;
        auto it = roots.find(disc.c0() * p + disc.c1());
        if (it == roots.end()) continue;
        for (const FFElem& Y : it->second) pts.push_back({false, x, (Y - b) / two});
    }
    const std::uint64_t n = pts.size();
    const auto primes = prime_factors(n);
    std::uint64_t exponent = 1;
    for (const EPoint& P : pts) {
        std::uint64_t ord = n;
        for (std::uint64_t q : primes)
            while (ord % q == 0 && ec.mul(P, ord / q).inf) ord /= q;
        exponent = std::lcm(exponent, ord);
    }
    return {n / exponent, exponent};
}

Integer torsion_bound(const HypCurve& C, const std::vector<std::uint64_t>& primes, int deg) {
    int gen = curve_genus(C);
    if (gen != 1 && gen != 2) throw std::invalid_argument("torsion_bound needs genus 1 or 2");
    if (deg != 1 && deg != 2) throw std::invalid_argument("deg must be 1 or 2");
    Integer acc(0);
    for (std::uint64_t p : primes) {
        Integer n;
        if (gen == 2) {
            auto J = jacobian_orders(C, p);
            n = deg == 1 ? J.jp : J.jp2;
        } else {
            n = Integer(static_cast<unsigned long>(count_points_ff(C, p, deg)));
        }
        mpz_gcd(acc.get_mpz_t(), acc.get_mpz_t(), n.get_mpz_t());
    }
    return acc;
}

KJacobian jacobian_over(const HypCurve& C, long d) {
    KPoly h = to_k(C.h, d), g = to_k(C.g, d);
    const QuadElem h3 = h.coeff(3), g6 = g.coeff(6);
    if (is_zero(h3) && is_zero(g6)) return KJacobian(h, g, std::nullopt);
    auto s = quad_sqrt(h3 * h3 + g6.scaled(Rational(4)));
    if (!s) throw std::invalid_argument("points at infinity are not defined over the field");
    return KJacobian(h, g, (*s - h3).scaled(Rational(1, 2)));
}

std::vector<KPoly> quadratic_factors_over(const QPoly& f, long d) {
    std::vector<KPoly> out;
    for (const auto& [q, mult] : factor_rational(f).factors) {
        (void)mult;
        KPoly qk = to_k(q, d);
        if (q.degree() == 2) {
            if (roots_in_quadfield(qk).empty()) out.push_back(qk);
        } else if (q.degree() == 4) {
            // A K-rational quadratic factor x^2 - s x + n has s a sum and n a product of two roots;
            // both are roots of rational sextics built from the power sums of the quartic.
            std::vector<Rational> P(13);
            P[0] = 4;
            for (int k = 1; k <= 12; ++k) {
                Rational s(0);
                for (int i = 1; i <= std::min(k, 4); ++i)
                    s += q.coeff(static_cast<std::size_t>(4 - i)) * (i == k ? Rational(k) : P[static_cast<std::size_t>(k - i)]);
                P[static_cast<std::size_t>(k)] = -s;
            }
            std::vector<Rational> sums(7), prods(7);
            for (int k = 1; k <= 6; ++k) {
                Rational acc(0);
                Integer binom(1);
                for (int m = 0; m <= k; ++m) {
                    acc += Rational(binom) * P[static_cast<std::size_t>(m)] * P[static_cast<std::size_t>(k - m)];
                    binom = binom * (k - m) / (m + 1);
                }
                Integer two_k;
                mpz_ui_pow_ui(two_k.get_mpz_t(), 2, static_cast<unsigned long>(k));
                sums[static_cast<std::size_t>(k)] = (acc - Rational(two_k) * P[static_cast<std::size_t>(k)]) / 2;
                prods[static_cast<std::size_t>(k)] =
                    (P[static_cast<std::size_t>(k)] * P[static_cast<std::size_t>(k)] - P[static_cast<std::size_t>(2 * k)]) / 2;
            }
            std::vector<KPoly> found;
            for (const QuadElem& s : distinct_roots(to_k(from_power_sums(sums), d)))
                for (const QuadElem& n : distinct_roots(to_k(from_power_sums(prods), d))) {
                    KPoly g(std::vector<QuadElem>{n, -s, QuadElem(Rational(1), d)}, QuadElem(d));
                    if (!(qk % g).is_zero() || !roots_in_quadfield(g).empty()) continue;
                    if (std::find(found.begin(), found.end(), g) == found.end()) found.push_back(g);
                }
            out.insert(out.end(), found.begin(), found.end());
        }
    }
    return out;
}

TwoTorsion weierstrass_and_2torsion(const HypCurve& C, long d) {
    if (!C.h.is_zero()) throw std::invalid_argument("weierstrass_and_2torsion expects y^2 = f");
    if (curve_genus(C) != 2) throw std::invalid_argument("genus 2 expected");
    KJacobian J = jacobian_over(C, d);
    KPoly f = to_k(C.g, d);
    const QuadElem z(d);
    TwoTorsion out;
    for (const QuadElem& r : distinct_roots(f)) out.weierstrass.push_back(KPoint::affine(r, z));
    if (!J.split()) out.weierstrass.push_back(KPoint::inf_plus(z));
    out.quadratic_factors = quadratic_factors_over(C.g, d);

    out.classes.push_back(J.zero());
    const auto& W = out.weierstrass;
    for (std::size_t i = 0; i < W.size(); ++i)
        for (std::size_t j = i + 1; j < W.size(); ++j) out.classes.push_back(J.pair(W[i], W[j]));
    for (const KPoly& q : out.quadratic_factors) out.classes.push_back(J.from_mumford(q, KPoly(z)));
    return out;
}

std::optional<long> point_order(const KJacobian& J, const KClass& D, long bound) {
    if (bound > 200) throw std::invalid_argument("bound must be <= 200");
    return J.order(D, bound);
}

std::vector<KClass> order3_classes(const HypCurve& C, const QuadElem& t, const QuadElem& n) {
    const long d = t.d();
    if (n.d() != d) throw std::invalid_argument("t and n must lie in the same field");
    KJacobian J = jacobian_over(C, d);
    const QuadElem one(Rational(1), d), z(d);
    const KPoly u(std::vector<QuadElem>{n, -t, one}, z);
    // work on the completed square Y^2 = f with Y = y + h/2
    const KPoly hk = to_k(C.h, d);
    const KPoly f = to_k(C.g, d) + (hk * hk).scaled(QuadElem(Rational(1, 4), d));
    const KPoly r = f % u;
    const QuadElem r1 = r.coeff(1), r0 = r.coeff(0);
    const QuadElem disc = t * t - n.scaled(Rational(4));

    std::vector<KPoly> candidates;
    auto push = [&](const QuadElem& v1, const QuadElem& v0) {
        candidates.push_back(KPoly(std::vector<QuadElem>{v0, v1}, z) - hk.scaled(QuadElem(Rational(1, 2), d)));
    };
    if (is_zero(disc)) {
        // u = (x - x0)^2: the tangent line at (x0, +-y0)
        const QuadElem x0 = t.scaled(Rational(1, 2));
        const QuadElem fx = f.eval(x0);
        auto y0 = quad_sqrt(fx);
        if (y0 && !is_zero(fx))
            for (const QuadElem& y : {*y0, -*y0}) {
                QuadElem slope = f.derivative().eval(x0) / y.scaled(Rational(2));
                push(slope, y - slope * x0);
            }
    } else {
        // w = v1^2 solves (t^2 - 4n) w^2 - (2 r1 t + 4 r0) w + r1^2 = 0
        const QuadElem B = -(r1 * t.scaled(Rational(2)) + r0.scaled(Rational(4))), Cc = r1 * r1;
        if (auto sd = quad_sqrt(B * B - disc * Cc.scaled(Rational(4)))) {
            std::vector<QuadElem> ws{(-B + *sd) / disc.scaled(Rational(2))};
            if (!is_zero(*sd)) ws.push_back((-B - *sd) / disc.scaled(Rational(2)));
            for (const QuadElem& w : ws) {
                if (is_zero(w)) continue;
                auto v1 = quad_sqrt(w);
                if (!v1) continue;
                for (const QuadElem& s : {*v1, -*v1}) push(s, (r1 - t * w) / s.scaled(Rational(2)));
            }
        }
        if (is_zero(r1))
            if (auto v0 = quad_sqrt(r0)) {
                push(z, *v0);
                if (!is_zero(*v0)) push(z, -*v0);
            }
    }

    std::vector<KClass> out;
    for (const KPoly& v : candidates) {
        KClass D = J.from_mumford(u, v);
        if (J.is_zero_class(D) || !J.is_zero_class(J.mul(D, 3))) continue;
        bool seen = false;
        for (const auto& E : out) seen = seen || E == D;
        if (!seen) out.push_back(D);
    }
    return out;
}

bool order3_certify(const HypCurve& C, const QuadElem& t, const QuadElem& n) { return !order3_classes(C, t, n).empty(); }

std::string to_string(const KPoint& P) {
    switch (P.kind) {
        case KPoint::InfPlus: return "inf+";
        case KPoint::InfMinus: return "inf-";
        default: return "(" + to_string(P.x) + ", " + to_string(P.y) + ")";
    }
}

std::string to_string(const KClass& D) {
    std::ostringstream os;
    os << "{u = " << to_string(D.u, "x") << ", v = " << to_string(D.v, "x") << ", inf+ " << D.np << ", inf- " << D.nm
       << "}";
    return os.str();
}

}  // namespace qd
