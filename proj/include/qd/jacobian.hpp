#pragma once

// Divisor classes on a genus-2 curve y^2 + h(x) y = g(x) over a field F,
// kept in the unordered-pair form {P,Q} = [P + Q - inf+ - inf-].
//
// A class is stored as a Mumford pair (u, v) for the affine part together
// with the multiplicities n+ and n- of the two points at infinity, so that
// deg u + n+ + n- = 2.  For a model with a single point at infinity both
// counts stay 0 and the class is [P + Q - 2 inf].

#include "qd/poly.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace qd {

template <class F>
struct DivClass {
    Poly<F> u, v;
    int np = 0, nm = 0;

    friend bool operator==(const DivClass& a, const DivClass& b) {
        return a.u == b.u && a.v == b.v && a.np == b.np && a.nm == b.nm;
    }
};

template <class F>
struct CurvePoint {
    enum Kind { Affine, InfPlus, InfMinus } kind = Affine;
    F x, y;

    static CurvePoint affine(F x, F y) { return {Affine, std::move(x), std::move(y)}; }
    static CurvePoint inf_plus(const F& like) { return {InfPlus, like, like}; }
    static CurvePoint inf_minus(const F& like) { return {InfMinus, like, like}; }
    bool at_infinity() const { return kind != Affine; }
};

template <class F>
class Jacobian {
public:
    // rho_plus is the leading coefficient of y at inf+, a root of T^2 + h3 T - g6.
    // It must be omitted exactly when the model has one point at infinity.
    Jacobian(Poly<F> h, Poly<F> g, std::optional<F> rho_plus)
        : h_(std::move(h)), g_(std::move(g)), Vp_(g_.zero_coeff()), Vm_(g_.zero_coeff()) {
        if (h_.degree() > 3 || g_.degree() > 6) throw std::invalid_argument("not a genus-2 model");
        const F& h3 = h_.coeff(3);
        const F& g6 = g_.coeff(6);
        split_ = !(is_zero(h3) && is_zero(g6));
        if (!split_) {
            if (g_.degree() != 5 || h_.degree() > 2) throw std::invalid_argument("not a genus-2 model");
            if (rho_plus) throw std::invalid_argument("single point at infinity: no root expected");
            return;
        }
        if (!rho_plus) throw std::invalid_argument("two points at infinity need a root of T^2 + h3 T - g6");
        const F& r = *rho_plus;
        if (!is_zero(r * r + h3 * r - g6)) throw std::invalid_argument("rho is not a root of T^2 + h3 T - g6");
        F other = -h3 - r;
        if (r == other) throw std::invalid_argument("points at infinity coincide: singular model");
        Vp_ = infinity_poly(r);
        Vm_ = infinity_poly(other);
    }

    const Poly<F>& h() const { return h_; }
    const Poly<F>& g() const { return g_; }
    bool split() const { return split_; }
    const Poly<F>& v_plus() const { return Vp_; }
    const Poly<F>& v_minus() const { return Vm_; }

    DivClass<F> zero() const {
        Poly<F> one = Poly<F>::constant(one_like(g_.zero_coeff()));
        return {one, Poly<F>(g_.zero_coeff()), split_ ? 1 : 0, split_ ? 1 : 0};
    }
    bool is_zero_class(const DivClass<F>& D) const { return D == zero(); }

    bool on_curve(const CurvePoint<F>& P) const {
        if (P.at_infinity()) return split_ || P.kind == CurvePoint<F>::InfPlus;
        return P.y * P.y + h_.eval(P.x) * P.y == g_.eval(P.x);
    }

    CurvePoint<F> involution(const CurvePoint<F>& P) const {
        if (P.kind == CurvePoint<F>::InfPlus) return split_ ? CurvePoint<F>::inf_minus(P.x) : P;
        if (P.kind == CurvePoint<F>::InfMinus) return CurvePoint<F>::inf_plus(P.x);
        return CurvePoint<F>::affine(P.x, -P.y - h_.eval(P.x));
    }

    // The class {P, Q}.
    DivClass<F> pair(const CurvePoint<F>& P, const CurvePoint<F>& Q) const {
        if (!on_curve(P) || !on_curve(Q)) throw std::invalid_argument("point not on curve");
        if (!split_) return add_raw(half(P), half(Q), 0);
        // {P, Q} = {P, inf-} + {Q, inf+}
        return add(half_minus(P), half_plus(Q));
    }

    // The class {P, Q} for a Galois-stable pair of affine points: x-polynomial u, y = v(x).
    DivClass<F> from_mumford(const Poly<F>& u, const Poly<F>& v) const {
        if (u.degree() != 2 && (split_ || u.degree() > 2)) throw std::invalid_argument("expected a quadratic u");
        Poly<F> um = u.monic();
        Poly<F> vm = v % um;
        if (!((vm * vm + h_ * vm - g_) % um).is_zero()) throw std::invalid_argument("u does not divide v^2 + h v - g");
        return reduce(DivClass<F>{um, vm, 0, 0});
    }

    DivClass<F> neg(const DivClass<F>& D) const {
        return DivClass<F>{D.u, (-h_ - D.v) % D.u, D.nm, D.np};
    }

    DivClass<F> add(const DivClass<F>& a, const DivClass<F>& b) const { return add_raw(a, b, split_ ? 1 : 0); }

    DivClass<F> sub(const DivClass<F>& a, const DivClass<F>& b) const { return add(a, neg(b)); }

    DivClass<F> mul(DivClass<F> D, long k) const {
        if (k < 0) {
            D = neg(D);
            k = -k;
        }
        DivClass<F> acc = zero();
        while (k) {
            if (k & 1) acc = add(acc, D);
            k >>= 1;
            if (k) D = add(D, D);
        }
        return acc;
    }

    std::optional<long> order(const DivClass<F>& D, long bound) const {
        DivClass<F> acc = D;
        for (long k = 1; k <= bound; ++k) {
            if (is_zero_class(acc)) return k;
            acc = add(acc, D);
        }
        return std::nullopt;
    }

    bool valid(const DivClass<F>& D) const {
        if (D.u.is_zero() || !(D.u.lead() == one_like(D.u.lead()))) return false;
        if (!D.v.is_zero() && D.v.degree() >= D.u.degree()) return false;
        if (!((D.v * D.v + h_ * D.v - g_) % D.u).is_zero()) return false;
        if (!split_) return D.np == 0 && D.nm == 0 && D.u.degree() <= 2;
        return D.np >= 0 && D.nm >= 0 && D.u.degree() + D.np + D.nm == 2;
    }

private:
    Poly<F> infinity_poly(const F& r) const {
        // V = r x^3 + ... with deg(g - h V - V^2) <= 2; each lower coefficient is one linear solve.
        Poly<F> V = Poly<F>::monomial(r, 3);
        F slope = h_.coeff(3) + r + r;
        for (int j = 2; j >= 0; --j) {
            Poly<F> E = g_ - h_ * V - V * V;
            F c = E.coeff(static_cast<std::size_t>(j + 3));
            if (!is_zero(c)) V += Poly<F>::monomial(c / slope, static_cast<std::size_t>(j));
        }
        return V;
    }

    Poly<F> x_minus(const F& a) const {
        return Poly<F>(std::vector<F>{-a, one_like(a)}, a);
    }

    // [P - inf+] = {P, inf-} and [P - inf-] = {P, inf+} on the split model.
    DivClass<F> half_minus(const CurvePoint<F>& P) const {
        F z = g_.zero_coeff();
        Poly<F> one = Poly<F>::constant(one_like(z));
        switch (P.kind) {
            case CurvePoint<F>::InfPlus: return {one, Poly<F>(z), 1, 1};
            case CurvePoint<F>::InfMinus: return {one, Poly<F>(z), 0, 2};
            default: return {x_minus(P.x), Poly<F>::constant(P.y), 0, 1};
        }
    }
    DivClass<F> half_plus(const CurvePoint<F>& P) const {
        F z = g_.zero_coeff();
        Poly<F> one = Poly<F>::constant(one_like(z));
        switch (P.kind) {
            case CurvePoint<F>::InfPlus: return {one, Poly<F>(z), 2, 0};
            case CurvePoint<F>::InfMinus: return {one, Poly<F>(z), 1, 1};
            default: return {x_minus(P.x), Poly<F>::constant(P.y), 1, 0};
        }
    }
    // [P - inf] on the model with one point at infinity.
    DivClass<F> half(const CurvePoint<F>& P) const {
        if (P.at_infinity()) return zero();
        return {x_minus(P.x), Poly<F>::constant(P.y), 0, 0};
    }

    // Cantor composition, then reduction. 'shift' removes one copy of inf+ + inf-.
    DivClass<F> add_raw(const DivClass<F>& a, const DivClass<F>& b, int shift) const {
        const F z = g_.zero_coeff();
        Poly<F> d0(z), e1(z), e2(z);
        xgcd(a.u, b.u, d0, e1, e2);
        Poly<F> d(z), c1(z), c2(z);
        xgcd(d0, a.v + b.v + h_, d, c1, c2);
        Poly<F> s1 = c1 * e1, s2 = c1 * e2, s3 = c2;
        Poly<F> u = divexact(a.u * b.u, d * d);
        Poly<F> num = s1 * a.u * b.v + s2 * b.u * a.v + s3 * (a.v * b.v + g_);
        Poly<F> v = divexact(num, d) % u;
        int removed = d.degree();
        DivClass<F> out{u, v, a.np + b.np + removed - shift, a.nm + b.nm + removed - shift};
        return reduce(out);
    }

    DivClass<F> reduce(DivClass<F> D) const {
        D.u = D.u.monic();
        D.v = D.v % D.u;
        if (!split_) {
            while (D.u.degree() > 2) {
                Poly<F> u2 = divexact(g_ - h_ * D.v - D.v * D.v, D.u).monic();
                D.v = (-h_ - D.v) % u2;
                D.u = u2;
            }
            D.np = D.nm = 0;
            return D;
        }
        while (D.u.degree() > 3) step(D, true);
        for (int guard = 0;; ++guard) {
            if (D.u.degree() <= 2 && D.np >= 0 && D.nm >= 0) return D;
            if (guard > 16) throw std::logic_error("divisor reduction did not terminate");
            step(D, D.nm < 0);
        }
    }

    // Replace the affine part E by the conjugate of the residual intersection with y = v',
    // where v' = v mod u is chosen close to V+ (plus = true) or V-.
    void step(DivClass<F>& D, bool plus) const {
        const Poly<F>& V = plus ? Vp_ : Vm_;
        Poly<F> vn = V - ((V - D.v) % D.u);
        Poly<F> F_ = g_ - h_ * vn - vn * vn;
        Poly<F> u2 = divexact(F_, D.u).monic();
        auto ord_at = [&](const Poly<F>& W) {
            Poly<F> diff = W - vn;
            if (!diff.is_zero()) return -diff.degree();
            return 3 - (g_ - h_ * W - W * W).degree();
        };
        int ap = ord_at(Vp_), am = ord_at(Vm_);
        int du = u2.degree();
        D.np = D.np - ap - du;
        D.nm = D.nm - am - du;
        D.v = (-h_ - vn) % u2;
        D.u = u2;
    }

    Poly<F> h_, g_;
    bool split_ = true;
    Poly<F> Vp_, Vm_;
};

}  // namespace qd
