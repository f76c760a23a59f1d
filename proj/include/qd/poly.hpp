#pragma once

#include "qd/rational.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qd {

template <class R>
bool coeff_is_zero(const R& a) { return is_zero(a); }

// a + a + ... + a (k times) without needing a ring embedding of the integers.
template <class R>
R mul_small(const R& a, unsigned long k) {
    R r = zero_like(a), b = a;
    while (k) {
        if (k & 1) r += b;
        k >>= 1;
        if (k) b += b;
    }
    return r;
}

// Dense univariate polynomial; c[i] is the coefficient of x^i.
// A prototype zero is carried so that coefficient rings with runtime
// parameters (quadratic fields, finite fields, Q[c]) need no global state.
template <class R>
class Poly {
public:
    explicit Poly(R zero) : zero_(zero_like(zero)) {}
    Poly(std::vector<R> c, R zero) : c_(std::move(c)), zero_(zero_like(zero)) { trim(); }

    static Poly constant(const R& a) { return Poly(std::vector<R>{a}, a); }
    static Poly monomial(const R& a, std::size_t n) {
        std::vector<R> c(n + 1, zero_like(a));
        c[n] = a;
        return Poly(std::move(c), a);
    }
    static Poly x(const R& like) { return monomial(one_like(like), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<R>& coeffs() const { return c_; }
    const R& coeff(std::size_t i) const { return i < c_.size() ? c_[i] : zero_; }
    const R& operator[](std::size_t i) const { return coeff(i); }
    const R& lead() const { return c_.empty() ? zero_ : c_.back(); }
    const R& zero_coeff() const { return zero_; }
    R one_coeff() const { return one_like(zero_); }

    void set_coeff(std::size_t i, const R& a) {
        if (i >= c_.size()) c_.resize(i + 1, zero_);
        c_[i] = a;
        trim();
    }

    Poly& operator+=(const Poly& q) {
        if (q.c_.size() > c_.size()) c_.resize(q.c_.size(), zero_);
        for (std::size_t i = 0; i < q.c_.size(); ++i) c_[i] += q.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& q) {
        if (q.c_.size() > c_.size()) c_.resize(q.c_.size(), zero_);
        for (std::size_t i = 0; i < q.c_.size(); ++i) c_[i] -= q.c_[i];
        trim();
        return *this;
    }
    Poly operator-() const {
        Poly r(*this);
        for (auto& a : r.c_) a = -a;
        return r;
    }
    friend Poly operator+(Poly p, const Poly& q) { return p += q; }
    friend Poly operator-(Poly p, const Poly& q) { return p -= q; }
    friend Poly operator*(const Poly& p, const Poly& q) {
        if (p.is_zero() || q.is_zero()) return Poly(p.zero_);
        std::vector<R> c(p.c_.size() + q.c_.size() - 1, p.zero_);
        for (std::size_t i = 0; i < p.c_.size(); ++i) {
            if (coeff_is_zero(p.c_[i])) continue;
            for (std::size_t j = 0; j < q.c_.size(); ++j) c[i + j] += p.c_[i] * q.c_[j];
        }
        return Poly(std::move(c), p.zero_);
    }
    Poly& operator*=(const Poly& q) { return *this = *this * q; }
    Poly scaled(const R& a) const {
        Poly r(*this);
        for (auto& x : r.c_) x = x * a;
        r.trim();
        return r;
    }
    friend bool operator==(const Poly& p, const Poly& q) { return p.c_ == q.c_; }

    R eval(const R& a) const {
        R r = zero_;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * a + c_[i];
        return r;
    }
    // Evaluate at an element of a ring S into which R embeds through `lift`.
    template <class S, class Lift>
    S eval_in(const S& a, Lift lift) const {
        S r = zero_like(a);
        for (std::size_t i = c_.size(); i-- > 0;) r = r * a + lift(c_[i]);
        return r;
    }
    Poly compose(const Poly& q) const {
        Poly r(zero_);
        for (std::size_t i = c_.size(); i-- > 0;) r = r * q + constant(c_[i]);
        return r;
    }
    Poly derivative() const {
        if (c_.size() <= 1) return Poly(zero_);
        std::vector<R> c(c_.size() - 1, zero_);
        for (std::size_t i = 1; i < c_.size(); ++i) {
            c[i - 1] = mul_small(c_[i], i);
        }
        return Poly(std::move(c), zero_);
    }
    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(inverse(lead()));
    }
    template <class F>
    auto map(F f) const {
        using S = decltype(f(zero_));
        std::vector<S> c;
        c.reserve(c_.size());
        for (const auto& a : c_) c.push_back(f(a));
        return Poly<S>(std::move(c), f(zero_));
    }

private:
    void trim() {
        while (!c_.empty() && coeff_is_zero(c_.back())) c_.pop_back();
    }
    std::vector<R> c_;
    R zero_;
};

template <class R>
Poly<R> zero_like(const Poly<R>& p) { return Poly<R>(p.zero_coeff()); }
template <class R>
Poly<R> one_like(const Poly<R>& p) { return Poly<R>::constant(p.one_coeff()); }
template <class R>
bool is_zero(const Poly<R>& p) { return p.is_zero(); }
template <class R>
Poly<R> inverse(const Poly<R>& p) {
    if (p.degree() != 0) throw std::domain_error("polynomial is not a unit");
    return Poly<R>::constant(inverse(p.lead()));
}

template <class R>
Poly<R> pow(const Poly<R>& p, unsigned long n) {
    Poly<R> r = one_like(p), b = p;
    while (n) {
        if (n & 1) r *= b;
        n >>= 1;
        if (n) b *= b;
    }
    return r;
}

// Division with remainder; the divisor's leading coefficient must be invertible.
template <class R>
std::pair<Poly<R>, Poly<R>> divrem(const Poly<R>& a, const Poly<R>& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const R linv = inverse(b.lead());
    std::vector<R> rem = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {Poly<R>(a.zero_coeff()), a};
    std::vector<R> quo(a.degree() - db + 1, a.zero_coeff());
    for (int i = a.degree(); i >= db; --i) {
        if (is_zero(rem[i])) continue;
        R q = rem[i] * linv;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b.coeffs()[j];
        quo[i - db] = q;
    }
    rem.erase(rem.begin() + db, rem.end());
    return {Poly<R>(std::move(quo), a.zero_coeff()), Poly<R>(std::move(rem), a.zero_coeff())};
}

template <class R>
Poly<R> operator%(const Poly<R>& a, const Poly<R>& b) { return divrem(a, b).second; }

// Exact quotient; throws when the remainder is nonzero.
template <class R>
Poly<R> divexact(const Poly<R>& a, const Poly<R>& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
    return q;
}

// Monic gcd over a field.
template <class R>
Poly<R> gcd(Poly<R> a, Poly<R> b) {
    while (!b.is_zero()) {
        Poly<R> r = divrem(a, b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

// Extended gcd over a field: s*a + t*b = g with g monic.
template <class R>
void xgcd(const Poly<R>& a, const Poly<R>& b, Poly<R>& g, Poly<R>& s, Poly<R>& t) {
    Poly<R> r0 = a, r1 = b;
    Poly<R> s0 = one_like(a), s1 = zero_like(a), t0 = zero_like(a), t1 = one_like(a);
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        r0 = std::move(r1); r1 = std::move(r);
        Poly<R> ns = s0 - q * s1; s0 = std::move(s1); s1 = std::move(ns);
        Poly<R> nt = t0 - q * t1; t0 = std::move(t1); t1 = std::move(nt);
    }
    if (r0.is_zero()) { g = r0; s = s0; t = t0; return; }
    R li = inverse(r0.lead());
    g = r0.scaled(li);
    s = s0.scaled(li);
    t = t0.scaled(li);
}

// Resultant over a field via the Euclidean remainder sequence.
template <class R>
R resultant(const Poly<R>& a, const Poly<R>& b) {
    R one = a.one_coeff();
    if (a.is_zero() || b.is_zero()) return a.zero_coeff();
    if (b.degree() == 0) {
        R r = one;
        for (int k = 0; k < a.degree(); ++k) r = r * b.lead();
        return r;
    }
    if (a.degree() < b.degree()) {
        R r = resultant(b, a);
        return (a.degree() * b.degree()) % 2 ? -r : r;
    }
    Poly<R> rem = divrem(a, b).second;
    if (rem.is_zero()) return a.zero_coeff();
    // res(a,b) = (-1)^{deg a deg b} lc(b)^{deg a - deg rem} res(b, rem)
    R r = resultant(b, rem);
    for (int k = 0; k < a.degree() - rem.degree(); ++k) r = r * b.lead();
    return (a.degree() * b.degree()) % 2 ? -r : r;
}

template <class R>
R discriminant(const Poly<R>& a) {
    int n = a.degree();
    R r = resultant(a, a.derivative()) * inverse(a.lead());
    return (n * (n - 1) / 2) % 2 ? -r : r;
}

// Yun's squarefree decomposition in characteristic 0: a = lc * prod f_i^i.
template <class R>
std::vector<std::pair<Poly<R>, int>> squarefree_decomposition(const Poly<R>& a) {
    std::vector<std::pair<Poly<R>, int>> out;
    if (a.degree() <= 0) return out;
    Poly<R> d = a.derivative();
    Poly<R> g = gcd(a, d);
    Poly<R> b = divexact(a, g), c = divexact(d, g);
    int i = 1;
    while (b.degree() > 0) {
        Poly<R> e = c - b.derivative();
        Poly<R> h = gcd(b, e);
        if (h.degree() > 0) out.emplace_back(h, i);
        b = divexact(b, h);
        c = divexact(e, h);
        ++i;
    }
    return out;
}

template <class R>
Poly<R> squarefree_part(const Poly<R>& a) {
    if (a.degree() <= 0) return a;
    return divexact(a, gcd(a, a.derivative())).monic();
}

}  // namespace qd
