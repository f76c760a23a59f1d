#include "qd/ff.hpp"

#include "qd/quad.hpp"

#include <algorithm>
#include <stdexcept>

namespace qd {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s && witness; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) witness = false;
        }
        if (witness) return false;
    }
    return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw std::domain_error("inverse of 0 mod p");
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a);
    while (nr) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::domain_error("not invertible mod p");
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
}

int legendre(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::uint64_t reduce_mod(const Rational& q, std::uint64_t p) {
    Integer pp(static_cast<unsigned long>(p));
    Integer num = q.get_num() % pp, den = q.get_den() % pp;
    if (num < 0) num += pp;
    if (den == 0) throw std::domain_error("denominator divisible by p");
    return mulmod(num.get_ui(), invmod(den.get_ui(), p), p);
}

std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (legendre(a, p) != 1) return std::nullopt;
    std::uint64_t q = p - 1, s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    std::uint64_t z = 2;
    while (legendre(z, p) != -1) ++z;
    std::uint64_t m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) { tt = mulmod(tt, tt, p); ++i; }
        std::uint64_t b = c;
        for (std::uint64_t k = 0; k + 1 < m - i; ++k) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return std::min(r, p - r);
}

FiniteField::FiniteField(std::uint64_t p, int deg) : p_(p), deg_(deg) {
    if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    if (deg != 1 && deg != 2) throw std::invalid_argument("only F_p and F_{p^2} are supported");
    if (p >= (1ull << 31)) throw std::invalid_argument("p too large");
    if (deg == 2) {
        if (p == 2) n_ = 1;
        else
            for (n_ = 2; legendre(n_, p) != -1; ++n_) {}
    }
}

FFElem FiniteField::zero() const { return FFElem(p_, deg_, n_, 0, 0); }
FFElem FiniteField::one() const { return FFElem(p_, deg_, n_, 1, 0); }

FFElem FiniteField::from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += static_cast<std::int64_t>(p_);
    return FFElem(p_, deg_, n_, static_cast<std::uint64_t>(r), 0);
}

FFElem FiniteField::from_rational(const Rational& v) const { return FFElem(p_, deg_, n_, reduce_mod(v, p_), 0); }

FFElem FiniteField::make(std::uint64_t c0, std::uint64_t c1) const {
    if (deg_ == 1 && c1 % p_) throw std::invalid_argument("second coordinate in prime field");
    return FFElem(p_, deg_, n_, c0 % p_, c1 % p_);
}

FFElem FiniteField::element(std::uint64_t index) const {
    if (index >= q()) throw std::out_of_range("field element index");
    return FFElem(p_, deg_, n_, index % p_, index / p_);
}

std::vector<FFElem> FiniteField::elements() const {
    std::vector<FFElem> out;
    out.reserve(q());
    for (std::uint64_t k = 0; k < q(); ++k) out.push_back(element(k));
    return out;
}

FFElem FiniteField::generator() const {
    if (deg_ != 2) throw std::logic_error("prime field has no quadratic generator");
    return FFElem(p_, deg_, n_, 0, 1);
}

FFElem FiniteField::reduce(const QuadElem& x) const {
    FFElem a = from_rational(x.a());
    if (x.is_rational()) return a;
    if (p_ == 2) throw std::domain_error("quadratic reduction needs odd p");
    std::uint64_t dm = reduce_mod(Rational(x.d()), p_);
    if (dm == 0) throw std::domain_error("p divides d");
    FFElem root;
    if (auto r = sqrt_mod(dm, p_)) {
        root = from_int(static_cast<std::int64_t>(*r));
    } else {
        if (deg_ != 2) throw std::domain_error("sqrt(d) is not in F_p");
        auto t = sqrt_mod(mulmod(dm, invmod(n_, p_), p_), p_);
        root = make(0, *t);
    }
    return a + from_rational(x.b()) * root;
}

void FFElem::check(const FFElem& y) const {
    if (p_ != y.p_ || deg_ != y.deg_) throw std::invalid_argument("mixing elements of different finite fields");
}

FFElem& FFElem::operator+=(const FFElem& y) {
    check(y);
    c0_ = (c0_ + y.c0_) % p_;
    c1_ = (c1_ + y.c1_) % p_;
    return *this;
}

FFElem& FFElem::operator-=(const FFElem& y) {
    check(y);
    c0_ = (c0_ + p_ - y.c0_) % p_;
    c1_ = (c1_ + p_ - y.c1_) % p_;
    return *this;
}

FFElem FFElem::operator-() const { return FFElem(p_, deg_, n_, (p_ - c0_) % p_, (p_ - c1_) % p_); }

FFElem& FFElem::operator*=(const FFElem& y) {
    check(y);
    if (deg_ == 1) {
        c0_ = mulmod(c0_, y.c0_, p_);
        return *this;
    }
    std::uint64_t a0b0 = mulmod(c0_, y.c0_, p_), a1b1 = mulmod(c1_, y.c1_, p_);
    std::uint64_t cross = (mulmod(c0_, y.c1_, p_) + mulmod(c1_, y.c0_, p_)) % p_;
    // s^2 = n, or s^2 = s + 1 in characteristic 2
    if (p_ == 2) {
        c0_ = (a0b0 + a1b1) % 2;
        c1_ = (cross + a1b1) % 2;
    } else {
        c0_ = (a0b0 + mulmod(n_, a1b1, p_)) % p_;
        c1_ = cross;
    }
    return *this;
}

FFElem FFElem::pow(std::uint64_t e) const {
    FFElem r(p_, deg_, n_, 1 % p_, 0), b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

FFElem FFElem::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of 0 in finite field");
    std::uint64_t q = deg_ == 1 ? p_ : p_ * p_;
    return pow(q - 2);
}

FFElem& FFElem::operator/=(const FFElem& y) { return *this *= y.inverse(); }

std::uint64_t FFElem::norm() const {
    if (deg_ == 1) return c0_;
    FFElem nrm = *this * frobenius();
    return nrm.c0_;
}

bool FFElem::is_square() const {
    if (is_zero() || p_ == 2) return true;
    return legendre(norm(), p_) == 1;
}

unsigned FFElem::trace_f2() const {
    if (p_ != 2) throw std::logic_error("trace to F_2 in odd characteristic");
    if (deg_ == 1) return static_cast<unsigned>(c0_);
    FFElem t = *this + frobenius();
    return static_cast<unsigned>(t.c0_);
}

}  // namespace qd
