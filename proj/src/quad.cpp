#include "qd/quad.hpp"

#include <stdexcept>

namespace qd {

long squarefree_part(long n, Integer* root) {
    if (n == 0) throw std::invalid_argument("squarefree part of 0");
    long sign = n < 0 ? -1 : 1;
    unsigned long m = static_cast<unsigned long>(n < 0 ? -n : n);
    unsigned long core = 1, sq = 1;
    for (unsigned long q = 2; q * q <= m; ++q) {
        while (m % (q * q) == 0) { m /= q * q; sq *= q; }
        if (m % q == 0) { m /= q; core *= q; }
    }
    core *= m;
    if (root) *root = Integer(sq);
    return sign * static_cast<long>(core);
}

QuadElem::QuadElem(long d) : a_(0), b_(0), d_(d) {
    if (d == 0 || squarefree_part(d) != d) throw std::invalid_argument("d must be squarefree and nonzero");
}

QuadElem::QuadElem(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (d == 0 || squarefree_part(d) != d) throw std::invalid_argument("d must be squarefree and nonzero");
    if (d == 1) { a_ += b_; b_ = 0; }
}

QuadElem QuadElem::sqrt_of(long n, long d) {
    if (n == 0) return QuadElem(d);
    Integer s;
    long core = squarefree_part(n, &s);
    if (core == 1) return QuadElem(Rational(s), d);
    if (core != d) throw std::invalid_argument("sqrt(" + std::to_string(n) + ") does not lie in the field");
    return QuadElem(Rational(0), Rational(s), d);
}

void QuadElem::check(const QuadElem& y) const {
    if (d_ != y.d_) throw std::invalid_argument("mixing elements of different quadratic fields");
}

QuadElem& QuadElem::operator+=(const QuadElem& y) {
    check(y);
    a_ += y.a_;
    b_ += y.b_;
    return *this;
}

QuadElem& QuadElem::operator-=(const QuadElem& y) {
    check(y);
    a_ -= y.a_;
    b_ -= y.b_;
    return *this;
}

QuadElem& QuadElem::operator*=(const QuadElem& y) {
    check(y);
    if (sgn(b_) == 0 && sgn(y.b_) == 0) {
        a_ *= y.a_;
        return *this;
    }
    Rational na = a_ * y.a_ + Rational(d_) * b_ * y.b_;
    Rational nb = a_ * y.b_ + b_ * y.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
}

QuadElem& QuadElem::operator/=(const QuadElem& y) {
    check(y);
    return *this *= inverse(y);
}

QuadElem inverse(const QuadElem& x) {
    Rational n = x.norm();
    if (sgn(n) == 0) throw std::domain_error("division by zero in quadratic field");
    return QuadElem(x.a() / n, -x.b() / n, x.d());
}

std::strong_ordering operator<=>(const QuadElem& x, const QuadElem& y) {
    if (x.d_ != y.d_) return x.d_ <=> y.d_;
    int c = cmp(x.a_, y.a_);
    if (c == 0) c = cmp(x.b_, y.b_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

QuadElem pow(const QuadElem& x, unsigned long n) {
    QuadElem r(Rational(1), x.d()), b = x;
    while (n) {
        if (n & 1) r *= b;
        n >>= 1;
        if (n) b *= b;
    }
    return r;
}

std::optional<QuadElem> quad_sqrt(const QuadElem& x) {
    const long d = x.d();
    if (is_zero(x)) return x;
    if (x.is_rational()) {
        if (auto r = rational_sqrt(x.a())) return QuadElem(*r, d);
        if (d == 1) return std::nullopt;
        // a = u/d must be a square: (s*sqrt(d))^2 = s^2 d
        if (auto s = rational_sqrt(x.a() / Rational(d))) return QuadElem(Rational(0), *s, d);
        return std::nullopt;
    }
    auto s = rational_sqrt(x.norm());
    if (!s) return std::nullopt;
    for (int sign : {1, -1}) {
        Rational a2 = (x.a() + sign * *s) / 2;
        if (auto a = rational_sqrt(a2); a && sgn(*a) != 0) {
            Rational b = x.b() / (2 * *a);
            return QuadElem(*a, b, d);
        }
    }
    return std::nullopt;
}

namespace {

std::string join_terms(const Rational& a, const Rational& b, const std::string& sym) {
    if (sgn(b) == 0) return to_string(a);
    std::string term;
    if (b == 1) term = sym;
    else if (b == -1) term = "-" + sym;
    else term = to_string(b) + "*" + sym;
    if (sgn(a) == 0) return term;
    return to_string(a) + (sgn(b) > 0 ? "+" : "") + term;
}

}  // namespace

std::string to_string(const QuadElem& x) {
    switch (x.d()) {
    case -1: return join_terms(x.a(), x.b(), "i");
    case -3: return join_terms(x.a() + x.b(), 2 * x.b(), "w");
    default: return join_terms(x.a(), x.b(), "sqrt(" + std::to_string(x.d()) + ")");
    }
}

bool display_less(const QuadElem& x, const QuadElem& y) {
    int c = cmp(x.norm(), y.norm());
    if (c) return c < 0;
    c = cmp(x.trace(), y.trace());
    if (c) return c < 0;
    return to_string(x) < to_string(y);
}

}  // namespace qd
