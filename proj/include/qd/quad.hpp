#pragma once

#include "qd/rational.hpp"

#include <compare>
#include <optional>
#include <string>

namespace qd {

// Squarefree kernel of n; n = square * result.
long squarefree_part(long n, Integer* square_root_of_cofactor = nullptr);

// a + b*sqrt(d) with d squarefree.  d = 1 denotes Q itself, where b is always 0.
class QuadElem {
public:
    explicit QuadElem(long d = 1);
    QuadElem(Rational a, Rational b, long d);
    QuadElem(const Rational& a, long d) : QuadElem(a, Rational(0), d) {}

    // sqrt(n) inside Q(sqrt(d)) when n = s^2 * d; sqrt(-4) gives 2*sqrt(-1).
    static QuadElem sqrt_of(long n, long d);
    // The generator sqrt(d); for d = 1 this is just 1.
    static QuadElem gen(long d) { return QuadElem(Rational(0), Rational(1), d); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    long d() const { return d_; }
    bool is_rational() const { return sgn(b_) == 0; }

    QuadElem conj() const { return QuadElem(a_, -b_, d_); }
    Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }
    Rational trace() const { return 2 * a_; }

    QuadElem& operator+=(const QuadElem& y);
    QuadElem& operator-=(const QuadElem& y);
    QuadElem& operator*=(const QuadElem& y);
    QuadElem& operator/=(const QuadElem& y);
    QuadElem operator-() const { return QuadElem(-a_, -b_, d_); }

    friend QuadElem operator+(QuadElem x, const QuadElem& y) { return x += y; }
    friend QuadElem operator-(QuadElem x, const QuadElem& y) { return x -= y; }
    friend QuadElem operator*(QuadElem x, const QuadElem& y) { return x *= y; }
    friend QuadElem operator/(QuadElem x, const QuadElem& y) { return x /= y; }
    friend bool operator==(const QuadElem& x, const QuadElem& y) {
        return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend std::strong_ordering operator<=>(const QuadElem& x, const QuadElem& y);

    QuadElem scaled(const Rational& q) const { return QuadElem(a_ * q, b_ * q, d_); }

private:
    void check(const QuadElem& y) const;
    Rational a_, b_;
    long d_;
};

QuadElem pow(const QuadElem& x, unsigned long n);

// Deterministic square root: the root with a > 0, or a = 0 and b > 0.
std::optional<QuadElem> quad_sqrt(const QuadElem& x);

inline QuadElem zero_like(const QuadElem& x) { return QuadElem(x.d()); }
inline QuadElem one_like(const QuadElem& x) { return QuadElem(Rational(1), x.d()); }
inline bool is_zero(const QuadElem& x) { return sgn(x.a()) == 0 && sgn(x.b()) == 0; }
QuadElem inverse(const QuadElem& x);

// Text form: rationals "p/q", "i" for d = -1, "w" for d = -3, "sqrt(d)" otherwise.
std::string to_string(const QuadElem& x);
QuadElem parse_quad(const std::string& text, long d);

// Sort key used for deterministic output: (norm, trace, text).
bool display_less(const QuadElem& x, const QuadElem& y);

}  // namespace qd
