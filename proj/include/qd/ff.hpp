#pragma once

#include "qd/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qd {

bool is_prime(std::uint64_t n);
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);
// Legendre symbol for odd p: 1, -1 or 0.
int legendre(std::uint64_t a, std::uint64_t p);
// Image of a rational in F_p; throws when p divides the denominator.
std::uint64_t reduce_mod(const Rational& q, std::uint64_t p);

class FFElem;
class QuadElem;

// Square root in F_p (p odd) by Tonelli-Shanks; the smaller representative.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p);

// F_p (deg 1) or F_{p^2} = F_p[s]/(s^2 - n) with n the least positive non-residue.
// For p = 2 the quadratic modulus is s^2 + s + 1.
class FiniteField {
public:
    FiniteField(std::uint64_t p, int deg);

    std::uint64_t p() const { return p_; }
    int deg() const { return deg_; }
    std::uint64_t q() const { return deg_ == 1 ? p_ : p_ * p_; }
    std::uint64_t nonresidue() const { return n_; }

    FFElem zero() const;
    FFElem one() const;
    FFElem from_int(std::int64_t v) const;
    FFElem from_rational(const Rational& v) const;
    FFElem make(std::uint64_t c0, std::uint64_t c1) const;
    // i-th element in a fixed enumeration of all q elements.
    FFElem element(std::uint64_t index) const;
    std::vector<FFElem> elements() const;

    // sqrt of n (or the root of s^2+s+1 when p = 2) when deg = 2.
    FFElem generator() const;
    // Image of a + b*sqrt(d) under a fixed embedding; throws when p divides a
    // denominator, p | 2d, or sqrt(d) does not lie in this field.
    FFElem reduce(const QuadElem& x) const;

private:
    std::uint64_t p_;
    int deg_;
    std::uint64_t n_ = 0;
};

class FFElem {
public:
    FFElem() = default;
    FFElem(std::uint64_t p, int deg, std::uint64_t n, std::uint64_t c0, std::uint64_t c1)
        : p_(p), n_(n), c0_(c0), c1_(c1), deg_(deg) {}

    std::uint64_t p() const { return p_; }
    int deg() const { return deg_; }
    std::uint64_t c0() const { return c0_; }
    std::uint64_t c1() const { return c1_; }
    std::uint64_t modulus_constant() const { return n_; }

    FFElem& operator+=(const FFElem& y);
    FFElem& operator-=(const FFElem& y);
    FFElem& operator*=(const FFElem& y);
    FFElem& operator/=(const FFElem& y);
    FFElem operator-() const;
    friend FFElem operator+(FFElem x, const FFElem& y) { return x += y; }
    friend FFElem operator-(FFElem x, const FFElem& y) { return x -= y; }
    friend FFElem operator*(FFElem x, const FFElem& y) { return x *= y; }
    friend FFElem operator/(FFElem x, const FFElem& y) { return x /= y; }
    friend bool operator==(const FFElem& x, const FFElem& y) {
        return x.p_ == y.p_ && x.deg_ == y.deg_ && x.c0_ == y.c0_ && x.c1_ == y.c1_;
    }

    bool is_zero() const { return c0_ == 0 && c1_ == 0; }
    FFElem pow(std::uint64_t e) const;
    FFElem inverse() const;
    FFElem frobenius() const { return pow(p_); }
    // Norm to F_p (identity when deg = 1).
    std::uint64_t norm() const;
    bool is_square() const;
    // Absolute trace to F_2 for characteristic 2.
    unsigned trace_f2() const;

private:
    void check(const FFElem& y) const;
    std::uint64_t p_ = 2, n_ = 0, c0_ = 0, c1_ = 0;
    int deg_ = 1;
};

inline FFElem zero_like(const FFElem& x) { return FFElem(x.p(), x.deg(), x.modulus_constant(), 0, 0); }
inline FFElem one_like(const FFElem& x) { return FFElem(x.p(), x.deg(), x.modulus_constant(), 1, 0); }
inline bool is_zero(const FFElem& x) { return x.is_zero(); }
inline FFElem inverse(const FFElem& x) { return x.inverse(); }

}  // namespace qd
