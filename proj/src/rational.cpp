#include "qd/rational.hpp"

#include <stdexcept>

namespace qd {

Rational parse_rational(std::string_view s) {
    std::string t;
    for (char ch : s)
        if (ch != ' ') t.push_back(ch);
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    if (t.empty()) throw std::invalid_argument("empty rational");
    Rational q;
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + std::string(s));
    if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
        return std::nullopt;
    Rational r(Integer(sqrt(q.get_num())), Integer(sqrt(q.get_den())));
    r.canonicalize();
    return r;
}

long valuation(const Rational& q, unsigned long p) {
    if (sgn(q) == 0) throw std::domain_error("valuation of zero");
    Integer pp(p);
    long v = 0;
    Integer n = q.get_num(), d = q.get_den();
    while (mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) { n /= pp; ++v; }
    while (mpz_divisible_p(d.get_mpz_t(), pp.get_mpz_t())) { d /= pp; --v; }
    return v;
}

Rational inverse(const Rational& q) {
    if (sgn(q) == 0) throw std::domain_error("division by zero");
    return Rational(1) / q;
}

Integer inverse(const Integer& z) {
    if (z == 1 || z == -1) return z;
    throw std::domain_error("integer " + z.get_str() + " is not a unit");
}

}  // namespace qd
