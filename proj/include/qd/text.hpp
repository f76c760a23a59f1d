#pragma once

#include "qd/poly.hpp"
#include "qd/quad.hpp"

#include <string>
#include <vector>

namespace qd {

inline std::string element_text(const Rational& q) { return to_string(q); }
inline std::string element_text(const QuadElem& q) { return to_string(q); }

template <class R>
std::string to_string(const Poly<R>& p, const std::string& var = "x");

template <class R>
std::string element_text(const Poly<R>& p) { return to_string(p, "c"); }

namespace detail {
bool needs_parens(const std::string& coeff);
std::string monomial_text(const std::string& var, int k);
}  // namespace detail

template <class R>
std::string to_string(const Poly<R>& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = 0; k <= p.degree(); ++k) {
        if (is_zero(p[k])) continue;
        std::string c = element_text(p[k]);
        bool neg = false;
        if (!detail::needs_parens(c) && c[0] == '-') {
            neg = true;
            c.erase(0, 1);
        }
        std::string term;
        if (k == 0) term = detail::needs_parens(c) ? "(" + c + ")" : c;
        else if (c == "1") term = detail::monomial_text(var, k);
        else term = (detail::needs_parens(c) ? "(" + c + ")" : c) + "*" + detail::monomial_text(var, k);
        if (out.empty()) out = neg ? "-" + term : term;
        else out += (neg ? " - " : " + ") + term;
    }
    return out;
}

// Expression syntax: rationals, i, w, sqrt(n), x, + - * / ^ and parentheses.
Poly<QuadElem> parse_poly(const std::string& text, long d, char var = 'x');

// JSON-array style coefficient lists (constant term first).
std::vector<std::string> coeff_strings(const Poly<QuadElem>& p);
Poly<QuadElem> poly_from_strings(const std::vector<std::string>& coeffs, long d);

}  // namespace qd
