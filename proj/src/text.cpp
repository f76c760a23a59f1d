#include "qd/text.hpp"

#include <cctype>
#include <stdexcept>

namespace qd {

namespace detail {

bool needs_parens(const std::string& c) {
    for (std::size_t k = 1; k < c.size(); ++k)
        if (c[k] == '+' || c[k] == '-' || c[k] == ' ') return true;
    return false;
}

std::string monomial_text(const std::string& var, int k) {
    return k == 1 ? var : var + "^" + std::to_string(k);
}

}  // namespace detail

namespace {

using P = Poly<QuadElem>;

class Parser {
public:
    Parser(const std::string& s, long d, char var) : s_(s), d_(d), var_(var) {}

    P parse() {
        P r = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("parse error at " + std::to_string(pos_) + " in \"" + s_ + "\": " + why);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char ch) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }
    P constant(const QuadElem& a) const { return P::constant(a); }

    P expr() {
        P r = term();
        for (;;) {
            if (accept('+')) r += term();
            else if (accept('-')) r -= term();
            else return r;
        }
    }
    P term() {
        P r = unary();
        for (;;) {
            if (accept('*')) {
                r = r * unary();
            } else if (accept('/')) {
                P q = unary();
                if (q.degree() != 0) fail("division by a non-constant");
                r = r.scaled(inverse(q.lead()));
            } else {
                return r;
            }
        }
    }
    P unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }
    P power() {
        P base = atom();
        if (accept('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            base = pow(base, std::stoul(s_.substr(start, pos_ - start)));
        }
        return base;
    }
    P atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char ch = s_[pos_];
        if (ch == '(') {
            ++pos_;
            P r = expr();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return constant(QuadElem(Rational(Integer(s_.substr(start, pos_ - start))), d_));
        }
        if (s_.compare(pos_, 4, "sqrt") == 0) {
            pos_ += 4;
            if (!accept('(')) fail("expected '(' after sqrt");
            skip();
            std::size_t start = pos_;
            if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            long n = std::stol(s_.substr(start, pos_ - start));
            if (!accept(')')) fail("expected ')'");
            try {
                return constant(QuadElem::sqrt_of(n, d_));
            } catch (const std::invalid_argument& e) {
                fail(e.what());
            }
        }
        ++pos_;
        try {
            if (ch == 'i') return constant(QuadElem::sqrt_of(-1, d_));
            if (ch == 'w') {
                QuadElem s = QuadElem::sqrt_of(-3, d_);
                return constant((s - QuadElem(Rational(1), d_)).scaled(Rational(1, 2)));
            }
        } catch (const std::invalid_argument& e) {
            --pos_;
            fail(e.what());
        }
        if (ch == var_) return P::x(QuadElem(d_));
        --pos_;
        fail(std::string("unexpected character '") + ch + "'");
    }

    std::string s_;
    long d_;
    char var_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly<QuadElem> parse_poly(const std::string& text, long d, char var) { return Parser(text, d, var).parse(); }

QuadElem parse_quad(const std::string& text, long d) {
    P p = Parser(text, d, '\0').parse();
    return p.is_zero() ? QuadElem(d) : p[0];
}

std::vector<std::string> coeff_strings(const Poly<QuadElem>& p) {
    std::vector<std::string> out;
    for (const auto& c : p.coeffs()) out.push_back(to_string(c));
    return out;
}

Poly<QuadElem> poly_from_strings(const std::vector<std::string>& coeffs, long d) {
    std::vector<QuadElem> c;
    for (const auto& s : coeffs) c.push_back(parse_quad(s, d));
    return Poly<QuadElem>(std::move(c), QuadElem(d));
}

}  // namespace qd
