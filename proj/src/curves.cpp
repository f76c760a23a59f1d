#include "qd/curves.hpp"

#include "qd/text.hpp"

namespace qd {

namespace {

QPoly parse_rational_poly(const std::string& text) {
    if (text.empty()) return QPoly(Rational(0));
    return parse_poly(text, 1).map([](const QuadElem& a) { return a.a(); });
}

}  // namespace

HypCurve NamedCurve::model() const { return {parse_rational_poly(h), parse_rational_poly(g)}; }

std::optional<QuadElem> NamedCurve::c_at(const QuadElem& x0) const {
    if (c_num.empty()) return std::nullopt;
    const long d = x0.d();
    auto lift = [d](const QPoly& p) { return p.map([d](const Rational& a) { return QuadElem(a, d); }); };
    QuadElem den = lift(parse_rational_poly(c_den)).eval(x0);
    if (is_zero(den)) return std::nullopt;
    return lift(parse_rational_poly(c_num)).eval(x0) / den;
}

const std::vector<NamedCurve>& curve_registry() {
    static const std::vector<NamedCurve> reg = {
        {"X1_4", {"X1_16", "8(4)"}, "8(4)", "", "-x*(x^2+1)*(x^2-2*x-1)",
         "(x^2-4*x-1)*(x^4+x^3+2*x^2-x+1)", "4*x*(x+1)^2*(x-1)^2", "X_1(4), isomorphic to the elliptic modular X_1(16)"},
        {"X1_1_3", {"X1_18", "10(3,1,1)"}, "10(3,1,1)", "", "x^6+2*x^5+5*x^4+10*x^3+10*x^2+4*x+1",
         "-(x^6+2*x^5+4*x^4+8*x^3+9*x^2+4*x+1)", "4*x^2*(x+1)^2", "X_1(1,3), isomorphic to X_1(18)"},
        {"X1_2_3", {"X1_13", "10(3,2)"}, "10(3,2)", "", "x^6+2*x^5+x^4+2*x^3+6*x^2+4*x+1",
         "-(x^6+2*x^5+4*x^4+8*x^3+9*x^2+4*x+1)", "4*x^2*(x+1)^2", "X_1(2,3), isomorphic to X_1(13)"},
        {"X1_23p", {"8(3)"}, "8(3)", "", "x^6-2*x^4+2*x^3+5*x^2+2*x+1",
         "-(x^6+2*x^5+4*x^4+8*x^3+9*x^2+4*x+1)", "4*x^2*(x+1)^2", "X_1((2,3)): one marked point of portrait (2,3)"},
        {"X0_5", {}, "", "", "x^6+8*x^5+22*x^4+22*x^3+5*x^2+6*x+1", "", "", "X_0(5)"},
        {"X_A", {"X0_5_good2"}, "", "-(x^3+x+1)", "2*x^5+5*x^4+5*x^3+x^2+x", "", "",
         "model of X_0(5) with good reduction at 2; (x, y) -> (x, (y - h(x))/2) from y^2 = f"},
        {"E17", {}, "", "x+1", "x^3-x^2-x", "", "", "elliptic curve 17a4"},
        {"E40", {}, "", "", "x^3-2*x+1", "", "", "elliptic curve y^2 = (x-1)(x^2+x-1)"},
        {"8(1,1)a", {}, "8(1,1)a", "", "-(x^2-3)*(x^2+1)", "-2*(x^2+1)", "(x+1)^2*(x-1)^2", ""},
        {"8(1,1)b", {}, "8(1,1)b", "", "2*(x^3+x^2-x+1)", "-2*(x^2+1)", "(x+1)^2*(x-1)^2", ""},
        {"8(2)a", {}, "8(2)a", "", "2*(x^4+2*x^3-2*x+1)", "-(x^4+2*x^3+2*x^2-2*x+1)", "(x+1)^2*(x-1)^2", ""},
        {"8(2)b", {}, "8(2)b", "", "2*(x^3+x^2-x+1)", "-(x^4+2*x^3+2*x^2-2*x+1)", "(x+1)^2*(x-1)^2", ""},
        {"10(2,1,1)a", {}, "10(2,1,1)a", "", "5*x^4-8*x^3+6*x^2+8*x+5", "-(3*x^2+1)*(x^2+3)", "4*(x+1)^2*(x-1)^2", ""},
        {"10(2,1,1)b", {}, "10(2,1,1)b", "", "(5*x^2-1)*(x^2+3)", "-(3*x^2+1)*(x^2+3)", "4*(x+1)^2*(x-1)^2", ""},
    };
    return reg;
}

const NamedCurve* find_curve(const std::string& name) {
    for (const auto& c : curve_registry()) {
        if (c.name == name) return &c;
        for (const auto& a : c.aliases)
            if (a == name) return &c;
    }
    return nullptr;
}

}  // namespace qd
