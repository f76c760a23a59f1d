#include "zpoly.hpp"

#include <stdexcept>

namespace qd::zpoly {

void trim(ZPoly& a) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

int deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

Integer content(const ZPoly& a) {
    Integer g = 0;
    for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly primitive_part(const ZPoly& p) {
    ZPoly r = p;
    trim(r);
    if (r.empty()) return r;
    Integer g = content(r);
    if (sgn(r.back()) < 0) g = -g;
    for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return r;
}

ZPoly primitive_part(const Poly<Rational>& p, Rational* scalar) {
    Integer den = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    ZPoly r;
    for (const auto& c : p.coeffs()) r.push_back(Integer(c.get_num() * (den / c.get_den())));
    ZPoly q = primitive_part(r);
    if (scalar) {
        if (q.empty()) *scalar = 0;
        else *scalar = Rational(p.lead()) / Rational(q.back());
    }
    return q;
}

Poly<Rational> to_rational(const ZPoly& a) {
    std::vector<Rational> c;
    for (const auto& x : a) c.emplace_back(x);
    return Poly<Rational>(std::move(c), Rational(0));
}

Integer norm2_ceil(const ZPoly& a) {
    Integer s = 0;
    for (const auto& c : a) s += c * c;
    Integer r = sqrt(s);
    if (r * r < s) r += 1;
    return r;
}

nmod::NPoly reduce(const ZPoly& a, std::uint64_t p) {
    nmod::NPoly r(a.size());
    Integer P(static_cast<unsigned long>(p));
    for (std::size_t i = 0; i < a.size(); ++i) {
        Integer t = a[i] % P;
        if (t < 0) t += P;
        r[i] = t.get_ui();
    }
    nmod::trim(r);
    return r;
}

ZPoly lift(const nmod::NPoly& a) {
    ZPoly r;
    for (auto c : a) r.emplace_back(static_cast<unsigned long>(c));
    return r;
}

namespace {

void reduce_in_place(ZPoly& a, const Integer& m) {
    for (auto& c : a) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    }
    trim(a);
}

}  // namespace

ZPoly mul_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    reduce_in_place(r, m);
    return r;
}

ZPoly add_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
    ZPoly r(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    reduce_in_place(r, m);
    return r;
}

ZPoly sub_mod(const ZPoly& a, const ZPoly& b, const Integer& m) {
    ZPoly r(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    reduce_in_place(r, m);
    return r;
}

ZPoly scale_mod(const ZPoly& a, const Integer& s, const Integer& m) {
    ZPoly r = a;
    for (auto& c : r) c *= s;
    reduce_in_place(r, m);
    return r;
}

void divrem_monic_mod(const ZPoly& a, const ZPoly& b, const Integer& m, ZPoly& q, ZPoly& r) {
    r = a;
    reduce_in_place(r, m);
    const int db = deg(b);
    if (db < 0) throw std::domain_error("division by zero polynomial");
    if (deg(r) < db) {
        q.clear();
        return;
    }
    q.assign(r.size() - b.size() + 1, Integer(0));
    for (int i = deg(r); i >= db; --i) {
        Integer c = r[i];
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        q[i - db] = c;
        if (sgn(c) == 0) continue;
        for (int j = 0; j <= db; ++j) mpz_submul(r[i - db + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
        r[i] = 0;
    }
    r.resize(db);
    reduce_in_place(r, m);
    reduce_in_place(q, m);
}

ZPoly symmetric(const ZPoly& a, const Integer& m) {
    ZPoly r = a;
    Integer half = m / 2;
    for (auto& c : r) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        if (c > half) c -= m;
    }
    trim(r);
    return r;
}

bool divides(const ZPoly& a, const ZPoly& b, ZPoly* quotient) {
    if (b.empty()) throw std::domain_error("division by zero polynomial");
    ZPoly r = a;
    trim(r);
    const int db = deg(b);
    if (deg(r) < db) {
        if (quotient) quotient->clear();
        return r.empty();
    }
    if (sgn(r[0]) != 0 && sgn(b[0]) != 0 && !mpz_divisible_p(r[0].get_mpz_t(), b[0].get_mpz_t())) return false;
    ZPoly q(r.size() - b.size() + 1, Integer(0));
    for (int i = deg(r); i >= db; --i) {
        if (sgn(r[i]) == 0) continue;
        if (!mpz_divisible_p(r[i].get_mpz_t(), b.back().get_mpz_t())) return false;
        Integer c;
        mpz_divexact(c.get_mpz_t(), r[i].get_mpz_t(), b.back().get_mpz_t());
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) mpz_submul(r[i - db + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
    }
    for (int i = 0; i < db; ++i)
        if (sgn(r[i]) != 0) return false;
    if (quotient) {
        trim(q);
        *quotient = std::move(q);
    }
    return true;
}

namespace {

// One quadratic Hensel step from modulus m to m2 = m^2; h monic.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Integer& m2) {
    ZPoly e = sub_mod(f, mul_mod(g, h, m2), m2);
    ZPoly q, r;
    divrem_monic_mod(mul_mod(s, e, m2), h, m2, q, r);
    ZPoly gs = add_mod(g, add_mod(mul_mod(t, e, m2), mul_mod(q, g, m2), m2), m2);
    ZPoly hs = add_mod(h, r, m2);
    ZPoly b = sub_mod(add_mod(mul_mod(s, gs, m2), mul_mod(t, hs, m2), m2), ZPoly{Integer(1)}, m2);
    ZPoly c, d;
    divrem_monic_mod(mul_mod(s, b, m2), hs, m2, c, d);
    s = sub_mod(s, d, m2);
    t = sub_mod(t, add_mod(mul_mod(t, b, m2), mul_mod(c, gs, m2), m2), m2);
    g = std::move(gs);
    h = std::move(hs);
}

void lift_node(const ZPoly& F, const std::vector<nmod::NPoly>& facs, std::size_t lo, std::size_t hi, std::uint64_t p,
               const Integer& M, std::vector<ZPoly>& out) {
    Integer L = F.back();
    if (hi - lo == 1) {
        Integer inv;
        Integer Lr = L % M;
        if (Lr < 0) Lr += M;
        if (!mpz_invert(inv.get_mpz_t(), Lr.get_mpz_t(), M.get_mpz_t())) throw std::logic_error("leading coefficient not invertible");
        out.push_back(scale_mod(F, inv, M));
        return;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    nmod::NPoly a{1}, b{1};
    for (std::size_t k = lo; k < mid; ++k) a = nmod::mul(a, facs[k], p);
    for (std::size_t k = mid; k < hi; ++k) b = nmod::mul(b, facs[k], p);
    Integer P(static_cast<unsigned long>(p));
    Integer Lp = L % P;
    if (Lp < 0) Lp += P;
    a = nmod::scale(a, Lp.get_ui(), p);
    nmod::NPoly gg, s0, t0;
    nmod::xgcd(a, b, p, gg, s0, t0);
    if (nmod::deg(gg) != 0) throw std::logic_error("modular factors not coprime");
    ZPoly g = lift(a), h = lift(b), s = lift(s0), t = lift(t0);
    Integer m = P;
    while (m < M) {
        Integer m2 = m * m;
        ZPoly Fm = F;
        reduce_in_place(Fm, m2);
        hensel_step(Fm, g, h, s, t, m2);
        m = m2;
    }
    lift_node(g, facs, lo, mid, p, M, out);
    lift_node(h, facs, mid, hi, p, M, out);
}

}  // namespace

std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<nmod::NPoly>& factors, std::uint64_t p,
                               const Integer& bound, Integer& modulus) {
    Integer M(static_cast<unsigned long>(p));
    while (M < bound) M *= M;
    modulus = M;
    ZPoly F = f;
    reduce_in_place(F, M);
    std::vector<ZPoly> out;
    if (factors.empty()) return out;
    lift_node(F, factors, 0, factors.size(), p, M, out);
    return out;
}

}  // namespace qd::zpoly
