#pragma once

#include "qd/poly.hpp"
#include "qd/quad.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qd {

// Q[c], the coefficient ring for symbolic computations in the parameter c.
using CPoly = Poly<Rational>;
using SymPoly = Poly<CPoly>;

int mobius(unsigned n);
std::vector<unsigned> divisors(unsigned n);

// (d(N), r(N)): number of points and of cycles of formal period N.
std::pair<long, long> dn_rn(unsigned N);

// f_c^0, ..., f_c^n as polynomials in x.
template <class R>
std::vector<Poly<R>> iterates(const R& c, unsigned n) {
    std::vector<Poly<R>> out;
    out.push_back(Poly<R>::x(c));
    Poly<R> cc = Poly<R>::constant(c);
    for (unsigned k = 1; k <= n; ++k) out.push_back(out.back() * out.back() + cc);
    return out;
}

template <class R>
Poly<R> iterate_poly(const R& c, unsigned n) { return iterates(c, n).back(); }

template <class R>
Poly<R> dynatomic(unsigned N, const R& c) {
    auto f = iterates(c, N);
    const Poly<R> x = Poly<R>::x(c);
    Poly<R> num = one_like(x), den = one_like(x);
    for (unsigned n : divisors(N)) {
        int mu = mobius(N / n);
        if (mu == 1) num *= f[n] - x;
        else if (mu == -1) den *= f[n] - x;
    }
    return divexact(num, den);
}

template <class R>
Poly<R> gen_dynatomic(unsigned M, unsigned N, const R& c) {
    Poly<R> phi = dynatomic(N, c);
    if (M == 0) return phi;
    auto f = iterates(c, M);
    return divexact(phi.compose(f[M]), phi.compose(f[M - 1]));
}

// The symbolic parameter c as an element of Q[c].
CPoly symbolic_c();

// Evaluation homomorphism Q[c][x] -> K[x] at c = value.
Poly<QuadElem> specialize(const SymPoly& p, const QuadElem& value);

struct IdentityCheck {
    std::string name;
    bool ok;
    int degree;
};

// f^N - x = prod_{n|N} Phi_n for N <= n_max, and
// f^{M+N} - f^M = prod_{m<=M} prod_{n|N} Phi_{m,n} for 1 <= M <= m_max, N <= n_gen_max.
std::vector<IdentityCheck> verify_factorizations(unsigned n_max, unsigned m_max, unsigned n_gen_max = 4);

}  // namespace qd
