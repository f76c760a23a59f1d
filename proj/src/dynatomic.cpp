#include "qd/dynatomic.hpp"

#include <stdexcept>

namespace qd {

int mobius(unsigned n) {
    if (n == 0) throw std::invalid_argument("mobius(0)");
    int mu = 1;
    for (unsigned q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        n /= q;
        if (n % q == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

std::vector<unsigned> divisors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned k = 1; k <= n; ++k)
        if (n % k == 0) out.push_back(k);
    return out;
}

std::pair<long, long> dn_rn(unsigned N) {
    if (N == 0) throw std::invalid_argument("period must be positive");
    if (N > 62) throw std::out_of_range("period too large");
    long d = 0;
    for (unsigned n : divisors(N)) d += mobius(N / n) * (1L << n);
    return {d, d / static_cast<long>(N)};
}

CPoly symbolic_c() { return CPoly::x(Rational(0)); }

Poly<QuadElem> specialize(const SymPoly& p, const QuadElem& value) {
    return p.map([&](const CPoly& coeff) {
        return coeff.eval_in(value, [&](const Rational& q) { return QuadElem(q, value.d()); });
    });
}

std::vector<IdentityCheck> verify_factorizations(unsigned n_max, unsigned m_max, unsigned n_gen_max) {
    std::vector<IdentityCheck> out;
    const CPoly c = symbolic_c();
    const unsigned top = std::max(n_max, m_max + n_gen_max);
    auto f = iterates(c, top);
    const SymPoly x = SymPoly::x(c);

    std::vector<SymPoly> phi(std::max(n_max, n_gen_max) + 1, SymPoly(c));
    for (unsigned N = 1; N < phi.size(); ++N) phi[N] = dynatomic(N, c);

    for (unsigned N = 1; N <= n_max; ++N) {
        SymPoly prod = one_like(x);
        for (unsigned n : divisors(N)) prod *= phi[n];
        bool ok = prod == f[N] - x && phi[N].degree() == dn_rn(N).first;
        out.push_back({"f^" + std::to_string(N) + " - x = prod Phi_n", ok, prod.degree()});
    }
    for (unsigned M = 1; M <= m_max; ++M) {
        for (unsigned N = 1; N <= n_gen_max; ++N) {
            SymPoly prod = one_like(x);
            bool degrees_ok = true;
            for (unsigned n : divisors(N)) {
                prod *= phi[n];
                SymPoly prev = phi[n];
                for (unsigned m = 1; m <= M; ++m) {
                    SymPoly cur = phi[n].compose(f[m]);
                    SymPoly g = divexact(cur, prev);
                    degrees_ok = degrees_ok && g.degree() == dn_rn(n).first * (1L << (m - 1));
                    prod *= g;
                    prev = std::move(cur);
                }
            }
            bool ok = degrees_ok && prod == f[M + N] - f[M];
            out.push_back({"f^" + std::to_string(M + N) + " - f^" + std::to_string(M) + " = prod Phi_{m,n}", ok,
                           prod.degree()});
        }
    }
    return out;
}

}  // namespace qd
