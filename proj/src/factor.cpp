#include "qd/factor.hpp"
#include "qd/ff.hpp"

#include "nmod_poly.hpp"
#include "zpoly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qd {

using zpoly::ZPoly;

namespace {

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

bool good_prime(const ZPoly& f, std::uint64_t p) {
    Integer P(static_cast<unsigned long>(p));
    if (mpz_divisible_p(f.back().get_mpz_t(), P.get_mpz_t())) return false;
    return nmod::is_squarefree(zpoly::reduce(f, p), p);
}

// Smallest primes >= 5 with squarefree reduction; empty when none is found
// among the first `tries` candidates (f not squarefree).
std::vector<std::uint64_t> good_primes(const ZPoly& f, std::size_t want, std::size_t tries) {
    std::vector<std::uint64_t> out;
    std::size_t seen = 0;
    for (std::uint64_t p = 5; out.size() < want && seen < tries; p += 2) {
        if (!is_prime(p)) continue;
        ++seen;
        if (good_prime(f, p)) out.push_back(p);
    }
    return out;
}

bool poly_less(const Poly<Rational>& a, const Poly<Rational>& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int k = a.degree(); k >= 0; --k) {
        int c = cmp(a[k], b[k]);
        if (c) return c < 0;
    }
    return false;
}

// Subset recombination of lifted factors.  With max_deg > 0 only candidates
// of total degree <= max_deg are tried and the cofactor is not reported.
std::vector<ZPoly> recombine(ZPoly F, std::vector<ZPoly> lifted, const Integer& M, int max_deg) {
    std::vector<ZPoly> found;
    const bool full = max_deg <= 0;
    std::size_t s = 1;
    for (;;) {
        std::size_t r = lifted.size();
        if (full ? 2 * s > r : s > r || static_cast<int>(s) > max_deg) break;
        std::vector<std::size_t> idx(s);
        std::iota(idx.begin(), idx.end(), 0);
        bool hit = false;
        do {
            int dsum = 0;
            for (auto k : idx) dsum += zpoly::deg(lifted[k]);
            if (!full && dsum > max_deg) continue;
            if (full ? dsum >= zpoly::deg(F) : dsum > zpoly::deg(F)) continue;
            ZPoly cand{F.back()};
            for (auto k : idx) cand = zpoly::mul_mod(cand, lifted[k], M);
            cand = zpoly::primitive_part(zpoly::symmetric(cand, M));
            ZPoly q;
            if (zpoly::deg(cand) == dsum && zpoly::divides(F, cand, &q)) {
                found.push_back(cand);
                F = zpoly::primitive_part(q);
                for (std::size_t j = idx.size(); j-- > 0;) lifted.erase(lifted.begin() + static_cast<long>(idx[j]));
                hit = true;
                break;
            }
        } while (next_combination(idx, r));
        if (!hit) ++s;
    }
    if (full && zpoly::deg(F) > 0) found.push_back(F);
    return found;
}

// Irreducible factors of a primitive squarefree integer polynomial.
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
    if (zpoly::deg(f) <= 1) return {f};
    auto primes = good_primes(f, 4, 400);
    if (primes.empty()) throw std::logic_error("no good prime found for a squarefree polynomial");
    std::uint64_t best = 0;
    std::vector<nmod::NPoly> best_facs;
    for (auto p : primes) {
        auto facs = nmod::factor_squarefree(nmod::monic(zpoly::reduce(f, p), p), p);
        if (best == 0 || facs.size() < best_facs.size()) {
            best = p;
            best_facs = std::move(facs);
        }
        if (best_facs.size() == 1) return {f};
    }
    const int n = zpoly::deg(f);
    Integer bound = zpoly::norm2_ceil(f);
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(n + 1));
    Integer M;
    auto lifted = zpoly::hensel_lift(f, best_facs, best, bound, M);
    return recombine(f, std::move(lifted), M, 0);
}

Poly<Rational> monic_rational(const ZPoly& z) { return zpoly::to_rational(z).monic(); }

// Squarefree integer polynomial with the same roots.
ZPoly squarefree_integer(const ZPoly& f) {
    if (zpoly::deg(f) <= 1) return f;
    if (!good_primes(f, 1, 40).empty()) return f;
    return zpoly::primitive_part(squarefree_part(zpoly::to_rational(f)));
}

}  // namespace

Poly<Rational> FactorList::product() const {
    Poly<Rational> r = Poly<Rational>::constant(content);
    for (const auto& [f, e] : factors) r *= pow(f, static_cast<unsigned long>(e));
    return r;
}

FactorList factor_rational(const Poly<Rational>& p) {
    if (p.is_zero()) throw std::invalid_argument("factor_rational of the zero polynomial");
    FactorList out;
    out.content = p.lead();
    if (p.degree() == 0) return out;
    ZPoly f = zpoly::primitive_part(p);
    std::vector<std::pair<ZPoly, int>> parts;
    if (!good_primes(f, 1, 40).empty()) {
        parts.emplace_back(f, 1);
    } else {
        for (auto& [g, e] : squarefree_decomposition(p.monic())) parts.emplace_back(zpoly::primitive_part(g), e);
    }
    for (const auto& [g, e] : parts)
        for (const auto& h : zassenhaus(g)) out.factors.emplace_back(monic_rational(h), e);
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second && a.first == b.first) return a.second < b.second;
        return poly_less(a.first, b.first);
    });
    return out;
}

std::vector<Poly<Rational>> small_degree_factors(const Poly<Rational>& p, int max_deg) {
    if (p.is_zero()) throw std::invalid_argument("small_degree_factors of the zero polynomial");
    std::vector<Poly<Rational>> out;
    if (p.degree() <= 0 || max_deg <= 0) return out;
    ZPoly f = squarefree_integer(zpoly::primitive_part(p));
    if (zpoly::deg(f) <= max_deg && zpoly::deg(f) <= 1) {
        out.push_back(monic_rational(f));
        return out;
    }
    auto primes = good_primes(f, 1, 400);
    if (primes.empty()) throw std::logic_error("no good prime found for a squarefree polynomial");
    const std::uint64_t q = primes[0];
    nmod::NPoly fbar = nmod::monic(zpoly::reduce(f, q), q);
    nmod::NPoly rest;
    auto parts = nmod::distinct_degree(fbar, q, max_deg, rest);
    std::mt19937_64 rng(0x51ed2701ull ^ q);
    std::vector<nmod::NPoly> facs;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        auto split = nmod::equal_degree(parts[k], static_cast<int>(k) + 1, q, rng);
        facs.insert(facs.end(), split.begin(), split.end());
    }
    if (facs.empty()) return out;
    const std::size_t nsmall = facs.size();
    if (nmod::deg(rest) > 0) facs.push_back(rest);
    Integer bound = zpoly::norm2_ceil(f);
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(max_deg + 1));
    Integer M;
    auto lifted = zpoly::hensel_lift(f, facs, q, bound, M);
    lifted.resize(nsmall);
    for (const auto& g : recombine(f, std::move(lifted), M, max_deg)) out.push_back(monic_rational(g));
    std::sort(out.begin(), out.end(), poly_less);
    return out;
}

namespace {

Poly<Rational> norm_polynomial(const Poly<QuadElem>& p) {
    bool rational = true;
    for (const auto& c : p.coeffs()) rational = rational && c.is_rational();
    if (rational) return p.map([](const QuadElem& c) { return c.a(); });
    Poly<QuadElem> conj = p.map([](const QuadElem& c) { return c.conj(); });
    return (p * conj).map([](const QuadElem& c) { return c.a(); });
}

void add_candidates(const Poly<Rational>& g, long d, std::vector<QuadElem>& cand) {
    if (g.degree() == 1) {
        cand.emplace_back(-g[0] / g[1], d);
        return;
    }
    // x^2 + b x + c with roots (-b +- sqrt(b^2 - 4c)) / 2
    QuadElem disc(g[1] * g[1] - 4 * g[0], d);
    auto s = quad_sqrt(disc);
    if (!s) return;
    QuadElem mb(-g[1], d);
    QuadElem half(Rational(1, 2), d);
    cand.push_back((mb + *s) * half);
    cand.push_back((mb - *s) * half);
}

}  // namespace

std::vector<QuadElem> roots_in_quadfield(const Poly<QuadElem>& p) {
    if (p.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
    const long d = p.zero_coeff().d();
    std::vector<QuadElem> cand;
    for (const auto& g : small_degree_factors(norm_polynomial(p), d == 1 ? 1 : 2)) add_candidates(g, d, cand);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::vector<QuadElem> roots;
    for (const auto& r : cand) {
        Poly<QuadElem> q = p;
        Poly<QuadElem> lin(std::vector<QuadElem>{-r, QuadElem(Rational(1), d)}, r);
        for (;;) {
            auto [quo, rem] = divrem(q, lin);
            if (!rem.is_zero()) break;
            roots.push_back(r);
            q = std::move(quo);
        }
    }
    std::sort(roots.begin(), roots.end(), display_less);
    return roots;
}

std::vector<QuadElem> distinct_roots(const Poly<QuadElem>& p) {
    auto r = roots_in_quadfield(p);
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

bool irreducibility_witness(const Poly<Rational>& p) {
    const int n = p.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    ZPoly f = zpoly::primitive_part(p);
    if (n <= 3) return small_degree_factors(p, 1).empty();
    // Degree patterns: a factor of degree k must be a subset sum of every
    // modular pattern; intersect the possible degrees across primes.
    std::vector<bool> possible(n, true);
    std::size_t used = 0;
    for (std::uint64_t q = 5; used < 12 && q < 2000; q += 2) {
        if (!is_prime(q) || !good_prime(f, q)) continue;
        ++used;
        auto facs = nmod::factor_squarefree(nmod::monic(zpoly::reduce(f, q), q), q);
        std::vector<bool> sums(n + 1, false);
        sums[0] = true;
        for (const auto& g : facs) {
            int k = nmod::deg(g);
            for (int s = n; s >= k; --s) sums[s] = sums[s] || sums[s - k];
        }
        for (int k = 1; k < n; ++k) possible[k] = possible[k] && sums[k];
        bool any = false;
        for (int k = 1; k < n; ++k) any = any || possible[k];
        if (!any) return true;
    }
    // Fall back on the exhaustive Zassenhaus search.
    return zassenhaus(f).size() == 1;
}

}  // namespace qd
