#pragma once

// Polynomials over F_p with p < 2^31, dense, constant term first.

#include "qd/rational.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace qd::nmod {

using NPoly = std::vector<std::uint64_t>;

void trim(NPoly& a);
int deg(const NPoly& a);
NPoly add(const NPoly& a, const NPoly& b, std::uint64_t p);
NPoly sub(const NPoly& a, const NPoly& b, std::uint64_t p);
NPoly mul(const NPoly& a, const NPoly& b, std::uint64_t p);
NPoly scale(const NPoly& a, std::uint64_t s, std::uint64_t p);
void divrem(const NPoly& a, const NPoly& b, std::uint64_t p, NPoly& q, NPoly& r);
NPoly rem(const NPoly& a, const NPoly& b, std::uint64_t p);
NPoly quo(const NPoly& a, const NPoly& b, std::uint64_t p);
NPoly monic(const NPoly& a, std::uint64_t p);
NPoly gcd(NPoly a, NPoly b, std::uint64_t p);
// s*a + t*b = g (monic); deg s < deg b, deg t < deg a when g = 1.
void xgcd(const NPoly& a, const NPoly& b, std::uint64_t p, NPoly& g, NPoly& s, NPoly& t);
NPoly derivative(const NPoly& a, std::uint64_t p);
NPoly powmod(const NPoly& base, const Integer& e, const NPoly& m, std::uint64_t p);
bool is_squarefree(const NPoly& a, std::uint64_t p);
std::uint64_t eval(const NPoly& a, std::uint64_t x, std::uint64_t p);
std::uint64_t resultant(NPoly a, NPoly b, std::uint64_t p);

// Distinct-degree factorization of a monic squarefree polynomial: entry k-1
// is the product of the irreducible factors of degree k (up to max_deg when
// positive); `rest` receives the part with larger-degree factors.
std::vector<NPoly> distinct_degree(const NPoly& f, std::uint64_t p, int max_deg, NPoly& rest);
// Split a product of distinct monic irreducibles of degree k (p odd).
std::vector<NPoly> equal_degree(const NPoly& f, int k, std::uint64_t p, std::mt19937_64& rng);
// Full factorization into monic irreducibles of a monic squarefree polynomial.
std::vector<NPoly> factor_squarefree(const NPoly& f, std::uint64_t p);

}  // namespace qd::nmod
