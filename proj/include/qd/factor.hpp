#pragma once

#include "qd/poly.hpp"
#include "qd/quad.hpp"

#include <utility>
#include <vector>

namespace qd {

struct FactorList {
    Rational content;
    std::vector<std::pair<Poly<Rational>, int>> factors;  // monic irreducible, multiplicity

    Poly<Rational> product() const;
};

FactorList factor_rational(const Poly<Rational>& p);

// Irreducible factors of degree <= max_deg of a nonzero rational polynomial
// (monic, without multiplicity), found by a restricted Zassenhaus search.
std::vector<Poly<Rational>> small_degree_factors(const Poly<Rational>& p, int max_deg);

// Roots of p lying in its own coefficient field, with multiplicity, sorted.
std::vector<QuadElem> roots_in_quadfield(const Poly<QuadElem>& p);

// Distinct roots only.
std::vector<QuadElem> distinct_roots(const Poly<QuadElem>& p);

// Degree-pattern certificate used by the property tests: true when the
// polynomial is provably irreducible over Q by reduction patterns mod small
// primes or by small-degree arguments.
bool irreducibility_witness(const Poly<Rational>& p);

}  // namespace qd
