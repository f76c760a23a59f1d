#pragma once

#include "qd/ff.hpp"
#include "qd/poly.hpp"

#include <cstdint>

namespace qd::detail {

// Number of affine (x, y) over F with y^2 + h(x) y = g(x).
std::uint64_t count_affine(const FiniteField& F, const Poly<FFElem>& h, const Poly<FFElem>& g);

}  // namespace qd::detail
