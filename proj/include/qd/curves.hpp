#pragma once

#include "qd/genus2.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qd {

struct NamedCurve {
    std::string name;
    std::vector<std::string> aliases;
    std::string graph;  // dynamical graph label when the curve is some X_1(G), else empty
    std::string h, g;   // y^2 + h(x) y = g(x)
    std::string c_num, c_den;  // c as a rational function of x, empty when not a dynamical curve
    std::string note;

    HypCurve model() const;
    // c(x0), absent at a pole or for curves without a parametrization.
    std::optional<QuadElem> c_at(const QuadElem& x0) const;
};

const std::vector<NamedCurve>& curve_registry();
// Looks up a name or alias; nullptr if unknown.
const NamedCurve* find_curve(const std::string& name);

}  // namespace qd
