#pragma once

#include "qd/orbit.hpp"

#include <string>
#include <vector>

namespace qd {

using CanonCode = std::string;

// Isomorphism-invariant encoding of a functional digraph given by its successor map.
CanonCode canonical_code(const std::vector<std::size_t>& succ);
CanonCode canonical_code(const PreperGraph& g);

struct CatalogEntry {
    std::string label;
    CanonCode code;
    long d;
    std::string c;  // witness parameter, text syntax
    std::size_t vertices;
};

// The seventeen graphs realized over Q(i) or Q(w), computed from their witnesses once.
const std::vector<CatalogEntry>& builtin_catalog();

// Graphs observed at specific parameters outside the realized list; matches are reported with a "?".
const std::vector<CatalogEntry>& attested_catalog();

std::string classify(const PreperGraph& g);

std::string to_dot(const PreperGraph& g);

// {label, code, vertices, cycle_structure, flags} as JSON.
std::string classification_json(const PreperGraph& g);

}  // namespace qd
