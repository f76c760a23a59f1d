#pragma once

#include "qd/quad.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qd {

constexpr unsigned kDefaultNMax = 6;
constexpr std::size_t kClosureCap = 10000;

// A rational c is lifted into Q(sqrt d); a c already in another field is an error.
QuadElem in_field(const QuadElem& c, long d);

// Exact period n -> K-rational points of exact period n, for n <= n_max.
std::map<unsigned, std::vector<QuadElem>> periodic_points(const QuadElem& c, long d, unsigned n_max = kDefaultNMax);

struct PreperGraph {
    long d = 1;
    QuadElem c;
    unsigned n_max_used = 0;
    std::vector<QuadElem> vertices;                      // sorted by display_less
    std::vector<std::size_t> succ;                       // index of v^2 + c
    std::vector<std::pair<unsigned, unsigned>> portraits;  // (preperiod, period)

    std::size_t size() const { return vertices.size(); }
    std::size_t index_of(const QuadElem& v) const;  // size() when absent
    std::vector<int> in_degrees() const;
    // Cycles as vertex-index lists, each starting at its smallest index.
    std::vector<std::vector<std::size_t>> cycles() const;
};

PreperGraph build_graph(const QuadElem& c, long d, unsigned n_max = kDefaultNMax,
                        std::size_t cap = kClosureCap);

std::pair<unsigned, unsigned> portrait(const QuadElem& c, const QuadElem& alpha, std::size_t bound = 10000);

struct AdmissibilityReport {
    bool admissible = false;
    bool strongly_admissible = false;
    bool zero_is_preperiodic = false;
    bool c_is_quarter = false;
};

// Evaluates both the vertex criterion and the structural one; throws if they disagree.
AdmissibilityReport admissible_flags(const PreperGraph& g);

std::vector<unsigned> cycle_structure(const PreperGraph& g);

// JSON dump; with_infinity appends the fixed point at infinity as an extra record.
std::string graph_json(const PreperGraph& g, bool with_infinity = false);

}  // namespace qd
