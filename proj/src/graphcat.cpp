#include "qd/graphcat.hpp"

#include "qd/text.hpp"

#include "json.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qd {

namespace {

std::string tree_code(std::size_t v, const std::vector<std::vector<std::size_t>>& preds,
                      const std::vector<bool>& on_cycle) {
    std::vector<std::string> kids;
    for (auto w : preds[v])
        if (!on_cycle[w]) kids.push_back(tree_code(w, preds, on_cycle));
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (auto& k : kids) out += k;
    return out + ")";
}

}  // namespace

CanonCode canonical_code(const std::vector<std::size_t>& succ) {
    const std::size_t n = succ.size();
    std::vector<std::vector<std::size_t>> preds(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (succ[v] >= n) throw std::invalid_argument("successor out of range: not a functional graph");
        preds[succ[v]].push_back(v);
    }
    // Cycle vertices are exactly those reached again from themselves.
    std::vector<bool> on_cycle(n, false);
    std::vector<int> state(n, 0);
    std::vector<std::vector<std::size_t>> cycles;
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> path;
        std::size_t v = s;
        while (state[v] == 0) {
            state[v] = 1;
            path.push_back(v);
            v = succ[v];
        }
        if (state[v] == 1) {
            std::vector<std::size_t> cyc(std::find(path.begin(), path.end(), v), path.end());
            for (auto w : cyc) on_cycle[w] = true;
            cycles.push_back(cyc);
        }
        for (auto p : path) state[p] = 2;
    }

    std::vector<std::string> comps;
    for (const auto& cyc : cycles) {
        std::vector<std::string> seq;
        for (auto v : cyc) seq.push_back(tree_code(v, preds, on_cycle));
        std::vector<std::string> best = seq;
        for (std::size_t r = 1; r < seq.size(); ++r) {
            std::rotate(seq.begin(), seq.begin() + 1, seq.end());
            if (seq < best) best = seq;
        }
        std::string comp = "[";
        for (auto& s : best) comp += s;
        comps.push_back(comp + "]");
    }
    std::sort(comps.begin(), comps.end());
    std::string out;
    for (auto& c : comps) out += c;
    return out;
}

CanonCode canonical_code(const PreperGraph& g) { return canonical_code(g.succ); }

namespace {

struct Witness {
    const char* label;
    long d;
    const char* c;
    std::size_t vertices;
};

std::vector<CatalogEntry> build(const std::vector<Witness>& ws) {
    std::vector<CatalogEntry> out;
    for (const auto& w : ws) {
        auto g = build_graph(parse_quad(w.c, w.d), w.d);
        if (g.size() != w.vertices)
            throw std::logic_error(std::string("catalog witness for ") + w.label + " has the wrong vertex count");
        out.push_back({w.label, canonical_code(g), w.d, w.c, w.vertices});
    }
    return out;
}

std::string synthesized_label(const PreperGraph& g) {
    auto cs = cycle_structure(g);
    std::string out = std::to_string(g.size());
    if (!cs.empty()) {
        out += "(";
        for (std::size_t k = cs.size(); k-- > 0;) out += std::to_string(cs[k]) + (k ? "," : "");
        out += ")";
    }
    return out + "?";
}

}  // namespace

const std::vector<CatalogEntry>& builtin_catalog() {
    static const std::vector<CatalogEntry> cat = build({
        {"0", -1, "2", 0},
        {"3(2)", -1, "-1", 3},
        {"4(1)", -3, "1/4", 4},
        {"4(1,1)", -1, "-6", 4},
        {"4(2)", -1, "-3", 4},
        {"5(1,1)a", -1, "-2", 5},
        {"5(1,1)b", -1, "0", 5},
        {"5(2)a", -1, "i", 5},
        {"6(1,1)", -1, "-10/9", 6},
        {"6(2)", -1, "-13/9", 6},
        {"6(2,1)", -1, "1/4", 6},
        {"6(3)", -1, "-301/144", 6},
        {"7(2,1,1)a", -3, "0", 7},
        {"8(2)a", -3, "-5/12", 8},
        {"8(2,1,1)", -1, "-21/16", 8},
        {"8(3)", -1, "-29/16", 8},
        {"10(2,1,1)a", -1, "-1/4 + 3*i/8", 10},
    });
    return cat;
}

const std::vector<CatalogEntry>& attested_catalog() {
    static const std::vector<CatalogEntry> cat = build({
        {"10(2,1,1)b", -15, "3/16", 10},
        {"9(2,1,1)", 5, "-2", 9},
        {"7(1,1)b", 3, "-2", 7},
    });
    return cat;
}

std::string classify(const PreperGraph& g) {
    const CanonCode code = canonical_code(g);
    for (const auto& e : builtin_catalog())
        if (e.code == code) return e.label;
    for (const auto& e : attested_catalog())
        if (e.code == code) return e.label + "?";
    return synthesized_label(g);
}

std::string to_dot(const PreperGraph& g) {
    if (g.size() == 0) return "digraph G {}\n";
    std::ostringstream os;
    os << "digraph G {\n";
    for (std::size_t v = 0; v < g.size(); ++v) os << "  n" << v << " [label=\"" << to_string(g.vertices[v]) << "\"];\n";
    for (std::size_t v = 0; v < g.size(); ++v) os << "  n" << v << " -> n" << g.succ[v] << ";\n";
    os << "}\n";
    return os.str();
}

std::string classification_json(const PreperGraph& g) {
    using nlohmann::json;
    auto a = admissible_flags(g);
    json verts = json::array();
    for (const auto& v : g.vertices) verts.push_back(to_string(v));
    json j = {{"schema", "quaddyn.classification/1"},
              {"d", g.d},
              {"c", to_string(g.c)},
              {"label", classify(g)},
              {"code", canonical_code(g)},
              {"vertices", verts},
              {"cycle_structure", cycle_structure(g)},
              {"complete_for_periods_up_to", g.n_max_used},
              {"flags",
               {{"admissible", a.admissible},
                {"strongly_admissible", a.strongly_admissible},
                {"zero_is_preperiodic", a.zero_is_preperiodic},
                {"c_is_quarter", a.c_is_quarter}}}};
    return j.dump(2);
}

}  // namespace qd
