#include "qd/orbit.hpp"

#include "qd/dynatomic.hpp"
#include "qd/factor.hpp"

#include "json.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace qd {

QuadElem in_field(const QuadElem& c, long d) {
    if (c.d() == d) return c;
    if (c.d() == 1) return QuadElem(c.a(), Rational(0), d);
    throw std::invalid_argument("parameter " + to_string(c) + " does not lie in Q(sqrt(" + std::to_string(d) + "))");
}

namespace {

QuadElem step(const QuadElem& x, const QuadElem& c) { return x * x + c; }

std::size_t bits(const QuadElem& x) {
    return mpz_sizeinbase(x.a().get_num_mpz_t(), 2) + mpz_sizeinbase(x.a().get_den_mpz_t(), 2) +
           mpz_sizeinbase(x.b().get_num_mpz_t(), 2) + mpz_sizeinbase(x.b().get_den_mpz_t(), 2);
}

unsigned exact_period(const QuadElem& a, const QuadElem& c, unsigned limit) {
    QuadElem x = a;
    for (unsigned n = 1; n <= limit; ++n) {
        x = step(x, c);
        if (x == a) return n;
    }
    return 0;
}

}  // namespace

std::map<unsigned, std::vector<QuadElem>> periodic_points(const QuadElem& c0, long d, unsigned n_max) {
    QuadElem c = in_field(c0, d);
    std::map<unsigned, std::vector<QuadElem>> out;
    for (unsigned n = 1; n <= n_max; ++n) {
        auto& pts = out[n];
        for (const auto& a : distinct_roots(dynatomic(n, c)))
            if (exact_period(a, c, n) == n) pts.push_back(a);
    }
    return out;
}

std::size_t PreperGraph::index_of(const QuadElem& v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v, display_less);
    if (it != vertices.end() && *it == v) return static_cast<std::size_t>(it - vertices.begin());
    return vertices.size();
}

std::vector<int> PreperGraph::in_degrees() const {
    std::vector<int> deg(size(), 0);
    for (auto s : succ) ++deg[s];
    return deg;
}

std::vector<std::vector<std::size_t>> PreperGraph::cycles() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<int> state(size(), 0);  // 0 unseen, 1 on current path, 2 done
    for (std::size_t s = 0; s < size(); ++s) {
        std::vector<std::size_t> path;
        std::size_t v = s;
        while (state[v] == 0) {
            state[v] = 1;
            path.push_back(v);
            v = succ[v];
        }
        if (state[v] == 1) {
            auto start = std::find(path.begin(), path.end(), v);
            std::vector<std::size_t> cyc(start, path.end());
            std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
            out.push_back(cyc);
        }
        for (auto p : path) state[p] = 2;
    }
    return out;
}

PreperGraph build_graph(const QuadElem& c0, long d, unsigned n_max, std::size_t cap) {
    PreperGraph g;
    g.d = d;
    g.c = in_field(c0, d);
    g.n_max_used = n_max;

    auto cmp = [](const QuadElem& x, const QuadElem& y) { return display_less(x, y); };
    std::set<QuadElem, decltype(cmp)> seen(cmp);
    std::deque<QuadElem> queue;
    for (const auto& [n, pts] : periodic_points(g.c, d, n_max))
        for (const auto& a : pts)
            if (seen.insert(a).second) queue.push_back(a);

    while (!queue.empty()) {
        QuadElem y = queue.front();
        queue.pop_front();
        auto r = quad_sqrt(y - g.c);
        if (!r) continue;
        for (const QuadElem& z : {*r, -*r}) {
            if (!seen.insert(z).second) continue;
            if (seen.size() > cap) throw std::runtime_error("preperiodic closure exceeded the vertex cap");
            queue.push_back(z);
        }
    }

    g.vertices.assign(seen.begin(), seen.end());
    for (const auto& v : g.vertices) {
        std::size_t s = g.index_of(step(v, g.c));
        if (s == g.size()) throw std::logic_error("vertex set not closed under f_c");
        g.succ.push_back(s);
    }
    // Portraits from the finished graph: distance to the cycle and its length.
    std::vector<unsigned> period(g.size(), 0);
    for (const auto& cyc : g.cycles())
        for (auto v : cyc) period[v] = static_cast<unsigned>(cyc.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
        unsigned m = 0;
        std::size_t w = v;
        while (period[w] == 0) {
            w = g.succ[w];
            ++m;
        }
        g.portraits.emplace_back(m, period[w]);
    }
    return g;
}

std::pair<unsigned, unsigned> portrait(const QuadElem& c, const QuadElem& alpha, std::size_t bound) {
    long d = alpha.d() == 1 ? c.d() : alpha.d();
    QuadElem cc = in_field(c, d);
    std::map<QuadElem, unsigned> first_seen;
    QuadElem x = in_field(alpha, d);
    // Preperiodic orbits have bounded height; a runaway height means escape.
    const std::size_t height_cap = 4096 + 16 * (bits(cc) + bits(x));
    for (unsigned k = 0; k <= bound; ++k) {
        auto [it, fresh] = first_seen.emplace(x, k);
        if (!fresh) return {it->second, k - it->second};
        x = step(x, cc);
        if (bits(x) > height_cap) break;
    }
    throw std::runtime_error("orbit of " + to_string(alpha) + " did not repeat within the bound");
}

AdmissibilityReport admissible_flags(const PreperGraph& g) {
    AdmissibilityReport r;
    r.zero_is_preperiodic = g.index_of(QuadElem(g.d)) != g.size();
    r.c_is_quarter = g.c == QuadElem(Rational(1, 4), g.d);
    r.admissible = !r.zero_is_preperiodic;
    r.strongly_admissible = r.admissible && !r.c_is_quarter;

    bool structural = true;
    for (int k : g.in_degrees()) structural = structural && (k == 0 || k == 2);
    std::map<unsigned, long> count;
    for (const auto& cyc : g.cycles()) ++count[static_cast<unsigned>(cyc.size())];
    for (const auto& [n, k] : count)
        if (n >= 2 && n <= 62 && k > dn_rn(n).second) structural = false;
    bool strongly = structural && (count[1] == 0 || count[1] == 2);

    if (structural != r.admissible || strongly != r.strongly_admissible)
        throw std::logic_error("vertex and structural admissibility criteria disagree");
    return r;
}

std::vector<unsigned> cycle_structure(const PreperGraph& g) {
    std::vector<unsigned> out;
    for (const auto& cyc : g.cycles()) out.push_back(static_cast<unsigned>(cyc.size()));
    std::sort(out.begin(), out.end());
    return out;
}

std::string graph_json(const PreperGraph& g, bool with_infinity) {
    using nlohmann::json;
    json j;
    j["schema"] = "quaddyn.graph/1";
    j["d"] = g.d;
    j["c"] = to_string(g.c);
    j["complete_for_periods_up_to"] = g.n_max_used;
    json verts = json::array(), edges = json::array();
    for (std::size_t v = 0; v < g.size(); ++v) {
        verts.push_back({{"point", to_string(g.vertices[v])},
                         {"portrait", {g.portraits[v].first, g.portraits[v].second}}});
        edges.push_back({to_string(g.vertices[v]), to_string(g.vertices[g.succ[v]])});
    }
    if (with_infinity) {
        verts.push_back({{"point", "infinity"}, {"portrait", {0, 1}}});
        edges.push_back({"infinity", "infinity"});
    }
    j["vertices"] = verts;
    j["edges"] = edges;
    j["cycle_structure"] = cycle_structure(g);
    auto a = admissible_flags(g);
    j["flags"] = {{"admissible", a.admissible},
                  {"strongly_admissible", a.strongly_admissible},
                  {"zero_is_preperiodic", a.zero_is_preperiodic},
                  {"c_is_quarter", a.c_is_quarter},
                  {"includes_infinity", with_infinity}};
    return j.dump(2);
}

}  // namespace qd
