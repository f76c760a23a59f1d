#include "doctest.h"
#include "gen.hpp"

#include "qd/dynatomic.hpp"
#include "qd/orbit.hpp"
#include "qd/text.hpp"

#include <algorithm>

using namespace qd;

namespace {

QuadElem q(const std::string& s, long d) { return parse_quad(s, d); }

std::vector<std::string> texts(const std::vector<QuadElem>& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(to_string(x));
    std::sort(out.begin(), out.end());
    return out;
}

using Strs = std::vector<std::string>;

}  // namespace

TEST_CASE("periodic points") {
    auto p = periodic_points(q("-1", 1), 1, 4);
    CHECK(p[1].empty());
    CHECK(texts(p[2]) == Strs{"-1", "0"});
    auto pi = periodic_points(q("i", -1), -1, 3);
    CHECK(pi[1].empty());
    CHECK(texts(pi[2]) == texts({q("-i", -1), q("-1+i", -1)}));
    auto p3 = periodic_points(q("-3", 1), 1, 3);
    CHECK(texts(p3[2]) == Strs{"-2", "1"});
}

TEST_CASE("graph construction") {
    CHECK(build_graph(q("2", 1), -1).size() == 0);
    auto g = build_graph(q("-301/144", 1), 1);
    CHECK(texts(g.vertices) == Strs{"-19/12", "-23/12", "-5/12", "19/12", "23/12", "5/12"});
    CHECK(cycle_structure(g) == std::vector<unsigned>{3});

    auto h = build_graph(q("-1/4 + 3*i/8", -1), -1);
    CHECK(h.size() == 10);
    for (const char* s : {"1/4 - i/4", "1/4 + 3*i/4", "3/4 + i/4", "3/4 - 3*i/4", "5/4 - i/4"}) {
        CHECK(h.index_of(q(s, -1)) != h.size());
        CHECK(h.index_of(-q(s, -1)) != h.size());
    }
}

TEST_CASE("portraits") {
    CHECK(portrait(q("-21/16", 1), q("7/4", 1)) == std::pair<unsigned, unsigned>{0, 1});
    CHECK(portrait(q("-21/16", 1), q("5/4", 1)) == std::pair<unsigned, unsigned>{1, 2});
    CHECK(portrait(q("0", 1), q("1", -1)) == std::pair<unsigned, unsigned>{0, 1});
    CHECK(portrait(q("0", 1), q("i", -1)) == std::pair<unsigned, unsigned>{2, 1});
    CHECK_THROWS(portrait(q("1", 1), q("1", 1), 50));
}

TEST_CASE("admissibility and cycle structure") {
    auto a = admissible_flags(build_graph(q("0", 1), -3));
    CHECK_FALSE(a.admissible);
    CHECK(a.zero_is_preperiodic);
    auto b = admissible_flags(build_graph(q("1/4", 1), -3));
    CHECK(b.c_is_quarter);
    CHECK(b.admissible);
    CHECK_FALSE(b.strongly_admissible);
    auto c = admissible_flags(build_graph(q("-6", 1), 1));
    CHECK(c.admissible);
    CHECK(c.strongly_admissible);

    CHECK(cycle_structure(build_graph(q("-13/9", 1), 1)) == std::vector<unsigned>{2});
    CHECK(cycle_structure(build_graph(q("-21/16", 1), 1)) == std::vector<unsigned>{1, 1, 2});
    CHECK(cycle_structure(build_graph(q("2", 1), 1)).empty());
}

TEST_CASE("table witnesses: vertex counts, invariants, monotonicity") {
    struct W { const char* c; long d; std::size_t n; };
    const W ws[] = {{"2", -1, 0},        {"-1", -1, 3},     {"1/4", -3, 4},        {"-6", -1, 4},
                    {"-3", -1, 4},       {"-2", -1, 5},     {"0", -1, 5},          {"i", -1, 5},
                    {"-10/9", -1, 6},    {"-13/9", -1, 6},  {"1/4", -1, 6},        {"-301/144", -1, 6},
                    {"0", -3, 7},        {"-5/12", -3, 8},  {"-21/16", -1, 8},     {"-29/16", -1, 8},
                    {"-1/4 + 3*i/8", -1, 10}};
    for (const auto& w : ws) {
        INFO(w.c << " d=" << w.d);
        QuadElem c = q(w.c, w.d);
        auto g = build_graph(c, w.d);
        CHECK(g.size() == w.n);
        CHECK(build_graph(c, w.d, 3).vertices == g.vertices);
        CHECK(build_graph(c, w.d, 2).size() <= g.size());

        auto indeg = g.in_degrees();
        bool zero_in = g.index_of(QuadElem(w.d)) != g.size();
        for (std::size_t v = 0; v < g.size(); ++v) {
            const QuadElem& x = g.vertices[v];
            std::size_t m = g.index_of(-x);
            REQUIRE(m != g.size());
            CHECK(g.succ[m] == g.succ[v]);
            CHECK(g.vertices[g.succ[v]] == x * x + g.c);
            if (x == g.c && zero_in) CHECK(indeg[v] == 1);
            else CHECK((indeg[v] == 0 || indeg[v] == 2));
            auto [pm, pn] = g.portraits[v];
            CHECK(portrait(g.c, x) == g.portraits[v]);
            CHECK(is_zero(gen_dynatomic(pm, pn, g.c).eval(x)));
        }
        auto flags = admissible_flags(g);
        if (flags.admissible) {
            std::map<unsigned, long> count;
            for (auto n : cycle_structure(g)) ++count[n];
            for (auto [n, k] : count) CHECK(k <= dn_rn(n).second);
        }
    }
}

TEST_CASE("property: random parameters in Q(i) and Q(w)") {
    for (int trial = 0; trial < 12; ++trial) {
        long d = trial % 2 ? -1 : -3;
        QuadElem c = qdtest::small_quad(d, 4);
        auto g = build_graph(c, d, 4);
        CHECK(cycle_structure(g) == [&] {
            auto s = cycle_structure(g);
            std::sort(s.begin(), s.end());
            return s;
        }());
        for (std::size_t v = 0; v < g.size(); ++v) CHECK(g.index_of(-g.vertices[v]) != g.size());
        CHECK_NOTHROW(admissible_flags(g));
    }
}

TEST_CASE("json dump") {
    auto g = build_graph(q("-1", 1), 1);
    std::string j = graph_json(g);
    CHECK(j.find("\"quaddyn.graph/1\"") != std::string::npos);
    CHECK(j.find("\"includes_infinity\": false") != std::string::npos);
    CHECK(graph_json(g, true).find("\"infinity\"") != std::string::npos);
}
