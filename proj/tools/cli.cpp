#include "cli.hpp"

#include "qd/chabauty.hpp"
#include "qd/curves.hpp"
#include "qd/dynatomic.hpp"
#include "qd/genus2.hpp"
#include "qd/graphcat.hpp"
#include "qd/orbit.hpp"
#include "qd/simd.hpp"
#include "qd/text.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace qd::cli {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Labels of the realized graphs over Q(i) and Q(w).
const std::set<std::string>& theorem_labels(long d) {
    static const std::set<std::string> gauss = {"0",      "3(2)",   "4(1,1)", "4(2)",     "5(1,1)a", "5(1,1)b", "5(2)a",
                                                "6(1,1)", "6(2)",   "6(2,1)", "6(3)",     "8(2,1,1)", "8(3)",    "10(2,1,1)a"};
    static const std::set<std::string> eisenstein = {"0",      "3(2)", "4(1)", "4(1,1)",    "4(2)",  "5(1,1)a", "6(1,1)",
                                                     "6(2)",   "6(3)", "7(2,1,1)a", "8(2)a", "8(2,1,1)", "8(3)"};
    static const std::set<std::string> none;
    return d == -1 ? gauss : d == -3 ? eisenstein : none;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

QuadElem parse_parameter(const std::string& text, long d) {
    try {
        return in_field(parse_quad(text, d), d);
    } catch (const std::exception& e) {
        throw UsageError("bad parameter '" + text + "': " + e.what());
    }
}

std::string cycles_text(const std::vector<unsigned>& cs) {
    std::string s = "(";
    for (std::size_t k = 0; k < cs.size(); ++k) s += (k ? "," : "") + std::to_string(cs[k]);
    return s + ")";
}

// ---------------------------------------------------------------- graph

json catalog_json() {
    auto entries = [](const std::vector<CatalogEntry>& v) {
        json a = json::array();
        for (const auto& e : v)
            a.push_back({{"label", e.label}, {"code", e.code}, {"d", e.d}, {"c", e.c}, {"vertices", e.vertices}});
        return a;
    };
    return {{"schema", "quaddyn.catalog/1"}, {"realized", entries(builtin_catalog())}, {"attested", entries(attested_catalog())}};
}

std::string label_from(const json& catalog, const PreperGraph& g) {
    const CanonCode code = canonical_code(g);
    for (const char* part : {"realized", "attested"})
        if (catalog.contains(part))
            for (const auto& e : catalog[part])
                if (e.at("code").get<std::string>() == code)
                    return e.at("label").get<std::string>() + (std::string(part) == "attested" ? "?" : "");
    std::string label = classify(g);
    if (label.empty() || label.back() != '?') label = std::to_string(g.size()) + cycles_text(cycle_structure(g)) + "?";
    return label;
}

struct GraphOpts {
    long d = -1;
    std::string c;
    unsigned n_max = kDefaultNMax;
    std::string format = "text";
    bool infinity = false;
    std::string catalog;
};

int cmd_graph(const GraphOpts& o, std::ostream& out) {
    const QuadElem c = parse_parameter(o.c, o.d);
    const PreperGraph g = build_graph(c, o.d, o.n_max);
    const std::string label = o.catalog.empty() ? classify(g) : label_from(load_json(o.catalog), g);
    if (o.format == "dot") {
        out << to_dot(g);
        return kOk;
    }
    if (o.format == "json") {
        json cls = json::parse(classification_json(g));
        cls["label"] = label;
        json j = {{"schema", "quaddyn.graph_record/1"}, {"classification", cls}, {"graph", json::parse(graph_json(g, o.infinity))}};
        out << j.dump(2) << "\n";
        return kOk;
    }
    const auto flags = admissible_flags(g);
    out << "label " << label << "\n";
    out << "K = Q(sqrt(" << o.d << ")), c = " << to_string(g.c) << ", complete for periods <= " << g.n_max_used << "\n";
    out << "vertices " << g.size() << (o.infinity ? " (+ infinity)" : "") << ", cycle structure " << cycles_text(cycle_structure(g)) << "\n";
    for (std::size_t v = 0; v < g.size(); ++v)
        out << "  " << to_string(g.vertices[v]) << " -> " << to_string(g.vertices[g.succ[v]]) << "  portrait (" << g.portraits[v].first
            << "," << g.portraits[v].second << ")\n";
    out << "admissible " << (flags.admissible ? "yes" : "no") << ", strongly admissible " << (flags.strongly_admissible ? "yes" : "no")
        << "\n";
    return kOk;
}

// ---------------------------------------------------------------- survey

struct SurveyOpts {
    long d = -1;
    long height = 2;
    unsigned n_max = kDefaultNMax;
    bool json_out = false;
    unsigned threads = 0;
};

int cmd_survey(const SurveyOpts& o, std::ostream& out) {
    if (o.height < 0) throw UsageError("height must be nonnegative");
    std::vector<QuadElem> params;
    std::set<std::string> seen;
    const long hb = o.d == 1 ? 0 : o.height;
    for (long b = 1; b <= o.height; ++b)
        for (long a1 = -o.height; a1 <= o.height; ++a1)
            for (long a2 = -hb; a2 <= hb; ++a2) {
                Rational re(a1, b), im(a2, b);
                re.canonicalize();
                im.canonicalize();
                const QuadElem c(re, im, o.d);
                if (seen.insert(to_string(c)).second) params.push_back(c);
            }
    struct Row {
        std::string label, error;
        std::vector<unsigned> cycles;
        std::size_t vertices = 0;
    };
    std::vector<Row> rows(params.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next++) < params.size();) {
            try {
                const PreperGraph g = build_graph(params[k], o.d, o.n_max);
                rows[k] = {classify(g), "", cycle_structure(g), g.size()};
            } catch (const std::exception& e) {
                rows[k].error = e.what();
            }
        }
    };
    const unsigned n = o.threads ? o.threads : std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<std::future<void>> jobs;
    for (unsigned t = 0; t < n; ++t) jobs.push_back(std::async(std::launch::async, worker));
    for (auto& j : jobs) j.get();

    const auto& known = theorem_labels(o.d);
    std::map<std::string, std::size_t> histogram;
    std::vector<std::size_t> flagged;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        ++histogram[rows[k].error.empty() ? rows[k].label : "error"];
        if (!rows[k].error.empty() || (!known.empty() && !known.count(rows[k].label))) flagged.push_back(k);
    }
    if (o.json_out) {
        json table = json::array(), fl = json::array();
        for (std::size_t k = 0; k < rows.size(); ++k) {
            json r = {{"c", to_string(params[k])}, {"label", rows[k].label}, {"vertices", rows[k].vertices}, {"cycle_structure", rows[k].cycles}};
            if (!rows[k].error.empty()) r["error"] = rows[k].error;
            table.push_back(r);
        }
        for (std::size_t k : flagged) fl.push_back(to_string(params[k]));
        json j = {{"schema", "quaddyn.survey/1"}, {"d", o.d},          {"height", o.height},         {"n_max", o.n_max},
                  {"rows", table},                {"histogram", histogram}, {"flagged", fl}};
        out << j.dump(2) << "\n";
    } else {
        for (std::size_t k = 0; k < rows.size(); ++k)
            out << to_string(params[k]) << "\t" << (rows[k].error.empty() ? rows[k].label : "error: " + rows[k].error) << "\n";
        out << "histogram:";
        for (const auto& [label, count] : histogram) out << " " << label << "=" << count;
        out << "\n";
        if (!flagged.empty()) {
            out << "FLAGGED (outside the known list for this field):";
            for (std::size_t k : flagged) out << " " << to_string(params[k]) << " [" << rows[k].label << "]";
            out << "\n";
        }
    }
    return kOk;
}

// ---------------------------------------------------------------- curve

json registry_json() {
    json a = json::array();
    for (const auto& c : curve_registry())
        a.push_back({{"name", c.name}, {"aliases", c.aliases}, {"graph", c.graph}, {"h", c.h}, {"g", c.g}, {"c_num", c.c_num},
                     {"c_den", c.c_den}, {"note", c.note}});
    return {{"schema", "quaddyn.curves/1"}, {"curves", a}};
}

struct CurveOpts {
    std::string name, action;
    std::uint64_t p = 3;
    int deg = 1;
    std::vector<std::uint64_t> primes{3, 5};
    long d = 1;
    bool json_out = false;
};

int cmd_curve(const CurveOpts& o, std::ostream& out) {
    const NamedCurve* nc = find_curve(o.name);
    if (!nc) throw UsageError("unknown curve '" + o.name + "'");
    const HypCurve C = nc->model();
    json j = {{"schema", "quaddyn.curve/1"}, {"curve", nc->name}, {"action", o.action}};
    auto need_good = [&](std::uint64_t p) {
        if (!good_reduction(C, p)) throw UsageError(nc->name + " has bad reduction at " + std::to_string(p));
    };
    std::string text;
    if (o.action == "genus") {
        j["genus"] = curve_genus(C);
        text = "genus " + std::to_string(curve_genus(C));
    } else if (o.action == "count") {
        need_good(o.p);
        const auto n = count_points_ff(C, o.p, o.deg);
        j["p"] = o.p;
        j["deg"] = o.deg;
        j["points"] = n;
        text = "#X(F_" + std::to_string(o.p) + "^" + std::to_string(o.deg) + ") = " + std::to_string(n);
    } else if (o.action == "jacobian") {
        need_good(o.p);
        if (curve_genus(C) != 2) throw UsageError("jacobian needs a genus-2 curve");
        const JacobianOrders J = jacobian_orders(C, o.p);
        j["p"] = o.p;
        j["n1"] = J.n1;
        j["n2"] = J.n2;
        j["s1"] = J.s1;
        j["s2"] = J.s2;
        j["jacobian_order_p"] = J.jp.get_str();
        j["jacobian_order_p2"] = J.jp2.get_str();
        text = "#J(F_" + std::to_string(o.p) + ") = " + J.jp.get_str() + ", #J(F_" + std::to_string(o.p) + "^2) = " + J.jp2.get_str();
    } else if (o.action == "torsion-bound") {
        for (auto p : o.primes) need_good(p);
        const Integer b = torsion_bound(C, o.primes, o.deg == 1 ? 2 : o.deg);
        j["primes"] = o.primes;
        j["bound"] = b.get_str();
        text = "torsion bound " + b.get_str();
    } else if (o.action == "structure") {
        need_good(o.p);
        if (curve_genus(C) != 1) throw UsageError("structure needs a genus-1 curve");
        const auto [n1, n2] = elliptic_group_structure(C, o.p, o.deg);
        j["p"] = o.p;
        j["deg"] = o.deg;
        j["invariants"] = {n1, n2};
        text = "Z/" + std::to_string(n1) + " x Z/" + std::to_string(n2);
    } else if (o.action == "two-torsion") {
        const TwoTorsion t = weierstrass_and_2torsion(C, o.d);
        json w = json::array();
        for (const auto& P : t.weierstrass) w.push_back(to_string(P));
        j["d"] = o.d;
        j["weierstrass"] = w;
        j["two_torsion_classes"] = t.classes.size();
        text = std::to_string(t.classes.size()) + " two-torsion classes over Q(sqrt(" + std::to_string(o.d) + "))";
    } else {
        throw UsageError("unknown action '" + o.action + "'");
    }
    if (o.json_out) out << j.dump(2) << "\n";
    else out << nc->name << ": " << text << "\n";
    return kOk;
}

// ---------------------------------------------------------------- chabauty

struct ChabautyOpts {
    int prec = 5;
    std::string disk;
    bool json_out = false;
    bool transcript = false;
    std::string pinned;
};

json certificate_json(const chabauty::DiskCertificate& d) {
    json classes = json::array();
    for (const auto& c : d.classes)
        classes.push_back({{"class", {c.t, c.u}},
                           {"representative", {c.rep_t, c.rep_u}},
                           {"jacobian", c.jacobian},
                           {"det_valuation", c.det_valuation},
                           {"value_valuation", c.value_valuation},
                           {"margin", c.margin},
                           {"certified", c.certified}});
    return {{"disk", chabauty::disk_centers()[static_cast<std::size_t>(d.disk)].name},
            {"prec", d.prec},
            {"class_bits", d.class_bits},
            {"solutions", d.solutions.size()},
            {"classes", classes},
            {"certified", d.certified},
            {"count", d.count}};
}

// Mismatches between a report and the pinned values.
std::vector<std::string> pinned_mismatches(const chabauty::Report& r, const json& pin, bool full) {
    using namespace chabauty;
    std::vector<std::string> bad;
    const auto omega = pin.at("omega1");
    const Differentials w = expand_differentials(0, std::max<int>(r.precision.degree, static_cast<int>(omega.size())));
    for (std::size_t k = 0; k < omega.size(); ++k)
        if (w.omega1[static_cast<int>(k)] != Rational(omega[k].get<std::string>()))
            bad.push_back("omega1 coefficient " + std::to_string(k));
    const int lb = pin.at("lambda_bits").get<int>();
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t l = 0; l < 2; ++l) {
            const auto& want = pin.at("lambda_values")[j][l];
            const GaussAdic got = r.lambda_values[j][l].reduced(lb);
            if (got.re() != want[0].get<std::uint64_t>() || got.im() != want[1].get<std::uint64_t>())
                bad.push_back("Lambda" + std::to_string(l + 1) + "(E" + std::to_string(j + 1) + ") = " + got.to_string());
        }
    const int ab = pin.at("annihilator_bits").get<int>();
    std::vector<Coeffs> want_ann;
    for (const auto& v : pin.at("annihilators")) want_ann.push_back(v.get<Coeffs>());
    if (r.annihilators.prec < ab || !same_span(r.annihilators.basis, want_ann, ab)) bad.push_back("annihilator span");
    for (const auto& d : r.disks) {
        if (d.disk != 0) continue;
        const auto& p0 = pin.at("disk_P0");
        std::set<std::pair<std::uint64_t, std::uint64_t>> want, got;
        for (const auto& c : p0.at("classes")) want.insert({c[0].get<std::uint64_t>(), c[1].get<std::uint64_t>()});
        const std::uint64_t m = (1ull << p0.at("class_bits").get<int>()) - 1;
        for (const auto& c : d.classes) {
            got.insert({c.t & m, c.u & m});
            if (c.det_valuation != p0.at("det_valuation").get<int>()) bad.push_back("disk P0 det valuation");
        }
        if (got != want) bad.push_back("disk P0 classes");
    }
    if (full) {
        std::set<std::string> want, got;
        for (const auto& s : pin.at("points")) want.insert(s.get<std::string>());
        for (const auto& P : r.verdict.points_on_x05) got.insert(to_string(P));
        if (got != want) bad.push_back("verdict points");
    }
    return bad;
}

int cmd_chabauty(const ChabautyOpts& o, std::ostream& out) {
    using namespace chabauty;
    if (o.prec < 5 || o.prec > 16) throw UsageError("--prec must lie in 5..16");
    Precision P;
    P.lambda_bits = o.prec + 1;
    P.degree = std::max(32, required_degree(P.lambda_bits));
    P.max_bits = std::max(8, o.prec + 2);
    std::optional<int> only;
    if (!o.disk.empty()) {
        only = disk_index(o.disk);
        if (!only) throw UsageError("unknown disk '" + o.disk + "' (P0..P5)");
    }
    const Report r = run_pipeline(P, only, std::max(8, o.prec));
    const json pin = load_json(o.pinned.empty() ? default_data_dir() + "/chabauty_pinned.json" : o.pinned);
    const auto bad = pinned_mismatches(r, pin, !only);
    bool certified = only ? std::all_of(r.disks.begin(), r.disks.end(), [](const DiskCertificate& d) { return d.certified; })
                          : r.verdict.certified;
    if (o.json_out) {
        json lam = json::array();
        for (const auto& row : r.lambda_values) lam.push_back({row[0].to_string(), row[1].to_string()});
        json disks = json::array(), failed = json::array(), newton = json::array(), points = json::array();
        for (const auto& d : r.disks) disks.push_back(certificate_json(d));
        for (const auto& d : r.failed_attempts) failed.push_back(certificate_json(d));
        for (const auto& n : r.newton)
            newton.push_back({{"prec", n.prec},
                              {"start", {n.start_t, n.start_u}},
                              {"root", {n.root_t, n.root_u}},
                              {"steps", n.steps},
                              {"converged", n.converged},
                              {"agreement_bits", n.agreement_bits}});
        for (const auto& p : r.verdict.points_on_x05) points.push_back(to_string(p));
        json j = {{"schema", "quaddyn.chabauty/1"},
                  {"precision",
                   {{"degree", P.degree}, {"lambda_bits", P.lambda_bits}, {"class_bits", P.class_bits}, {"max_bits", P.max_bits}}},
                  {"lambda_values", lam},
                  {"annihilators", {{"bits", r.annihilators.prec}, {"basis", r.annihilators.basis}}},
                  {"disks", disks},
                  {"failed_attempts", failed},
                  {"partner_series_match", r.partner_series_match},
                  {"newton", newton},
                  {"verdict",
                   {{"certified", r.verdict.certified}, {"points", points}, {"inferences", r.verdict.inferences}}},
                  {"pinned_mismatches", bad}};
        out << j.dump(2) << "\n";
    } else {
        if (o.transcript)
            for (const auto& line : transcript(r)) out << line << "\n";
        for (const auto& d : r.disks)
            out << "disk " << disk_centers()[static_cast<std::size_t>(d.disk)].name << ": "
                << (d.certified ? "certified, " + std::to_string(d.count) + " root(s)" : "NOT certified") << " (mod 2^" << d.prec
                << ", classes mod 2^" << d.class_bits << ")\n";
        if (!only) {
            out << "verdict: " << (r.verdict.certified ? std::to_string(r.verdict.points_on_x05.size()) + " points" : "not certified");
            if (r.verdict.certified) {
                out << " {";
                for (std::size_t k = 0; k < r.verdict.points_on_x05.size(); ++k)
                    out << (k ? ", " : "") << to_string(r.verdict.points_on_x05[k]);
                out << "}";
            }
            out << "\n";
        }
        if (bad.empty()) out << "pinned values: all matched\n";
        for (const auto& b : bad) out << "MISMATCH " << b << "\n";
    }
    return certified && bad.empty() ? kOk : kMismatch;
}

// ---------------------------------------------------------------- dynatomic

struct DynOpts {
    unsigned n = 1, m = 0;
    std::string c;
    long d = 1;
    unsigned verify = 0;
    bool json_out = false;
};

std::string symbolic_text(const SymPoly& p) {
    std::string s;
    for (int k = p.degree(); k >= 0; --k) {
        const CPoly& a = p.coeff(static_cast<std::size_t>(k));
        if (a.is_zero()) continue;
        std::string coeff = to_string(a, "c");
        const bool simple = std::count_if(a.coeffs().begin(), a.coeffs().end(), [](const Rational& q) { return q != 0; }) == 1;
        if (!s.empty()) s += " + ";
        if (k == 0) s += simple ? coeff : "(" + coeff + ")";
        else {
            if (!(a.degree() == 0 && a.coeff(0) == 1)) s += (simple ? coeff : "(" + coeff + ")") + "*";
            s += k == 1 ? "x" : "x^" + std::to_string(k);
        }
    }
    return s.empty() ? "0" : s;
}

int cmd_dynatomic(const DynOpts& o, std::ostream& out) {
    json j = {{"schema", "quaddyn.dynatomic/1"}};
    bool ok = true;
    if (o.verify) {
        json checks = json::array();
        for (const auto& c : verify_factorizations(o.verify, std::min(3u, o.verify), 4)) {
            checks.push_back({{"identity", c.name}, {"ok", c.ok}, {"degree", c.degree}});
            ok = ok && c.ok;
            if (!o.json_out) out << (c.ok ? "ok   " : "FAIL ") << c.name << " (degree " << c.degree << ")\n";
        }
        j["checks"] = checks;
    } else {
        if (o.n == 0) throw UsageError("--n must be positive");
        if (o.n > 8 || o.m > 4) throw UsageError("--n <= 8 and --m <= 4");
        const auto [dn, rn] = dn_rn(o.n);
        j["N"] = o.n;
        j["M"] = o.m;
        j["d_N"] = dn;
        j["r_N"] = rn;
        std::string text;
        if (o.c.empty()) {
            text = symbolic_text(gen_dynatomic(o.m, o.n, symbolic_c()));
        } else {
            const QuadElem c = parse_parameter(o.c, o.d);
            j["c"] = to_string(c);
            j["d"] = o.d;
            text = to_string(gen_dynatomic(o.m, o.n, c));
        }
        j["polynomial"] = text;
        if (!o.json_out) out << text << "\n";
    }
    if (o.json_out) out << j.dump(2) << "\n";
    return ok ? kOk : kMismatch;
}

}  // namespace

std::string default_data_dir() {
    if (const char* env = std::getenv("QUADDYN_DATA")) return env;
    return QD_DATA_DIR;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"quaddyn: preperiodic graphs of z^2 + c over quadratic fields, genus-2 tools, and the X_0(5) certificate"};
    app.require_subcommand(1);
    std::string isa;
    app.add_option("--isa", isa, "force the kernel variant (scalar, avx2, neon)");

    GraphOpts g;
    auto* graph = app.add_subcommand("graph", "build and classify G(f_c, K)");
    graph->add_option("--d", g.d, "K = Q(sqrt(d))");
    graph->add_option("--c", g.c, "parameter, e.g. -1/4 + 3/8*i")->required();
    graph->add_option("--nmax", g.n_max, "largest period searched");
    graph->add_option("--format", g.format)->check(CLI::IsMember({"text", "json", "dot"}));
    graph->add_flag("--json", [&](std::int64_t) { g.format = "json"; });
    graph->add_flag("--infinity", g.infinity, "include the fixed point at infinity");
    graph->add_option("--catalog", g.catalog, "catalog file overriding the built-in one");

    SurveyOpts s;
    auto* survey = app.add_subcommand("survey", "classify every c of bounded height");
    survey->add_option("--d", s.d);
    survey->add_option("--height", s.height);
    survey->add_option("--nmax", s.n_max);
    survey->add_option("--threads", s.threads);
    survey->add_flag("--json", s.json_out);

    CurveOpts cv;
    bool list_curves = false;
    auto* curve = app.add_subcommand("curve", "genus, point counts, Jacobian orders, torsion bounds");
    curve->add_option("name", cv.name);
    curve->add_option("action", cv.action, "genus | count | jacobian | torsion-bound | structure | two-torsion");
    curve->add_option("--p", cv.p);
    curve->add_option("--deg", cv.deg);
    curve->add_option("--primes", cv.primes)->delimiter(',');
    curve->add_option("--d", cv.d);
    curve->add_flag("--json", cv.json_out);
    curve->add_flag("--list", list_curves);

    ChabautyOpts ch;
    auto* chab = app.add_subcommand("chabauty", "2-adic certificate that X_0(5)(Q(i)) = X_0(5)(Q)");
    chab->add_option("--prec", ch.prec, "annihilator and disk precision in bits (default 5)");
    chab->add_option("--disk", ch.disk, "certify one disk, P0..P5");
    chab->add_flag("--json", ch.json_out);
    chab->add_flag("--transcript", ch.transcript);
    chab->add_option("--pinned", ch.pinned, "reference values to compare against");

    DynOpts dy;
    auto* dyn = app.add_subcommand("dynatomic", "Phi_N and Phi_{M,N}, symbolic in c or specialized");
    dyn->add_option("--n", dy.n);
    dyn->add_option("--m", dy.m);
    dyn->add_option("--c", dy.c);
    dyn->add_option("--d", dy.d);
    dyn->add_option("--verify", dy.verify, "check the factorization identities up to this N");
    dyn->add_flag("--json", dy.json_out);

    auto* registry = app.add_subcommand("registry", "the curve registry as JSON");
    auto* catalog = app.add_subcommand("catalog", "the graph catalog as JSON");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    try {
        if (!isa.empty()) {
            auto which = simd::parse_isa(isa);
            if (!which || !simd::isa_supported(*which)) throw UsageError("instruction set not available: " + isa);
            simd::set_isa_override(which);
        }
        if (*graph) return cmd_graph(g, out);
        if (*survey) return cmd_survey(s, out);
        if (*curve) {
            if (list_curves) {
                for (const auto& c : curve_registry()) out << c.name << "\t" << c.note << "\n";
                return kOk;
            }
            if (cv.name.empty() || cv.action.empty()) throw UsageError("curve needs a name and an action");
            return cmd_curve(cv, out);
        }
        if (*chab) return cmd_chabauty(ch, out);
        if (*dyn) return cmd_dynatomic(dy, out);
        if (*registry) {
            out << registry_json().dump(2) << "\n";
            return kOk;
        }
        if (*catalog) {
            out << catalog_json().dump(2) << "\n";
            return kOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace qd::cli
