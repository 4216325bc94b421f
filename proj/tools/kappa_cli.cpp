// kappa-verify: runs one verification scenario and writes a JSON report.
//
// Exit codes: 0 when every check passes, 1 when a check fails, 2 on a
// configuration error.
#include "kappa/classify.hpp"
#include "kappa/parallel.hpp"
#include "kappa/rmatrix.hpp"
#include "kappa/spacetime.hpp"
#include "kappa/suite.hpp"
#include "kappa/twist.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace kappa;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "kappa-report/1";
constexpr const char* kEngine = "kappa-verify 0.1.0";

const std::vector<std::string> kCommands{"verify-hopf", "verify-reality", "schouten", "cocycle", "twist-coproduct",
                                         "star-algebra", "classify", "table1", "dsr", "limit", "catalog"};
const std::vector<std::string> kTable1Rows{"L1", "L2", "S1", "S2", "S3", "T1", "T3", "T3-", "T4", "T4-"};

struct Scenario {
    std::string command;
    std::string flavor = "covariant_hadic";
    int D = 4;
    std::string metric = "lorentz";
    std::string tau;  // comma separated; empty picks a default for the flavor
    int order_h = 3;
    int order_xi = 3;
    bool orders_given = false;
    std::string twist;
    std::string row;
    std::string structure;  // file holding a serialized LieSC
    std::string corrupt;    // "A,B": flip the relation between generators A and B
    std::string out;
    std::string suite;
};

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Parses JSON text, turning parse errors into line/column diagnostics.
json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        size_t line = 1, col = 1;
        for (size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
    }
}

template <class T>
void field(const json& j, const char* key, T& out, const std::string& origin) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(origin + ": field '" + key + "' has the wrong type");
    }
}

void apply_config(Scenario& s, const std::string& path) {
    json j = parse_json(read_file(path), path);
    if (!j.is_object()) throw ConfigError(path + ": top level must be an object");
    static const std::vector<std::string> known{"command", "flavor", "D", "metric", "tau", "order_h", "order_xi",
                                                "twist", "row", "structure", "corrupt", "out", "suite"};
    for (auto& [k, v] : j.items())
        if (!contains(known, k)) throw ConfigError(path + ": unknown field '" + k + "'");
    field(j, "command", s.command, path);
    field(j, "flavor", s.flavor, path);
    field(j, "D", s.D, path);
    if (j.contains("metric")) {
        if (j["metric"].is_string()) s.metric = j["metric"].get<std::string>();
        else s.metric = j["metric"].dump();  // inline matrix
    }
    if (j.contains("tau")) {
        if (j["tau"].is_array()) {
            std::string t;
            for (auto& x : j["tau"]) t += (t.empty() ? "" : ",") + (x.is_string() ? x.get<std::string>() : x.dump());
            s.tau = t;
        } else {
            field(j, "tau", s.tau, path);
        }
    }
    if (j.contains("order_h") || j.contains("order_xi")) s.orders_given = true;
    field(j, "order_h", s.order_h, path);
    field(j, "order_xi", s.order_xi, path);
    field(j, "twist", s.twist, path);
    field(j, "row", s.row, path);
    field(j, "structure", s.structure, path);
    field(j, "corrupt", s.corrupt, path);
    field(j, "out", s.out, path);
    field(j, "suite", s.suite, path);
}

Q json_rational(const json& x, const std::string& origin) {
    if (x.is_string()) return parse_rational(x.get<std::string>());
    if (x.is_number_integer()) return Q(x.get<long>());
    throw ConfigError(origin + ": metric entries must be integers or rational strings");
}

MetricData load_metric(const Scenario& s) {
    std::string text;
    std::string origin = "metric";
    if (!s.metric.empty() && (s.metric[0] == '[' || s.metric[0] == '{')) {
        text = s.metric;
    } else if (std::filesystem::exists(s.metric)) {
        text = read_file(s.metric);
        origin = s.metric;
    } else {
        return MetricData::preset(s.metric, s.D);
    }
    json j = parse_json(text, origin);
    if (j.is_object()) {
        if (!j.contains("g")) throw ConfigError(origin + ": expected field 'g'");
        j = j["g"];
    }
    if (!j.is_array() || (int)j.size() != s.D) throw ConfigError(origin + ": expected a " + std::to_string(s.D) + "x" + std::to_string(s.D) + " matrix");
    QMatrix g(s.D, std::vector<Q>(s.D));
    for (int a = 0; a < s.D; ++a) {
        if (!j[a].is_array() || (int)j[a].size() != s.D) throw ConfigError(origin + ": row " + std::to_string(a) + " has the wrong length");
        for (int b = 0; b < s.D; ++b) g[a][b] = json_rational(j[a][b], origin);
    }
    return MetricData::from_matrix(g);
}

std::vector<Q> parse_tau(const Scenario& s, Flavor f) {
    std::vector<Q> tau(s.D);
    if (s.tau.empty()) {
        tau[0] = 1;
        if ((f == Flavor::null_plane || f == Flavor::qanalog_lightlike) && s.metric != "null") tau[s.D - 1] = 1;
        return tau;
    }
    std::vector<Q> v;
    std::stringstream ss(s.tau);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(parse_rational(item));
    if ((int)v.size() != s.D) throw ConfigError("tau: expected " + std::to_string(s.D) + " components, got " + std::to_string(v.size()));
    return v;
}

ModelConfig model_config(const Scenario& s) {
    ModelConfig c;
    c.flavor = parse_flavor(s.flavor);
    c.metric = load_metric(s);
    c.tau = parse_tau(s, c.flavor);
    c.trunc = {s.order_h, s.order_xi};
    return c;
}

Trunc trunc_of(const Scenario& s) { return {s.order_h, s.order_xi}; }

std::string require_twist(const Scenario& s) {
    std::string l = s.twist.empty() ? s.row : s.twist;
    if (l.empty()) throw ConfigError(s.command + " needs --twist");
    std::string base = l.back() == '-' || l.back() == '+' ? l.substr(0, l.size() - 1) : l;
    if (!contains(twist_labels(), base)) throw ConfigError("unknown twist label '" + l + "'");
    return l;
}

json report_json(const Report& r, const std::string& tag) {
    json checks = json::array();
    for (auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"status", c.ok ? "pass" : "fail"}, {"terms", c.terms}, {"residual", c.detail}, {"tag", tag}});
    return {{"title", r.title}, {"status", r.ok() ? "pass" : "fail"}, {"checks", checks}, {"notes", r.notes}};
}

Report from_residuals(const std::string& title, const std::vector<Residual>& rs) {
    Report r;
    r.title = title;
    r.checks = rs;
    return r;
}

struct Outcome {
    std::vector<std::pair<Report, std::string>> reports;  // report and its tag
    json data = json::object();

    void add(Report r, const std::string& tag) { reports.emplace_back(std::move(r), tag); }
    bool ok() const {
        for (auto& [r, t] : reports)
            if (!r.ok()) return false;
        return true;
    }
};

// A copy of p with the relation between generators a and b broken.
std::shared_ptr<Presentation> corrupted(const PresPtr& p, const std::string& spec) {
    auto comma = spec.find(',');
    if (comma == std::string::npos) throw ConfigError("corrupt: expected 'A,B'");
    int a = p->index(spec.substr(0, comma)), b = p->index(spec.substr(comma + 1));
    if (a == b) throw ConfigError("corrupt: generators must differ");
    if (a > b) std::swap(a, b);
    auto q = std::make_shared<Presentation>(p->generators(), p->trunc());
    Poly flipped;
    for (auto& [key, rhs] : p->rules()) {
        Poly comm = rhs;
        poly_add(comm, Word{(char)key.second, (char)key.first}, Scalar(-1));
        poly_prune(comm);
        if (key == std::make_pair(b, a)) {
            for (auto& [w, c] : comm) poly_add(flipped, w, -c);
            continue;
        }
        q->set_swap(key.first, key.second, comm);
    }
    if (flipped.empty()) poly_add(flipped, Word(1, (char)a), Scalar(1));  // commuting pair: [b, a] = a
    q->set_swap(b, a, flipped);
    return q;
}

Outcome verify_hopf(const Scenario& s) {
    Outcome o;
    KappaModel km = build_kappa_hopf(model_config(s));
    HopfData H = km.hopf;
    PresPtr p = km.pres;
    if (!s.corrupt.empty()) {
        PresPtr bad = corrupted(km.pres, s.corrupt);
        H = map_hopf_coefficients(km.hopf, bad, [](const Scalar& x) { return x; });
        p = bad;
    }
    o.add(from_residuals("confluence", presentation_check(p)), s.command);
    Report ax = verify_axioms(H);
    ax.title = "Hopf axioms";
    o.add(ax, s.command);
    if (s.corrupt.empty()) {
        Report c = casimir_check(km);
        c.title = "Casimirs";
        o.add(c, s.command);
        if (km.flavor == Flavor::orthog_1_plus) o.add(compare_hopf(km.hopf, orthog_display_hopf(km)), s.command);
        if (km.flavor == Flavor::null_plane) o.add(compare_hopf(km.hopf, null_plane_display_hopf(km)), s.command);
    }
    json gens = json::array();
    for (auto& g : p->generators()) gens.push_back(g.name);
    o.data["generators"] = gens;
    o.data["truncation"] = p->trunc().is_exact() ? "exact" : "h^" + std::to_string(p->trunc().h) + ", xi^" + std::to_string(p->trunc().xi);
    return o;
}

bool hadic(Flavor f) { return f == Flavor::covariant_hadic || f == Flavor::orthog_1_plus || f == Flavor::null_plane; }

Outcome verify_reality_cmd(const Scenario& s) {
    Outcome o;
    KappaModel km = build_kappa_hopf(model_config(s));
    Report r = verify_reality(km.hopf, km.star, &km.cas.Pi, &km.cas.PiInv, s.D);
    r.title = "reality of the structure maps";
    o.add(r, s.command);
    if (hadic(km.flavor)) {
        ModuleAction act(km.hopf, km, CoordinateAlgebra::for_model(km));
        Report m = module_reality_check(act, km.star);
        m.title = "module reality";
        o.add(m, s.command);
    }
    return o;
}

Outcome schouten_cmd(const Scenario& s) {
    Outcome o;
    ModelConfig c = model_config(s);
    std::vector<std::string> labels = s.metric == "null" ? null_labels(s.D) : numeric_labels(s.D);
    auto ctx = IsoContext::make(c.metric, labels);
    Q t2 = TauVector::make(c.metric, c.tau).tau2;
    WedgeTensor r = build_r(ctx, c.tau);
    WedgeTensor S = schouten(ctx.lie, r);
    WedgeTensor d = S - omega(ctx) * Scalar(GaussRat(-t2));
    Report rep;
    rep.title = "Schouten bracket";
    rep.add("[[r,r]] = -tau^2 Omega", d.is_zero(), d.terms().size(), d.is_zero() ? "" : d.str(ctx.lie));
    auto y = ybe_classify(ctx, r);
    YbeKind want = sgn(t2) == 0 ? YbeKind::CYBE : YbeKind::MYBE;
    rep.add("Yang-Baxter type " + ybe_kind_name(want), y.kind == want, 0, ybe_kind_name(y.kind));
    o.add(rep, s.command);
    o.data["tau2"] = rational_str(t2);
    o.data["r"] = r.str(ctx.lie);
    o.data["ybe"] = ybe_kind_name(y.kind);
    return o;
}

Outcome cocycle_cmd(const Scenario& s) {
    Outcome o;
    std::string label = require_twist(s);
    auto st = twist_setup(label, trunc_of(s));
    o.add(cocycle_check(st.F, st.base), s.command);
    if (label == "LC") {
        o.add(factor_order_check(st.model), s.command);
        HopfData lc = twist_hopf(st.base, st.F);
        Report ri = check_rmatrix_intertwiner(lc, st.model.hopf, universal_r(st.F));
        ri.title = "R intertwines Delta_LC with Delta_tau";
        o.add(ri, s.command);
    }
    o.data["base"] = st.base_name;
    o.data["factors"] = st.F.factors().size();
    return o;
}

Outcome twist_coproduct_cmd(const Scenario& s) {
    Outcome o;
    std::string label = require_twist(s);
    auto st = twist_setup(label, trunc_of(s));
    o.add(cocycle_check(st.F, st.base), s.command);
    HopfData H = twist_hopf(st.base, st.F);
    json cop = json::object();
    for (int g = 0; g < st.model.pres->size(); ++g) cop[st.model.pres->generators()[g].name] = H.delta_gen(g).str();
    o.data["base"] = st.base_name;
    o.data["coproducts"] = cop;
    if (label == "L1" || label == "T1" || label == "L2") {
        std::vector<DisplayLine> lines;
        o.add(twisted_display_check(label, trunc_of(s), &lines), s.command);
        json shown = json::array();
        for (auto& l : lines)
            shown.push_back({{"generator", l.generator}, {"reading", l.reading}, {"asserted", l.strict},
                             {"agrees", l.matches()}, {"engine", l.engine.str()}, {"shown", l.shown.str()}});
        o.data["displayed"] = shown;
    }
    return o;
}

json star_json(const StarAlgebra& sa) {
    json br = json::array();
    std::stringstream ss(sa.sc.str());
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) br.push_back(line);
    return br;
}

Outcome star_algebra_cmd(const Scenario& s) {
    Outcome o;
    std::string label = require_twist(s);
    StarAlgebra sa = row_star_algebra(twist_setup(label, trunc_of(s)));
    sa.report.title = "star commutators of " + label;
    o.add(sa.report, s.command);
    o.data["brackets"] = star_json(sa);
    o.data["structure"] = sa.sc.serialize();
    return o;
}

json label_json(const ClassLabel& c) {
    json params = json::object();
    for (auto& [n, v] : c.params) params[n] = v.str();
    json aliases = json::array();
    for (auto& a : c.aliases) aliases.push_back(label_json(a));
    return {{"class", c.name},       {"params", params},          {"field", c.complex_field ? "C" : "R"},
            {"verified", c.verified}, {"certificate", rmat_str(c.certificate)}, {"invariants", c.invariants},
            {"aliases", aliases}};
}

Outcome classify_cmd(const Scenario& s) {
    Outcome o;
    LieSC L;
    if (!s.structure.empty()) {
        L = LieSC::parse(read_file(s.structure));
    } else {
        std::string label = require_twist(s);
        Trunc t = s.orders_given ? trunc_of(s) : Trunc{2, 2};
        L = row_star_algebra(twist_setup(label, t)).sc;
    }
    ClassLabel c = classify(L);
    Report r;
    r.title = "classification";
    r.add("belongs to the class list", c.name != "unclassified", 0, c.str());
    if (c.name != "unclassified") r.merge(verify_certificate(L, c), "certificate");
    o.add(r, s.command);
    o.data["label"] = label_json(c);
    return o;
}

Outcome table1_cmd(const Scenario& s) {
    Outcome o;
    if (!s.row.empty() && !contains(kTable1Rows, s.row)) throw ConfigError("unknown Table 1 row '" + s.row + "'");
    std::vector<Table1Row> rows;
    Trunc t = s.orders_given ? trunc_of(s) : Trunc{2, 2};
    Report all = table1_verify(&rows, t);
    Report r;
    r.title = all.title;
    r.notes = all.notes;
    for (auto& c : all.checks) {
        std::string row = c.name.substr(0, c.name.find(' '));
        if (s.row.empty() || row == s.row) r.checks.push_back(c);
    }
    o.add(r, s.command);
    json out = json::array();
    for (auto& x : rows)
        if (s.row.empty() || x.row == s.row)
            out.push_back({{"row", x.row}, {"expected", x.expected}, {"agrees", x.ok}, {"label", label_json(x.got)}});
    o.data["rows"] = out;
    return o;
}

Outcome dsr_cmd(const Scenario& s) {
    Outcome o;
    KappaModel km = build_kappa_hopf(model_config(s));
    if (!hadic(km.flavor)) throw ConfigError("dsr needs an h-adic flavor");
    ModuleAction act(km.hopf, km, CoordinateAlgebra::for_model(km));
    CrossedProduct cp = crossed_product(act, km);
    cp.report.title = "cross relations";
    o.add(cp.report, s.command);
    o.add(from_residuals("crossed product confluence", presentation_check(cp.pres)), s.command);
    json rel = json::array();
    const auto& gens = cp.pres->generators();
    for (auto& [key, rhs] : cp.pres->rules()) {
        const Generator &b = gens[key.first], &a = gens[key.second];
        if ((a.kind == GenKind::X) == (b.kind == GenKind::X)) continue;
        rel.push_back(b.name + " " + a.name + " = " + AlgElement(cp.pres, rhs, true).str());
    }
    o.data["cross_relations"] = rel;
    return o;
}

Outcome limit_cmd(const Scenario& s) {
    Outcome o;
    if (!s.twist.empty() || !s.row.empty()) {
        std::vector<DisplayLine> lines;
        o.add(twisted_limit_check(require_twist(s), trunc_of(s), &lines), s.command);
        json shown = json::array();
        for (auto& l : lines)
            shown.push_back({{"generator", l.generator}, {"agrees", l.matches()}, {"limit", l.engine.str()}, {"substituted", l.shown.str()}});
        if (!lines.empty()) o.data["substitution"] = shown;
        return o;
    }
    KappaModel km = build_kappa_hopf(model_config(s));
    if (!hadic(km.flavor)) throw ConfigError("limit needs an h-adic flavor or a twist");
    HopfData U = undeformed_hopf(km.pres);
    Report r;
    r.title = "classical limit";
    for (int g = 0; g < km.pres->size(); ++g) {
        const std::string& n = km.pres->generators()[g].name;
        TensorElement d = classical_limit(km.hopf.delta_gen(g)) - U.delta_gen(g);
        r.add("Delta(" + n + ") -> primitive", d.is_zero(), d.size(), residual_summary(d));
        AlgElement a = classical_limit(km.hopf.antipode_gen(g)) - U.antipode_gen(g);
        r.add("S(" + n + ") -> -" + n, a.is_zero(), a.size(), residual_summary(a));
    }
    o.add(r, s.command);
    return o;
}

Outcome catalog_cmd() {
    Outcome o;
    json flavors = json::array();
    for (auto f : {Flavor::covariant_hadic, Flavor::orthog_1_plus, Flavor::null_plane, Flavor::qanalog_timelike,
                   Flavor::qanalog_lightlike})
        flavors.push_back(flavor_name(f));
    o.data["commands"] = kCommands;
    o.data["flavors"] = flavors;
    o.data["twists"] = twist_labels();
    o.data["classes"] = class_names();
    o.data["metric_presets"] = {"lorentz", "euclid", "split", "null"};
    o.data["table1_rows"] = kTable1Rows;
    return o;
}

Outcome suite_cmd(const Scenario& s) {
    if (s.suite != "paper") throw ConfigError("unknown suite '" + s.suite + "'");
    Outcome o;
    SuiteOptions opt;
    opt.trunc = trunc_of(s);
    json timing = json::array();
    for (auto& c : acceptance_suite()) {
        auto t0 = std::chrono::steady_clock::now();
        Report r;
        try {
            r = c.run(opt);
        } catch (const AlgebraError& e) {
            r.add("completed", false, 0, e.what());
        }
        r.title = std::to_string(c.id) + ". " + c.title;
        o.add(r, "criterion " + std::to_string(c.id));
        timing.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    o.data["criterion_seconds"] = timing;
    return o;
}

Outcome run(const Scenario& s) {
    if (!s.suite.empty()) return suite_cmd(s);
    if (s.command.empty()) throw ConfigError("no command given; see --help");
    if (!contains(kCommands, s.command)) throw ConfigError("unknown command '" + s.command + "'");
    if (s.order_h < 1 || s.order_xi < 1) throw ConfigError("orders must be at least 1");
    if (s.D < 2) throw ConfigError("D must be at least 2");
    if (s.command == "verify-hopf") return verify_hopf(s);
    if (s.command == "verify-reality") return verify_reality_cmd(s);
    if (s.command == "schouten") return schouten_cmd(s);
    if (s.command == "cocycle") return cocycle_cmd(s);
    if (s.command == "twist-coproduct") return twist_coproduct_cmd(s);
    if (s.command == "star-algebra") return star_algebra_cmd(s);
    if (s.command == "classify") return classify_cmd(s);
    if (s.command == "table1") return table1_cmd(s);
    if (s.command == "dsr") return dsr_cmd(s);
    if (s.command == "limit") return limit_cmd(s);
    return catalog_cmd();
}

json scenario_json(const Scenario& s) {
    json j = {{"command", s.suite.empty() ? s.command : "suite"}};
    if (!s.suite.empty()) j["suite"] = s.suite;
    j["flavor"] = s.flavor;
    j["D"] = s.D;
    j["metric"] = s.metric;
    j["tau"] = s.tau;
    j["order_h"] = s.order_h;
    j["order_xi"] = s.order_xi;
    if (!s.twist.empty()) j["twist"] = s.twist;
    if (!s.row.empty()) j["row"] = s.row;
    if (!s.structure.empty()) j["structure"] = s.structure;
    if (!s.corrupt.empty()) j["corrupt"] = s.corrupt;
    return j;
}

void emit(const json& doc, const std::string& out) {
    std::string text = doc.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw ConfigError("cannot write " + out);
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of kappa-deformed inhomogeneous orthogonal Hopf algebras"};
    Scenario s;
    std::string config, signature;
    app.add_option("command", s.command, "verify-hopf, verify-reality, schouten, cocycle, twist-coproduct, "
                                         "star-algebra, classify, table1, dsr, limit, catalog");
    app.add_option("--config", config, "JSON scenario file; flags given on the command line override it");
    app.add_option("--flavor", s.flavor, "model flavor (see catalog)");
    app.add_option("--D", s.D, "spacetime dimension");
    app.add_option("--metric", s.metric, "metric preset or JSON file with a matrix");
    app.add_option("--signature", signature, "alias of --metric for presets");
    app.add_option("--tau", s.tau, "tau components, comma separated rationals");
    auto* oh = app.add_option("--order-h", s.order_h, "truncation order in 1/kappa");
    auto* ox = app.add_option("--order-xi", s.order_xi, "truncation order in xi");
    app.add_option("--twist", s.twist, "twist label (see catalog)");
    app.add_option("--row", s.row, "Table 1 row");
    app.add_option("--structure", s.structure, "file with serialized structure constants (classify)");
    app.add_option("--corrupt", s.corrupt, "break the relation between two generators, 'A,B' (verify-hopf)");
    app.add_option("--out", s.out, "write the JSON report here instead of stdout");
    app.add_option("--suite", s.suite, "run a scenario bundle ('paper')");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (!config.empty()) {
            // command-line values win: parse the config into a copy, then re-apply the flags
            Scenario from_file;
            apply_config(from_file, config);
            Scenario flags = s;
            s = from_file;
            for (auto* opt : app.get_options()) {
                if (opt->count() == 0) continue;
                const std::string& n = opt->get_name();
                if (n == "command") s.command = flags.command;
                else if (n == "--flavor") s.flavor = flags.flavor;
                else if (n == "--D") s.D = flags.D;
                else if (n == "--metric") s.metric = flags.metric;
                else if (n == "--tau") s.tau = flags.tau;
                else if (n == "--order-h") s.order_h = flags.order_h;
                else if (n == "--order-xi") s.order_xi = flags.order_xi;
                else if (n == "--twist") s.twist = flags.twist;
                else if (n == "--row") s.row = flags.row;
                else if (n == "--structure") s.structure = flags.structure;
                else if (n == "--corrupt") s.corrupt = flags.corrupt;
                else if (n == "--out") s.out = flags.out;
                else if (n == "--suite") s.suite = flags.suite;
            }
        }
        if (!signature.empty()) s.metric = signature;
        if (oh->count() || ox->count()) s.orders_given = true;
        if (const char* t = std::getenv("KAPPA_THREADS")) {
            char* end = nullptr;
            long n = std::strtol(t, &end, 10);
            if (end == t || *end != '\0' || n < 0) throw ConfigError("KAPPA_THREADS must be a non-negative integer");
            set_max_threads((int)n);
        }

        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        json error;
        try {
            o = run(s);
        } catch (const AlgebraError& e) {
            error = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = error.is_null() && o.ok();

        json reports = json::array();
        for (auto& [r, tag] : o.reports) reports.push_back(report_json(r, tag));
        json doc = {{"schema", kSchema}, {"engine", kEngine}, {"scenario", scenario_json(s)}, {"status", ok ? "pass" : "fail"}};
        if (!error.is_null()) doc["error"] = error;
        doc["reports"] = reports;
        doc["data"] = o.data;
        doc["timing"] = {{"seconds", secs}};
        emit(doc, s.out);
        if (!s.out.empty())
            for (auto& [r, tag] : o.reports) std::cout << (r.ok() ? "PASS " : "FAIL ") << r.title << "\n";
        return ok ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }
}
