// pzeta: command-line front end for partial Euler products, their
// functional equations, continuation and singularity diagnostics.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "partialzeta/io.hpp"

using namespace pzeta;
using json = nlohmann::json;

namespace {

struct Options {
    std::string backend;
    std::int64_t d = 0;
    std::string character;
    std::string graph_file;
    std::string system_file;
    std::string catalog_file;
    std::vector<std::string> s_points;
    std::string grid;
    double cutoff = 1e4;
    int depth = 1;
    double height = 30.0;
    int order = 12;
    std::string out;
    double tolerance = 1e-10;
    int q = 0;
    double alpha = 0.25;
    std::string tail_mode = "bound";
};

struct Resolved {
    SystemPtr sys;
    std::shared_ptr<const AbelianSystem> abelian;
    std::shared_ptr<const GraphSystem> graph;
};

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::invalid_input: return 2;
        case ErrorKind::domain: return 3;
        case ErrorKind::singularity_proximity:
        case ErrorKind::singular_local_factor: return 4;
        case ErrorKind::budget_exceeded: return 5;
        default: return 6;
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::invalid_input, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorKind::invalid_input, "invalid JSON in " + path + ": " + e.what());
    }
}

/// "m:order:g=e[,g=e...]"
DirichletCharacter parse_character(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) fail(ErrorKind::invalid_input, "character spec must be 'modulus:order:g=e,...'");
    try {
        int m = std::stoi(parts[0]);
        int order = std::stoi(parts[1]);
        std::vector<std::pair<int, int>> gens;
        std::stringstream gs(parts[2]);
        while (std::getline(gs, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) fail(ErrorKind::invalid_input, "generator entry must be 'g=e'");
            gens.emplace_back(std::stoi(item.substr(0, eq)), std::stoi(item.substr(eq + 1)));
        }
        return DirichletCharacter::from_generators(m, order, gens);
    } catch (const std::logic_error&) {
        fail(ErrorKind::invalid_input, "cannot parse character spec '" + spec + "'");
    }
}

Resolved resolve(const Options& o) {
    Resolved r;
    if (!o.system_file.empty()) {
        r.sys = system_from_json(read_json_file(o.system_file));
    } else if (o.backend == "quadratic") {
        if (o.d == 0) fail(ErrorKind::invalid_input, "quadratic backend needs --d");
        r.sys = kronecker_system(o.d);
    } else if (o.backend == "cyclic") {
        if (!o.character.empty()) {
            r.sys = cyclic_system(parse_character(o.character));
        } else if (o.d != 0) {
            r.sys = kronecker_system(o.d);
        } else {
            fail(ErrorKind::invalid_input, "cyclic backend needs --char");
        }
    } else if (o.backend == "graph") {
        if (o.graph_file.empty()) fail(ErrorKind::invalid_input, "graph backend needs --graph-file");
        r.sys = std::make_shared<GraphSystem>(read_voltage_graph_file(o.graph_file));
    } else if (o.backend == "catalog") {
        fail(ErrorKind::invalid_input, "catalog backend needs --system with an explicit prime list");
    } else if (o.backend.empty()) {
        fail(ErrorKind::invalid_input, "no system given: use --backend or --system");
    } else {
        fail(ErrorKind::invalid_input, "unknown backend '" + o.backend + "'");
    }
    r.abelian = std::dynamic_pointer_cast<const AbelianSystem>(r.sys);
    r.graph = std::dynamic_pointer_cast<const GraphSystem>(r.sys);
    return r;
}

TruncationPolicy policy(const Options& o) {
    if (!(o.cutoff >= 0.0)) fail(ErrorKind::invalid_input, "cutoff must be nonnegative");
    TruncationPolicy p;
    p.cutoff = o.cutoff;
    if (o.tail_mode == "pnt") {
        p.tail_mode = TailMode::pnt_heuristic;
    } else if (o.tail_mode != "bound") {
        fail(ErrorKind::invalid_input, "--tail must be 'bound' or 'pnt'");
    }
    return p;
}

std::vector<cd> points(const Options& o) {
    std::vector<cd> out;
    for (const auto& s : o.s_points) out.push_back(parse_complex(s));
    return out;
}

/// "re0:re1:nre,im0:im1:nim", points ordered by (im, re).
std::vector<cd> grid_points(const std::string& spec) {
    auto axis = [&](const std::string& part) {
        std::vector<std::string> f;
        std::stringstream ss(part);
        std::string x;
        while (std::getline(ss, x, ':')) f.push_back(x);
        if (f.size() != 3) fail(ErrorKind::invalid_input, "grid axis must be 'lo:hi:count'");
        double lo = std::stod(f[0]), hi = std::stod(f[1]);
        int n = std::stoi(f[2]);
        if (n < 1 || n > 2000) fail(ErrorKind::invalid_input, "grid count must be in 1..2000");
        std::vector<double> v;
        for (int i = 0; i < n; ++i) v.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
        return v;
    };
    auto comma = spec.find(',');
    if (comma == std::string::npos) fail(ErrorKind::invalid_input, "grid must be 're-axis,im-axis'");
    std::vector<double> re, im;
    try {
        re = axis(spec.substr(0, comma));
        im = axis(spec.substr(comma + 1));
    } catch (const std::logic_error&) {
        fail(ErrorKind::invalid_input, "cannot parse grid '" + spec + "'");
    }
    std::vector<cd> out;
    for (double y : im)
        for (double x : re) out.emplace_back(x, y);
    return out;
}

json config_json(const std::string& command, const Options& o, const Resolved& r) {
    json s = json::array();
    for (const auto& p : o.s_points) s.push_back(p);
    return {{"command", command},     {"system", r.sys ? r.sys->to_json() : json(nullptr)},
            {"cutoff", json_number(o.cutoff)}, {"depth", o.depth},
            {"height", json_number(o.height)}, {"order", o.order},
            {"s", s},                 {"grid", o.grid},
            {"tolerance", json_number(o.tolerance)}, {"tail", o.tail_mode},
            {"catalog", o.catalog_file}, {"q", o.q},
            {"alpha", json_number(o.alpha)}};
}

void round_tree(json& j) {
    if (j.is_number_float()) {
        j = json_number(j.get<double>());
    } else if (j.is_structured()) {
        for (auto& child : j) round_tree(child);
    }
}

void emit(const Options& o, const json& cfg, const json& results, bool json_to_file = true) {
    json doc{{"version", kVersion}, {"config", cfg}, {"results", results}};
    round_tree(doc);
    if (json_to_file && !o.out.empty()) {
        std::ofstream f(o.out);
        if (!f) fail(ErrorKind::invalid_input, "cannot write " + o.out);
        f << doc.dump(2) << '\n';
    } else {
        std::cout << doc.dump(2) << '\n';
    }
}

std::string csv_header(const json& cfg) {
    return std::string("# pzeta ") + kVersion + " config: " + cfg.dump() + "\n";
}

void write_text(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) fail(ErrorKind::invalid_input, "cannot write " + o.out);
    f << text;
}

int prime_order(const ZetaSystem& sys) {
    int q = sys.group_order();
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) fail(ErrorKind::invalid_input, "this command needs a group of prime order");
    if (q < 2) fail(ErrorKind::invalid_input, "this command needs a group of prime order");
    return q;
}

// ---------------------------------------------------------------------------

int cmd_sieve(const Options& o, bool order_given) {
    auto r = resolve(o);
    double cutoff = o.cutoff;
    if (r.graph && order_given) cutoff = std::pow(static_cast<double>(r.graph->voltage_graph().q_g), o.order);
    Options eff = o;
    eff.cutoff = cutoff;
    auto cfg = config_json("sieve", eff, r);
    std::ostringstream ss;
    ss << csv_header(cfg);
    write_primes_csv(ss, r.sys->enumerate(cutoff));
    write_text(o, ss.str());
    return 0;
}

int cmd_eval(const Options& o) {
    auto r = resolve(o);
    auto pol = policy(o);
    std::optional<FactoredFunction> g;
    std::optional<RationalFunction> gr;
    if (r.abelian) g = g_factors(*r.abelian);
    if (r.graph) gr = graph_g_rational(r.graph->voltage_graph());
    json rows = json::array();
    for (cd s : points(o)) {
        if (s.real() <= 1.0) fail(ErrorKind::domain, "Euler products need Re s > 1");
        json row{{"s", json_complex(s)}};
        auto zp = truncated_zeta_P(*r.sys, s, pol);
        row["zeta_P"] = {{"value", json_complex(zp.value)}, {"log", json_complex(zp.log_value)},
                         {"tail", json_number(zp.tail)}, {"certified", zp.certified}, {"primes", zp.factors}};
        json parts = json::object();
        for (int n : CyclicGroup(std::max(2, r.sys->group_order())).divisors()) {
            if (r.sys->group_order() % n != 0) continue;
            auto v = truncated_zeta_Pn(*r.sys, n, s, pol);
            parts[std::to_string(n)] = {{"value", json_complex(v.value)}, {"log", json_complex(v.log_value)},
                                        {"tail", json_number(v.tail)}};
        }
        row["zeta_Pn"] = parts;
        auto z = truncated_Z(*r.sys, s, pol);
        row["Z_P"] = {{"value", json_complex(z.value)}, {"log", json_complex(z.log_value)}, {"tail", json_number(z.tail)}};
        if (g) row["g_closed_form"] = json_complex(g->value(s));
        if (gr) {
            const double lq = std::log(static_cast<double>(r.graph->voltage_graph().q_g));
            row["g_rational"] = json_complex(gr->evaluate(std::exp(-s * lq)));
        }
        rows.push_back(row);
    }
    emit(o, config_json("eval", o, r), rows);
    return 0;
}

GEvaluator g_for_continuation(const Resolved& r, const Options& o, const std::vector<cd>& pts) {
    const int q = prime_order(*r.sys);
    double top = 0.0;
    for (cd s : pts) top = std::max(top, std::abs(s.imag()) * std::pow(static_cast<double>(q), std::max(0, o.depth - 1)));
    const double height = top + 1.0;
    if (r.abelian) {
        std::optional<SingularityCatalog> cat;
        if (height <= 100.0) cat = find_zeros(g_factors(*r.abelian), height).catalog;
        return g_closed_form(*r.abelian, cat);
    }
    if (r.graph) return graph_g_evaluator(r.graph->voltage_graph(), height);
    return g_truncated(r.sys, o.cutoff);
}

int cmd_continue(const Options& o) {
    auto r = resolve(o);
    auto pts = points(o);
    std::vector<cd> grid;
    if (!o.grid.empty()) grid = grid_points(o.grid);
    if (pts.empty() && grid.empty()) fail(ErrorKind::invalid_input, "continue needs --s or --grid");
    std::vector<cd> all = pts;
    all.insert(all.end(), grid.begin(), grid.end());
    const int q = prime_order(*r.sys);
    const double threshold = 1.0 / std::pow(static_cast<double>(q), o.depth);
    for (cd s : all)
        if (s.real() <= threshold)
            fail(ErrorKind::domain, "continuation at depth " + std::to_string(o.depth) + " needs Re s > " + fmt15(threshold));
    auto ev = make_partial_evaluator(r.sys, g_for_continuation(r, o, all), o.depth, policy(o));
    auto cfg = config_json("continue", o, r);
    json rows = json::array();
    for (cd s : pts) {
        auto v = continue_f_power_detail(ev, s);
        rows.push_back({{"s", json_complex(s)}, {"value", json_complex(v.value)}, {"log_abs", json_number(v.log_abs)},
                        {"arg", json_number(v.arg)}});
    }
    json results{{"exponent", std::pow(q, o.depth)}, {"g_provenance", to_string(ev.g.provenance)}, {"points", rows}};
    if (!grid.empty()) {
        std::ostringstream ss;
        ss << csv_header(cfg) << "re,im,log_abs,arg\n";
        for (cd s : grid) {
            std::string la = "nan", ar = "nan";
            try {
                auto v = continue_f_power_detail(ev, s);
                la = fmt15(v.log_abs);
                ar = fmt15(v.arg);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::singularity_proximity) throw;
            }
            ss << fmt15(s.real()) << ',' << fmt15(s.imag()) << ',' << la << ',' << ar << '\n';
        }
        results["grid_points"] = grid.size();
        if (o.out.empty()) {
            results["grid_csv"] = ss.str();
        } else {
            write_text(o, ss.str());
            results["grid_csv"] = o.out;
        }
    }
    emit(o, cfg, results, false);
    return 0;
}

bool two_prime_product(int n) {
    for (int p = 2; p * p < n; ++p)
        if (n % p == 0) {
            int r = n / p;
            if (r == p) return false;
            for (int d = 2; d * d <= r; ++d)
                if (r % d == 0) return false;
            for (int d = 2; d * d <= p; ++d)
                if (p % d == 0) return false;
            return true;
        }
    return false;
}

bool is_prime_int(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int cmd_feq_check(const Options& o) {
    auto r = resolve(o);
    const int n = r.sys->group_order();
    json rows = json::array();
    bool pass = true;
    for (cd s : points(o)) {
        json row{{"s", json_complex(s)}};
        auto check = [&](const char* name, double v) {
            row[name] = json_number(v);
            if (!(v <= o.tolerance)) pass = false;
        };
        check("zp_factorization", zp_factorization_residual(*r.sys, s, o.cutoff));
        if (is_prime_int(n)) check("functional_equation", feq_residual(*r.sys, s, o.cutoff));
        if (two_prime_product(n)) {
            check("composite_functional_equation", composite_feq_residual(*r.sys, s, o.cutoff));
            check("composite_reduction", composite_reduction_residual(*r.sys, s, o.cutoff));
        }
        rows.push_back(row);
    }
    emit(o, config_json("feq-check", o, r), {{"pass", pass}, {"points", rows}});
    return pass ? 0 : 1;
}

SingularityCatalog catalog_for(const Resolved& r, double height, json& extra) {
    if (r.abelian) {
        auto res = find_zeros(g_factors(*r.abelian), height);
        json tallies = json::array();
        for (const auto& t : res.tallies)
            tallies.push_back({{"factor", t.label}, {"exponent", t.exponent}, {"winding_total", t.winding_total},
                               {"refined_count", t.refined_count}});
        extra["tallies"] = tallies;
        return res.catalog;
    }
    if (r.graph) {
        auto rf = graph_g_rational(r.graph->voltage_graph());
        extra["numerator"] = series_to_json(rf.numerator);
        extra["denominator"] = series_to_json(rf.denominator);
        return graph_singularities_in_s(rf, r.graph->voltage_graph().q_g, height);
    }
    fail(ErrorKind::invalid_input, "singularity catalogs need the quadratic, cyclic or graph backend");
}

int cmd_zeros(const Options& o) {
    auto r = resolve(o);
    json extra = json::object();
    auto cat = catalog_for(r, o.height, extra);
    auto cfg = config_json("zeros", o, r);
    extra["catalog"] = catalog_to_json(cat);
    // how many points carry each |order| = |zero multiplicity - pole multiplicity|
    std::map<int, long> by_order;
    for (const auto& p : cat.points) ++by_order[std::abs(p.order)];
    json counts = json::object();
    for (auto [k, n] : by_order) counts[std::to_string(k)] = n;
    extra["abs_order_counts"] = counts;
    if (!o.out.empty()) {
        std::ostringstream ss;
        ss << csv_header(cfg);
        write_catalog_csv(ss, cat);
        write_text(o, ss.str());
        extra["catalog_csv"] = o.out;
    }
    emit(o, cfg, extra, false);
    return 0;
}

int cmd_boundary(const Options& o) {
    Resolved r;
    SingularityCatalog cat;
    json extra = json::object();
    int q = o.q;
    if (!o.catalog_file.empty()) {
        std::ifstream in(o.catalog_file);
        if (!in) fail(ErrorKind::invalid_input, "cannot open " + o.catalog_file);
        cat = read_catalog_csv(in, o.height);
        if (!o.backend.empty() || !o.system_file.empty()) r = resolve(o);
        if (q == 0 && r.sys) q = prime_order(*r.sys);
        if (q == 0) fail(ErrorKind::invalid_input, "boundary on a catalog file needs --q or a system");
    } else {
        r = resolve(o);
        if (q == 0) q = prime_order(*r.sys);
        cat = catalog_for(r, o.height, extra);
    }
    auto report = boundary_report(cat, q, o.height);
    auto counts = counting_functions(cat, q, o.height, o.alpha);
    json results = report.to_json();
    results["q"] = q;
    results["catalog_points"] = cat.points.size();
    results["counting"] = {{"I", counts.zeros_on_critical_line},
                           {"J_alpha", counts.pole_order_left},
                           {"Omega_q", counts.omega_q}};
    emit(o, config_json("boundary", o, r), results);
    return 0;
}

// ---------------------------------------------------------------------------
// graph subcommands

VoltageGraph graph_input(const Options& o) {
    if (o.graph_file.empty()) fail(ErrorKind::invalid_input, "graph commands need --graph-file");
    return read_voltage_graph_file(o.graph_file);
}

json graph_config(const std::string& cmd, const Options& o, const VoltageGraph& vg) {
    Resolved r;
    r.sys = std::make_shared<GraphSystem>(vg);
    return config_json(cmd, o, r);
}

int cmd_graph_ihara(const Options& o) {
    auto vg = graph_input(o);
    auto det = ihara_det(vg.base);
    auto edge = ihara_edge(vg.base);
    emit(o, graph_config("graph ihara", o, vg),
         {{"n", vg.base.vertex_count()}, {"m", vg.base.edge_count()}, {"q_g", vg.q_g},
          {"bipartite", vg.base.bipartite()}, {"determinant", series_to_json(det)},
          {"edge_matrix", series_to_json(edge)}, {"equal", det == edge}});
    return 0;
}

int cmd_graph_cover(const Options& o) {
    auto vg = graph_input(o);
    auto cover = build_cover(vg);
    json edges = json::array();
    for (const auto& e : cover.graph.edges()) edges.push_back({e.u, e.v});
    json results{{"n", cover.graph.vertex_count()}, {"m", cover.graph.edge_count()},
                 {"connected", cover.connected}, {"edges", edges},
                 {"ihara_inverse", series_to_json(ihara_edge(cover.graph))}};
    if (!cover.connected) std::cerr << "warning: the derived graph is disconnected\n";
    emit(o, graph_config("graph cover", o, vg), results);
    return 0;
}

int cmd_graph_lfun(const Options& o) {
    auto vg = graph_input(o);
    int j = 1;
    if (!o.character.empty()) {
        try {
            j = std::stoi(o.character);
        } catch (const std::logic_error&) {
            fail(ErrorKind::invalid_input, "--char for graph lfun is the character index j");
        }
    }
    auto L = graph_L(vg, j);
    json results{{"j", j}, {"q_c", vg.q_c}, {"rational", L.is_rational()}, {"coefficients", cyclotomic_to_json(L)}};
    if (L.is_rational()) results["polynomial"] = series_to_json(L.to_rational());
    emit(o, graph_config("graph lfun", o, vg), results);
    return 0;
}

int cmd_graph_partial(const Options& o) {
    auto vg = graph_input(o);
    auto pz = partial_zeta_series(vg, o.order);
    if (!pz.connected) std::cerr << "warning: the derived graph is disconnected\n";
    emit(o, graph_config("graph partial", o, vg),
         {{"direct", series_to_json(pz.direct)}, {"recursive", series_to_json(pz.recursive)},
          {"g", series_to_json(pz.g)}, {"equal", pz.direct == pz.recursive},
          {"classes_used", pz.classes_used}, {"connected", pz.connected}});
    return 0;
}

int cmd_graph_verify(const Options& o) {
    auto vg = graph_input(o);
    const auto& x = vg.base;
    const std::size_t prec = static_cast<std::size_t>(o.order) + 1;
    json checks = json::object();
    auto det = ihara_det(x);
    checks["bass_identity"] = det == ihara_edge(x);
    auto cover = build_cover(vg);
    checks["cover_connected"] = cover.connected;
    checks["covering_identity"] = nontrivial_L_product(vg) * ihara_edge(x) == ihara_edge(cover.graph);
    // Euler product over every primitive class against 1/ihara_det
    std::vector<Rational> euler(prec, 0);
    euler[0] = 1;
    for (const auto& c : enumerate_primitive_cycles(x, o.order)) {
        const std::size_t nu = static_cast<std::size_t>(c.length());
        for (std::size_t k = nu; k < prec; ++k) euler[k] += euler[k - nu];
    }
    checks["euler_product"] = ExactSeries::series(euler, prec) == det.inverse(prec);
    if (!x.bipartite()) {
        auto lin = ExactSeries::polynomial({Rational(1), Rational(-vg.q_g)});
        auto [quo, rem] = poly_divmod(det, lin);
        checks["simple_pole_at_1_over_q"] = rem.is_zero() && !poly_divmod(quo, lin).second.is_zero();
    }
    auto pz = partial_zeta_series(vg, o.order);
    checks["partial_zeta_dual_route"] = pz.direct == pz.recursive;
    bool pass = true;
    for (const auto& [k, v] : checks.items())
        if (k != "cover_connected" && !v.get<bool>()) pass = false;
    emit(o, graph_config("graph verify", o, vg), {{"pass", pass}, {"checks", checks}});
    return pass ? 0 : 1;
}

void add_system_options(CLI::App* app, Options& o) {
    app->add_option("--backend", o.backend, "quadratic | cyclic | graph | catalog");
    app->add_option("--d", o.d, "square-free d for the quadratic backend");
    app->add_option("--char", o.character, "character 'modulus:order:g=e,...' (graph lfun: index j)");
    app->add_option("--graph-file", o.graph_file, "graph edge list with header 'n q_g q_c'");
    app->add_option("--system", o.system_file, "system JSON {backend, params}");
    app->add_option("--cutoff", o.cutoff, "prime norm cutoff X");
    app->add_option("--tail", o.tail_mode, "tail estimate: bound | pnt");
    app->add_option("--out", o.out, "output path");
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Partial Euler products over Frobenius-order prime sets"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    auto* sieve = app.add_subcommand("sieve", "dump prime data as CSV");
    add_system_options(sieve, o);
    auto* sieve_order = sieve->add_option("--order", o.order, "graph backend: cycle length bound");

    auto* eval = app.add_subcommand("eval", "truncated Euler products at points");
    add_system_options(eval, o);
    eval->add_option("--s", o.s_points, "evaluation points, e.g. 2 or 1.5+3i")->required();

    auto* cont = app.add_subcommand("continue", "continued f(s)^{q^r}");
    add_system_options(cont, o);
    cont->add_option("--s", o.s_points, "evaluation points");
    cont->add_option("--grid", o.grid, "grid 're0:re1:n,im0:im1:m' written as CSV");
    cont->add_option("--depth", o.depth, "recursion depth r");

    auto* feq = app.add_subcommand("feq-check", "functional-equation residuals");
    add_system_options(feq, o);
    feq->add_option("--s", o.s_points, "points with Re s > 1")->required();
    feq->add_option("--tolerance", o.tolerance, "pass threshold");

    auto* zeros = app.add_subcommand("zeros", "zeros and poles of g in the critical strip");
    add_system_options(zeros, o);
    zeros->add_option("--height", o.height, "strip height T (<= 100 for L-function searches)");

    auto* boundary = app.add_subcommand("boundary", "natural-boundary diagnostics");
    add_system_options(boundary, o);
    boundary->add_option("--height", o.height, "catalog height T");
    boundary->add_option("--catalog", o.catalog_file, "singularity catalog CSV (re,im,order)");
    boundary->add_option("--q", o.q, "group order q for catalog input");
    boundary->add_option("--alpha", o.alpha, "alpha in (0, 1/2) for J_alpha");

    auto* graph = app.add_subcommand("graph", "graph zeta functions");
    graph->require_subcommand(1);
    auto* g_ihara = graph->add_subcommand("ihara", "Ihara zeta by determinant and edge matrix");
    auto* g_cover = graph->add_subcommand("cover", "derived cover of a voltage graph");
    auto* g_lfun = graph->add_subcommand("lfun", "graph L-function of a character");
    auto* g_partial = graph->add_subcommand("partial", "partial zeta series by both routes");
    auto* g_verify = graph->add_subcommand("verify", "check every exact identity");
    for (auto* sub : {g_ihara, g_cover, g_lfun, g_partial, g_verify}) {
        add_system_options(sub, o);
        sub->add_option("--order", o.order, "series order L (<= 24)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*sieve) return cmd_sieve(o, sieve_order->count() > 0);
        if (*eval) return cmd_eval(o);
        if (*cont) return cmd_continue(o);
        if (*feq) return cmd_feq_check(o);
        if (*zeros) return cmd_zeros(o);
        if (*boundary) return cmd_boundary(o);
        if (*g_ihara) return cmd_graph_ihara(o);
        if (*g_cover) return cmd_graph_cover(o);
        if (*g_lfun) return cmd_graph_lfun(o);
        if (*g_partial) return cmd_graph_partial(o);
        if (*g_verify) return cmd_graph_verify(o);
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 6;
    }
    return 2;
}
