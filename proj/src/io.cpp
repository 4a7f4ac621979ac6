#include "partialzeta/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace pzeta {

double round15(double x) {
    if (!std::isfinite(x)) return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::strtod(buf, nullptr);
}

std::string fmt15(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

nlohmann::json json_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return round15(x);
}

nlohmann::json json_complex(cd z) { return nlohmann::json::array({json_number(z.real()), json_number(z.imag())}); }

cd parse_complex(const std::string& text) {
    std::string t;
    for (char c : text)
        if (c != ' ') t += c;
    if (t.empty()) fail(ErrorKind::invalid_input, "empty complex number");
    auto number = [&](const std::string& part) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            fail(ErrorKind::invalid_input, "cannot parse complex number '" + text + "'");
        }
        if (used != part.size()) fail(ErrorKind::invalid_input, "cannot parse complex number '" + text + "'");
        return v;
    };
    if (t.back() != 'i' && t.back() != 'j') return {number(t), 0.0};
    t.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t i = t.size(); i-- > 1;) {
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, number(t)};
    return {number(t.substr(0, split)), number(t.substr(split))};
}

nlohmann::json series_to_json(const ExactSeries& s) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : s.coefficients())
        coeffs.push_back({{"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
    nlohmann::json out{{"coefficients", coeffs}};
    if (s.precision()) {
        out["precision"] = *s.precision();
    } else {
        out["precision"] = nullptr;
    }
    return out;
}

ExactSeries series_from_json(const nlohmann::json& j) {
    std::vector<Rational> c;
    for (const auto& e : j.at("coefficients")) {
        Rational r(Integer(e.at("num").get<std::string>()), Integer(e.at("den").get<std::string>()));
        r.canonicalize();
        c.push_back(r);
    }
    if (j.contains("precision") && !j["precision"].is_null())
        return ExactSeries::series(std::move(c), j["precision"].get<std::size_t>());
    return ExactSeries::polynomial(std::move(c));
}

nlohmann::json cyclotomic_to_json(const CyclotomicPolynomial& p) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : p.coeffs) {
        nlohmann::json basis = nlohmann::json::array();
        for (const auto& r : c.coefficients()) basis.push_back(r.get_str());
        out.push_back(basis);
    }
    return out;
}

VoltageGraph voltage_graph_from_json(const nlohmann::json& params) {
    VoltageGraph vg;
    std::vector<Edge> edges;
    std::vector<int> alpha;
    const int q_c = params.at("q_c").get<int>();
    if (q_c < 2) fail(ErrorKind::invalid_input, "cover group order must be at least 2");
    for (const auto& e : params.at("edges")) {
        edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
        int a = e.size() > 2 ? e.at(2).get<int>() : 0;
        alpha.push_back(((a % q_c) + q_c) % q_c);
    }
    vg.base = MultiGraph(params.at("n").get<int>(), std::move(edges));
    vg.q_g = params.at("q_g").get<int>();
    vg.q_c = q_c;
    vg.alpha = std::move(alpha);
    vg.validate();
    return vg;
}

SystemPtr system_from_json(const nlohmann::json& j) {
    try {
        const std::string backend = j.at("backend").get<std::string>();
        const auto& params = j.at("params");
        if (backend == "quadratic") {
            std::int64_t d = params.contains("d") ? params["d"].get<std::int64_t>()
                                                  : params.at("kronecker_d").get<std::int64_t>();
            return kronecker_system(d);
        }
        if (backend == "cyclic") {
            if (params.contains("kronecker_d")) return kronecker_system(params["kronecker_d"].get<std::int64_t>());
            return cyclic_system(DirichletCharacter::from_json(params));
        }
        if (backend == "graph") return std::make_shared<GraphSystem>(voltage_graph_from_json(params));
        if (backend == "catalog") {
            std::vector<ExplicitSystem::Entry> entries;
            for (const auto& p : params.at("primes"))
                entries.push_back({p.at("norm").get<double>(), p.at("frob_class").get<int>()});
            return std::make_shared<ExplicitSystem>(params.at("group_order").get<int>(), std::move(entries));
        }
        fail(ErrorKind::invalid_input, "unknown backend '" + backend + "'");
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::invalid_input, std::string("malformed system spec: ") + e.what());
    }
}

void write_primes_csv(std::ostream& out, const std::vector<PrimeDatum>& primes) {
    out << "id,norm,frob_class,frob_order\n";
    for (const auto& p : primes) out << p.id << ',' << fmt15(p.norm) << ',' << p.frob_class << ',' << p.frob_order << '\n';
}

nlohmann::json catalog_to_json(const SingularityCatalog& cat) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : cat.points)
        pts.push_back({{"re", json_number(p.location.real())}, {"im", json_number(p.location.imag())}, {"order", p.order}});
    return {{"complete_up_to", json_number(cat.complete_up_to)}, {"points", pts}};
}

}  // namespace pzeta
