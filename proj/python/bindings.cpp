#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "partialzeta/io.hpp"

namespace py = pybind11;
using namespace pzeta;

namespace {

// pybind11 holders must be non-const; the library only hands out const systems
using Handle = std::shared_ptr<ZetaSystem>;

Handle handle(SystemPtr p) { return std::const_pointer_cast<ZetaSystem>(std::move(p)); }

std::shared_ptr<const AbelianSystem> as_abelian(const Handle& sys) {
    auto a = std::dynamic_pointer_cast<const AbelianSystem>(sys);
    if (!a) fail(ErrorKind::invalid_input, "this operation needs a quadratic or cyclic system");
    return a;
}

std::vector<std::string> rationals(const ExactSeries& s) {
    std::vector<std::string> out;
    for (const auto& c : s.coefficients()) out.push_back(c.get_str());
    return out;
}

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json from_python(const py::object& o) {
    return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

VoltageGraph graph_from(const std::string& path) {
    auto vg = read_voltage_graph_file(path);
    vg.validate();
    return vg;
}

}  // namespace

PYBIND11_MODULE(_partialzeta, m) {
    m.attr("__version__") = kVersion;

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(PyExc_ValueError, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
        }
    });

    py::class_<ZetaSystem, Handle>(m, "ZetaSystem")
        .def_property_readonly("group_order", &ZetaSystem::group_order)
        .def_property_readonly("backend", &ZetaSystem::backend)
        .def("to_dict", [](const ZetaSystem& s) { return to_python(s.to_json()); })
        .def("primes", [](const ZetaSystem& s, double cutoff) {
            std::vector<std::tuple<std::int64_t, double, int, int>> out;
            for (const auto& p : s.enumerate(cutoff)) out.emplace_back(p.id, p.norm, p.frob_class, p.frob_order);
            return out;
        }, py::arg("cutoff"), "(id, norm, frob_class, frob_order) for every prime of norm <= cutoff");

    m.def("quadratic_system", [](std::int64_t d) { return handle(kronecker_system(d)); }, py::arg("d"));
    m.def("cyclic_system", [](const py::object& character) {
        return handle(cyclic_system(DirichletCharacter::from_json(from_python(character))));
    }, py::arg("character"), "character as {modulus, order, generator_values}");
    m.def("system_from_dict", [](const py::object& d) { return handle(system_from_json(from_python(d))); });

    m.def("riemann_zeta", [](cd s) { return riemann_zeta(s); }, py::arg("s"));
    m.def("dirichlet_L", [](cd s, const py::object& character) {
        return dirichlet_L(s, DirichletCharacter::from_json(from_python(character)));
    }, py::arg("s"), py::arg("character"));

    m.def("feq_residual", [](const Handle& sys, cd s, double cutoff) { return feq_residual(*sys, s, cutoff); },
          py::arg("system"), py::arg("s"), py::arg("cutoff"));
    m.def("g_value", [](const Handle& sys, cd s) { return g_factors(*as_abelian(sys)).value(s); },
          py::arg("system"), py::arg("s"));
    m.def("continue_f_power", [](const Handle& sys, cd s, int depth, double cutoff) {
        auto a = as_abelian(sys);
        return continue_f_power(make_partial_evaluator(a, g_closed_form(*a), depth, {cutoff}), s);
    }, py::arg("system"), py::arg("s"), py::arg("depth") = 1, py::arg("cutoff") = 1e5,
       "f(s)^(q^depth) for a quadratic or cyclic system");
    m.def("find_zeros", [](const Handle& sys, double height) {
        std::vector<std::pair<cd, int>> out;
        for (const auto& p : find_zeros(g_factors(*as_abelian(sys)), height).catalog.points)
            out.emplace_back(p.location, p.order);
        return out;
    }, py::arg("system"), py::arg("height"), "(location, order) of zeros and poles of g in the strip");

    m.def("ihara_zeta_inverse", [](const std::string& path) { return rationals(ihara_det(graph_from(path).base)); },
          py::arg("graph_file"), "coefficients of zeta_X(u)^{-1}, lowest degree first");
    m.def("cover_zeta_inverse", [](const std::string& path) {
        return rationals(ihara_det(build_cover(graph_from(path)).graph));
    }, py::arg("graph_file"));
    m.def("partial_zeta_series", [](const std::string& path, int order) {
        auto pz = partial_zeta_series(graph_from(path), order);
        py::dict d;
        d["direct"] = rationals(pz.direct);
        d["recursive"] = rationals(pz.recursive);
        d["g"] = rationals(pz.g);
        d["classes_used"] = pz.classes_used;
        return d;
    }, py::arg("graph_file"), py::arg("order"));
    m.def("graph_boundary_report", [](const std::string& path, double height) {
        auto vg = graph_from(path);
        auto cat = graph_singularities_in_s(graph_g_rational(vg), vg.q_g, height);
        return to_python(boundary_report(cat, vg.q_c, height).to_json());
    }, py::arg("graph_file"), py::arg("height"));
}
