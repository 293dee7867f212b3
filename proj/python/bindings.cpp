#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rsc/cohomology.hpp"
#include "rsc/error.hpp"
#include "rsc/io.hpp"
#include "rsc/obstructions.hpp"
#include "rsc/parametrisation.hpp"
#include "rsc/process.hpp"

namespace py = pybind11;
using namespace rsc;

namespace {

// Results go through JSON so Python sees plain dicts and lists.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

std::vector<Simplex> to_simplices(const std::vector<std::vector<int>>& v) {
    std::vector<Simplex> out;
    out.reserve(v.size());
    for (const auto& s : v) out.emplace_back(s);
    return out;
}

std::vector<std::vector<int>> from_simplices(const std::vector<Simplex>& v) {
    std::vector<std::vector<int>> out;
    out.reserve(v.size());
    for (const auto& s : v) out.push_back(s.to_vector());
    return out;
}

py::list copies(const std::vector<ObstructionCopy>& v) {
    py::list out;
    for (const auto& m : v) out.append(to_py(to_json(m)));
    return out;
}

}  // namespace

PYBIND11_MODULE(_rsc, m) {
    m.doc() = "Random simplicial complexes: cohomology, obstructions and the birth-time process";

    static py::exception<Error> rsc_error(m, "RscError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(rsc_error.ptr(), (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
        }
    });

    py::class_<Complex>(m, "Complex")
        .def(py::init([](int n, int d, const std::vector<std::vector<int>>& facets) {
                 return Complex::from_generators(n, d, to_simplices(facets));
             }),
             py::arg("n"), py::arg("d"), py::arg("facets") = std::vector<std::vector<int>>{})
        .def_static("from_json", &parse_complex)
        .def_property_readonly("n", &Complex::n)
        .def_property_readonly("d", &Complex::d)
        .def("facets", [](const Complex& c) { return from_simplices(c.facets()); })
        .def("simplices", [](const Complex& c, int i) { return from_simplices(c.simplices(i)); })
        .def("count", &Complex::count)
        .def("add_simplex", [](const Complex& c, const std::vector<int>& s) { return c.add_simplex(Simplex(s)); })
        .def("to_json", &dump_complex)
        .def("__eq__", [](const Complex& a, const Complex& b) { return a == b; })
        .def("__repr__", [](const Complex& c) {
            return "<Complex n=" + std::to_string(c.n()) + " d=" + std::to_string(c.d()) +
                   " facets=" + std::to_string(c.facets().size()) + ">";
        });

    m.def("full_complex", &full_complex, py::arg("n"), py::arg("d"));

    m.def(
        "cohomology",
        [](const Complex& c, int j, const std::string& ring) { return to_py(to_json(cohomology(c, j, Ring::parse(ring)))); },
        py::arg("complex"), py::arg("j"), py::arg("ring") = "f2");
    m.def(
        "is_cohom_connected",
        [](const Complex& c, int j, const std::string& ring) { return is_cohom_connected(c, j, Ring::parse(ring)); },
        py::arg("complex"), py::arg("j"), py::arg("ring") = "f2");
    m.def(
        "find_M_copies", [](const Complex& c, int j, int k) { return copies(find_M_copies(c, j, k)); },
        py::arg("complex"), py::arg("j"), py::arg("k"));
    m.def(
        "find_Mhat_copies", [](const Complex& c, int j, int k) { return copies(find_Mhat_copies(c, j, k)); },
        py::arg("complex"), py::arg("j"), py::arg("k"));

    py::class_<DirectionParams>(m, "Direction")
        .def_static("parse", &DirectionParams::parse)
        .def_static("default_critical", &default_critical_direction, py::arg("d"), py::arg("j"))
        .def_readonly("d", &DirectionParams::d)
        .def_readonly("j", &DirectionParams::j)
        .def("to_config", &DirectionParams::to_config)
        .def("__repr__", &DirectionParams::to_config);

    m.def(
        "criticality", [](const DirectionParams& dp, double n) { return to_py(to_json(lambda_mu_nu(dp, n))); },
        py::arg("direction"), py::arg("n"));
    m.def("E_constant", &E_constant, py::arg("direction"), py::arg("n"), py::arg("c"));
    m.def("critical_window_expectation", &critical_window_expectation, py::arg("direction"), py::arg("n"),
          py::arg("c"));
    m.def(
        "exact_expected_Xjk",
        [](double n, const std::vector<double>& p, int j, int k) {
            return exact_expected_Xjk(make_probabilities(n, p), j, k);
        },
        py::arg("n"), py::arg("p"), py::arg("j"), py::arg("k"), "p[k] for k = 1..d; p[0] is ignored");

    m.def(
        "sample",
        [](int n, const DirectionParams& dp, std::uint64_t seed, double tau) {
            return snapshot(sample_process(n, dp, seed, tau), tau);
        },
        py::arg("n"), py::arg("direction"), py::arg("seed"), py::arg("tau") = 1.0);
    m.def(
        "hitting_time",
        [](int n, const DirectionParams& dp, std::uint64_t seed, std::optional<double> cap) {
            const auto tr = sample_process(n, dp, seed, cap);
            Json out = to_json(hitting_time(tr, dp.j));
            out["events"] = tr.events.size();
            return to_py(out);
        },
        py::arg("n"), py::arg("direction"), py::arg("seed"), py::arg("cap") = py::none());
    m.def(
        "mc_expectations",
        [](int n, const DirectionParams& dp, double tau, long trials, std::uint64_t seed) {
            const auto s = mc_expectations(n, dp, tau, trials, seed);
            return to_py(Json{{"mean_X", s.mean_X}, {"se_X", s.se_X}, {"exact_mean", s.exact_mean},
                              {"mean_Xhat", s.mean_Xhat}, {"trials", s.trials}});
        },
        py::arg("n"), py::arg("direction"), py::arg("tau"), py::arg("trials"), py::arg("seed"));
}
