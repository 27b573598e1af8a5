// Python bindings: the automaton toolbox as one extension module.

#include "wta/hyperminimize.hpp"
#include "wta/io.hpp"
#include "wta/minimize.hpp"
#include "wta/oracle.hpp"
#include "wta/topology.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

std::vector<std::string> select(const wta::Wdta& a, const std::vector<bool>& member,
                                bool complement) {
    std::vector<std::string> out;
    for (int q = 0; q < a.n(); ++q) {
        if (member[q] != complement) out.push_back(a.state_names[q]);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "deterministic weighted tree automata: minimization and hyper-minimization";

    py::register_exception<wta::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<wta::ParseError>(m, "AutomatonParseError", PyExc_ValueError);
    py::register_exception<wta::ResourceError>(m, "ResourceError", PyExc_RuntimeError);

    py::class_<wta::HyperminimizeReport>(m, "Report")
        .def_readonly("n_input", &wta::HyperminimizeReport::n_input)
        .def_readonly("n_minimal", &wta::HyperminimizeReport::n_minimal)
        .def_readonly("n_output", &wta::HyperminimizeReport::n_output)
        .def_readonly("blocks", &wta::HyperminimizeReport::blocks)
        .def_readonly("scaling", &wta::HyperminimizeReport::scaling)
        .def_readonly("kernel", &wta::HyperminimizeReport::kernel)
        .def_readonly("cokernel", &wta::HyperminimizeReport::cokernel)
        .def_readonly("max_rep_changes", &wta::HyperminimizeReport::max_rep_changes)
        .def("__str__", &wta::HyperminimizeReport::to_text);

    py::class_<wta::Wdta>(m, "Automaton")
        .def_static("parse", [](const std::string& text) { return wta::parse_automaton(text); },
                    py::arg("text"))
        .def("serialize", [](const wta::Wdta& a) { return wta::serialize_automaton(a); })
        .def_property_readonly("kind",
                               [](const wta::Wdta& a) { return std::string(wta::kind_name(a.kind)); })
        .def_property_readonly("states", [](const wta::Wdta& a) { return a.state_names; })
        .def_property_readonly("size", &wta::Wdta::logical_m)
        .def("evaluate",
             [](const wta::Wdta& a, const std::string& term) {
                 return a.semifield().print(a.semantics(a.parse_tree(term)));
             },
             py::arg("term"))
        .def("trim", &wta::Wdta::trim)
        .def("minimize", [](const wta::Wdta& a) { return wta::minimize(a); })
        .def("hyper_minimize",
             [](const wta::Wdta& a) {
                 auto result = wta::hyper_minimize(a);
                 return py::make_tuple(result.automaton, result.report);
             })
        .def("kernels",
             [](const wta::Wdta& a) {
                 auto kernel = wta::kernel_states(a);
                 auto cokernel = wta::cokernel_states(a);
                 py::dict out;
                 out["kernel"] = select(a, kernel, false);
                 out["preamble"] = select(a, kernel, true);
                 out["cokernel"] = select(a, cokernel, false);
                 out["copreamble"] = select(a, cokernel, true);
                 return out;
             })
        .def("__repr__", [](const wta::Wdta& a) {
            return "<Automaton " + std::string(wta::kind_name(a.kind)) + ", " +
                   std::to_string(a.n()) + " states>";
        });

    m.def("compare",
          [](const wta::Wdta& a, const wta::Wdta& b, int height, int tail) {
              auto report = wta::compare_languages(a, b, height, tail);
              wta::Semifield sf = a.semifield();
              py::list mismatches;
              for (const auto& mm : report.mismatches) {
                  mismatches.append(py::make_tuple(a.print_tree(mm.tree), sf.print(mm.weight_a),
                                                   sf.print(mm.weight_b)));
              }
              py::dict out;
              out["mismatches"] = mismatches;
              out["clean"] = report.clean;
              return out;
          },
          py::arg("a"), py::arg("b"), py::arg("height") = 6, py::arg("tail") = 3);

    m.def("random_automaton",
          [](std::uint64_t seed, int states, int symbols, int rank, const std::string& kind) {
              return wta::random_wdta(seed, wta::RandomBounds{states, symbols, rank},
                                      wta::parse_kind(kind));
          },
          py::arg("seed"), py::arg("states") = 4, py::arg("symbols") = 3, py::arg("rank") = 2,
          py::arg("kind") = "rational");

    m.def("chain_automaton", &wta::chain_wdta, py::arg("n"));

    m.def("is_hyper_minimal",
          [](const wta::Wdta& a) { return wta::hyper_minimality_check(a).ok; });
}
