#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hjnet/asymptotics.hpp"
#include "hjnet/commands.hpp"
#include "hjnet/level_graph.hpp"

namespace py = pybind11;

namespace {

// nlohmann::json -> native python objects, so command outputs stay in one
// schema across the CLI and the module.
py::object json_to_py(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::null:
            return py::none();
        case nlohmann::json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case nlohmann::json::value_t::number_integer:
            return py::int_(j.get<long long>());
        case nlohmann::json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case nlohmann::json::value_t::number_float:
            return py::float_(j.get<double>());
        case nlohmann::json::value_t::string:
            return py::str(j.get<std::string>());
        case nlohmann::json::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(json_to_py(item));
            return out;
        }
        case nlohmann::json::value_t::object: {
            py::dict out;
            for (const auto& [key, value] : j.items()) {
                out[py::str(key)] = json_to_py(value);
            }
            return out;
        }
        default:
            return py::none();
    }
}

py::dict outputs_to_py(const hjnet::CommandOutputs& outputs) {
    py::dict out;
    for (const auto& [name, doc] : outputs.json_files) out[py::str(name)] = json_to_py(doc);
    for (const auto& [name, text] : outputs.csv_files) out[py::str(name)] = py::str(text);
    return out;
}

hjnet::Scenario parse_scenario(const std::string& text) {
    return hjnet::scenario_from_json(nlohmann::json::parse(text));
}

hjnet::CommandOptions make_options(unsigned threads, unsigned seed) {
    hjnet::CommandOptions options;
    options.threads = threads;
    options.seed = seed;
    return options;
}

}  // namespace

PYBIND11_MODULE(_hjnet, m) {
    m.doc() = "Weak KAM toolkit for Hamilton-Jacobi equations on networks";

    py::register_exception<hjnet::ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<hjnet::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<hjnet::Scenario>(m, "Scenario")
        .def_static("from_json", &parse_scenario, py::arg("text"),
                    "Parse and validate a scenario from a JSON string.")
        .def("to_json", [](const hjnet::Scenario& s) { return hjnet::scenario_to_json(s).dump(); })
        .def_property_readonly("critical_value", [](const hjnet::Scenario& s) {
            return hjnet::critical_value(*s.network, s.hamiltonians);
        });

    m.def(
        "analyze",
        [](const hjnet::Scenario& s, unsigned seed) {
            return outputs_to_py(hjnet::cmd_analyze(s, make_options(1, seed)));
        },
        py::arg("scenario"), py::arg("seed") = 0);
    m.def(
        "distances",
        [](const hjnet::Scenario& s) { return outputs_to_py(hjnet::cmd_distances(s)); },
        py::arg("scenario"));
    m.def(
        "solve_eikonal",
        [](const hjnet::Scenario& s, unsigned seed) {
            return outputs_to_py(hjnet::cmd_solve_eikonal(s, make_options(1, seed)));
        },
        py::arg("scenario"), py::arg("seed") = 0);
    m.def(
        "evolve",
        [](const hjnet::Scenario& s, unsigned threads) {
            return outputs_to_py(hjnet::cmd_evolve(s, make_options(threads, 0)));
        },
        py::arg("scenario"), py::arg("threads") = 1);
    m.def(
        "asymptotics",
        [](const hjnet::Scenario& s, unsigned threads) {
            hjnet::CommandOptions options = make_options(threads, 0);
            options.dump_curves = true;
            return outputs_to_py(hjnet::cmd_asymptotics(s, options));
        },
        py::arg("scenario"), py::arg("threads") = 1);
    m.def(
        "reparam_cost",
        [](const hjnet::Scenario& s) { return outputs_to_py(hjnet::cmd_reparam_cost(s)); },
        py::arg("scenario"));
    m.def(
        "semidistance",
        [](const hjnet::Scenario& s, double level, const std::string& from_vertex,
           const std::string& to_vertex) {
            const hjnet::LevelGraph graph(s.network, &s.hamiltonians, level);
            if (!graph.feasible()) {
                throw hjnet::NumericalError("level below an arc's critical floor");
            }
            return hjnet::semidistance(graph, s.network->vertex_point(from_vertex),
                                       s.network->vertex_point(to_vertex));
        },
        py::arg("scenario"), py::arg("level"), py::arg("from_vertex"), py::arg("to_vertex"));
}
