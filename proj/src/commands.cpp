#include "hjnet/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hjnet/asymptotics.hpp"
#include "hjnet/level_graph.hpp"

namespace hjnet {

using nlohmann::json;

namespace {

std::vector<std::string> sorted_vertex_ids(const Network& net) {
    std::vector<std::string> ids;
    for (const auto& v : net.vertices()) ids.push_back(v.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

// Vertex semidistance table in sorted-id order.
json distance_table(const Network& net, const LevelGraph& graph) {
    const auto ids = sorted_vertex_ids(net);
    json matrix = json::array();
    for (const auto& from : ids) {
        json row = json::array();
        for (const auto& to : ids) {
            row.push_back(semidistance(graph, net.vertex_point(from), net.vertex_point(to)));
        }
        matrix.push_back(row);
    }
    return {{"order", ids}, {"matrix", matrix}};
}

std::string distance_csv(const Network& net, const LevelGraph& graph) {
    const auto ids = sorted_vertex_ids(net);
    std::ostringstream out;
    out << "from";
    for (const auto& to : ids) out << "," << to;
    out << "\n";
    for (const auto& from : ids) {
        out << from;
        for (const auto& to : ids) {
            out << ","
                << format_double(
                       semidistance(graph, net.vertex_point(from), net.vertex_point(to)));
        }
        out << "\n";
    }
    return out.str();
}

std::string node_location_csv_row(const Grid& grid, std::size_t node) {
    const NetworkPoint& p = grid.point(node);
    std::ostringstream row;
    row << grid.node_id(node) << ",";
    if (p.is_vertex()) {
        row << "," << format_double(0.0);
    } else {
        row << grid.network().arcs()[p.arc_index()].id << "," << format_double(p.s());
    }
    return row.str();
}

std::string grid_function_csv(const GridFunction& f) {
    std::ostringstream out;
    out << "node,arc,s,value\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        out << node_location_csv_row(*f.grid, i) << "," << format_double(f[i]) << "\n";
    }
    return out.str();
}

double resolve_level(const Scenario& scenario, double c) {
    if (scenario.level) {
        if (*scenario.level < c - 1e-9) {
            throw NumericalError("requested level below the critical value");
        }
        return *scenario.level;
    }
    return c;
}

json convergence_report_json(const ConvergenceReport& rep) {
    return {{"regime", rep.regime},
            {"b", rep.drift},
            {"c", rep.c},
            {"a0", rep.a0},
            {"epsilon_scheme", rep.epsilon_scheme},
            {"tol_conv", rep.tol_conv},
            {"converged", rep.converged},
            {"T_detect", rep.T_detect},
            {"final_residual", rep.final_residual},
            {"residuals", rep.residuals}};
}

}  // namespace

CommandOutputs cmd_analyze(const Scenario& scenario, const CommandOptions& options) {
    CommandOutputs out;
    const Network& net = *scenario.network;
    const auto consts = level_constants(net, scenario.hamiltonians);
    const AubryData data = aubry(net, scenario.hamiltonians, scenario.flux);
    const LevelGraph graph(scenario.network, &scenario.hamiltonians, data.c);

    json report;
    report["a0"] = consts.a0;
    report["a_arc"] = consts.a_arc;
    report["c"] = data.c;
    report["h5_violations"] = validate_h5(net, scenario.hamiltonians, data.c);
    report["aubry_arcs"] = data.arcs;
    report["aubry_vertices"] = data.vertices;
    json classes = json::array();
    for (const auto& cls : data.classes) {
        classes.push_back({{"arcs", cls.arcs}, {"vertices", cls.vertices}});
    }
    report["classes"] = classes;
    report["extended_vertices"] = data.extended_vertices;
    json flux_values = json::object();
    for (std::size_t v = 0; v < net.vertices().size(); ++v) {
        flux_values[net.vertices()[v].id] = scenario.flux.at(net, scenario.hamiltonians, v);
    }
    report["flux"] = flux_values;
    report["S_c"] = distance_table(net, graph);

    out.json_files["analyze.json"] = report;
    out.csv_files["s_matrix.csv"] = distance_csv(net, graph);
    (void)options;
    return out;
}

CommandOutputs cmd_distances(const Scenario& scenario, const CommandOptions& options) {
    CommandOutputs out;
    const Network& net = *scenario.network;
    const double c = critical_value(net, scenario.hamiltonians);
    const double level = resolve_level(scenario, c);
    const LevelGraph graph(scenario.network, &scenario.hamiltonians, level);
    if (!graph.feasible()) throw NumericalError("level below an arc's critical floor");

    json report;
    report["level"] = level;
    report["c"] = c;
    report["table"] = distance_table(net, graph);
    out.json_files["distances.json"] = report;
    out.csv_files["distances.csv"] = distance_csv(net, graph);
    (void)options;
    return out;
}

CommandOutputs cmd_solve_eikonal(const Scenario& scenario, const CommandOptions& options) {
    if (!scenario.boundary_spec) {
        throw ValidationError("solve-eikonal requires a boundary section");
    }
    CommandOutputs out;
    const double c = critical_value(*scenario.network, scenario.hamiltonians);
    const double level = resolve_level(scenario, c);
    const LevelGraph graph(scenario.network, &scenario.hamiltonians, level);
    if (!graph.feasible()) throw NumericalError("level below an arc's critical floor");

    auto grid = std::make_shared<Grid>(scenario.network, scenario.scheme.M);
    const GridFunction u = solve_eikonal(graph, *scenario.boundary_spec, grid);
    const auto violations = check_subsolution(u, graph, 1e-8, 40000, options.seed);

    json report = grid_function_to_json(u);
    report["level"] = level;
    report["subsolution_violations"] = violations;
    out.json_files["eikonal.json"] = report;
    out.csv_files["eikonal.csv"] = grid_function_csv(u);
    return out;
}

CommandOutputs cmd_evolve(const Scenario& scenario, const CommandOptions& options) {
    CommandOutputs out;
    auto grid = std::make_shared<Grid>(scenario.network, scenario.scheme.M);
    const GridFunction phi = materialize_datum(scenario.datum, grid);
    StepOperator op(grid, &scenario.hamiltonians, scenario.flux, scenario.scheme);
    op.set_threads(options.threads);
    const auto steps = static_cast<std::size_t>(
        std::llround(scenario.horizon / scenario.scheme.dt));
    const Trajectory traj = evolve(op, phi, steps, options.dump_curves);

    std::ostringstream csv;
    csv << "t,node,arc,s,value\n";
    for (std::size_t k = 0; k < traj.layers.size(); ++k) {
        if (k % std::max<std::size_t>(options.snapshot_every, 1) != 0 &&
            k + 1 != traj.layers.size()) {
            continue;
        }
        const double t = static_cast<double>(k) * traj.dt;
        for (std::size_t i = 0; i < grid->size(); ++i) {
            csv << format_double(t) << "," << node_location_csv_row(*grid, i) << ","
                << format_double(traj.layers[k][i]) << "\n";
        }
    }
    out.csv_files["trajectory.csv"] = csv.str();
    out.json_files["final.json"] = grid_function_to_json(traj.final_layer());

    if (options.dump_curves) {
        json curves = json::object();
        for (std::size_t v = 0; v < scenario.network->vertices().size(); ++v) {
            const std::size_t node = grid->vertex_node(v);
            const DiscreteCurve curve = backtrack(op, traj, node);
            curves[scenario.network->vertices()[v].id] =
                curve_to_json(*scenario.network, curve_from_legs(curve.legs));
        }
        out.json_files["curves.json"] = curves;
    }
    return out;
}

CommandOutputs cmd_asymptotics(const Scenario& scenario, const CommandOptions& options) {
    CommandOutputs out;
    auto grid = std::make_shared<Grid>(scenario.network, scenario.scheme.M);
    const GridFunction phi = materialize_datum(scenario.datum, grid);
    const AsymptoticsRun run =
        run_asymptotics(grid, scenario.hamiltonians, scenario.flux, phi, scenario.scheme,
                        scenario.horizon, options.dump_curves, options.threads);
    const FiniteTimeCertificate cert = finite_time_certificate(
        run, *scenario.network, scenario.hamiltonians, scenario.flux);

    json report = convergence_report_json(run.report);
    report["finite_time"] = {{"expected_finite", cert.expected_finite},
                             {"observed", cert.observed},
                             {"T_detect", cert.T_detect},
                             {"reason", cert.reason}};
    if (options.dump_curves && run.trajectory.steps() > 0) {
        StepOperator op(grid, &scenario.hamiltonians, scenario.flux, scenario.scheme);
        const CurveVisitReport visits = check_optimal_curves_hit_aubry(
            op, run, *scenario.network, scenario.hamiltonians, scenario.flux);
        json per_node = json::array();
        for (const auto& visit : visits.visits) {
            per_node.push_back({{"node", visit.node_id},
                                {"hit", visit.hit},
                                {"first_time", visit.first_time}});
        }
        report["curve_visits"] = {{"all_hit", visits.all_hit}, {"per_node", per_node}};
    }
    out.json_files["report.json"] = report;
    out.json_files["limit.json"] = grid_function_to_json(run.limit.u);

    std::ostringstream csv;
    csv << "t,residual\n";
    for (std::size_t k = 0; k < run.report.residuals.size(); ++k) {
        csv << format_double(static_cast<double>(k) * scenario.scheme.dt) << ","
            << format_double(run.report.residuals[k]) << "\n";
    }
    out.csv_files["residuals.csv"] = csv.str();
    return out;
}

CommandOutputs cmd_reparam_cost(const Scenario& scenario, const CommandOptions& options) {
    if (!scenario.curve) throw ValidationError("reparam-cost requires a curve section");
    CommandOutputs out;
    const Network& net = *scenario.network;
    const double c = critical_value(net, scenario.hamiltonians);
    const double level = scenario.level.value_or(c);

    json report;
    report["c"] = c;
    report["level"] = level;
    try {
        report["cost_sigma"] = cost_sigma(net, scenario.hamiltonians, *scenario.curve, level);
    } catch (const std::domain_error& e) {
        throw NumericalError(e.what());
    }
    report["cost_lagrangian"] =
        cost_lagrangian(net, scenario.hamiltonians, scenario.flux, *scenario.curve);
    report["admissible_floor"] =
        admissible_floor(net, scenario.hamiltonians, scenario.flux, *scenario.curve);
    report["duration"] = scenario.curve->total_duration();

    const RetimingResult retimed =
        approx_optimal_time(net, scenario.hamiltonians, scenario.flux, *scenario.curve, c);
    report["retimed"] = {{"level", retimed.level},
                         {"duration", retimed.duration},
                         {"gap", retimed.gap},
                         {"attained", retimed.attained},
                         {"curve", curve_to_json(net, retimed.curve)}};
    out.json_files["reparam.json"] = report;
    (void)options;
    return out;
}

}  // namespace hjnet
