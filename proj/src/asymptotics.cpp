#include "hjnet/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hjnet/level_graph.hpp"

namespace hjnet {

namespace {

std::shared_ptr<const Network> unowned(const Network& net) {
    return std::shared_ptr<const Network>(std::shared_ptr<const Network>(), &net);
}

double drift_residual(const GridFunction& layer, double drift, double t,
                      const GridFunction& u) {
    double r = 0.0;
    for (std::size_t i = 0; i < layer.size(); ++i) {
        r = std::max(r, std::abs(layer[i] + drift * t - u[i]));
    }
    return r;
}

}  // namespace

AsymptoticsRun run_asymptotics(std::shared_ptr<const Grid> grid, const HamiltonianSet& hams,
                               const FluxLimiter& flux, const GridFunction& phi,
                               const SchemeParams& params, double horizon, bool backpointers,
                               unsigned threads) {
    const Network& net = grid->network();
    const double steps_real = horizon / params.dt;
    const auto steps = static_cast<std::size_t>(std::llround(steps_real));
    if (std::abs(steps_real - static_cast<double>(steps)) > 1e-9 || horizon < 0.0) {
        throw std::invalid_argument("horizon must be a nonnegative multiple of dt");
    }

    AsymptoticsRun run;
    run.datum = phi;
    run.aubry_data = aubry(net, hams, flux);
    run.limit = predicted_limit(net, hams, flux, phi);

    ConvergenceReport& rep = run.report;
    rep.c = run.aubry_data.c;
    rep.a0 = level_constants(net, hams).a0;
    rep.drift = run.limit.drift;
    rep.regime = run.limit.supercritical ? "supercritical" : "critical";

    StepOperator op(grid, &hams, flux, params);
    op.set_threads(threads);

    // Scheme error: the predicted limit must evolve rigidly at the drift;
    // its measured residual calibrates the convergence tolerance.
    const std::size_t eps_steps = std::min<std::size_t>(std::max<std::size_t>(steps, 1), 1000);
    GridFunction probe = run.limit.u;
    for (std::size_t k = 1; k <= eps_steps; ++k) {
        probe = op.apply(probe);
        rep.epsilon_scheme = std::max(
            rep.epsilon_scheme,
            drift_residual(probe, rep.drift, static_cast<double>(k) * params.dt, run.limit.u));
    }
    rep.tol_conv = params.tol_conv > 0.0 ? params.tol_conv
                                         : 2.0 * std::max(rep.epsilon_scheme, 1e-12);

    run.trajectory = evolve(op, phi, steps, backpointers);
    rep.residuals.resize(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        rep.residuals[k] = drift_residual(run.trajectory.layers[k], rep.drift,
                                          static_cast<double>(k) * params.dt, run.limit.u);
    }
    rep.final_residual = rep.residuals.back();

    std::size_t below = 0;
    for (std::size_t k = 0; k <= steps; ++k) {
        below = rep.residuals[k] <= rep.tol_conv ? below + 1 : 0;
        if (below == params.hold_steps) {
            rep.converged = true;
            rep.T_detect =
                static_cast<double>(k + 1 - params.hold_steps) * params.dt;
            break;
        }
    }
    return run;
}

FiniteTimeCertificate finite_time_certificate(const AsymptoticsRun& run, const Network& net,
                                              const HamiltonianSet& hams,
                                              const FluxLimiter& flux) {
    FiniteTimeCertificate cert;
    cert.observed = run.report.converged;
    cert.T_detect = run.report.T_detect;

    const AubryData& data = run.aubry_data;
    const double tol = 1e-9 * (1.0 + std::abs(data.c));

    if (run.limit.supercritical) {
        cert.expected_finite = true;
        cert.reason = "flux limiter above the critical value";
        return cert;
    }
    if (data.c > run.report.a0 + tol) {
        bool all_classes_anchored = !data.classes.empty();
        for (const auto& cls : data.classes) {
            bool anchored = false;
            for (const auto& vid : cls.vertices) {
                if (std::abs(flux.at(net, hams, net.vertex_index(vid)) - data.c) <= tol) {
                    anchored = true;
                    break;
                }
            }
            all_classes_anchored = all_classes_anchored && anchored;
        }
        if (all_classes_anchored) {
            cert.expected_finite = true;
            cert.reason = "every static class holds a vertex at the critical flux value";
            return cert;
        }
    }
    const LevelGraph graph(unowned(net), &hams, data.c);
    if (check_subsolution(run.datum, graph).empty()) {
        cert.expected_finite = true;
        cert.reason = "datum is a certified discrete subsolution";
        return cert;
    }
    cert.reason = "no finite-time hypothesis holds";
    return cert;
}

double fixed_point_residual(const StepOperator& op, const GridFunction& u_candidate, double b,
                            std::size_t probe_steps) {
    GridFunction v = u_candidate;
    for (std::size_t k = 0; k < probe_steps; ++k) v = op.apply(v);
    return drift_residual(v, b, static_cast<double>(probe_steps) * op.dt(), u_candidate);
}

CurveVisitReport check_optimal_curves_hit_aubry(const StepOperator& op, const AsymptoticsRun& run,
                                                const Network& net, const HamiltonianSet& hams,
                                                const FluxLimiter& flux) {
    if (!run.trajectory.has_backpointers()) {
        throw std::invalid_argument("trajectory has no backpointers");
    }
    const Grid& grid = *run.trajectory.grid;
    const AubryData& data = run.aubry_data;
    const bool super = run.limit.supercritical;
    const double max_flux = flux.max_value(net, hams);
    const double tol = 1e-9 * (1.0 + std::abs(max_flux));

    const auto vertex_counts = [&](std::size_t v) {
        const std::string& id = net.vertices()[v].id;
        if (super) return std::abs(flux.at(net, hams, v) - max_flux) <= tol;
        return data.vertex_in_extended_aubry(id);
    };
    const auto arc_counts = [&](std::size_t a) {
        if (super) return false;  // only the maximal-flux vertices anchor
        return data.arcs.count(net.arcs()[a].id) > 0;
    };

    CurveVisitReport report;
    for (std::size_t node = 0; node < grid.size(); ++node) {
        const DiscreteCurve curve = backtrack(op, run.trajectory, node);
        CurveVisit visit;
        visit.node_id = grid.node_id(node);
        double t = 0.0;
        for (const auto& leg : curve.legs) {
            bool hit = false;
            if (leg.wait) {
                hit = vertex_counts(leg.vertex);
            } else {
                hit = arc_counts(leg.arc);
                for (double s : {leg.s_from, leg.s_to}) {
                    if (s == 0.0) hit = hit || vertex_counts(net.tail_index(leg.arc));
                    if (s == 1.0) hit = hit || vertex_counts(net.head_index(leg.arc));
                }
            }
            if (hit) {
                visit.hit = true;
                visit.first_time = t;
                break;
            }
            t += leg.duration;
        }
        report.all_hit = report.all_hit && visit.hit;
        report.visits.push_back(std::move(visit));
    }
    return report;
}

double measure_space_time_lipschitz(const Trajectory& traj, double t0) {
    const Grid& grid = *traj.grid;
    const Network& net = grid.network();
    const std::size_t M = grid.nodes_per_arc();
    double slope = 0.0;

    for (std::size_t k = 0; k < traj.layers.size(); ++k) {
        const double t = static_cast<double>(k) * traj.dt;
        if (t < t0) continue;
        const GridFunction& layer = traj.layers[k];
        for (std::size_t a = 0; a < net.arcs().size(); ++a) {
            for (std::size_t j = 0; j < M; ++j) {
                const std::size_t n0 = grid.arc_node(a, j);
                const std::size_t n1 = grid.arc_node(a, j + 1);
                const double mid =
                    (static_cast<double>(j) + 0.5) / static_cast<double>(M);
                const double dist = net.parameter_speed(a, mid) / static_cast<double>(M);
                slope = std::max(slope, std::abs(layer[n1] - layer[n0]) / dist);
            }
        }
        if (k + 1 < traj.layers.size()) {
            const GridFunction& next = traj.layers[k + 1];
            for (std::size_t i = 0; i < layer.size(); ++i) {
                slope = std::max(slope, std::abs(next[i] - layer[i]) / traj.dt);
            }
        }
    }
    return slope;
}

}  // namespace hjnet
