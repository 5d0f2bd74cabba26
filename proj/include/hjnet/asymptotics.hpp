#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hjnet/eikonal.hpp"
#include "hjnet/evolution.hpp"

namespace hjnet {

struct ConvergenceReport {
    std::string regime;  // "critical" or "supercritical"
    double drift = 0.0;
    double c = 0.0;
    double a0 = 0.0;
    double epsilon_scheme = 0.0;
    double tol_conv = 0.0;
    std::vector<double> residuals;  // r(k) = sup |v(.,k dt) + drift*k*dt - u|
    bool converged = false;
    double T_detect = -1.0;
    double final_residual = 0.0;
};

/// Full result of an asymptotics run, keeping the evolution and the static
/// data for follow-up checks.
struct AsymptoticsRun {
    ConvergenceReport report;
    AubryData aubry_data;
    PredictedLimit limit;
    Trajectory trajectory;
    GridFunction datum;
};

/// Evolves the datum against the static prediction: picks the regime from
/// the flux limiter, measures the scheme error by evolving the predicted
/// limit itself, and reports the drift-corrected residual series.
AsymptoticsRun run_asymptotics(std::shared_ptr<const Grid> grid, const HamiltonianSet& hams,
                               const FluxLimiter& flux, const GridFunction& phi,
                               const SchemeParams& params, double horizon,
                               bool backpointers = true, unsigned threads = 1);

struct FiniteTimeCertificate {
    bool expected_finite = false;
    bool observed = false;
    double T_detect = -1.0;
    std::string reason;
};

/// Finite-time convergence is expected above the critical flux level, when
/// every static class carries a vertex at the critical flux value (with
/// c > a0), or when the datum is a certified discrete subsolution.
FiniteTimeCertificate finite_time_certificate(const AsymptoticsRun& run,
                                              const Network& net, const HamiltonianSet& hams,
                                              const FluxLimiter& flux);

/// sup |S(t) u + b t - u| at the probe time.
double fixed_point_residual(const StepOperator& op, const GridFunction& u_candidate, double b,
                            std::size_t probe_steps);

struct CurveVisit {
    std::string node_id;
    bool hit = false;
    double first_time = -1.0;
};

struct CurveVisitReport {
    std::vector<CurveVisit> visits;
    bool all_hit = true;
};

/// Backtracks the optimal discrete curve from every node and records when
/// it first touches the extended Aubry set (critical regime) or the
/// maximal-flux vertices (supercritical).
CurveVisitReport check_optimal_curves_hit_aubry(const StepOperator& op, const AsymptoticsRun& run,
                                                const Network& net, const HamiltonianSet& hams,
                                                const FluxLimiter& flux);

/// Largest local space/time slope of the trajectory for times >= t0.
double measure_space_time_lipschitz(const Trajectory& traj, double t0);

}  // namespace hjnet
