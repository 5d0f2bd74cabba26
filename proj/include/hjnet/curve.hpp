#pragma once

#include <string>
#include <vector>

#include "hjnet/evolution.hpp"
#include "hjnet/hamiltonian.hpp"
#include "hjnet/network.hpp"

namespace hjnet {

/// One piece of a time-parameterized network curve: a monotone sub-arc
/// traversal or a wait at a vertex.
struct CurveSegment {
    bool wait = false;
    std::size_t arc = 0;
    double s_from = 0.0;
    double s_to = 0.0;
    std::size_t vertex = 0;
    double duration = 0.0;
};

struct NetworkCurve {
    std::vector<CurveSegment> segments;

    double total_duration() const;
    bool has_motion() const;
    /// Continuity (segment ends meet the next start canonically) and
    /// positive durations.
    std::vector<std::string> validate(const Network& net) const;
};

NetworkCurve curve_from_legs(const std::vector<CurveLeg>& legs);

/// Support-function cost of the traversal at the given level; waits are
/// free and the value is independent of the segment durations.
double cost_sigma(const Network& net, const HamiltonianSet& hams, const NetworkCurve& curve,
                  double level);

/// Integrated Lagrangian of the timed curve, with waits priced at the flux
/// limiter of their vertex.
double cost_lagrangian(const Network& net, const HamiltonianSet& hams, const FluxLimiter& flux,
                       const NetworkCurve& curve);

/// Largest value of -L(.,0) along the visited points: the threshold above
/// which a level admits an optimal-time reparametrization of the curve.
double admissible_floor(const Network& net, const HamiltonianSet& hams, const FluxLimiter& flux,
                        const NetworkCurve& curve);

/// Duration of the full traversal of an arc at the parametrization whose
/// Lagrangian cost plus `level` matches the support cost pointwise;
/// strictly decreasing in the level. Refused at or below the arc's
/// critical floor, where the parametrization stalls.
double lagrangian_traversal_time(const ArcHamiltonian& ham, double level, bool forward);

struct RetimingResult {
    double level = 0.0;
    NetworkCurve curve;
    double duration = 0.0;
    /// cost_lagrangian + c * duration - cost_sigma(c)
    double gap = 0.0;
    bool attained = false;
};

/// Searches levels above the admissible floor for durations making the
/// Lagrangian cost plus c*T approach the critical support cost within
/// `eta`; reports non-attainment when the duration exceeds `t_cap` first.
RetimingResult approx_optimal_time(const Network& net, const HamiltonianSet& hams,
                                   const FluxLimiter& flux, const NetworkCurve& curve, double c,
                                   double eta = 1e-4, double t_cap = 1e3);

}  // namespace hjnet
