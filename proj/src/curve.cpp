#include "hjnet/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "hjnet/level_graph.hpp"

namespace hjnet {

namespace {

constexpr std::size_t kQuadCells = 128;

NetworkPoint segment_start(const Network& net, const CurveSegment& seg) {
    if (seg.wait) return NetworkPoint::vertex(seg.vertex);
    return net.canonicalize({seg.arc, false}, seg.s_from);
}

NetworkPoint segment_end(const Network& net, const CurveSegment& seg) {
    if (seg.wait) return NetworkPoint::vertex(seg.vertex);
    return net.canonicalize({seg.arc, false}, seg.s_to);
}

// Visits quadrature nodes of [lo, hi] on the coefficient-aligned grid.
template <typename F>
void scan_range(double lo, double hi, F&& fn) {
    const double h = 1.0 / static_cast<double>(kQuadCells);
    fn(lo);
    for (std::size_t k = 0; k <= kQuadCells; ++k) {
        const double s = static_cast<double>(k) * h;
        if (s > lo && s < hi) fn(s);
    }
    if (hi > lo) fn(hi);
}

}  // namespace

double NetworkCurve::total_duration() const {
    double t = 0.0;
    for (const auto& seg : segments) t += seg.duration;
    return t;
}

bool NetworkCurve::has_motion() const {
    return std::any_of(segments.begin(), segments.end(),
                       [](const CurveSegment& s) { return !s.wait && s.s_from != s.s_to; });
}

std::vector<std::string> NetworkCurve::validate(const Network& net) const {
    std::vector<std::string> violations;
    if (segments.empty()) {
        violations.push_back("curve has no segments");
        return violations;
    }
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& seg = segments[i];
        if (!(seg.duration > 0.0)) {
            violations.push_back("segment " + std::to_string(i) + " has nonpositive duration");
        }
        if (!seg.wait) {
            if (seg.arc >= net.arcs().size()) {
                violations.push_back("segment " + std::to_string(i) + " references unknown arc");
                continue;
            }
            if (seg.s_from < 0.0 || seg.s_from > 1.0 || seg.s_to < 0.0 || seg.s_to > 1.0) {
                violations.push_back("segment " + std::to_string(i) + " parameter outside [0,1]");
            }
        } else if (seg.vertex >= net.vertices().size()) {
            violations.push_back("segment " + std::to_string(i) + " references unknown vertex");
        }
        if (i + 1 < segments.size()) {
            if (!(segment_end(net, seg) == segment_start(net, segments[i + 1]))) {
                violations.push_back("curve discontinuous between segments " + std::to_string(i) +
                                     " and " + std::to_string(i + 1));
            }
        }
    }
    return violations;
}

NetworkCurve curve_from_legs(const std::vector<CurveLeg>& legs) {
    NetworkCurve curve;
    for (const auto& leg : legs) {
        CurveSegment seg;
        seg.wait = leg.wait;
        seg.arc = leg.arc;
        seg.s_from = leg.s_from;
        seg.s_to = leg.s_to;
        seg.vertex = leg.vertex;
        seg.duration = leg.duration;
        curve.segments.push_back(seg);
    }
    return curve;
}

double cost_sigma(const Network& net, const HamiltonianSet& hams, const NetworkCurve& curve,
                  double level) {
    double total = 0.0;
    std::map<std::size_t, ArcLevelProfile> profiles;
    for (const auto& seg : curve.segments) {
        if (seg.wait || seg.s_from == seg.s_to) continue;
        auto it = profiles.find(seg.arc);
        if (it == profiles.end()) {
            it = profiles
                     .emplace(seg.arc,
                              ArcLevelProfile(hamiltonian_for(hams, net, seg.arc), level))
                     .first;
        }
        if (!it->second.feasible()) {
            throw std::domain_error("level below the critical floor of a visited arc");
        }
        if (seg.s_to > seg.s_from) {
            total += it->second.integral_plus(seg.s_from, seg.s_to);
        } else {
            total -= it->second.integral_minus(seg.s_to, seg.s_from);
        }
    }
    return total;
}

double cost_lagrangian(const Network& net, const HamiltonianSet& hams, const FluxLimiter& flux,
                       const NetworkCurve& curve) {
    double total = 0.0;
    for (const auto& seg : curve.segments) {
        if (seg.wait) {
            total += seg.duration * (-flux.at(net, hams, seg.vertex));
            continue;
        }
        const ArcHamiltonian& ham = hamiltonian_for(hams, net, seg.arc);
        if (seg.s_from == seg.s_to) {
            total += seg.duration * ham.lagrangian(seg.s_from, 0.0);
            continue;
        }
        const double lambda = (seg.s_to - seg.s_from) / seg.duration;
        const double lo = std::min(seg.s_from, seg.s_to);
        const double hi = std::max(seg.s_from, seg.s_to);
        const double span = hi - lo;
        double prev = -1.0;
        double acc = 0.0;
        scan_range(lo, hi, [&](double s) {
            if (prev >= 0.0 && s > prev) {
                acc += (s - prev) * ham.lagrangian(0.5 * (prev + s), lambda);
            }
            prev = s;
        });
        total += seg.duration * acc / span;
    }
    return total;
}

double admissible_floor(const Network& net, const HamiltonianSet& hams, const FluxLimiter& flux,
                        const NetworkCurve& curve) {
    double floor = -std::numeric_limits<double>::infinity();
    for (const auto& seg : curve.segments) {
        if (seg.wait) {
            floor = std::max(floor, flux.at(net, hams, seg.vertex));
            continue;
        }
        const ArcHamiltonian& ham = hamiltonian_for(hams, net, seg.arc);
        const double lo = std::min(seg.s_from, seg.s_to);
        const double hi = std::max(seg.s_from, seg.s_to);
        scan_range(lo, hi, [&](double s) { floor = std::max(floor, ham.minimum(s).value); });
        // Endpoints lying on a vertex count as vertex visits.
        for (double s : {seg.s_from, seg.s_to}) {
            if (s == 0.0) floor = std::max(floor, flux.at(net, hams, net.tail_index(seg.arc)));
            if (s == 1.0) floor = std::max(floor, flux.at(net, hams, net.head_index(seg.arc)));
        }
    }
    return floor;
}

namespace {

// Speed of the optimal-time parametrization at parameter s: the
// Hamiltonian slope at the support root for the travel direction.
double parametrization_speed(const ArcHamiltonian& ham, double level, double s, bool forward) {
    const auto root = ham.sigma(s, level, forward ? +1 : -1);
    if (!root) throw std::domain_error("level infeasible on the arc");
    return std::abs(ham.d_mu(s, *root));
}

}  // namespace

double lagrangian_traversal_time(const ArcHamiltonian& ham, double level, bool forward) {
    if (!(level > ham.critical_floor())) {
        throw std::domain_error("traversal time requires a level strictly above the arc floor");
    }
    const double h = 1.0 / static_cast<double>(kQuadCells);
    double acc = 0.0;
    double prev = 1.0 / parametrization_speed(ham, level, 0.0, forward);
    for (std::size_t k = 1; k <= kQuadCells; ++k) {
        const double cur =
            1.0 / parametrization_speed(ham, level, static_cast<double>(k) * h, forward);
        acc += 0.5 * h * (prev + cur);
        prev = cur;
    }
    return acc;
}

namespace {

// Re-times the motion segments at the optimal parametrization of the
// level, subdividing on the quadrature grid; waits are left alone.
NetworkCurve retime_at_level(const Network& net, const HamiltonianSet& hams,
                             const NetworkCurve& curve, double level) {
    NetworkCurve out;
    for (const auto& seg : curve.segments) {
        if (seg.wait || seg.s_from == seg.s_to) {
            out.segments.push_back(seg);
            continue;
        }
        const ArcHamiltonian& ham = hamiltonian_for(hams, net, seg.arc);
        const bool forward = seg.s_to > seg.s_from;
        std::vector<double> cuts;
        scan_range(std::min(seg.s_from, seg.s_to), std::max(seg.s_from, seg.s_to),
                   [&](double s) { cuts.push_back(s); });
        if (!forward) std::reverse(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            CurveSegment piece;
            piece.arc = seg.arc;
            piece.s_from = cuts[i];
            piece.s_to = cuts[i + 1];
            const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
            piece.duration =
                std::abs(cuts[i + 1] - cuts[i]) / parametrization_speed(ham, level, mid, forward);
            out.segments.push_back(piece);
        }
    }
    return out;
}

}  // namespace

RetimingResult approx_optimal_time(const Network& net, const HamiltonianSet& hams,
                                   const FluxLimiter& flux, const NetworkCurve& curve, double c,
                                   double eta, double t_cap) {
    RetimingResult result;
    const double floor = admissible_floor(net, hams, flux, curve);
    const double sigma_c = cost_sigma(net, hams, curve, c);

    if (!curve.has_motion()) {
        result.level = std::max(c, floor);
        result.curve = curve;
        result.duration = curve.total_duration();
        result.gap = cost_lagrangian(net, hams, flux, curve) + c * result.duration - sigma_c;
        result.attained = result.gap <= eta;
        return result;
    }

    // The gap is minimized at the critical level when it sits strictly
    // above the floor; otherwise only approached as the level decreases
    // toward the floor, where the traversal time blows up.
    const bool critical_admissible = c > floor;
    double offset = critical_admissible ? 0.0 : 1.0;
    for (int iter = 0; iter < 80; ++iter) {
        const double level = critical_admissible ? c : floor + offset;
        NetworkCurve timed = retime_at_level(net, hams, curve, level);
        const double duration = timed.total_duration();
        const double gap = cost_lagrangian(net, hams, flux, timed) + c * duration - sigma_c;
        result.level = level;
        result.curve = std::move(timed);
        result.duration = duration;
        result.gap = gap;
        if (gap <= eta) {
            result.attained = true;
            return result;
        }
        if (duration > t_cap || critical_admissible) {
            result.attained = false;
            return result;
        }
        offset *= 0.5;
    }
    result.attained = false;
    return result;
}

}  // namespace hjnet
