#include "hjnet/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hjnet {

PiecewiseLinear::PiecewiseLinear(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.size() < 2) throw std::invalid_argument("coefficient needs at least 2 samples");
    for (double v : samples_) {
        if (!std::isfinite(v)) throw std::invalid_argument("coefficient sample not finite");
    }
}

double PiecewiseLinear::operator()(double s) const {
    const std::size_t segs = samples_.size() - 1;
    const double pos = std::clamp(s, 0.0, 1.0) * static_cast<double>(segs);
    const std::size_t j = static_cast<std::size_t>(
        std::min(static_cast<double>(segs - 1), std::floor(pos)));
    const double frac = pos - static_cast<double>(j);
    return samples_[j] + frac * (samples_[j + 1] - samples_[j]);
}

double PiecewiseLinear::min() const { return *std::min_element(samples_.begin(), samples_.end()); }
double PiecewiseLinear::max() const { return *std::max_element(samples_.begin(), samples_.end()); }

ArcHamiltonian ArcHamiltonian::power(double p, PiecewiseLinear V) {
    ArcHamiltonian h;
    h.family = HamiltonianFamily::PowerPotential;
    h.p = p;
    h.V = std::move(V);
    return h;
}

ArcHamiltonian ArcHamiltonian::shifted(double alpha, PiecewiseLinear b, PiecewiseLinear V) {
    ArcHamiltonian h;
    h.family = HamiltonianFamily::ShiftedQuadratic;
    h.alpha = alpha;
    h.b = std::move(b);
    h.V = std::move(V);
    return h;
}

std::vector<std::string> ArcHamiltonian::validate(const std::string& arc_id) const {
    std::vector<std::string> violations;
    if (family == HamiltonianFamily::PowerPotential) {
        if (!(p > 1.0)) violations.push_back("arc " + arc_id + ": exponent p must be > 1");
    } else {
        if (!(alpha > 0.0)) violations.push_back("arc " + arc_id + ": stiffness alpha must be > 0");
    }
    return violations;
}

double ArcHamiltonian::eval(double s, double mu, bool reversed) const {
    if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("arc parameter outside [0,1]");
    if (reversed) {
        s = 1.0 - s;
        mu = -mu;
    }
    if (family == HamiltonianFamily::PowerPotential) {
        return std::pow(std::abs(mu), p) - V(s);
    }
    const double d = mu - b(s);
    return alpha * d * d - V(s);
}

double ArcHamiltonian::d_mu(double s, double mu, bool reversed) const {
    if (reversed) {
        // dH~/dmu(s,mu) = -dH/dmu(1-s,-mu)
        return -d_mu(1.0 - s, -mu, false);
    }
    if (family == HamiltonianFamily::PowerPotential) {
        if (mu == 0.0) return 0.0;
        return p * std::pow(std::abs(mu), p - 1.0) * (mu > 0.0 ? 1.0 : -1.0);
    }
    return 2.0 * alpha * (mu - b(s));
}

ArcHamiltonian::Minimum ArcHamiltonian::minimum(double s, bool reversed) const {
    if (reversed) {
        const Minimum m = minimum(1.0 - s, false);
        return {m.value, -m.argmin};
    }
    if (family == HamiltonianFamily::PowerPotential) {
        return {-V(s), 0.0};
    }
    return {-V(s), b(s)};
}

std::optional<double> ArcHamiltonian::sigma(double s, double a, int sign, bool reversed) const {
    if (!std::isfinite(a)) throw std::invalid_argument("level must be finite");
    if (reversed) {
        // sigma^+ on the inverse arc at s is -sigma^- on the arc at 1-s.
        const auto r = sigma(1.0 - s, a, -sign, false);
        if (!r) return std::nullopt;
        return -*r;
    }
    const Minimum m = minimum(s);
    if (a < m.value) return std::nullopt;
    if (a == m.value) return m.argmin;

    const double dir = sign >= 0 ? 1.0 : -1.0;
    double lo = m.argmin;
    double step = std::abs(m.argmin) + 1.0;
    double hi = m.argmin + dir * step;
    while (eval(s, hi) < a) {
        step *= 2.0;
        hi = m.argmin + dir * step;
    }
    // H is strictly monotone between argmin and the bracket end.
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (eval(s, mid) < a) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (std::abs(hi - lo) <= 1e-12 * std::max(1.0, std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

double ArcHamiltonian::lagrangian(double s, double lambda, bool reversed) const {
    if (reversed) {
        s = 1.0 - s;
        lambda = -lambda;
    }
    if (family == HamiltonianFamily::PowerPotential) {
        const double q = p / (p - 1.0);
        return (p - 1.0) * std::pow(std::abs(lambda) / p, q) + V(s);
    }
    return lambda * lambda / (4.0 * alpha) + b(s) * lambda + V(s);
}

double ArcHamiltonian::critical_floor() const {
    // min_mu H = -V(s); the max over s of a piecewise-linear function is
    // attained at a sample node.
    return 0.0 - V.min();
}

double minimal_flux_at(const Network& net, const HamiltonianSet& hams, std::size_t vertex) {
    double value = -std::numeric_limits<double>::infinity();
    for (const auto& inc : net.incident(vertex)) {
        value = std::max(value, hamiltonian_for(hams, net, inc.arc).critical_floor());
    }
    return value;
}

double FluxLimiter::at(const Network& net, const HamiltonianSet& hams, std::size_t vertex) const {
    if (mode == Mode::Custom) {
        auto it = values.find(net.vertices()[vertex].id);
        if (it != values.end()) return it->second;
    }
    return minimal_flux_at(net, hams, vertex);
}

double FluxLimiter::max_value(const Network& net, const HamiltonianSet& hams) const {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < net.vertices().size(); ++v) {
        m = std::max(m, at(net, hams, v));
    }
    return m;
}

std::vector<std::string> FluxLimiter::validate(const Network& net,
                                               const HamiltonianSet& hams) const {
    std::vector<std::string> violations;
    for (const auto& [id, value] : values) {
        if (!net.has_vertex(id)) {
            violations.push_back("flux limiter references unknown vertex " + id);
        }
    }
    for (std::size_t v = 0; v < net.vertices().size(); ++v) {
        const double floor = minimal_flux_at(net, hams, v);
        if (at(net, hams, v) < floor - 1e-12) {
            violations.push_back("flux limiter at vertex " + net.vertices()[v].id +
                                 " below incident critical floor");
        }
    }
    return violations;
}

LevelConstants level_constants(const Network& net, const HamiltonianSet& hams) {
    LevelConstants out;
    out.a0 = -std::numeric_limits<double>::infinity();
    for (const auto& arc : net.arcs()) {
        auto it = hams.find(arc.id);
        if (it == hams.end()) throw std::invalid_argument("missing Hamiltonian for arc " + arc.id);
        const double a = it->second.critical_floor();
        out.a_arc[arc.id] = a;
        out.a0 = std::max(out.a0, a);
    }
    return out;
}

const ArcHamiltonian& hamiltonian_for(const HamiltonianSet& hams, const Network& net,
                                      std::size_t arc_index) {
    auto it = hams.find(net.arcs()[arc_index].id);
    if (it == hams.end()) {
        throw std::invalid_argument("missing Hamiltonian for arc " + net.arcs()[arc_index].id);
    }
    return it->second;
}

double lagrangian_network(const Network& net, const HamiltonianSet& hams,
                          const FluxLimiter& flux, const NetworkPoint& x, double lambda,
                          std::optional<std::size_t> along_arc) {
    if (!x.is_vertex()) {
        return hamiltonian_for(hams, net, x.arc_index()).lagrangian(x.s(), lambda);
    }
    if (lambda == 0.0) {
        return -flux.at(net, hams, x.vertex_index());
    }
    if (!along_arc) {
        throw std::invalid_argument("vertex motion requires the incident arc to be named");
    }
    const std::size_t arc = *along_arc;
    double s = 1.0;
    bool found = false;
    for (const auto& inc : net.incident(x.vertex_index())) {
        if (inc.arc == arc) {
            s = inc.end == ArcEnd::Tail ? 0.0 : 1.0;
            found = true;
            break;
        }
    }
    if (!found) throw std::invalid_argument("named arc is not incident to the vertex");
    return hamiltonian_for(hams, net, arc).lagrangian(s, lambda);
}

std::vector<std::string> validate_h5(const Network& net, const HamiltonianSet& hams, double c,
                                     double tol) {
    std::vector<std::string> violations;
    const LevelConstants consts = level_constants(net, hams);
    if (std::abs(c - consts.a0) > tol) return violations;  // condition only binds at c = a0
    for (const auto& arc : net.arcs()) {
        const ArcHamiltonian& ham = hams.at(arc.id);
        if (std::abs(consts.a_arc.at(arc.id) - c) > tol) continue;
        // min_mu H = -V pointwise; constancy means V has zero spread.
        if (ham.V.max() - ham.V.min() > tol) {
            violations.push_back("H5 violated on " + arc.id);
        }
    }
    return violations;
}

}  // namespace hjnet
