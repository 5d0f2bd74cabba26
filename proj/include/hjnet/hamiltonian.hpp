#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hjnet/network.hpp"

namespace hjnet {

/// Coefficient function on [0,1], piecewise linear between uniform samples.
class PiecewiseLinear {
  public:
    PiecewiseLinear() : samples_{0.0, 0.0} {}
    explicit PiecewiseLinear(std::vector<double> samples);
    static PiecewiseLinear constant(double value) { return PiecewiseLinear({value, value}); }

    double operator()(double s) const;
    double min() const;
    double max() const;
    const std::vector<double>& samples() const { return samples_; }

  private:
    std::vector<double> samples_;
};

enum class HamiltonianFamily { PowerPotential, ShiftedQuadratic };

/// Per-arc Hamiltonian from one of two closed-form families:
///   power_potential   H(s,mu) = |mu|^p - V(s),            p > 1
///   shifted_quadratic H(s,mu) = alpha*(mu - b(s))^2 - V(s), alpha > 0
/// Both are continuous, superlinear, convex and strictly quasiconvex in mu.
/// The reversed-arc Hamiltonian H~(s,mu) = H(1-s,-mu) is derived on the
/// fly and never stored.
struct ArcHamiltonian {
    HamiltonianFamily family = HamiltonianFamily::PowerPotential;
    double p = 2.0;        // power_potential exponent
    double alpha = 1.0;    // shifted_quadratic stiffness
    PiecewiseLinear b;     // shifted_quadratic drift
    PiecewiseLinear V;     // potential, both families

    static ArcHamiltonian power(double p, PiecewiseLinear V);
    static ArcHamiltonian shifted(double alpha, PiecewiseLinear b, PiecewiseLinear V);

    std::vector<std::string> validate(const std::string& arc_id) const;

    /// H(s,mu) on the stored orientation; `reversed` evaluates the inverse
    /// arc via H~(s,mu) = H(1-s,-mu).
    double eval(double s, double mu, bool reversed = false) const;
    double d_mu(double s, double mu, bool reversed = false) const;

    /// Pointwise minimum over mu and its unique argmin.
    struct Minimum {
        double value;
        double argmin;
    };
    Minimum minimum(double s, bool reversed = false) const;

    /// Largest (sign=+1) or smallest (sign=-1) root of H(s,.) = a, found
    /// by doubling a bracket outward from the argmin and bisecting to
    /// 1e-12 relative width. Empty when a is below the pointwise minimum.
    std::optional<double> sigma(double s, double a, int sign, bool reversed = false) const;

    /// Legendre transform L(s,lambda) = sup_mu(lambda*mu - H(s,mu)),
    /// in closed form per family.
    double lagrangian(double s, double lambda, bool reversed = false) const;

    /// max_s min_mu H(s,mu); exact since the coefficients are piecewise
    /// linear with extrema at sample nodes.
    double critical_floor() const;
};

using HamiltonianSet = std::map<std::string, ArcHamiltonian>;

/// Flux limiter: one constant per vertex, no smaller than the largest
/// incident critical floor. Minimal mode uses exactly that bound.
struct FluxLimiter {
    enum class Mode { Minimal, Custom };
    Mode mode = Mode::Minimal;
    std::map<std::string, double> values;  // custom overrides, by vertex id

    double at(const Network& net, const HamiltonianSet& hams, std::size_t vertex) const;
    double max_value(const Network& net, const HamiltonianSet& hams) const;
    std::vector<std::string> validate(const Network& net, const HamiltonianSet& hams) const;
};

/// Largest incident critical floor at a vertex (the minimal admissible
/// flux limiter value).
double minimal_flux_at(const Network& net, const HamiltonianSet& hams, std::size_t vertex);

struct LevelConstants {
    std::map<std::string, double> a_arc;
    double a0 = 0.0;
};

LevelConstants level_constants(const Network& net, const HamiltonianSet& hams);

const ArcHamiltonian& hamiltonian_for(const HamiltonianSet& hams, const Network& net,
                                      std::size_t arc_index);

/// Lagrangian on the network tangent bundle. Interior points evaluate the
/// host arc; a vertex with lambda = 0 yields -c_x; a vertex with nonzero
/// lambda must name the incident arc carrying the motion.
double lagrangian_network(const Network& net, const HamiltonianSet& hams,
                          const FluxLimiter& flux, const NetworkPoint& x, double lambda,
                          std::optional<std::size_t> along_arc = std::nullopt);

/// For arcs at the critical level with c = a0, the pointwise minimum of H
/// must be constant in s; reports offenders.
std::vector<std::string> validate_h5(const Network& net, const HamiltonianSet& hams, double c,
                                     double tol = 1e-9);

}  // namespace hjnet
