#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "hjnet/hamiltonian.hpp"
#include "hjnet/network.hpp"

namespace hjnet {

/// Trapezoid quadrature profile of the support functions sigma+-(s) on a
/// single arc at a fixed level, over a uniform refinement of the
/// coefficient grid (at least 65 nodes, sample kinks on nodes).
class ArcLevelProfile {
  public:
    ArcLevelProfile() = default;
    ArcLevelProfile(const ArcHamiltonian& ham, double level, std::size_t min_nodes = 65);

    bool feasible() const { return feasible_; }
    /// integral of sigma+ over [s1,s2], s1 <= s2
    double integral_plus(double s1, double s2) const;
    /// integral of sigma- over [s1,s2], s1 <= s2
    double integral_minus(double s1, double s2) const;
    double max_abs_sigma() const { return max_abs_sigma_; }

  private:
    const ArcHamiltonian* ham_ = nullptr;
    double level_ = 0.0;
    bool feasible_ = false;
    std::vector<double> s_;
    std::vector<double> sig_plus_, sig_minus_;
    std::vector<double> prefix_plus_, prefix_minus_;
    double max_abs_sigma_ = 0.0;

    double prefix_at(const std::vector<double>& prefix, const std::vector<double>& vals,
                     int sign, double s) const;
};

/// Directed edge of the level graph: one traversal direction of an arc.
struct LevelEdge {
    std::size_t arc;
    bool forward;  // tail->head if true
    std::size_t from;
    std::size_t to;
    double weight;
};

/// Weighted digraph carrying the curve-cost reduction at a fixed level:
/// each arc contributes a forward edge of weight  W+ = int sigma+ ds and a
/// backward edge of weight  W- = -int sigma- ds.
class LevelGraph {
  public:
    LevelGraph(std::shared_ptr<const Network> net, const HamiltonianSet* hams, double level,
               std::size_t min_quad_nodes = 65);

    const Network& network() const { return *net_; }
    std::shared_ptr<const Network> network_ptr() const { return net_; }
    const HamiltonianSet& hamiltonians() const { return *hams_; }
    double level() const { return level_; }
    bool feasible() const { return feasible_; }
    const std::vector<LevelEdge>& edges() const { return edges_; }
    const ArcLevelProfile& profile(std::size_t arc) const { return profiles_[arc]; }
    double weight_forward(std::size_t arc) const;
    double weight_backward(std::size_t arc) const;
    double max_abs_weight() const { return max_abs_weight_; }

    bool has_negative_cycle() const;
    /// Vertex-to-vertex semidistance table (Bellman-Ford); throws when the
    /// graph carries a negative cycle.
    const std::vector<std::vector<double>>& vertex_matrix() const;

  private:
    std::shared_ptr<const Network> net_;
    const HamiltonianSet* hams_;
    double level_;
    bool feasible_ = false;
    std::vector<ArcLevelProfile> profiles_;
    std::vector<LevelEdge> edges_;
    double max_abs_weight_ = 0.0;

    mutable bool matrix_ready_ = false;
    mutable bool negative_cycle_ = false;
    mutable std::vector<std::vector<double>> matrix_;

    void compute_matrix() const;
};

/// Minimum total weight over directed simple cycles (two-cycles through a
/// single arc included). Exact by enumeration up to `max_arcs_exact` arcs;
/// beyond that, Bellman-Ford gives the sign and a shift-based lower bound.
double min_cycle_gap(const LevelGraph& graph, std::size_t max_arcs_exact = 12);

/// Smallest level at which all directed cycles have nonnegative weight.
/// Returns the floor a0 when the gap there is already nonnegative,
/// otherwise bisects the monotone gap function to 1e-9.
double critical_value(const Network& net, const HamiltonianSet& hams);

/// Semidistance between two network points at the graph's level: shortest
/// directed path cost with partial sigma-integrals on the end arcs.
double semidistance(const LevelGraph& graph, const NetworkPoint& y, const NetworkPoint& x);

}  // namespace hjnet
