#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "hjnet/grid.hpp"
#include "hjnet/hamiltonian.hpp"

namespace hjnet {

struct SchemeParams {
    std::size_t M = 40;          // intervals per arc
    double dt = 0.01;            // time step
    double lambda_max = 5.0;     // largest parameter speed per step
    double tol_conv = 0.0;       // 0 selects 2 * measured scheme error
    std::size_t hold_steps = 50; // consecutive steps below tolerance

    /// Structural checks: CFL (a step never crosses more than one arc) and
    /// enough speed headroom for the level's optimal parametrizations.
    std::vector<std::string> validate(const Network& net, const HamiltonianSet& hams,
                                      double working_level) const;
};

/// Largest optimal-parametrization speed at the given level, from the
/// Hamiltonian slope at the support roots.
double lagrangian_speed_bound(const Network& net, const HamiltonianSet& hams, double level);

/// One discrete step of an optimal curve, possibly split across a vertex.
struct CurveLeg {
    bool wait = false;
    std::size_t arc = 0;     // move legs
    double s_from = 0.0;
    double s_to = 0.0;
    std::size_t vertex = 0;  // wait legs
    double duration = 0.0;
};

/// One precomputed predecessor of a node: the value at the foot point is
/// w1*v[p1] + w2*v[p2] (a single node when w2 = 0, a linear interpolation
/// between the bracketing nodes for a fractional foot).
struct Candidate {
    std::uint32_t p1 = 0;
    std::uint32_t p2 = 0;
    double w1 = 1.0;
    double w2 = 0.0;
    double cost = 0.0;
    std::vector<CurveLeg> legs;

    std::uint32_t chain_pred() const { return w1 >= w2 ? p1 : p2; }
};

/// Bellman update of the Lax-Oleinik value: the new value at a node is the
/// least foot-point value plus the Lagrangian cost of reaching the node
/// within one time step. Feet are waiting in place, same-arc positions up
/// to lambda_max*dt away (grid nodes and interpolated fractional
/// positions), and node feet crossing one vertex with the time split
/// proportional to parameter distance. Candidate costs are precomputed
/// once per (grid, flux, params).
class StepOperator {
  public:
    StepOperator(std::shared_ptr<const Grid> grid, const HamiltonianSet* hams,
                 FluxLimiter flux, SchemeParams params);

    const Grid& grid() const { return *grid_; }
    std::shared_ptr<const Grid> grid_ptr() const { return grid_; }
    const SchemeParams& params() const { return params_; }
    const FluxLimiter& flux() const { return flux_; }
    double dt() const { return params_.dt; }
    const std::vector<Candidate>& candidates(std::size_t node) const { return cands_[node]; }
    double max_abs_cost() const { return max_abs_cost_; }
    void set_threads(unsigned n) { threads_ = n < 1 ? 1 : n; }

    /// Smallest-predecessor tie break keeps the result deterministic;
    /// `choice` (when given) records the winning candidate per node.
    GridFunction apply(const GridFunction& v, std::vector<std::uint32_t>* choice = nullptr) const;

  private:
    std::shared_ptr<const Grid> grid_;
    const HamiltonianSet* hams_;
    FluxLimiter flux_;
    SchemeParams params_;
    std::vector<std::vector<Candidate>> cands_;
    double max_abs_cost_ = 0.0;
    unsigned threads_ = 1;

    void build_candidates();
};

struct Trajectory {
    std::shared_ptr<const Grid> grid;
    double dt = 0.0;
    std::vector<GridFunction> layers;                   // indices 0..n
    std::vector<std::vector<std::uint32_t>> choices;    // per step 1..n when recorded

    std::size_t steps() const { return layers.empty() ? 0 : layers.size() - 1; }
    const GridFunction& final_layer() const { return layers.back(); }
    bool has_backpointers() const { return !choices.empty(); }
};

/// n-fold application of the step operator from the datum.
Trajectory evolve(const StepOperator& op, const GridFunction& phi, std::size_t steps,
                  bool backpointers = false);

struct DiscreteCurve {
    std::vector<std::size_t> nodes;  // node index at each layer, oldest first
    std::vector<CurveLeg> legs;      // time-ordered
    std::vector<double> step_costs;  // value decrement per step, time-ordered
    double total_cost = 0.0;
};

/// Argmin chain of the optimal discrete curve ending at `node` at the
/// final layer, following the heavier bracketing node through interpolated
/// feet. Step costs are the per-step value decrements along the chain, so
/// their sum reproduces v(x,T) - phi(chain start) exactly; they coincide
/// with the candidates' Lagrangian costs wherever the winning feet are
/// grid nodes.
DiscreteCurve backtrack(const StepOperator& op, const Trajectory& traj, std::size_t node);

/// Minimal action row h_T(y, .): evolution from a datum pinned at y and a
/// large barrier elsewhere. Values above `unreachable_threshold` mark
/// nodes unreachable within the horizon.
struct MinimalAction {
    GridFunction values;
    double unreachable_threshold = 0.0;
};
MinimalAction minimal_action(const StepOperator& op, std::size_t source_node, std::size_t steps);

/// Exhaustive recursion over all candidate-step sequences; equals the
/// evolved value exactly on instances small enough to enumerate.
double brute_force_value(const StepOperator& op, const GridFunction& phi, std::size_t steps,
                         std::size_t node);

}  // namespace hjnet
