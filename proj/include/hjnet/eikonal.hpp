#pragma once

#include <set>
#include <string>
#include <vector>

#include "hjnet/grid.hpp"
#include "hjnet/level_graph.hpp"

namespace hjnet {

/// One static class of the Aubry set: the arcs supporting a family of
/// zero-cost closed curves and the vertices they pass through.
struct StaticClass {
    std::set<std::string> arcs;
    std::set<std::string> vertices;
};

struct TightEdge {
    std::string arc;
    bool forward;
};

struct AubryData {
    double c = 0.0;
    std::set<std::string> arcs;      // support of the Aubry set
    std::set<std::string> vertices;  // vertices on the support
    std::vector<StaticClass> classes;
    std::set<std::string> extended_vertices;  // vertices outside the support
                                              // whose flux limiter equals c
    std::vector<TightEdge> tight_edges;

    bool vertex_in_extended_aubry(const std::string& id) const {
        return vertices.count(id) > 0 || extended_vertices.count(id) > 0;
    }
};

/// Critical value, Aubry support, static classes and extended vertices for
/// the given flux limiter.
AubryData aubry(const Network& net, const HamiltonianSet& hams, const FluxLimiter& flux);

/// Sample points pinning each static class (class vertices plus arc
/// midpoints) together with the extended vertices; minimizing over them is
/// equivalent to minimizing over the whole extended Aubry set.
std::vector<NetworkPoint> aubry_sample_points(const Network& net, const AubryData& data);

struct BoundaryCondition {
    std::vector<NetworkPoint> points;
    std::vector<double> values;
};

/// Maximal subsolution not exceeding the boundary data:
/// u(x) = min_y (w(y) + S_a(y,x)) evaluated on the grid.
GridFunction solve_eikonal(const LevelGraph& graph, const BoundaryCondition& boundary,
                           std::shared_ptr<const Grid> grid);

/// Checks the pairwise characterization w(x) - w(y) <= S_a(y,x) on node
/// pairs; all pairs on small grids, a seeded sample beyond `pair_cap`.
std::vector<std::string> check_subsolution(const GridFunction& w, const LevelGraph& graph,
                                           double tol = 1e-8, std::size_t pair_cap = 40000,
                                           unsigned seed = 0);

struct PredictedLimit {
    double drift = 0.0;  // c in the critical regime, max flux value otherwise
    bool supercritical = false;
    GridFunction u;
};

/// Large-time limit of the drift-corrected evolution, built from the
/// static layer: minimization through the extended Aubry set at the
/// critical level, or through the maximal-flux vertices above it.
PredictedLimit predicted_limit(const Network& net, const HamiltonianSet& hams,
                               const FluxLimiter& flux, const GridFunction& phi);

/// Lipschitz bound for solutions at the graph's level, from the largest
/// momentum against the smallest geometric parameter speed.
double subsolution_lipschitz_bound(const LevelGraph& graph);

}  // namespace hjnet
