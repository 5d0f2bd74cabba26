#pragma once

#include <map>
#include <string>

#include "hjnet/scenario.hpp"

namespace hjnet {

/// Result of a CLI command: JSON documents and CSV tables keyed by the
/// file name they are written to.
struct CommandOutputs {
    std::map<std::string, nlohmann::json> json_files;
    std::map<std::string, std::string> csv_files;
};

struct CommandOptions {
    std::size_t snapshot_every = 1;
    unsigned seed = 0;
    unsigned threads = 1;
    bool dump_curves = false;  // backtracked optimal curves from vertex nodes
};

/// Static layer: level constants, critical value, H5 check, Aubry support,
/// static classes, extended vertices, vertex semidistance table.
CommandOutputs cmd_analyze(const Scenario& scenario, const CommandOptions& options = {});

/// Vertex semidistance table at the requested level (default: critical).
CommandOutputs cmd_distances(const Scenario& scenario, const CommandOptions& options = {});

/// Maximal subsolution below the boundary data at the requested level.
CommandOutputs cmd_solve_eikonal(const Scenario& scenario, const CommandOptions& options = {});

/// Time evolution of the datum: trajectory table and final layer.
CommandOutputs cmd_evolve(const Scenario& scenario, const CommandOptions& options = {});

/// Convergence run against the static prediction.
CommandOutputs cmd_asymptotics(const Scenario& scenario, const CommandOptions& options = {});

/// Costs and optimal-time retiming of the scenario's curve.
CommandOutputs cmd_reparam_cost(const Scenario& scenario, const CommandOptions& options = {});

}  // namespace hjnet
