#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "hjnet/network.hpp"

namespace hjnet {

/// Uniform discretization of the network: M+1 nodes per arc at s = j/M,
/// with endpoint nodes aliased to shared vertex nodes. Node ordering is
/// deterministic: vertices sorted by id first, then interior nodes by
/// (arc id, j).
class Grid {
  public:
    Grid(std::shared_ptr<const Network> net, std::size_t nodes_per_arc);

    const Network& network() const { return *net_; }
    std::shared_ptr<const Network> network_ptr() const { return net_; }
    std::size_t nodes_per_arc() const { return M_; }
    std::size_t size() const { return points_.size(); }
    double spacing() const { return 1.0 / static_cast<double>(M_); }

    const NetworkPoint& point(std::size_t node) const { return points_[node]; }
    const std::string& node_id(std::size_t node) const { return ids_[node]; }

    std::size_t vertex_node(std::size_t vertex_index) const { return vertex_nodes_[vertex_index]; }
    /// Node holding parameter j/M on the given arc (vertex node at j=0, M).
    std::size_t arc_node(std::size_t arc_index, std::size_t j) const;

    /// Index of the node with the given id; throws if unknown.
    std::size_t node_by_id(const std::string& id) const;

  private:
    std::shared_ptr<const Network> net_;
    std::size_t M_;
    std::vector<NetworkPoint> points_;
    std::vector<std::string> ids_;
    std::vector<std::size_t> vertex_nodes_;            // vertex index -> node
    std::vector<std::vector<std::size_t>> arc_nodes_;  // arc index -> nodes at j=0..M
};

/// Scalar function sampled on a grid, tagged with the time it represents.
struct GridFunction {
    std::shared_ptr<const Grid> grid;
    std::vector<double> values;
    double time = 0.0;

    GridFunction() = default;
    GridFunction(std::shared_ptr<const Grid> g, double fill = 0.0, double t = 0.0)
        : grid(std::move(g)), values(grid->size(), fill), time(t) {}

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }
};

double sup_distance(const GridFunction& a, const GridFunction& b);

}  // namespace hjnet
