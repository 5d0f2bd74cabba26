#include "hjnet/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hjnet {

Grid::Grid(std::shared_ptr<const Network> net, std::size_t nodes_per_arc)
    : net_(std::move(net)), M_(nodes_per_arc) {
    if (M_ < 4) throw std::invalid_argument("grid needs at least 4 intervals per arc");

    const auto& vertices = net_->vertices();
    std::vector<std::size_t> vertex_order(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) vertex_order[i] = i;
    std::sort(vertex_order.begin(), vertex_order.end(), [&](std::size_t a, std::size_t b) {
        return vertices[a].id < vertices[b].id;
    });

    vertex_nodes_.resize(vertices.size());
    for (std::size_t v : vertex_order) {
        vertex_nodes_[v] = points_.size();
        points_.push_back(NetworkPoint::vertex(v));
        ids_.push_back(vertices[v].id);
    }

    const auto& arcs = net_->arcs();
    std::vector<std::size_t> arc_order(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) arc_order[i] = i;
    std::sort(arc_order.begin(), arc_order.end(),
              [&](std::size_t a, std::size_t b) { return arcs[a].id < arcs[b].id; });

    arc_nodes_.assign(arcs.size(), {});
    for (std::size_t a : arc_order) {
        auto& nodes = arc_nodes_[a];
        nodes.resize(M_ + 1);
        nodes[0] = vertex_nodes_[net_->tail_index(a)];
        nodes[M_] = vertex_nodes_[net_->head_index(a)];
        for (std::size_t j = 1; j < M_; ++j) {
            nodes[j] = points_.size();
            points_.push_back(NetworkPoint::interior(
                a, static_cast<double>(j) / static_cast<double>(M_)));
            ids_.push_back(arcs[a].id + ":" + std::to_string(j));
        }
    }
}

std::size_t Grid::arc_node(std::size_t arc_index, std::size_t j) const {
    return arc_nodes_[arc_index][j];
}

std::size_t Grid::node_by_id(const std::string& id) const {
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (ids_[i] == id) return i;
    }
    throw std::invalid_argument("unknown node id: " + id);
}

double sup_distance(const GridFunction& a, const GridFunction& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

}  // namespace hjnet
