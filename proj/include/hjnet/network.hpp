#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hjnet {

using Point = std::vector<double>;

/// Endpoint role of an arc at a vertex.
enum class ArcEnd { Tail, Head };

struct Vertex {
    std::string id;
    Point coords;
};

/// Oriented arc of the embedded network, parameterized on [0,1].
/// Geometry is a polyline sampled at uniform parameters j/(n-1); the
/// default is the straight segment between the endpoint coordinates.
struct Arc {
    std::string id;
    std::string tail;
    std::string head;
    std::vector<Point> geometry;
    double length = 0.0;
};

/// Reference to an arc or to its reversed parameterization.
struct ArcRef {
    std::size_t arc = 0;
    bool reversed = false;

    friend bool operator==(const ArcRef&, const ArcRef&) = default;
};

/// A point of the network, either a vertex or an interior arc point.
/// Construction normalizes the reversed view (s on the reversed arc maps
/// to 1-s on the stored orientation) and snaps s in {0,1} to the vertex.
class NetworkPoint {
  public:
    static NetworkPoint vertex(std::size_t vertex_index);
    static NetworkPoint interior(std::size_t arc_index, double s);

    bool is_vertex() const { return vertex_.has_value(); }
    std::size_t vertex_index() const { return *vertex_; }
    std::size_t arc_index() const { return arc_; }
    double s() const { return s_; }

    friend bool operator==(const NetworkPoint& a, const NetworkPoint& b);
    friend bool operator<(const NetworkPoint& a, const NetworkPoint& b);

  private:
    std::optional<std::size_t> vertex_;
    std::size_t arc_ = 0;
    double s_ = 0.0;
};

struct IncidentArc {
    std::size_t arc;
    ArcEnd end;
};

/// Embedded network: vertices joined by oriented arcs. Immutable once
/// built; interior disjointness of distinct arcs is declared by
/// construction, not checked geometrically.
class Network {
  public:
    Network(std::vector<Vertex> vertices, std::vector<Arc> arcs);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Arc>& arcs() const { return arcs_; }

    std::size_t vertex_index(const std::string& id) const;
    std::size_t arc_index(const std::string& id) const;
    bool has_vertex(const std::string& id) const;
    bool has_arc(const std::string& id) const;

    std::size_t tail_index(std::size_t arc) const { return arc_tail_[arc]; }
    std::size_t head_index(std::size_t arc) const { return arc_head_[arc]; }
    std::size_t endpoint_index(std::size_t arc, ArcEnd end) const {
        return end == ArcEnd::Tail ? arc_tail_[arc] : arc_head_[arc];
    }

    /// Arcs incident to a vertex, with the role the vertex plays.
    const std::vector<IncidentArc>& incident(std::size_t vertex) const {
        return incidence_[vertex];
    }

    /// Structural checks: unique ids, no loops, regular geometry,
    /// connectivity. Violations are returned as data.
    std::vector<std::string> validate() const;

    /// Canonical form of a network point; endpoint parameters become the
    /// vertex, reversed references are normalized by the constructor.
    NetworkPoint canonicalize(const ArcRef& ref, double s) const;
    NetworkPoint vertex_point(const std::string& id) const;

    /// Shortest-path distance along the network, with partial arc lengths
    /// for interior points.
    double geodesic_distance(const NetworkPoint& a, const NetworkPoint& b) const;

    /// Ambient coordinates of a network point.
    Point locate(const NetworkPoint& p) const;

    /// |dgamma/ds| at parameter s (piecewise constant along the polyline).
    double parameter_speed(std::size_t arc, double s) const;

    double total_length() const;

  private:
    std::vector<Vertex> vertices_;
    std::vector<Arc> arcs_;
    std::map<std::string, std::size_t> vertex_by_id_;
    std::map<std::string, std::size_t> arc_by_id_;
    std::vector<std::size_t> arc_tail_;
    std::vector<std::size_t> arc_head_;
    std::vector<std::vector<IncidentArc>> incidence_;
    // vertex-to-vertex shortest path lengths over arc lengths
    std::vector<std::vector<double>> vertex_dist_;

    void build_vertex_distances();
};

double polyline_length(const std::vector<Point>& pts);

}  // namespace hjnet
