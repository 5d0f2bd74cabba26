#include "hjnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

namespace hjnet {

namespace {

double point_distance(const Point& a, const Point& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

bool finite_point(const Point& p) {
    return std::all_of(p.begin(), p.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

double polyline_length(const std::vector<Point>& pts) {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        len += point_distance(pts[i], pts[i + 1]);
    }
    return len;
}

NetworkPoint NetworkPoint::vertex(std::size_t vertex_index) {
    NetworkPoint p;
    p.vertex_ = vertex_index;
    return p;
}

NetworkPoint NetworkPoint::interior(std::size_t arc_index, double s) {
    NetworkPoint p;
    p.arc_ = arc_index;
    p.s_ = s;
    return p;
}

bool operator==(const NetworkPoint& a, const NetworkPoint& b) {
    if (a.is_vertex() != b.is_vertex()) return false;
    if (a.is_vertex()) return a.vertex_index() == b.vertex_index();
    return a.arc_index() == b.arc_index() && a.s() == b.s();
}

bool operator<(const NetworkPoint& a, const NetworkPoint& b) {
    if (a.is_vertex() != b.is_vertex()) return a.is_vertex();
    if (a.is_vertex()) return a.vertex_index() < b.vertex_index();
    if (a.arc_index() != b.arc_index()) return a.arc_index() < b.arc_index();
    return a.s() < b.s();
}

Network::Network(std::vector<Vertex> vertices, std::vector<Arc> arcs)
    : vertices_(std::move(vertices)), arcs_(std::move(arcs)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        vertex_by_id_.emplace(vertices_[i].id, i);
    }
    arc_tail_.resize(arcs_.size());
    arc_head_.resize(arcs_.size());
    incidence_.assign(vertices_.size(), {});
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        Arc& arc = arcs_[i];
        arc_by_id_.emplace(arc.id, i);
        auto t = vertex_by_id_.find(arc.tail);
        auto h = vertex_by_id_.find(arc.head);
        if (t == vertex_by_id_.end() || h == vertex_by_id_.end()) {
            throw std::invalid_argument("arc " + arc.id + " references unknown vertex");
        }
        arc_tail_[i] = t->second;
        arc_head_[i] = h->second;
        if (arc.geometry.empty()) {
            arc.geometry = {vertices_[t->second].coords, vertices_[h->second].coords};
        }
        arc.length = polyline_length(arc.geometry);
        incidence_[t->second].push_back({i, ArcEnd::Tail});
        incidence_[h->second].push_back({i, ArcEnd::Head});
    }
    build_vertex_distances();
}

std::size_t Network::vertex_index(const std::string& id) const {
    auto it = vertex_by_id_.find(id);
    if (it == vertex_by_id_.end()) throw std::invalid_argument("unknown vertex id: " + id);
    return it->second;
}

std::size_t Network::arc_index(const std::string& id) const {
    auto it = arc_by_id_.find(id);
    if (it == arc_by_id_.end()) throw std::invalid_argument("unknown arc id: " + id);
    return it->second;
}

bool Network::has_vertex(const std::string& id) const { return vertex_by_id_.count(id) > 0; }
bool Network::has_arc(const std::string& id) const { return arc_by_id_.count(id) > 0; }

std::vector<std::string> Network::validate() const {
    std::vector<std::string> violations;

    std::set<std::string> vertex_ids;
    for (const auto& v : vertices_) {
        if (!vertex_ids.insert(v.id).second) {
            violations.push_back("duplicate vertex id " + v.id);
        }
        if (!finite_point(v.coords) || v.coords.empty()) {
            violations.push_back("vertex " + v.id + " has non-finite or empty coords");
        }
    }

    std::set<std::string> arc_ids;
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        const Arc& arc = arcs_[i];
        if (!arc_ids.insert(arc.id).second) {
            violations.push_back("duplicate arc id " + arc.id);
        }
        if (arc_tail_[i] == arc_head_[i]) {
            violations.push_back("loop at arc " + arc.id);
        }
        if (arc.geometry.size() < 2) {
            violations.push_back("arc " + arc.id + " has fewer than 2 geometry points");
            continue;
        }
        for (const auto& p : arc.geometry) {
            if (!finite_point(p)) {
                violations.push_back("arc " + arc.id + " has non-finite geometry");
                break;
            }
        }
        if (point_distance(arc.geometry.front(), vertices_[arc_tail_[i]].coords) > 1e-12) {
            violations.push_back("arc " + arc.id + " geometry does not start at tail");
        }
        if (point_distance(arc.geometry.back(), vertices_[arc_head_[i]].coords) > 1e-12) {
            violations.push_back("arc " + arc.id + " geometry does not end at head");
        }
        for (std::size_t j = 0; j + 1 < arc.geometry.size(); ++j) {
            if (point_distance(arc.geometry[j], arc.geometry[j + 1]) == 0.0) {
                violations.push_back("arc " + arc.id + " has coincident consecutive geometry points");
                break;
            }
        }
        if (!(arc.length > 0.0)) {
            violations.push_back("arc " + arc.id + " has zero length");
        }
    }

    if (!vertices_.empty()) {
        std::vector<bool> seen(vertices_.size(), false);
        std::queue<std::size_t> queue;
        queue.push(0);
        seen[0] = true;
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop();
            for (const auto& inc : incidence_[v]) {
                const std::size_t other =
                    inc.end == ArcEnd::Tail ? arc_head_[inc.arc] : arc_tail_[inc.arc];
                if (!seen[other]) {
                    seen[other] = true;
                    queue.push(other);
                }
            }
        }
        if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
            violations.push_back("network not connected");
        }
    }

    std::sort(violations.begin(), violations.end());
    return violations;
}

NetworkPoint Network::canonicalize(const ArcRef& ref, double s) const {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw std::invalid_argument("arc parameter outside [0,1]");
    }
    if (ref.arc >= arcs_.size()) throw std::invalid_argument("arc index out of range");
    const double fwd = ref.reversed ? 1.0 - s : s;
    if (fwd == 0.0) return NetworkPoint::vertex(arc_tail_[ref.arc]);
    if (fwd == 1.0) return NetworkPoint::vertex(arc_head_[ref.arc]);
    return NetworkPoint::interior(ref.arc, fwd);
}

NetworkPoint Network::vertex_point(const std::string& id) const {
    return NetworkPoint::vertex(vertex_index(id));
}

void Network::build_vertex_distances() {
    const std::size_t n = vertices_.size();
    const double inf = std::numeric_limits<double>::infinity();
    vertex_dist_.assign(n, std::vector<double>(n, inf));
    for (std::size_t s = 0; s < n; ++s) {
        auto& dist = vertex_dist_[s];
        dist[s] = 0.0;
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        heap.push({0.0, s});
        while (!heap.empty()) {
            const auto [d, v] = heap.top();
            heap.pop();
            if (d > dist[v]) continue;
            for (const auto& inc : incidence_[v]) {
                const std::size_t other =
                    inc.end == ArcEnd::Tail ? arc_head_[inc.arc] : arc_tail_[inc.arc];
                const double nd = d + arcs_[inc.arc].length;
                if (nd < dist[other]) {
                    dist[other] = nd;
                    heap.push({nd, other});
                }
            }
        }
    }
}

namespace {

// Length of the polyline restricted to parameters [0, s].
double partial_length(const Arc& arc, double s) {
    const std::size_t segs = arc.geometry.size() - 1;
    double len = 0.0;
    const double pos = s * static_cast<double>(segs);
    for (std::size_t j = 0; j < segs; ++j) {
        const double seg_len = polyline_length({arc.geometry[j], arc.geometry[j + 1]});
        if (pos >= static_cast<double>(j + 1)) {
            len += seg_len;
        } else if (pos > static_cast<double>(j)) {
            len += seg_len * (pos - static_cast<double>(j));
        }
    }
    return len;
}

}  // namespace

double Network::parameter_speed(std::size_t arc_index, double s) const {
    const Arc& arc = arcs_[arc_index];
    const std::size_t segs = arc.geometry.size() - 1;
    std::size_t j = static_cast<std::size_t>(std::min(
        static_cast<double>(segs - 1), std::floor(s * static_cast<double>(segs))));
    const double seg_len = polyline_length({arc.geometry[j], arc.geometry[j + 1]});
    return seg_len * static_cast<double>(segs);
}

Point Network::locate(const NetworkPoint& p) const {
    if (p.is_vertex()) return vertices_[p.vertex_index()].coords;
    const Arc& arc = arcs_[p.arc_index()];
    const std::size_t segs = arc.geometry.size() - 1;
    const double pos = p.s() * static_cast<double>(segs);
    const std::size_t j = static_cast<std::size_t>(
        std::min(static_cast<double>(segs - 1), std::floor(pos)));
    const double frac = pos - static_cast<double>(j);
    Point out(arc.geometry[j].size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = arc.geometry[j][k] + frac * (arc.geometry[j + 1][k] - arc.geometry[j][k]);
    }
    return out;
}

double Network::geodesic_distance(const NetworkPoint& a, const NetworkPoint& b) const {
    if (a == b) return 0.0;

    // Exit costs from a to each endpoint vertex of its host arc, and
    // entry costs from endpoint vertices into b.
    std::vector<std::pair<std::size_t, double>> from, into;
    if (a.is_vertex()) {
        from.push_back({a.vertex_index(), 0.0});
    } else {
        const Arc& arc = arcs_[a.arc_index()];
        from.push_back({arc_tail_[a.arc_index()], partial_length(arc, a.s())});
        from.push_back({arc_head_[a.arc_index()], arc.length - partial_length(arc, a.s())});
    }
    if (b.is_vertex()) {
        into.push_back({b.vertex_index(), 0.0});
    } else {
        const Arc& arc = arcs_[b.arc_index()];
        into.push_back({arc_tail_[b.arc_index()], partial_length(arc, b.s())});
        into.push_back({arc_head_[b.arc_index()], arc.length - partial_length(arc, b.s())});
    }

    double best = std::numeric_limits<double>::infinity();
    if (!a.is_vertex() && !b.is_vertex() && a.arc_index() == b.arc_index()) {
        const Arc& arc = arcs_[a.arc_index()];
        best = std::abs(partial_length(arc, b.s()) - partial_length(arc, a.s()));
    }
    for (const auto& [v, dv] : from) {
        for (const auto& [w, dw] : into) {
            best = std::min(best, dv + vertex_dist_[v][w] + dw);
        }
    }
    return best;
}

double Network::total_length() const {
    double len = 0.0;
    for (const auto& arc : arcs_) len += arc.length;
    return len;
}

}  // namespace hjnet
