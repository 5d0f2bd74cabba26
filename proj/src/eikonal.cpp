#include "hjnet/eikonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace hjnet {

namespace {

std::shared_ptr<const Network> unowned(const Network& net) {
    return std::shared_ptr<const Network>(std::shared_ptr<const Network>(), &net);
}

// Tarjan strongly connected components over the tight-edge digraph.
struct Scc {
    const std::vector<std::vector<std::size_t>>* adj;
    std::vector<int> index, low, comp;
    std::vector<bool> on_stack;
    std::vector<std::size_t> stack;
    int counter = 0;
    int ncomp = 0;

    void run(std::size_t n) {
        index.assign(n, -1);
        low.assign(n, 0);
        comp.assign(n, -1);
        on_stack.assign(n, false);
        for (std::size_t v = 0; v < n; ++v) {
            if (index[v] < 0) strongconnect(v);
        }
    }

    void strongconnect(std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (std::size_t w : (*adj)[v]) {
            if (index[w] < 0) {
                strongconnect(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            while (true) {
                const std::size_t w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp[w] = ncomp;
                if (w == v) break;
            }
            ++ncomp;
        }
    }
};

}  // namespace

AubryData aubry(const Network& net, const HamiltonianSet& hams, const FluxLimiter& flux) {
    const auto flux_violations = flux.validate(net, hams);
    if (!flux_violations.empty()) {
        throw std::invalid_argument("invalid flux limiter: " + flux_violations.front());
    }

    AubryData data;
    data.c = critical_value(net, hams);
    const LevelGraph graph(unowned(net), &hams, data.c);
    const auto& matrix = graph.vertex_matrix();
    const double tol_tight = 1e-6 * (1.0 + graph.max_abs_weight());
    const double tol_level = 1e-6 * (1.0 + std::abs(data.c));

    const std::size_t n = net.vertices().size();
    const LevelConstants consts = level_constants(net, hams);

    // Tight directed edges: weight cancelled by the return semidistance.
    // Arcs at the critical floor are forced in both directions.
    std::vector<std::pair<std::size_t, bool>> tight;  // (arc, forward)
    for (const auto& e : graph.edges()) {
        const bool floor_arc =
            std::abs(consts.a_arc.at(net.arcs()[e.arc].id) - data.c) <= tol_level;
        if (floor_arc || std::abs(e.weight + matrix[e.to][e.from]) <= tol_tight) {
            tight.push_back({e.arc, e.forward});
            data.tight_edges.push_back({net.arcs()[e.arc].id, e.forward});
        }
    }

    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& [arc, forward] : tight) {
        const std::size_t from = forward ? net.tail_index(arc) : net.head_index(arc);
        const std::size_t to = forward ? net.head_index(arc) : net.tail_index(arc);
        adj[from].push_back(to);
    }
    Scc scc;
    scc.adj = &adj;
    scc.run(n);

    // Classes: components holding at least one tight edge with both ends
    // inside.
    std::vector<StaticClass> classes(static_cast<std::size_t>(scc.ncomp));
    for (const auto& [arc, forward] : tight) {
        const std::size_t from = forward ? net.tail_index(arc) : net.head_index(arc);
        const std::size_t to = forward ? net.head_index(arc) : net.tail_index(arc);
        if (scc.comp[from] == scc.comp[to]) {
            auto& cls = classes[static_cast<std::size_t>(scc.comp[from])];
            cls.arcs.insert(net.arcs()[arc].id);
            cls.vertices.insert(net.vertices()[from].id);
            cls.vertices.insert(net.vertices()[to].id);
        }
    }
    for (auto& cls : classes) {
        if (cls.arcs.empty()) continue;
        data.classes.push_back(cls);
        data.arcs.insert(cls.arcs.begin(), cls.arcs.end());
        data.vertices.insert(cls.vertices.begin(), cls.vertices.end());
    }
    std::sort(data.classes.begin(), data.classes.end(),
              [](const StaticClass& a, const StaticClass& b) {
                  return *a.arcs.begin() < *b.arcs.begin();
              });

    const double tol_flux = 1e-9 * (1.0 + std::abs(data.c));
    for (std::size_t v = 0; v < n; ++v) {
        const std::string& id = net.vertices()[v].id;
        if (data.vertices.count(id)) continue;
        if (std::abs(flux.at(net, hams, v) - data.c) <= tol_flux) {
            data.extended_vertices.insert(id);
        }
    }
    return data;
}

std::vector<NetworkPoint> aubry_sample_points(const Network& net, const AubryData& data) {
    std::vector<NetworkPoint> points;
    for (const auto& id : data.vertices) {
        points.push_back(net.vertex_point(id));
    }
    for (const auto& id : data.arcs) {
        points.push_back(NetworkPoint::interior(net.arc_index(id), 0.5));
    }
    for (const auto& id : data.extended_vertices) {
        points.push_back(net.vertex_point(id));
    }
    return points;
}

GridFunction solve_eikonal(const LevelGraph& graph, const BoundaryCondition& boundary,
                           std::shared_ptr<const Grid> grid) {
    if (boundary.points.empty()) throw std::invalid_argument("empty boundary set");
    if (boundary.points.size() != boundary.values.size()) {
        throw std::invalid_argument("boundary points/values size mismatch");
    }
    GridFunction u(grid, 0.0, 0.0);
    for (std::size_t i = 0; i < grid->size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < boundary.points.size(); ++k) {
            best = std::min(best,
                            boundary.values[k] + semidistance(graph, boundary.points[k],
                                                              grid->point(i)));
        }
        u[i] = best;
    }
    return u;
}

std::vector<std::string> check_subsolution(const GridFunction& w, const LevelGraph& graph,
                                           double tol, std::size_t pair_cap, unsigned seed) {
    std::vector<std::string> violations;
    const Grid& grid = *w.grid;
    const std::size_t n = grid.size();
    const double scale = 1.0 + graph.max_abs_weight();

    const auto check_pair = [&](std::size_t i, std::size_t j) {
        const double bound = semidistance(graph, grid.point(i), grid.point(j));
        if (w[j] - w[i] > bound + tol * scale) {
            violations.push_back("subsolution inequality violated from " + grid.node_id(i) +
                                 " to " + grid.node_id(j));
        }
    };

    if (n * n <= pair_cap) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) check_pair(i, j);
            }
        }
    } else {
        std::mt19937 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (std::size_t k = 0; k < pair_cap; ++k) {
            const std::size_t i = pick(rng);
            const std::size_t j = pick(rng);
            if (i != j) check_pair(i, j);
        }
    }
    return violations;
}

PredictedLimit predicted_limit(const Network& net, const HamiltonianSet& hams,
                               const FluxLimiter& flux, const GridFunction& phi) {
    PredictedLimit out;
    const AubryData data = aubry(net, hams, flux);
    const double max_flux = flux.max_value(net, hams);
    const double tol = 1e-9 * (1.0 + std::abs(data.c));
    out.supercritical = max_flux > data.c + tol;
    out.drift = out.supercritical ? max_flux : data.c;

    const LevelGraph graph(unowned(net), &hams, out.drift);
    const Grid& grid = *phi.grid;

    std::vector<NetworkPoint> anchors;
    if (out.supercritical) {
        for (std::size_t v = 0; v < net.vertices().size(); ++v) {
            if (std::abs(flux.at(net, hams, v) - max_flux) <= tol) {
                anchors.push_back(NetworkPoint::vertex(v));
            }
        }
    } else {
        anchors = aubry_sample_points(net, data);
    }

    std::vector<double> inner(anchors.size());
    for (std::size_t k = 0; k < anchors.size(); ++k) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t z = 0; z < grid.size(); ++z) {
            best = std::min(best, phi[z] + semidistance(graph, grid.point(z), anchors[k]));
        }
        inner[k] = best;
    }

    out.u = GridFunction(phi.grid, 0.0, 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < anchors.size(); ++k) {
            best = std::min(best, inner[k] + semidistance(graph, anchors[k], grid.point(i)));
        }
        out.u[i] = best;
    }
    return out;
}

double subsolution_lipschitz_bound(const LevelGraph& graph) {
    const Network& net = graph.network();
    double max_sigma = 0.0;
    double min_speed = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < net.arcs().size(); ++a) {
        max_sigma = std::max(max_sigma, graph.profile(a).max_abs_sigma());
        const std::size_t segs = net.arcs()[a].geometry.size() - 1;
        for (std::size_t j = 0; j < segs; ++j) {
            const double s = (static_cast<double>(j) + 0.5) / static_cast<double>(segs);
            min_speed = std::min(min_speed, net.parameter_speed(a, s));
        }
    }
    return max_sigma / min_speed;
}

}  // namespace hjnet
