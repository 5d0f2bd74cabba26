#include "hjnet/level_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hjnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::shared_ptr<const Network> unowned(const Network& net) {
    return std::shared_ptr<const Network>(std::shared_ptr<const Network>(), &net);
}

}  // namespace

ArcLevelProfile::ArcLevelProfile(const ArcHamiltonian& ham, double level, std::size_t min_nodes)
    : ham_(&ham), level_(level) {
    // Refine the coefficient grid so sample kinks stay on quadrature nodes.
    const std::size_t coeff_cells = std::max(ham.V.samples().size(),
                                             ham.b.samples().size()) - 1;
    const std::size_t factor =
        (min_nodes - 1 + coeff_cells - 1) / coeff_cells;  // ceil
    const std::size_t cells = coeff_cells * std::max<std::size_t>(factor, 1);

    s_.resize(cells + 1);
    sig_plus_.resize(cells + 1);
    sig_minus_.resize(cells + 1);
    feasible_ = true;
    for (std::size_t k = 0; k <= cells; ++k) {
        s_[k] = static_cast<double>(k) / static_cast<double>(cells);
        const auto plus = ham.sigma(s_[k], level, +1);
        const auto minus = ham.sigma(s_[k], level, -1);
        if (!plus || !minus) {
            feasible_ = false;
            return;
        }
        sig_plus_[k] = *plus;
        sig_minus_[k] = *minus;
        max_abs_sigma_ = std::max({max_abs_sigma_, std::abs(*plus), std::abs(*minus)});
    }
    prefix_plus_.assign(cells + 1, 0.0);
    prefix_minus_.assign(cells + 1, 0.0);
    const double h = 1.0 / static_cast<double>(cells);
    for (std::size_t k = 1; k <= cells; ++k) {
        prefix_plus_[k] = prefix_plus_[k - 1] + 0.5 * h * (sig_plus_[k - 1] + sig_plus_[k]);
        prefix_minus_[k] = prefix_minus_[k - 1] + 0.5 * h * (sig_minus_[k - 1] + sig_minus_[k]);
    }
}

double ArcLevelProfile::prefix_at(const std::vector<double>& prefix,
                                  const std::vector<double>& vals, int sign, double s) const {
    const std::size_t cells = s_.size() - 1;
    const double pos = std::clamp(s, 0.0, 1.0) * static_cast<double>(cells);
    const std::size_t k = static_cast<std::size_t>(
        std::min(static_cast<double>(cells - 1), std::floor(pos)));
    double out = prefix[k];
    const double ds = s - s_[k];
    if (ds > 0.0) {
        const auto cut = ham_->sigma(s, level_, sign);
        out += 0.5 * ds * (vals[k] + *cut);
    }
    return out;
}

double ArcLevelProfile::integral_plus(double s1, double s2) const {
    if (!feasible_) throw std::domain_error("level below the arc's critical floor");
    return prefix_at(prefix_plus_, sig_plus_, +1, s2) - prefix_at(prefix_plus_, sig_plus_, +1, s1);
}

double ArcLevelProfile::integral_minus(double s1, double s2) const {
    if (!feasible_) throw std::domain_error("level below the arc's critical floor");
    return prefix_at(prefix_minus_, sig_minus_, -1, s2) -
           prefix_at(prefix_minus_, sig_minus_, -1, s1);
}

LevelGraph::LevelGraph(std::shared_ptr<const Network> net, const HamiltonianSet* hams,
                       double level, std::size_t min_quad_nodes)
    : net_(std::move(net)), hams_(hams), level_(level) {
    const auto& arcs = net_->arcs();
    profiles_.resize(arcs.size());
    feasible_ = true;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        profiles_[i] = ArcLevelProfile(hamiltonian_for(*hams_, *net_, i), level, min_quad_nodes);
        if (!profiles_[i].feasible()) feasible_ = false;
    }
    if (!feasible_) return;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const double w_fwd = profiles_[i].integral_plus(0.0, 1.0);
        const double w_bwd = -profiles_[i].integral_minus(0.0, 1.0);
        edges_.push_back({i, true, net_->tail_index(i), net_->head_index(i), w_fwd});
        edges_.push_back({i, false, net_->head_index(i), net_->tail_index(i), w_bwd});
        max_abs_weight_ = std::max({max_abs_weight_, std::abs(w_fwd), std::abs(w_bwd)});
    }
}

double LevelGraph::weight_forward(std::size_t arc) const { return edges_[2 * arc].weight; }
double LevelGraph::weight_backward(std::size_t arc) const { return edges_[2 * arc + 1].weight; }

void LevelGraph::compute_matrix() const {
    if (matrix_ready_) return;
    const std::size_t n = net_->vertices().size();
    const double eps = 1e-9 * (1.0 + max_abs_weight_);
    matrix_.assign(n, std::vector<double>(n, kInf));
    negative_cycle_ = false;
    for (std::size_t src = 0; src < n; ++src) {
        auto& dist = matrix_[src];
        dist[src] = 0.0;
        for (std::size_t round = 0; round + 1 < std::max<std::size_t>(n, 2); ++round) {
            bool changed = false;
            for (const auto& e : edges_) {
                if (dist[e.from] + e.weight < dist[e.to]) {
                    dist[e.to] = dist[e.from] + e.weight;
                    changed = true;
                }
            }
            if (!changed) break;
        }
        for (const auto& e : edges_) {
            if (dist[e.from] + e.weight < dist[e.to] - eps) negative_cycle_ = true;
        }
    }
    matrix_ready_ = true;
}

bool LevelGraph::has_negative_cycle() const {
    if (!feasible_) return false;
    compute_matrix();
    return negative_cycle_;
}

const std::vector<std::vector<double>>& LevelGraph::vertex_matrix() const {
    if (!feasible_) throw std::domain_error("level graph infeasible");
    compute_matrix();
    if (negative_cycle_) throw std::domain_error("negative cycle: level below critical value");
    return matrix_;
}

namespace {

struct CycleScan {
    const std::vector<LevelEdge>* edges;
    std::vector<std::vector<std::size_t>> out;  // vertex -> edge indices
    std::vector<bool> visited;
    std::size_t start = 0;
    double best = kInf;

    void dfs(std::size_t v, double acc) {
        for (std::size_t ei : out[v]) {
            const auto& e = (*edges)[ei];
            if (e.to == start) {
                best = std::min(best, acc + e.weight);
            } else if (e.to > start && !visited[e.to]) {
                visited[e.to] = true;
                dfs(e.to, acc + e.weight);
                visited[e.to] = false;
            }
        }
    }
};

bool negative_cycle_with_shift(const LevelGraph& graph, double shift) {
    const std::size_t n = graph.network().vertices().size();
    std::vector<double> dist(n, 0.0);
    const auto& edges = graph.edges();
    const double eps = 1e-12 * (1.0 + graph.max_abs_weight() + shift);
    for (std::size_t round = 0; round < n; ++round) {
        for (const auto& e : edges) {
            dist[e.to] = std::min(dist[e.to], dist[e.from] + e.weight + shift);
        }
    }
    for (const auto& e : edges) {
        if (dist[e.from] + e.weight + shift < dist[e.to] - eps) return true;
    }
    return false;
}

}  // namespace

double min_cycle_gap(const LevelGraph& graph, std::size_t max_arcs_exact) {
    if (!graph.feasible()) throw std::domain_error("level graph infeasible");
    const std::size_t n = graph.network().vertices().size();

    if (graph.network().arcs().size() <= max_arcs_exact) {
        CycleScan scan;
        scan.edges = &graph.edges();
        scan.out.assign(n, {});
        for (std::size_t i = 0; i < graph.edges().size(); ++i) {
            scan.out[graph.edges()[i].from].push_back(i);
        }
        scan.visited.assign(n, false);
        for (std::size_t v = 0; v < n; ++v) {
            scan.start = v;
            scan.dfs(v, 0.0);
        }
        return scan.best;
    }

    // Large graphs: sign from Bellman-Ford, magnitude bounded through the
    // smallest uniform shift removing all negative cycles.
    if (!negative_cycle_with_shift(graph, 0.0)) return 0.0;
    double hi = 1.0;
    while (negative_cycle_with_shift(graph, hi)) hi *= 2.0;
    double lo = 0.0;
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (negative_cycle_with_shift(graph, mid) ? lo : hi) = mid;
    }
    return -hi * static_cast<double>(graph.edges().size());
}

double critical_value(const Network& net, const HamiltonianSet& hams) {
    const LevelConstants consts = level_constants(net, hams);
    const double a0 = consts.a0;
    const auto net_ref = unowned(net);

    const auto gap_at = [&](double a) {
        return min_cycle_gap(LevelGraph(net_ref, &hams, a));
    };
    const double tol0 = 1e-12 * (1.0 + std::abs(a0));
    if (gap_at(a0) >= -tol0) return a0;

    double hi = a0 + 1.0;
    while (gap_at(hi) < 0.0) {
        hi = a0 + 2.0 * (hi - a0);
        if (hi - a0 > 1e12) throw std::runtime_error("critical value bracket not found");
    }
    double lo = a0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (gap_at(mid) >= 0.0 ? hi : lo) = mid;
    }
    return hi;
}

double semidistance(const LevelGraph& graph, const NetworkPoint& y, const NetworkPoint& x) {
    if (y == x) return 0.0;
    const auto& matrix = graph.vertex_matrix();
    const Network& net = graph.network();

    // Exit costs from y to the endpoints of its host arc; entry costs from
    // endpoints into x.
    std::vector<std::pair<std::size_t, double>> from, into;
    if (y.is_vertex()) {
        from.push_back({y.vertex_index(), 0.0});
    } else {
        const auto& prof = graph.profile(y.arc_index());
        from.push_back({net.head_index(y.arc_index()), prof.integral_plus(y.s(), 1.0)});
        from.push_back({net.tail_index(y.arc_index()), -prof.integral_minus(0.0, y.s())});
    }
    if (x.is_vertex()) {
        into.push_back({x.vertex_index(), 0.0});
    } else {
        const auto& prof = graph.profile(x.arc_index());
        into.push_back({net.tail_index(x.arc_index()), prof.integral_plus(0.0, x.s())});
        into.push_back({net.head_index(x.arc_index()), -prof.integral_minus(x.s(), 1.0)});
    }

    double best = kInf;
    if (!y.is_vertex() && !x.is_vertex() && y.arc_index() == x.arc_index()) {
        const auto& prof = graph.profile(y.arc_index());
        best = y.s() <= x.s() ? prof.integral_plus(y.s(), x.s())
                              : -prof.integral_minus(x.s(), y.s());
    }
    for (const auto& [v, cv] : from) {
        for (const auto& [w, cw] : into) {
            best = std::min(best, cv + matrix[v][w] + cw);
        }
    }
    return best;
}

}  // namespace hjnet
