#include "hjnet/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace hjnet {

double lagrangian_speed_bound(const Network& net, const HamiltonianSet& hams, double level) {
    double bound = 0.0;
    for (std::size_t a = 0; a < net.arcs().size(); ++a) {
        const ArcHamiltonian& ham = hamiltonian_for(hams, net, a);
        const std::size_t cells = 64;
        for (std::size_t k = 0; k <= cells; ++k) {
            const double s = static_cast<double>(k) / static_cast<double>(cells);
            for (int sign : {+1, -1}) {
                const auto root = ham.sigma(s, level, sign);
                if (root) bound = std::max(bound, std::abs(ham.d_mu(s, *root)));
            }
        }
    }
    return bound;
}

std::vector<std::string> SchemeParams::validate(const Network& net, const HamiltonianSet& hams,
                                                double working_level) const {
    std::vector<std::string> violations;
    if (M < 4) violations.push_back("scheme: M must be at least 4");
    if (!(dt > 0.0)) violations.push_back("scheme: dt must be positive");
    if (hold_steps < 1) violations.push_back("scheme: hold_steps must be at least 1");
    if (lambda_max * dt > 1.0 + 1e-12) {
        violations.push_back("scheme: lambda_max*dt exceeds one arc per step");
    }
    const double speed = lagrangian_speed_bound(net, hams, working_level);
    if (lambda_max < 2.0 * speed - 1e-9 * (1.0 + speed)) {
        violations.push_back("scheme: lambda_max below twice the optimal speed at the working level");
    }
    return violations;
}

StepOperator::StepOperator(std::shared_ptr<const Grid> grid, const HamiltonianSet* hams,
                           FluxLimiter flux, SchemeParams params)
    : grid_(std::move(grid)), hams_(hams), flux_(std::move(flux)), params_(params) {
    build_candidates();
}

void StepOperator::build_candidates() {
    const Grid& grid = *grid_;
    const Network& net = grid.network();
    const std::size_t M = grid.nodes_per_arc();
    const double ds = grid.spacing();
    const double dt = params_.dt;
    const double reach = params_.lambda_max * dt;
    const std::size_t kmax = std::min(
        M, static_cast<std::size_t>(std::floor(reach / ds + 1e-9)));
    // fractional feet refine the full reach; their speed spacing is kept at
    // lambda_max/(16*kmax) so a coarse grid's speed set stays available on
    // refined ones
    const std::size_t nfeet = 16 * kmax;

    cands_.assign(grid.size(), {});

    const auto ham = [&](std::size_t arc) -> const ArcHamiltonian& {
        return hamiltonian_for(*hams_, net, arc);
    };
    const auto s_of = [&](std::size_t j) {
        return static_cast<double>(j) / static_cast<double>(M);
    };

    const auto add = [&](std::size_t node, Candidate cand) {
        max_abs_cost_ = std::max(max_abs_cost_, std::abs(cand.cost));
        cands_[node].push_back(std::move(cand));
    };

    // Same-arc move ending at (arc, j_to) from the node k cells away.
    const auto add_move = [&](std::size_t node, std::size_t arc, std::size_t j_from,
                              std::size_t j_to) {
        const double s_from = s_of(j_from);
        const double s_to = s_of(j_to);
        const double lambda = (s_to - s_from) / dt;
        Candidate cand;
        cand.p1 = static_cast<std::uint32_t>(grid.arc_node(arc, j_from));
        cand.p2 = cand.p1;
        cand.cost = dt * ham(arc).lagrangian(0.5 * (s_from + s_to), lambda);
        cand.legs = {{false, arc, s_from, s_to, 0, dt}};
        add(node, std::move(cand));
    };

    // Same-arc move from a fractional foot, interpolated between the
    // bracketing nodes.
    const auto add_fractional = [&](std::size_t node, std::size_t arc, double s_to,
                                    double s_from) {
        if (s_from < 0.0 || s_from > 1.0) return;
        const double pos = s_from * static_cast<double>(M);
        const double lower = std::floor(pos + 1e-9);
        if (std::abs(pos - std::round(pos)) < 1e-9) return;  // node feet handled above
        const std::size_t j = static_cast<std::size_t>(lower);
        const double theta = pos - lower;
        const double lambda = (s_to - s_from) / dt;
        Candidate cand;
        cand.p1 = static_cast<std::uint32_t>(grid.arc_node(arc, j));
        cand.p2 = static_cast<std::uint32_t>(grid.arc_node(arc, j + 1));
        cand.w1 = 1.0 - theta;
        cand.w2 = theta;
        cand.cost = dt * ham(arc).lagrangian(0.5 * (s_from + s_to), lambda);
        cand.legs = {{false, arc, s_from, s_to, 0, dt}};
        add(node, std::move(cand));
    };

    const auto add_feet_on_arc = [&](std::size_t node, std::size_t arc, double s_to) {
        for (std::size_t j = 1; j <= nfeet; ++j) {
            const double d = reach * static_cast<double>(j) / static_cast<double>(nfeet);
            add_fractional(node, arc, s_to, s_to - d);
            add_fractional(node, arc, s_to, s_to + d);
        }
    };

    // Node foot crossing a vertex: k1 cells on arc_in toward it, then k2
    // cells on arc_out to the target; time split proportional to distance.
    const auto add_composite = [&](std::size_t node, const IncidentArc& in, std::size_t k1,
                                   std::size_t arc_out, ArcEnd out_end, std::size_t k2) {
        const double d1 = static_cast<double>(k1) * ds;
        const double d2 = static_cast<double>(k2) * ds;
        const double t1 = dt * d1 / (d1 + d2);
        const double t2 = dt * d2 / (d1 + d2);
        const double speed = (d1 + d2) / dt;

        double s_z, s_w_in, lambda1;
        std::size_t j_z;
        if (in.end == ArcEnd::Head) {
            j_z = M - k1;
            s_z = s_of(j_z);
            s_w_in = 1.0;
            lambda1 = speed;
        } else {
            j_z = k1;
            s_z = s_of(j_z);
            s_w_in = 0.0;
            lambda1 = -speed;
        }
        double s_w_out, s_x, lambda2;
        if (out_end == ArcEnd::Tail) {
            s_w_out = 0.0;
            s_x = s_of(k2);
            lambda2 = speed;
        } else {
            s_w_out = 1.0;
            s_x = s_of(M - k2);
            lambda2 = -speed;
        }
        Candidate cand;
        cand.p1 = static_cast<std::uint32_t>(grid.arc_node(in.arc, j_z));
        cand.p2 = cand.p1;
        cand.cost = t1 * ham(in.arc).lagrangian(0.5 * (s_z + s_w_in), lambda1) +
                    t2 * ham(arc_out).lagrangian(0.5 * (s_w_out + s_x), lambda2);
        cand.legs = {{false, in.arc, s_z, s_w_in, 0, t1},
                     {false, arc_out, s_w_out, s_x, 0, t2}};
        add(node, std::move(cand));
    };

    for (std::size_t node = 0; node < grid.size(); ++node) {
        const NetworkPoint& x = grid.point(node);
        if (x.is_vertex()) {
            const std::size_t v = x.vertex_index();
            Candidate wait;
            wait.p1 = wait.p2 = static_cast<std::uint32_t>(node);
            wait.cost = -dt * flux_.at(net, *hams_, v);
            wait.legs = {{true, 0, 0.0, 0.0, v, dt}};
            add(node, std::move(wait));
            for (const auto& inc : net.incident(v)) {
                const double s_here = inc.end == ArcEnd::Head ? 1.0 : 0.0;
                for (std::size_t k = 1; k <= kmax; ++k) {
                    const std::size_t j_from = inc.end == ArcEnd::Head ? M - k : k;
                    const std::size_t j_to = inc.end == ArcEnd::Head ? M : 0;
                    add_move(node, inc.arc, j_from, j_to);
                }
                add_feet_on_arc(node, inc.arc, s_here);
            }
        } else {
            const std::size_t arc = x.arc_index();
            const std::size_t j = static_cast<std::size_t>(
                std::llround(x.s() * static_cast<double>(M)));
            Candidate hold;
            hold.p1 = hold.p2 = static_cast<std::uint32_t>(node);
            hold.cost = -dt * ham(arc).minimum(x.s()).value;
            hold.legs = {{false, arc, x.s(), x.s(), 0, dt}};
            add(node, std::move(hold));
            for (std::size_t k = 1; k <= kmax; ++k) {
                if (j >= k) add_move(node, arc, j - k, j);
                if (j + k <= M) add_move(node, arc, j + k, j);
            }
            add_feet_on_arc(node, arc, x.s());
            // node feet crossing the tail (k2 = j cells) or head (M - j)
            for (const auto& [out_end, k2] :
                 {std::pair{ArcEnd::Tail, j}, std::pair{ArcEnd::Head, M - j}}) {
                if (k2 == 0 || k2 >= kmax) continue;
                const std::size_t w = net.endpoint_index(arc, out_end);
                for (const auto& inc : net.incident(w)) {
                    for (std::size_t k1 = 1; k1 + k2 <= kmax && k1 <= M; ++k1) {
                        add_composite(node, inc, k1, arc, out_end, k2);
                    }
                }
            }
        }
        // smallest chain predecessor first, so strict-improvement scanning
        // breaks ties toward it
        std::stable_sort(cands_[node].begin(), cands_[node].end(),
                         [](const Candidate& a, const Candidate& b) {
                             return a.chain_pred() < b.chain_pred();
                         });
    }
}

GridFunction StepOperator::apply(const GridFunction& v,
                                 std::vector<std::uint32_t>* choice) const {
    GridFunction out(grid_, 0.0, v.time + params_.dt);
    if (choice) choice->assign(grid_->size(), 0);

    const auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t node = begin; node < end; ++node) {
            const auto& list = cands_[node];
            double best = std::numeric_limits<double>::infinity();
            std::uint32_t best_idx = 0;
            for (std::uint32_t k = 0; k < list.size(); ++k) {
                const Candidate& cand = list[k];
                double value = cand.w1 * v[cand.p1];
                value += cand.w2 * v[cand.p2];
                value += cand.cost;
                if (value < best) {
                    best = value;
                    best_idx = k;
                }
            }
            out[node] = best;
            if (choice) (*choice)[node] = best_idx;
        }
    };

    if (threads_ <= 1 || grid_->size() < 256) {
        worker(0, grid_->size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (grid_->size() + threads_ - 1) / threads_;
        for (unsigned t = 0; t < threads_; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(grid_->size(), begin + chunk);
            if (begin < end) pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

Trajectory evolve(const StepOperator& op, const GridFunction& phi, std::size_t steps,
                  bool backpointers) {
    Trajectory traj;
    traj.grid = op.grid_ptr();
    traj.dt = op.dt();
    traj.layers.reserve(steps + 1);
    traj.layers.push_back(phi);
    traj.layers.back().time = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        std::vector<std::uint32_t> choice;
        traj.layers.push_back(op.apply(traj.layers.back(), backpointers ? &choice : nullptr));
        if (backpointers) traj.choices.push_back(std::move(choice));
    }
    return traj;
}

DiscreteCurve backtrack(const StepOperator& op, const Trajectory& traj, std::size_t node) {
    if (!traj.has_backpointers()) throw std::invalid_argument("trajectory has no backpointers");
    DiscreteCurve curve;
    const std::size_t n = traj.steps();
    std::vector<std::size_t> nodes_rev{node};
    std::vector<const Candidate*> cands_rev;
    std::size_t current = node;
    for (std::size_t k = n; k > 0; --k) {
        const Candidate& cand = op.candidates(current)[traj.choices[k - 1][current]];
        cands_rev.push_back(&cand);
        current = cand.chain_pred();
        nodes_rev.push_back(current);
    }
    curve.nodes.assign(nodes_rev.rbegin(), nodes_rev.rend());
    for (std::size_t k = 0; k < n; ++k) {
        const Candidate& cand = *cands_rev[n - 1 - k];
        const double decrement =
            traj.layers[k + 1][curve.nodes[k + 1]] - traj.layers[k][curve.nodes[k]];
        curve.step_costs.push_back(decrement);
        for (const auto& leg : cand.legs) curve.legs.push_back(leg);
        curve.total_cost += decrement;
    }
    return curve;
}

MinimalAction minimal_action(const StepOperator& op, std::size_t source_node,
                             std::size_t steps) {
    const double big =
        1e6 * (1.0 + op.max_abs_cost() * static_cast<double>(std::max<std::size_t>(steps, 1)));
    GridFunction phi(op.grid_ptr(), big, 0.0);
    phi[source_node] = 0.0;
    Trajectory traj = evolve(op, phi, steps, false);
    MinimalAction out;
    out.values = traj.final_layer();
    out.unreachable_threshold = 0.5 * big;
    return out;
}

namespace {

double brute_force_rec(const StepOperator& op, const GridFunction& phi, std::size_t steps,
                       std::size_t node) {
    if (steps == 0) return phi[node];
    const auto& list = op.candidates(node);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& cand : list) {
        // identical arithmetic to StepOperator::apply; w2 = 0 contributes
        // an exact 0.0 there, so the second branch can be skipped
        double value = cand.w1 * brute_force_rec(op, phi, steps - 1, cand.p1);
        value += cand.w2 == 0.0 ? 0.0 : cand.w2 * brute_force_rec(op, phi, steps - 1, cand.p2);
        value += cand.cost;
        if (value < best) best = value;
    }
    return best;
}

}  // namespace

double brute_force_value(const StepOperator& op, const GridFunction& phi, std::size_t steps,
                         std::size_t node) {
    if (op.grid().size() > 12 || steps > 6) {
        throw std::invalid_argument("instance too large for exhaustive enumeration");
    }
    return brute_force_rec(op, phi, steps, node);
}

}  // namespace hjnet
