#pragma once

// Test-side oracles, independent of the library's quadrature and
// shortest-path code: closed-form support roots per family, dense
// trapezoid integration, and simple-path enumeration.

#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <vector>

#include "fixtures.hpp"

namespace hjnet::oracles {

inline double sigma_closed(const ArcHamiltonian& h, double s, double a, int sign) {
    const double lifted = a + h.V(s);
    if (h.family == HamiltonianFamily::PowerPotential) {
        return sign * std::pow(std::max(lifted, 0.0), 1.0 / h.p);
    }
    return h.b(s) + sign * std::sqrt(std::max(lifted, 0.0) / h.alpha);
}

inline double sigma_integral_closed(const ArcHamiltonian& h, double a, int sign, double s1,
                                    double s2) {
    const std::size_t n = 4096;
    double acc = 0.0;
    double prev = sigma_closed(h, s1, a, sign);
    for (std::size_t k = 1; k <= n; ++k) {
        const double s = s1 + (s2 - s1) * static_cast<double>(k) / static_cast<double>(n);
        const double cur = sigma_closed(h, s, a, sign);
        acc += 0.5 * (s2 - s1) / static_cast<double>(n) * (prev + cur);
        prev = cur;
    }
    return acc;
}

// Minimal traversal cost from y to x over simple vertex paths, with the
// partial integrals of interior endpoints folded in.
inline double semidistance(const fixtures::Fixture& f, double a, const NetworkPoint& y,
                           const NetworkPoint& x) {
    if (y == x) return 0.0;
    const Network& net = *f.net;

    struct Edge {
        std::size_t from, to;
        double weight;
    };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < net.arcs().size(); ++i) {
        const ArcHamiltonian& h = f.hams.at(net.arcs()[i].id);
        edges.push_back({net.tail_index(i), net.head_index(i),
                         sigma_integral_closed(h, a, +1, 0.0, 1.0)});
        edges.push_back({net.head_index(i), net.tail_index(i),
                         -sigma_integral_closed(h, a, -1, 0.0, 1.0)});
    }

    std::vector<std::pair<std::size_t, double>> from, into;
    if (y.is_vertex()) {
        from.push_back({y.vertex_index(), 0.0});
    } else {
        const ArcHamiltonian& h = f.hams.at(net.arcs()[y.arc_index()].id);
        from.push_back({net.head_index(y.arc_index()),
                        sigma_integral_closed(h, a, +1, y.s(), 1.0)});
        from.push_back({net.tail_index(y.arc_index()),
                        -sigma_integral_closed(h, a, -1, 0.0, y.s())});
    }
    if (x.is_vertex()) {
        into.push_back({x.vertex_index(), 0.0});
    } else {
        const ArcHamiltonian& h = f.hams.at(net.arcs()[x.arc_index()].id);
        into.push_back({net.tail_index(x.arc_index()),
                        sigma_integral_closed(h, a, +1, 0.0, x.s())});
        into.push_back({net.head_index(x.arc_index()),
                        -sigma_integral_closed(h, a, -1, x.s(), 1.0)});
    }

    double best = std::numeric_limits<double>::infinity();
    if (!y.is_vertex() && !x.is_vertex() && y.arc_index() == x.arc_index()) {
        const ArcHamiltonian& h = f.hams.at(net.arcs()[y.arc_index()].id);
        best = y.s() <= x.s() ? sigma_integral_closed(h, a, +1, y.s(), x.s())
                              : -sigma_integral_closed(h, a, -1, x.s(), y.s());
    }
    for (const auto& [v, cv] : from) {
        for (const auto& [w, cw] : into) {
            std::set<std::size_t> seen{v};
            std::function<void(std::size_t, double)> walk = [&](std::size_t cur, double acc) {
                if (cur == w) best = std::min(best, acc + cw);
                for (const auto& e : edges) {
                    if (e.from != cur || seen.count(e.to)) continue;
                    seen.insert(e.to);
                    walk(e.to, acc + e.weight);
                    seen.erase(e.to);
                }
            };
            walk(v, cv);
        }
    }
    return best;
}

}  // namespace hjnet::oracles
