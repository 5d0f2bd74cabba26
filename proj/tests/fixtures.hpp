#pragma once

#include <memory>

#include "hjnet/hamiltonian.hpp"
#include "hjnet/network.hpp"

namespace hjnet::fixtures {

struct Fixture {
    std::shared_ptr<Network> net;
    HamiltonianSet hams;
};

// Two vertices joined by one unit arc, H = mu^2.
inline Fixture segment() {
    Fixture f;
    f.net = std::make_shared<Network>(
        std::vector<Vertex>{{"v0", {0.0, 0.0}}, {"v1", {1.0, 0.0}}},
        std::vector<Arc>{{"g1", "v0", "v1", {}, 0.0}});
    f.hams.emplace("g1", ArcHamiltonian::power(2.0, PiecewiseLinear::constant(0.0)));
    return f;
}

// Two parallel unit arcs between the same vertices; H1 = mu^2 and
// H2 = (mu-2)^2, so the cheapest cycle costs 2*sqrt(a) - 2.
inline Fixture bigon() {
    Fixture f;
    f.net = std::make_shared<Network>(
        std::vector<Vertex>{{"v0", {0.0, 0.0}}, {"v1", {1.0, 0.0}}},
        std::vector<Arc>{
            {"g1", "v0", "v1", {}, 0.0},
            {"g2", "v0", "v1", {{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}}, 0.0}});
    f.hams.emplace("g1", ArcHamiltonian::power(2.0, PiecewiseLinear::constant(0.0)));
    f.hams.emplace("g2", ArcHamiltonian::shifted(1.0, PiecewiseLinear::constant(2.0),
                                                 PiecewiseLinear::constant(0.0)));
    return f;
}

// Unit equilateral triangle; AB is free while BC and CA carry potential 1.
inline Fixture triangle() {
    Fixture f;
    const double h = 0.8660254037844386;
    f.net = std::make_shared<Network>(
        std::vector<Vertex>{{"A", {0.0, 0.0}}, {"B", {1.0, 0.0}}, {"C", {0.5, h}}},
        std::vector<Arc>{{"AB", "A", "B", {}, 0.0},
                         {"BC", "B", "C", {}, 0.0},
                         {"CA", "C", "A", {}, 0.0}});
    f.hams.emplace("AB", ArcHamiltonian::power(2.0, PiecewiseLinear::constant(0.0)));
    f.hams.emplace("BC", ArcHamiltonian::power(2.0, PiecewiseLinear::constant(1.0)));
    f.hams.emplace("CA", ArcHamiltonian::power(2.0, PiecewiseLinear::constant(1.0)));
    return f;
}

inline std::vector<double> sample_parabola(std::size_t n, double base) {
    // base + s(1-s) sampled at n uniform nodes
    std::vector<double> samples(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(n - 1);
        samples[k] = base + s * (1.0 - s);
    }
    return samples;
}

// Triangle with a hump potential on AB: the pointwise minimum of H varies
// along the arc at the critical level.
inline Fixture triangle_h5_violated() {
    Fixture f = triangle();
    f.hams.erase("AB");
    f.hams.emplace("AB", ArcHamiltonian::power(2.0, PiecewiseLinear(sample_parabola(9, 0.0))));
    return f;
}

// Triangle with a hump on BC (minimum 1 at the endpoints).
inline Fixture triangle_bc_hump() {
    Fixture f = triangle();
    f.hams.erase("BC");
    f.hams.emplace("BC", ArcHamiltonian::power(2.0, PiecewiseLinear(sample_parabola(9, 1.0))));
    return f;
}

// Bigon with a tilted potential on g1: the optimal traversal speed varies
// along the arc, so no uniform grid resolves it exactly.
inline Fixture bigon_tilted() {
    Fixture f = bigon();
    f.hams.erase("g1");
    f.hams.emplace("g1", ArcHamiltonian::power(2.0, PiecewiseLinear({0.0, 0.8})));
    return f;
}

// Hub with three leaves, mixed Hamiltonian families.
inline Fixture star() {
    Fixture f;
    f.net = std::make_shared<Network>(
        std::vector<Vertex>{
            {"h", {0.0, 0.0}}, {"l1", {1.0, 0.0}}, {"l2", {0.0, 1.0}}, {"l3", {-1.0, 0.0}}},
        std::vector<Arc>{{"e1", "h", "l1", {}, 0.0},
                         {"e2", "l2", "h", {}, 0.0},
                         {"e3", "h", "l3", {}, 0.0}});
    f.hams.emplace("e1", ArcHamiltonian::power(2.0, PiecewiseLinear::constant(0.5)));
    f.hams.emplace("e2", ArcHamiltonian::shifted(1.0, PiecewiseLinear::constant(-1.0),
                                                 PiecewiseLinear::constant(0.25)));
    f.hams.emplace("e3", ArcHamiltonian::power(3.0, PiecewiseLinear({0.2, 0.6})));
    return f;
}

inline FluxLimiter minimal_flux() { return FluxLimiter{}; }

inline FluxLimiter custom_flux(std::map<std::string, double> values) {
    FluxLimiter flux;
    flux.mode = FluxLimiter::Mode::Custom;
    flux.values = std::move(values);
    return flux;
}

}  // namespace hjnet::fixtures
