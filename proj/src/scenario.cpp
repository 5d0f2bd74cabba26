#include "hjnet/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "hjnet/level_graph.hpp"

namespace hjnet {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& message) { throw ValidationError(message); }

const json& require(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) fail(where + ": missing field '" + key + "'");
    return *it;
}

double require_number(const json& j, const char* key, const std::string& where) {
    const json& v = require(j, key, where);
    if (!v.is_number()) fail(where + ": field '" + key + "' must be a number");
    return v.get<double>();
}

std::string require_string(const json& j, const char* key, const std::string& where) {
    const json& v = require(j, key, where);
    if (!v.is_string()) fail(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

PiecewiseLinear coefficient_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return PiecewiseLinear::constant(j.get<double>());
    const json& samples = require(j, "samples", where);
    if (!samples.is_array() || samples.size() < 2) {
        fail(where + ": samples must be an array of at least 2 numbers");
    }
    std::vector<double> values;
    for (const auto& v : samples) {
        if (!v.is_number() || !std::isfinite(v.get<double>())) {
            fail(where + ": samples must be finite numbers");
        }
        values.push_back(v.get<double>());
    }
    return PiecewiseLinear(std::move(values));
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

nlohmann::json network_to_json(const Network& net) {
    json vertices = json::array();
    for (const auto& v : net.vertices()) {
        vertices.push_back({{"id", v.id}, {"coords", v.coords}});
    }
    json arcs = json::array();
    for (const auto& a : net.arcs()) {
        json arc = {{"id", a.id}, {"tail", a.tail}, {"head", a.head}};
        arc["geometry"] = a.geometry;
        arcs.push_back(arc);
    }
    return {{"vertices", vertices}, {"arcs", arcs}};
}

std::shared_ptr<Network> network_from_json(const json& j) {
    const json& jverts = require(j, "vertices", "network");
    const json& jarcs = require(j, "arcs", "network");
    if (!jverts.is_array() || jverts.empty()) fail("network: vertices must be a nonempty array");
    if (!jarcs.is_array() || jarcs.empty()) fail("network: arcs must be a nonempty array");

    std::vector<Vertex> vertices;
    for (const auto& jv : jverts) {
        Vertex v;
        v.id = require_string(jv, "id", "vertex");
        const json& coords = require(jv, "coords", "vertex");
        if (!coords.is_array() || coords.empty()) fail("vertex " + v.id + ": bad coords");
        for (const auto& c : coords) {
            if (!c.is_number() || !std::isfinite(c.get<double>())) {
                fail("vertex " + v.id + ": coords must be finite numbers");
            }
            v.coords.push_back(c.get<double>());
        }
        vertices.push_back(std::move(v));
    }
    std::vector<Arc> arcs;
    for (const auto& ja : jarcs) {
        Arc a;
        a.id = require_string(ja, "id", "arc");
        a.tail = require_string(ja, "tail", "arc " + a.id);
        a.head = require_string(ja, "head", "arc " + a.id);
        if (ja.contains("geometry")) {
            for (const auto& jp : ja["geometry"]) {
                Point p;
                for (const auto& c : jp) p.push_back(c.get<double>());
                a.geometry.push_back(std::move(p));
            }
        }
        arcs.push_back(std::move(a));
    }
    std::shared_ptr<Network> net;
    try {
        net = std::make_shared<Network>(std::move(vertices), std::move(arcs));
    } catch (const std::invalid_argument& e) {
        fail(std::string("network: ") + e.what());
    }
    const auto violations = net->validate();
    if (!violations.empty()) fail("network: " + violations.front());
    return net;
}

nlohmann::json hamiltonians_to_json(const HamiltonianSet& hams) {
    json out = json::object();
    for (const auto& [id, h] : hams) {
        json jh;
        if (h.family == HamiltonianFamily::PowerPotential) {
            jh["family"] = "power_potential";
            jh["p"] = h.p;
        } else {
            jh["family"] = "shifted_quadratic";
            jh["alpha"] = h.alpha;
            jh["b"] = {{"samples", h.b.samples()}};
        }
        jh["V"] = {{"samples", h.V.samples()}};
        out[id] = jh;
    }
    return out;
}

HamiltonianSet hamiltonians_from_json(const json& j) {
    if (!j.is_object()) fail("hamiltonians: must be an object keyed by arc id");
    HamiltonianSet hams;
    for (const auto& [id, jh] : j.items()) {
        const std::string family = require_string(jh, "family", "hamiltonian " + id);
        const PiecewiseLinear V = jh.contains("V")
                                      ? coefficient_from_json(jh["V"], "V of " + id)
                                      : PiecewiseLinear::constant(0.0);
        ArcHamiltonian h;
        if (family == "power_potential") {
            h = ArcHamiltonian::power(require_number(jh, "p", "hamiltonian " + id), V);
        } else if (family == "shifted_quadratic") {
            const PiecewiseLinear b =
                jh.contains("b") ? coefficient_from_json(jh["b"], "b of " + id)
                                 : PiecewiseLinear::constant(0.0);
            h = ArcHamiltonian::shifted(
                require_number(jh, "alpha", "hamiltonian " + id), b, V);
        } else {
            fail("hamiltonian " + id + ": unknown family '" + family + "'");
        }
        const auto violations = h.validate(id);
        if (!violations.empty()) fail(violations.front());
        hams.emplace(id, std::move(h));
    }
    return hams;
}

nlohmann::json flux_to_json(const FluxLimiter& flux) {
    if (flux.mode == FluxLimiter::Mode::Minimal) return {{"mode", "minimal"}};
    return {{"mode", "custom"}, {"values", flux.values}};
}

FluxLimiter flux_from_json(const json& j) {
    FluxLimiter flux;
    const std::string mode = require_string(j, "mode", "flux");
    if (mode == "minimal") {
        flux.mode = FluxLimiter::Mode::Minimal;
    } else if (mode == "custom") {
        flux.mode = FluxLimiter::Mode::Custom;
        const json& values = require(j, "values", "flux");
        if (!values.is_object()) fail("flux: values must be an object");
        for (const auto& [id, v] : values.items()) {
            if (!v.is_number()) fail("flux: value for " + id + " must be a number");
            flux.values[id] = v.get<double>();
        }
    } else {
        fail("flux: unknown mode '" + mode + "'");
    }
    return flux;
}

nlohmann::json datum_to_json(const DatumSpec& datum) {
    switch (datum.kind) {
        case DatumSpec::Kind::Constant:
            return {{"kind", "constant"}, {"value", datum.value}};
        case DatumSpec::Kind::VertexBump:
            return {{"kind", "vertex_bump"},
                    {"vertex", datum.vertex},
                    {"depth", datum.depth},
                    {"radius", datum.radius},
                    {"baseline", datum.baseline}};
        case DatumSpec::Kind::ArcSamples:
        default:
            return {{"kind", "arc_samples"}, {"values", datum.arc_values}};
    }
}

DatumSpec datum_from_json(const json& j) {
    DatumSpec datum;
    const std::string kind = require_string(j, "kind", "datum");
    if (kind == "constant") {
        datum.kind = DatumSpec::Kind::Constant;
        datum.value = require_number(j, "value", "datum");
    } else if (kind == "vertex_bump") {
        datum.kind = DatumSpec::Kind::VertexBump;
        datum.vertex = require_string(j, "vertex", "datum");
        datum.depth = require_number(j, "depth", "datum");
        datum.radius = j.value("radius", 1.0);
        datum.baseline = j.value("baseline", 0.0);
        if (!(datum.radius > 0.0)) fail("datum: radius must be positive");
    } else if (kind == "arc_samples") {
        datum.kind = DatumSpec::Kind::ArcSamples;
        const json& values = require(j, "values", "datum");
        if (!values.is_object()) fail("datum: values must be an object keyed by arc id");
        for (const auto& [id, arr] : values.items()) {
            if (!arr.is_array() || arr.size() < 2) {
                fail("datum: samples for " + id + " must be an array of at least 2 numbers");
            }
            std::vector<double> samples;
            for (const auto& v : arr) {
                if (!v.is_number() || !std::isfinite(v.get<double>())) {
                    fail("datum: samples for " + id + " must be finite");
                }
                samples.push_back(v.get<double>());
            }
            datum.arc_values[id] = std::move(samples);
        }
    } else {
        fail("datum: unknown kind '" + kind + "'");
    }
    return datum;
}

nlohmann::json scheme_to_json(const SchemeParams& params) {
    return {{"M", params.M},
            {"dt", params.dt},
            {"lambda_max", params.lambda_max},
            {"tol_conv", params.tol_conv},
            {"hold_steps", params.hold_steps}};
}

SchemeParams scheme_from_json(const json& j) {
    SchemeParams params;
    params.M = static_cast<std::size_t>(require_number(j, "M", "scheme"));
    params.dt = require_number(j, "dt", "scheme");
    params.lambda_max = require_number(j, "lambda_max", "scheme");
    if (j.contains("tol_conv")) {
        const json& tol = j["tol_conv"];
        if (tol.is_string() && tol.get<std::string>() == "auto") {
            params.tol_conv = 0.0;
        } else if (tol.is_number()) {
            params.tol_conv = tol.get<double>();
        } else {
            fail("scheme: tol_conv must be a number or \"auto\"");
        }
    }
    if (j.contains("hold_steps")) {
        params.hold_steps = static_cast<std::size_t>(require_number(j, "hold_steps", "scheme"));
    }
    return params;
}

nlohmann::json curve_to_json(const Network& net, const NetworkCurve& curve) {
    json segments = json::array();
    for (const auto& seg : curve.segments) {
        if (seg.wait) {
            segments.push_back(
                {{"wait", net.vertices()[seg.vertex].id}, {"dt", seg.duration}});
        } else {
            segments.push_back({{"arc", net.arcs()[seg.arc].id},
                                {"from", seg.s_from},
                                {"to", seg.s_to},
                                {"dt", seg.duration}});
        }
    }
    return {{"segments", segments}};
}

NetworkCurve curve_from_json(const Network& net, const json& j) {
    NetworkCurve curve;
    const json& segments = require(j, "segments", "curve");
    if (!segments.is_array() || segments.empty()) fail("curve: segments must be a nonempty array");
    for (const auto& js : segments) {
        CurveSegment seg;
        if (js.contains("wait")) {
            seg.wait = true;
            const std::string id = require_string(js, "wait", "curve segment");
            if (!net.has_vertex(id)) fail("curve: unknown vertex " + id);
            seg.vertex = net.vertex_index(id);
        } else {
            const std::string id = require_string(js, "arc", "curve segment");
            if (!net.has_arc(id)) fail("curve: unknown arc " + id);
            seg.arc = net.arc_index(id);
            seg.s_from = require_number(js, "from", "curve segment");
            seg.s_to = require_number(js, "to", "curve segment");
        }
        seg.duration = require_number(js, "dt", "curve segment");
        curve.segments.push_back(seg);
    }
    const auto violations = curve.validate(net);
    if (!violations.empty()) fail("curve: " + violations.front());
    return curve;
}

double Scenario::working_level() const {
    const double c = critical_value(*network, hamiltonians);
    return std::max(c, flux.max_value(*network, hamiltonians));
}

void Scenario::validate() const {
    const auto net_violations = network->validate();
    if (!net_violations.empty()) fail("network: " + net_violations.front());
    for (const auto& arc : network->arcs()) {
        if (hamiltonians.find(arc.id) == hamiltonians.end()) {
            fail("hamiltonians: missing entry for arc " + arc.id);
        }
    }
    for (const auto& [id, h] : hamiltonians) {
        if (!network->has_arc(id)) fail("hamiltonians: unknown arc " + id);
        const auto violations = h.validate(id);
        if (!violations.empty()) fail(violations.front());
    }
    const auto flux_violations = flux.validate(*network, hamiltonians);
    if (!flux_violations.empty()) fail(flux_violations.front());
    const auto scheme_violations = scheme.validate(*network, hamiltonians, working_level());
    if (!scheme_violations.empty()) fail(scheme_violations.front());
    if (!(horizon >= 0.0)) fail("horizon must be nonnegative");
    const double steps = horizon / scheme.dt;
    if (std::abs(steps - std::round(steps)) > 1e-9) {
        fail("horizon must be a multiple of dt");
    }
    if (datum.kind == DatumSpec::Kind::VertexBump && !network->has_vertex(datum.vertex)) {
        fail("datum: unknown vertex " + datum.vertex);
    }
    if (datum.kind == DatumSpec::Kind::ArcSamples) {
        for (const auto& [id, samples] : datum.arc_values) {
            if (!network->has_arc(id)) fail("datum: unknown arc " + id);
        }
        for (const auto& arc : network->arcs()) {
            if (datum.arc_values.find(arc.id) == datum.arc_values.end()) {
                fail("datum: missing samples for arc " + arc.id);
            }
        }
    }
}

Scenario scenario_from_json(const json& j) {
    Scenario scenario;
    scenario.network = network_from_json(require(j, "network", "scenario"));
    scenario.hamiltonians = hamiltonians_from_json(require(j, "hamiltonians", "scenario"));
    scenario.flux = j.contains("flux") ? flux_from_json(j["flux"]) : FluxLimiter{};
    if (j.contains("datum")) scenario.datum = datum_from_json(j["datum"]);
    if (j.contains("scheme")) scenario.scheme = scheme_from_json(j["scheme"]);
    if (j.contains("horizon")) {
        if (!j["horizon"].is_number()) fail("scenario: horizon must be a number");
        scenario.horizon = j["horizon"].get<double>();
    }
    if (j.contains("level")) {
        if (!j["level"].is_number()) fail("scenario: level must be a number");
        scenario.level = j["level"].get<double>();
    }
    if (j.contains("boundary")) {
        const json& jb = j["boundary"];
        if (!jb.is_array() || jb.empty()) fail("boundary must be a nonempty array");
        BoundaryCondition bc;
        for (const auto& jp : jb) {
            if (jp.contains("vertex")) {
                const std::string id = require_string(jp, "vertex", "boundary point");
                if (!scenario.network->has_vertex(id)) fail("boundary: unknown vertex " + id);
                bc.points.push_back(scenario.network->vertex_point(id));
            } else {
                const std::string id = require_string(jp, "arc", "boundary point");
                if (!scenario.network->has_arc(id)) fail("boundary: unknown arc " + id);
                const double s = require_number(jp, "s", "boundary point");
                if (s < 0.0 || s > 1.0) fail("boundary: s outside [0,1]");
                bc.points.push_back(
                    scenario.network->canonicalize({scenario.network->arc_index(id), false}, s));
            }
            bc.values.push_back(require_number(jp, "value", "boundary point"));
        }
        scenario.boundary_spec = std::move(bc);
    }
    if (j.contains("curve")) {
        scenario.curve = curve_from_json(*scenario.network, j["curve"]);
    }
    scenario.validate();
    return scenario;
}

nlohmann::json scenario_to_json(const Scenario& scenario) {
    json j;
    j["network"] = network_to_json(*scenario.network);
    j["hamiltonians"] = hamiltonians_to_json(scenario.hamiltonians);
    j["flux"] = flux_to_json(scenario.flux);
    j["datum"] = datum_to_json(scenario.datum);
    j["scheme"] = scheme_to_json(scenario.scheme);
    j["horizon"] = scenario.horizon;
    if (scenario.level) j["level"] = *scenario.level;
    if (scenario.curve) j["curve"] = curve_to_json(*scenario.network, *scenario.curve);
    return j;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open scenario file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        fail("scenario parse error: " + std::string(e.what()));
    }
    return scenario_from_json(j);
}

GridFunction materialize_datum(const DatumSpec& datum, std::shared_ptr<const Grid> grid) {
    GridFunction f(grid, 0.0, 0.0);
    const Network& net = grid->network();
    switch (datum.kind) {
        case DatumSpec::Kind::Constant:
            for (std::size_t i = 0; i < grid->size(); ++i) f[i] = datum.value;
            break;
        case DatumSpec::Kind::VertexBump: {
            const NetworkPoint center = net.vertex_point(datum.vertex);
            for (std::size_t i = 0; i < grid->size(); ++i) {
                const double d = net.geodesic_distance(center, grid->point(i));
                f[i] = datum.baseline -
                       datum.depth * std::max(0.0, 1.0 - d / datum.radius);
            }
            break;
        }
        case DatumSpec::Kind::ArcSamples: {
            for (std::size_t i = 0; i < grid->size(); ++i) {
                const NetworkPoint& p = grid->point(i);
                if (!p.is_vertex()) {
                    const PiecewiseLinear values(
                        datum.arc_values.at(net.arcs()[p.arc_index()].id));
                    f[i] = values(p.s());
                }
            }
            // Vertex values come from the incident sample endpoints, which
            // must agree across arcs.
            for (std::size_t v = 0; v < net.vertices().size(); ++v) {
                std::optional<double> value;
                for (const auto& inc : net.incident(v)) {
                    const auto& samples = datum.arc_values.at(net.arcs()[inc.arc].id);
                    const double end_value =
                        inc.end == ArcEnd::Tail ? samples.front() : samples.back();
                    if (value && std::abs(*value - end_value) > 1e-9) {
                        fail("datum: arc samples disagree at vertex " + net.vertices()[v].id);
                    }
                    value = end_value;
                }
                if (value) f[grid->vertex_node(v)] = *value;
            }
            break;
        }
    }
    return f;
}

nlohmann::json grid_function_to_json(const GridFunction& f) {
    return {{"M", f.grid->nodes_per_arc()}, {"time", f.time}, {"values", f.values}};
}

GridFunction grid_function_from_json(const json& j, std::shared_ptr<const Grid> grid) {
    const auto M = static_cast<std::size_t>(require_number(j, "M", "grid function"));
    if (M != grid->nodes_per_arc()) fail("grid function: M mismatch");
    const json& values = require(j, "values", "grid function");
    if (!values.is_array() || values.size() != grid->size()) {
        fail("grid function: values size mismatch");
    }
    GridFunction f(grid, 0.0, j.value("time", 0.0));
    for (std::size_t i = 0; i < grid->size(); ++i) f[i] = values[i].get<double>();
    return f;
}

}  // namespace hjnet
