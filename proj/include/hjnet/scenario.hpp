#pragma once

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "hjnet/curve.hpp"
#include "hjnet/eikonal.hpp"
#include "hjnet/evolution.hpp"

namespace hjnet {

/// Input that fails schema or structural validation; maps to exit code 2.
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Numerical breakdown (non-bracketing search, infeasible level and the
/// like); maps to exit code 3.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct DatumSpec {
    enum class Kind { Constant, VertexBump, ArcSamples };
    Kind kind = Kind::Constant;
    double value = 0.0;                           // constant
    std::string vertex;                           // vertex_bump
    double depth = 0.0;
    double radius = 1.0;
    double baseline = 0.0;
    std::map<std::string, std::vector<double>> arc_values;  // arc_samples
};

struct Scenario {
    std::shared_ptr<Network> network;
    HamiltonianSet hamiltonians;
    FluxLimiter flux;
    DatumSpec datum;
    SchemeParams scheme;
    double horizon = 1.0;
    std::optional<double> level;
    std::optional<BoundaryCondition> boundary_spec;  // resolved on parse
    std::optional<NetworkCurve> curve;

    /// Working level for scheme validation: the larger of the critical
    /// value and the flux limiter ceiling.
    double working_level() const;
    /// Structural validation of every part; throws ValidationError.
    void validate() const;
};

nlohmann::json network_to_json(const Network& net);
std::shared_ptr<Network> network_from_json(const nlohmann::json& j);
nlohmann::json hamiltonians_to_json(const HamiltonianSet& hams);
HamiltonianSet hamiltonians_from_json(const nlohmann::json& j);
nlohmann::json flux_to_json(const FluxLimiter& flux);
FluxLimiter flux_from_json(const nlohmann::json& j);
nlohmann::json datum_to_json(const DatumSpec& datum);
DatumSpec datum_from_json(const nlohmann::json& j);
nlohmann::json scheme_to_json(const SchemeParams& params);
SchemeParams scheme_from_json(const nlohmann::json& j);
nlohmann::json curve_to_json(const Network& net, const NetworkCurve& curve);
NetworkCurve curve_from_json(const Network& net, const nlohmann::json& j);

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario load_scenario(const std::string& path);

GridFunction materialize_datum(const DatumSpec& datum, std::shared_ptr<const Grid> grid);

nlohmann::json grid_function_to_json(const GridFunction& f);
GridFunction grid_function_from_json(const nlohmann::json& j, std::shared_ptr<const Grid> grid);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace hjnet
