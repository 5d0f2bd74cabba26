#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "hjnet/commands.hpp"

using namespace hjnet;
using nlohmann::json;

namespace {

json segment_scenario_json() {
    return json::parse(R"({
      "network": {
        "vertices": [{"id":"v0","coords":[0,0]},{"id":"v1","coords":[1,0]}],
        "arcs": [{"id":"g1","tail":"v0","head":"v1"}]
      },
      "hamiltonians": {"g1": {"family":"power_potential","p":2,"V":{"samples":[0,0]}}},
      "flux": {"mode":"minimal"},
      "datum": {"kind":"vertex_bump","vertex":"v0","depth":1,"radius":0.5,"baseline":0},
      "scheme": {"M":8,"dt":0.05,"lambda_max":5,"tol_conv":0.1,"hold_steps":10},
      "horizon": 1.0
    })");
}

std::string run_cli(const std::string& args, int expected_exit) {
    const char* cli = std::getenv("HJNET_CLI");
    REQUIRE(cli != nullptr);
    const std::string out_dir =
        (std::filesystem::temp_directory_path() / "hjnet_cli_test").string();
    std::filesystem::remove_all(out_dir);
    const std::string command = std::string(cli) + " --out-dir " + out_dir + " " + args +
                                " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == expected_exit);
    return out_dir;
}

std::string write_temp_scenario(const json& j, const std::string& name) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << j.dump(2);
    return path.string();
}

}  // namespace

TEST_CASE("scenario JSON round trip") {
    const json j = segment_scenario_json();
    const Scenario scenario = scenario_from_json(j);
    const json emitted = scenario_to_json(scenario);
    const Scenario again = scenario_from_json(emitted);
    CHECK(scenario_to_json(again) == emitted);
    CHECK(again.network->vertices().size() == 2);
    CHECK(again.scheme.M == 8);
    CHECK(again.horizon == 1.0);
}

TEST_CASE("scenario validation failures") {
    json bad = segment_scenario_json();
    bad["horizon"] = 0.513;  // not a multiple of dt
    CHECK_THROWS_AS(scenario_from_json(bad), ValidationError);

    json loop = segment_scenario_json();
    loop["network"]["arcs"][0]["head"] = "v0";
    loop["network"]["arcs"][0].erase("geometry");
    CHECK_THROWS_AS(scenario_from_json(loop), ValidationError);

    json missing = segment_scenario_json();
    missing.erase("hamiltonians");
    CHECK_THROWS_AS(scenario_from_json(missing), ValidationError);

    json slow = segment_scenario_json();
    slow["flux"] = {{"mode", "custom"}, {"values", {{"v1", 2.0}}}};
    slow["scheme"]["lambda_max"] = 2.0;  // below twice the working speed
    CHECK_THROWS_AS(scenario_from_json(slow), ValidationError);
}

TEST_CASE("datum materialization") {
    const Scenario scenario = scenario_from_json(segment_scenario_json());
    auto grid = std::make_shared<Grid>(scenario.network, 8);

    DatumSpec constant;
    constant.kind = DatumSpec::Kind::Constant;
    constant.value = 4.0;
    const GridFunction fc = materialize_datum(constant, grid);
    for (std::size_t i = 0; i < fc.size(); ++i) CHECK(fc[i] == 4.0);

    const GridFunction fb = materialize_datum(scenario.datum, grid);
    CHECK(fb[grid->vertex_node(scenario.network->vertex_index("v0"))] == doctest::Approx(-1.0));
    CHECK(fb[grid->vertex_node(scenario.network->vertex_index("v1"))] == doctest::Approx(0.0));
    CHECK(fb[grid->arc_node(0, 2)] == doctest::Approx(-0.5));

    DatumSpec samples;
    samples.kind = DatumSpec::Kind::ArcSamples;
    samples.arc_values["g1"] = {1.0, 3.0};
    const GridFunction fs = materialize_datum(samples, grid);
    CHECK(fs[grid->arc_node(0, 4)] == doctest::Approx(2.0));

    // grid-function JSON round trip
    const json jf = grid_function_to_json(fs);
    const GridFunction back = grid_function_from_json(jf, grid);
    for (std::size_t i = 0; i < fs.size(); ++i) CHECK(back[i] == fs[i]);
}

TEST_CASE("inconsistent arc samples at a shared vertex are rejected") {
    auto big = fixtures::bigon();
    auto grid = std::make_shared<Grid>(big.net, 8);
    DatumSpec samples;
    samples.kind = DatumSpec::Kind::ArcSamples;
    samples.arc_values["g1"] = {0.0, 1.0};
    samples.arc_values["g2"] = {0.0, 2.0};
    CHECK_THROWS_AS(materialize_datum(samples, grid), ValidationError);
}

TEST_CASE("float emission uses shortest round-trip form") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-0.5) == "-0.5");
    const double awkward = 0.1 + 0.2;
    std::istringstream in(format_double(awkward));
    double back = 0.0;
    in >> back;
    CHECK(back == awkward);
}

TEST_CASE("command outputs are deterministic") {
    const Scenario scenario = scenario_from_json(segment_scenario_json());
    const CommandOutputs a = cmd_analyze(scenario);
    const CommandOutputs b = cmd_analyze(scenario);
    REQUIRE(a.json_files.count("analyze.json") == 1);
    CHECK(a.json_files.at("analyze.json").dump() == b.json_files.at("analyze.json").dump());
    CHECK(a.csv_files.at("s_matrix.csv") == b.csv_files.at("s_matrix.csv"));

    const CommandOutputs e1 = cmd_evolve(scenario);
    const CommandOutputs e2 = cmd_evolve(scenario);
    CHECK(e1.csv_files.at("trajectory.csv") == e2.csv_files.at("trajectory.csv"));
}

TEST_CASE("analyze reports the static layer") {
    const Scenario scenario = scenario_from_json(segment_scenario_json());
    const json report = cmd_analyze(scenario).json_files.at("analyze.json");
    CHECK(report["c"].get<double>() == 0.0);
    CHECK(report["a0"].get<double>() == 0.0);
    CHECK(report["aubry_arcs"] == json::array({"g1"}));
    CHECK(report["h5_violations"].empty());
    CHECK(report["S_c"]["order"] == json::array({"v0", "v1"}));
}

TEST_CASE("solve-eikonal command certifies its output") {
    json j = segment_scenario_json();
    j["boundary"] = json::array({{{"vertex", "v0"}, {"value", 5.0}}});
    const Scenario scenario = scenario_from_json(j);
    const CommandOutputs out = cmd_solve_eikonal(scenario);
    const json report = out.json_files.at("eikonal.json");
    CHECK(report["subsolution_violations"].empty());
    for (const auto& v : report["values"]) CHECK(v.get<double>() == doctest::Approx(5.0));
}

TEST_CASE("cli runs end to end") {
    const char* scenarios = std::getenv("HJNET_SCENARIOS");
    REQUIRE(scenarios != nullptr);
    const std::string dir(scenarios);

    SUBCASE("analyze bigon") {
        const std::string out = run_cli("analyze " + dir + "/bigon.json", 0);
        std::ifstream in(out + "/analyze.json");
        REQUIRE(in.good());
        json report;
        in >> report;
        CHECK(report["c"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(report["classes"].size() == 1);
    }

    SUBCASE("validation failures exit with 2") {
        json loop = segment_scenario_json();
        loop["network"]["arcs"][0]["head"] = "v0";
        run_cli("analyze " + write_temp_scenario(loop, "hjnet_loop.json"), 2);

        json off = segment_scenario_json();
        off["horizon"] = 0.513;
        run_cli("evolve " + write_temp_scenario(off, "hjnet_offgrid.json"), 2);
    }

    SUBCASE("numerical failures exit with 3") {
        json low = segment_scenario_json();
        low["level"] = -1.0;  // below the critical value
        run_cli("distances " + write_temp_scenario(low, "hjnet_low.json"), 3);
    }

    SUBCASE("evolve produces the trajectory table") {
        const std::string out = run_cli("evolve --snapshot-every 5 " + dir + "/segment.json", 0);
        std::ifstream in(out + "/trajectory.csv");
        REQUIRE(in.good());
        std::string header;
        std::getline(in, header);
        CHECK(header == "t,node,arc,s,value");
    }

    SUBCASE("reparam-cost evaluates the cycle") {
        const std::string out = run_cli("reparam-cost " + dir + "/reparam_bigon_cycle.json", 0);
        std::ifstream in(out + "/reparam.json");
        REQUIRE(in.good());
        json report;
        in >> report;
        CHECK(report["cost_sigma"].get<double>() == doctest::Approx(0.0).epsilon(1e-8));
        CHECK(report["retimed"]["attained"].get<bool>());
    }
}
