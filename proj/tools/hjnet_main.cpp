#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hjnet/commands.hpp"

namespace {

void write_outputs(const hjnet::CommandOutputs& outputs, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    for (const auto& [name, doc] : outputs.json_files) {
        std::ofstream out(std::filesystem::path(out_dir) / name);
        out << doc.dump(2) << "\n";
    }
    for (const auto& [name, text] : outputs.csv_files) {
        std::ofstream out(std::filesystem::path(out_dir) / name);
        out << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weak KAM toolkit for Hamilton-Jacobi equations on networks"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string scenario_path;
    std::string out_dir = "out";
    hjnet::CommandOptions options;

    app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    app.add_option("--snapshot-every", options.snapshot_every,
                   "keep every k-th trajectory layer in the CSV")
        ->capture_default_str();
    app.add_option("--seed", options.seed, "seed for sampled checks")->capture_default_str();
    app.add_option("--threads", options.threads, "worker threads")->capture_default_str();

    const auto add_command = [&](const char* name, const char* description) {
        CLI::App* cmd = app.add_subcommand(name, description);
        cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
        return cmd;
    };

    CLI::App* analyze = add_command("analyze", "static layer: critical value, Aubry set, distances");
    CLI::App* distances = add_command("distances", "semidistance table at a level");
    CLI::App* eikonal = add_command("solve-eikonal", "maximal subsolution below boundary data");
    CLI::App* evolve = add_command("evolve", "time evolution of the datum");
    CLI::App* asympt = add_command("asymptotics", "convergence against the static prediction");
    CLI::App* reparam = add_command("reparam-cost", "curve costs and optimal-time retiming");

    bool dump_curves = false;
    evolve->add_flag("--backpointers", dump_curves, "dump backtracked optimal curves");

    CLI11_PARSE(app, argc, argv);

    try {
        const hjnet::Scenario scenario = hjnet::load_scenario(scenario_path);
        options.dump_curves = dump_curves || asympt->parsed();
        hjnet::CommandOutputs outputs;
        if (analyze->parsed()) {
            outputs = hjnet::cmd_analyze(scenario, options);
        } else if (distances->parsed()) {
            outputs = hjnet::cmd_distances(scenario, options);
        } else if (eikonal->parsed()) {
            outputs = hjnet::cmd_solve_eikonal(scenario, options);
        } else if (evolve->parsed()) {
            outputs = hjnet::cmd_evolve(scenario, options);
        } else if (asympt->parsed()) {
            outputs = hjnet::cmd_asymptotics(scenario, options);
        } else if (reparam->parsed()) {
            outputs = hjnet::cmd_reparam_cost(scenario, options);
        }
        write_outputs(outputs, out_dir);
        for (const auto& [name, _] : outputs.json_files) {
            std::cout << out_dir << "/" << name << "\n";
        }
        for (const auto& [name, _] : outputs.csv_files) {
            std::cout << out_dir << "/" << name << "\n";
        }
        return 0;
    } catch (const hjnet::ValidationError& e) {
        std::cerr << nlohmann::json{{"error", "validation"}, {"violations", {e.what()}}}.dump()
                  << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << nlohmann::json{{"error", "validation"}, {"violations", {e.what()}}}.dump()
                  << "\n";
        return 2;
    } catch (const hjnet::NumericalError& e) {
        std::cerr << nlohmann::json{{"error", "numerical"}, {"detail", e.what()}}.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", "numerical"}, {"detail", e.what()}}.dump() << "\n";
        return 3;
    }
}
