#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swell/scenario.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw swell::ConfigError("cannot open config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"swell - one-dimensional finite-volume solver for shallow flows"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = "out";
    bool svg = false;

    CLI::App* run_cmd = app.add_subcommand("run", "run a scenario from a config file");
    run_cmd->add_option("config", config_path, "path to a key = value config file")
        ->required();
    run_cmd->add_option("--override", overrides, "override a config key (key=value)");
    run_cmd->add_option("--out", out_dir, "output directory (default: out)");
    run_cmd->add_flag("--svg", svg, "also write an SVG figure");

    CLI11_PARSE(app, argc, argv);

    try {
        swell::ScenarioConfig config = swell::parse_config(read_file(config_path));
        for (const std::string& o : overrides) swell::apply_override(config, o);

        const swell::RunArtifacts art = swell::run(config, out_dir, svg);
        for (const std::string& f : art.files_written) std::cout << "wrote " << f << "\n";
        if (art.steps > 0) {
            std::cout << "steps: " << art.steps << ", end time: " << art.end_time << "\n";
            std::cout << "min mass before clamp: " << art.min_mass_seen
                      << ", clamps: " << art.clamp_count << "\n";
        }
        return 0;
    } catch (const swell::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    }
}
