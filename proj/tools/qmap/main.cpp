#include "qmap_cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace qmap::cli;

    CLI::App app{"qmap: quaternionic Monge-Ampere calculus, solver and estimates"};
    app.require_subcommand(1, 1);
    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    for (const auto& name : command_names()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "key = value configuration file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides [output] dir)");
        sub->add_option("--seed", seed, "seed (overrides [run] seed)");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_config;
    }

    try {
        RunConfig config = load_config(config_path);
        config.command = app.get_subcommands().front()->get_name();
        if (!out_dir.empty()) config.out_dir = out_dir;
        if (app.get_subcommands().front()->count("--seed")) config.seed = seed;
        return dispatch(config, std::cout);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const qmap::ConvergenceError& e) {
        std::cerr << "no convergence: " << e.what() << " (residual " << e.residual() << " after " << e.iterations()
                  << " sweeps)\n";
        return exit_convergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_assertion;
    }
}
