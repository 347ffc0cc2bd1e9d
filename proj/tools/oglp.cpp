// CLI harness: simulate / learn / benchmark over JSON experiment configs.
#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "oglp/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"online time-varying graph topology learning"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string replay_dir;
    bool search_beta = false;

    CLI::App* sim = app.add_subcommand("simulate",
                                       "generate and persist a trajectory "
                                       "and its signal stream");
    sim->add_option("--config", config_path, "experiment config (JSON)")
        ->required();
    sim->add_option("--out", out_dir, "output directory")->required();

    CLI::App* learn =
        app.add_subcommand("learn", "run the online learner over a stream");
    learn->add_option("--config", config_path, "experiment config (JSON)")
        ->required();
    learn->add_option("--replay", replay_dir,
                      "replay a persisted stream instead of simulating");
    learn->add_option("--out", out_dir, "output directory")->required();

    CLI::App* bench = app.add_subcommand(
        "benchmark", "run the predictor x seed cross product and aggregate");
    bench->add_option("--config", config_path, "experiment config (JSON)")
        ->required();
    bench->add_option("--out", out_dir, "output directory")->required();
    bench->add_flag("--search-beta", search_beta,
                    "grid-search beta (10^-3 .. 10^2)");

    CLI11_PARSE(app, argc, argv);

    try {
        oglp::ExperimentConfig cfg = oglp::load_config(config_path);
        if (sim->parsed()) return oglp::cmd_simulate(cfg, out_dir);
        if (learn->parsed()) {
            std::optional<std::filesystem::path> replay;
            if (!replay_dir.empty()) replay = replay_dir;
            return oglp::cmd_learn(cfg, replay, out_dir);
        }
        return oglp::cmd_benchmark(cfg, out_dir, search_beta);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
