#pragma once
// Experiment orchestration shared by the CLI and the acceptance suite:
// JSON config parsing, the simulate / learn / benchmark commands and
// multi-seed aggregation.

#include <nlohmann/json_fwd.hpp>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "oglp/batch.hpp"
#include "oglp/io.hpp"
#include "oglp/metrics.hpp"
#include "oglp/sim.hpp"

namespace oglp {

struct PredictorSpec {
    // identity | true_prior | data_driven | ar_file | transition_file
    std::string type = "identity";
    int iterations = 3;     // data_driven
    double step = 0.0;      // data_driven inner step (0 = adaptive default)
    std::string file;       // ar_file: dense CSV; transition_file: edge list
    double transition_a = 0.995;
};

struct ExperimentConfig {
    TrajectoryConfig sim;
    SignalConfig signal;
    ObjectiveParams objective;
    std::vector<PredictorSpec> predictors{PredictorSpec{}};
    StepRule step_rule = StepRule::adaptive;
    std::vector<std::uint64_t> seeds{1};
    long snapshot_interval = 0;  // 0 = no snapshots
    bool regret = false;         // compute comparators + regret columns
    double comparator_tol = 1e-8;
    double eta_override = 0.0;   // > 0 forces this fixed step

    void validate() const;
};

nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
void save_config(const std::filesystem::path& path,
                 const ExperimentConfig& cfg);

Predictor build_predictor(const PredictorSpec& spec,
                          const TrajectorySimulator& sim,
                          const std::filesystem::path& base_dir);

// Exit codes: 0 success, 2 config/input error, 3 barrier breach.
int cmd_simulate(const ExperimentConfig& cfg,
                 const std::filesystem::path& out_dir);
int cmd_learn(const ExperimentConfig& cfg,
              const std::optional<std::filesystem::path>& replay_dir,
              const std::filesystem::path& out_dir);
int cmd_benchmark(const ExperimentConfig& cfg,
                  const std::filesystem::path& out_dir, bool search_beta);

// In-memory result of one learning run, used by benchmark aggregation
// and by the acceptance suite.
struct LearnResult {
    std::vector<io::TraceRow> rows;
    RunTrace trace;
    std::vector<GraphVector> truth;
    RunSummary summary;
    double b_z = 0.0;
    double per_round_us = 0.0;
};

LearnResult run_experiment(const ExperimentConfig& cfg,
                           const PredictorSpec& spec, std::uint64_t seed,
                           const std::filesystem::path& base_dir = ".");

// Rounds after a switch until the error curve re-enters
// `factor` times its pre-switch mean (window rounds before the switch).
// Returns a value past the end of the curve if it never recovers.
long rounds_to_recover(const std::vector<double>& rel_errors, long switch_time,
                       long window = 50, double factor = 1.1);

}  // namespace oglp
