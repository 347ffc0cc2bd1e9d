#pragma once
// Synthetic dynamic-graph trajectories (AR / transition / switching /
// static) and smooth-signal sampling from each ground-truth graph.

#include <cstdint>
#include <random>
#include <vector>

#include "oglp/predictor.hpp"

namespace oglp {

enum class DynModel { static_graph, ar, transition, switching };

DynModel parse_dyn_model(const std::string& s);
std::string dyn_model_name(DynModel m);

struct InitGraphConfig {
    enum class Kind { erdos_renyi, rbf } kind = Kind::erdos_renyi;
    double p_edge = 0.3;
    double weight_min = 0.1;
    double weight_max = 1.0;
    double rbf_bandwidth = 0.5;   // kernel width over unit-square positions
    double rbf_threshold = 0.05;  // weights below this are dropped
};

struct TrajectoryConfig {
    int d = 20;
    long T = 1000;
    DynModel model = DynModel::static_graph;
    double ar_eps = 0.02;            // perturbation scale of the AR generator
    double ar_deg_floor = 0.05;      // AR trajectories never isolate a node
    double transition_a = 0.995;     // geometric rate toward the target
    std::vector<long> switch_times;  // strictly increasing, within [1, T]
    InitGraphConfig init;
    std::uint64_t seed = 1;
    double w_max = 1.0;

    void validate() const;
};

struct SignalConfig {
    double noise_sigma = 0.1;
    double pinv_tol = 1e-8;  // eigenvalue cutoff for the Laplacian pseudo-inverse
};

// Random feasible graph with no isolated node; resamples up to 1000
// times, then throws.
GraphVector init_graph(const TrajectoryConfig& cfg, std::mt19937_64& rng);

// x = sum_{lambda_i > tol} lambda_i^{-1/2} g_i v_i + sigma*n, so that
// cov(x) = Ldagger + sigma^2 I.
Vec sample_signal(const GraphVector& w, const SignalConfig& cfg,
                  std::mt19937_64& rng);

struct StreamRound {
    GraphVector w_true;
    Vec x;
    Vec z;
};

// Holds the drawn model objects (AR matrix, transition target, switch
// library) so the matching true-prior predictor can be handed to the
// learner.
class TrajectorySimulator {
  public:
    explicit TrajectorySimulator(const TrajectoryConfig& cfg);

    const TrajectoryConfig& config() const { return cfg_; }
    const GraphVector& initial() const { return initial_; }

    // Ground truth at round t+1 given truth at round t (t is 1-based).
    GraphVector evolve(const GraphVector& w, long t) const;

    // The predictor matching the true dynamics (identity for static and
    // switching).
    Predictor true_prior() const;

    const Eigen::MatrixXd& ar_matrix() const { return ar_matrix_; }
    const GraphVector& transition_target() const { return target_; }

  private:
    TrajectoryConfig cfg_;
    GraphVector initial_;
    Eigen::MatrixXd ar_matrix_;
    GraphVector target_;
    std::vector<GraphVector> switch_library_;
};

std::vector<StreamRound> generate_stream(const TrajectoryConfig& cfg,
                                         const SignalConfig& scfg);

}  // namespace oglp
