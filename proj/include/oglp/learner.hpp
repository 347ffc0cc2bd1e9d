#pragma once
// The online learning loop: forgetting-factor data aggregation, the
// projected-gradient correction step, and the prediction step delegated
// to a Predictor.

#include <span>
#include <vector>

#include "oglp/predictor.hpp"

namespace oglp {

struct DistanceAggregate {
    Vec zbar;
    double gamma = 0.0;
    long t = 0;
};

DistanceAggregate make_aggregate(int d, double gamma);

// zbar <- gamma*zbar + (1-gamma)*z
DistanceAggregate aggregate_update(const DistanceAggregate& agg, const Vec& z);

enum class StepRule { fixed, adaptive };

// One projected-gradient step: Pi_box(w - eta * grad f(w)).
GraphVector correction_step(const GraphVector& w, const Vec& zbar,
                            const ObjectiveParams& params, double eta);

struct LearnerState {
    GraphVector w_current;  // the post-prediction iterate entering the round
    DistanceAggregate aggregate;
    ObjectiveParams params;
    StepRule step_rule = StepRule::adaptive;
    long round = 1;
    Vec zbar_prev;  // aggregate before this round's update (for prediction)
};

LearnerState make_learner(int d, const ObjectiveParams& params,
                          StepRule rule, const GraphVector& w_init);
// Default start: every weight at w_max/2.
LearnerState make_learner(int d, const ObjectiveParams& params, StepRule rule);

struct RoundRecord {
    long t = 0;
    double eta = 0.0;
    double loss_entering = 0.0;  // f_t(w_t), the regret convention
    double loss_corrected = 0.0;
    double grad_norm = 0.0;
    double min_degree_entering = 0.0;
    GraphVector w_entering;
    GraphVector w_corrected;
};

struct RunTrace {
    std::vector<RoundRecord> rounds;
    std::vector<Vec> zbars;  // aggregate after each round's update
    double b_z_observed = 0.0;
};

// One round: aggregate the new data, correct, predict. Returns the
// record; state advances to the next round.
RoundRecord oglp_round(LearnerState& state, const Vec& z,
                       const Predictor& phi);

// Full run over a stream of distance vectors. Aborts (std::runtime_error)
// if a node degree collapses below 1e-12. Optional fixed step override
// (eta_override > 0) replaces the step-rule value, for regret experiments
// that need eta proportional to 1/sqrt(T).
RunTrace run(std::span<const Vec> stream, const Predictor& phi,
             const ObjectiveParams& params, const GraphVector& w_init, long T,
             StepRule rule, double eta_override = 0.0);

}  // namespace oglp
