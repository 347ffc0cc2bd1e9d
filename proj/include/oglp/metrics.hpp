#pragma once
// Relative error, dynamic regret, path variation and the regret-bound
// evaluator.

#include <span>
#include <vector>

#include "oglp/predictor.hpp"

namespace oglp {

// ||W_hat - W*||_F / ||W*||_F (equals the ratio of the vector norms).
double relative_error(const GraphVector& w_hat, const GraphVector& w_true);

// Sum of per-round loss differences; may be negative for a poor
// comparator.
double dynamic_regret(std::span<const double> learner_losses,
                      std::span<const double> comparator_losses);

// C_V = sum_{t=2}^T ||u_t - Phi(u_{t-1})||. The data-driven variant is
// not supported here (its map depends on the data stream); pass the
// prior predictors or identity.
double path_variation(std::span<const GraphVector> comparators,
                      const Predictor& phi, const ObjectiveParams& params);

// d(d-1)w_max^2/(4 eta) + sqrt(2d(d-1)) w_max/(2 eta) * C_V + eta*T*L^2/2.
double regret_bound(const ObjectiveParams& params, int d, long T, double c_vd,
                    double eta, double l_bound);

struct RunSummary {
    double final_rel_error = 0.0;
    double mean_rel_error_tail = 0.0;  // mean over the last 10% of rounds
    double regret = 0.0;
    double path_variation = 0.0;
    double bound = 0.0;
    bool bound_satisfied = false;
};

}  // namespace oglp
