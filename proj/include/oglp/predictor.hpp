#pragma once
// Dynamic-model predictors Phi applied after each correction step:
// identity (the no-prior baseline), AR prior, transition prior, and the
// data-driven Taylor prediction built from a frozen quadratic model.

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <variant>

#include "oglp/objective.hpp"

namespace oglp {

struct IdentityPredictor {};

struct ArPredictor {
    Eigen::MatrixXd a_matrix;  // p x p
};

struct TransitionPredictor {
    double a = 0.98;  // in (0, 1)
    GraphVector target;
};

struct DataDrivenPredictor {
    int iterations = 3;  // P >= 1 inner projected-gradient steps
    double step = 0.0;   // inner step size a; 0 means the adaptive default
};

using Predictor =
    std::variant<IdentityPredictor, ArPredictor, TransitionPredictor,
                 DataDrivenPredictor>;

std::string predictor_name(const Predictor& phi);

// Inputs the data-driven variant needs beyond the corrected iterate.
struct PredictionContext {
    const Vec* zbar_now = nullptr;
    const Vec* zbar_prev = nullptr;
    const ObjectiveParams* params = nullptr;
};

// Applies Phi and re-projects the output onto the box.
GraphVector apply_predictor(const Predictor& phi, const GraphVector& corrected,
                            const PredictionContext& ctx, double w_max);

// Max ratio ||Phi(w1)-Phi(w2)|| / ||w1-w2|| over random feasible pairs;
// <= 1 (+eps) is consistent with a contractive prior. The data-driven
// variant is evaluated at the fixed context in `ctx`.
double contraction_estimate(const Predictor& phi, int d,
                            const ObjectiveParams& params,
                            const PredictionContext& ctx, int trials,
                            std::uint64_t seed);

// Random AR transition matrix: identity plus a small antisymmetric
// perturbation with noise, rescaled so the spectral norm is <= 1.
Eigen::MatrixXd random_ar_matrix(std::size_t p, double eps, std::uint64_t seed);

double spectral_norm(const Eigen::MatrixXd& m);

}  // namespace oglp
