#pragma once
// The time-indexed smoothness objective
//   f(w) = 2<zbar, w> - alpha * sum_i log((Sw)_i) + 2*beta*||w||^2
// together with its gradient, Hessian action, temporal-gradient
// difference and the step-size / gradient-bound formulas.
//
// Note the quadratic term carries coefficient 2*beta so that the loss
// is the antiderivative of the gradient 2*zbar + 4*beta*w - alpha*S^T(Sw)^.(-1).

#include "oglp/graph.hpp"

namespace oglp {

struct ObjectiveParams {
    double alpha = 2.0;     // log-degree barrier weight
    double beta = 1.0;      // quadratic weight
    double gamma = 0.0;     // forgetting factor, in [0, 1)
    double w_max = 1.0;     // box bound
    double deg_min = 0.1;   // degree floor for fixed step and bound L

    void validate() const;
};

// Returns +inf when any degree is <= 0 (barrier).
double loss(const GraphVector& w, const Vec& zbar, const ObjectiveParams& p);

// Throws std::domain_error when any degree is <= 0.
Vec gradient(const GraphVector& w, const Vec& zbar, const ObjectiveParams& p);

// Hessian-vector product: H v = 4*beta*v + alpha * S^T((Sw)^.(-2) .* (Sv)).
Vec hessian_apply(const GraphVector& w, const ObjectiveParams& p, const Vec& v);

// 2*(zbar_now - zbar_prev); stands in for h * d/dt grad f (backward
// difference, h absorbed).
Vec temporal_gradient_diff(const Vec& zbar_now, const Vec& zbar_prev);

// L = 2*B_z + 2*sqrt(2)*beta*sqrt(d(d-1))*w_max + alpha*sqrt(2(d-1))*sqrt(d)/deg_min.
double gradient_bound(const ObjectiveParams& p, int d, double b_z);

// eta = (4*beta + 2*alpha*(d-1)/deg_min^2)^{-1}
double step_size_fixed(const ObjectiveParams& p, int d);

// Same formula with deg_min replaced by the current minimum degree.
double step_size_adaptive(const GraphVector& w, const ObjectiveParams& p, int d);

}  // namespace oglp
