#pragma once
// High-accuracy solver for the static problem min_{w in box} f(w, zbar);
// supplies the comparator sequence u_t = w*_t for regret accounting.

#include <span>
#include <vector>

#include "oglp/objective.hpp"

namespace oglp {

struct SolveReport {
    GraphVector w_star;
    long iterations = 0;
    double kkt_residual = 0.0;  // ||w - Pi(w - eta*grad f(w))||_inf
    bool converged = false;
};

// Projected gradient descent with a fixed step chosen from an estimated
// degree floor; the estimate shrinks (and the step with it) whenever an
// iterate would break monotone descent. Start: all entries w_max/2.
SolveReport solve(int d, const Vec& zbar, const ObjectiveParams& params,
                  double tol = 1e-8, long max_iter = 200000);

SolveReport solve_from(const GraphVector& start, const Vec& zbar,
                       const ObjectiveParams& params, double tol = 1e-8,
                       long max_iter = 200000);

// Per-round minimizers, warm-started along the sequence. Throws
// std::runtime_error naming the first non-converged round.
std::vector<GraphVector> comparator_sequence(int d, std::span<const Vec> zbars,
                                             const ObjectiveParams& params,
                                             double tol = 1e-8,
                                             long max_iter = 200000);

}  // namespace oglp
