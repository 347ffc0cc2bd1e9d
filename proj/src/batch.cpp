#include "oglp/batch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "oglp/kernels.hpp"

namespace oglp {

namespace {

double step_for_floor(const ObjectiveParams& p, int d, double floor) {
    return 1.0 / (4.0 * p.beta + 2.0 * p.alpha * (d - 1) / (floor * floor));
}

double inf_diff(const Vec& a, const Vec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

SolveReport solve_from(const GraphVector& start, const Vec& zbar,
                       const ObjectiveParams& params, double tol,
                       long max_iter) {
    if (tol <= 0.0) throw std::invalid_argument("tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    params.validate();
    const int d = start.d;

    double floor_est = 0.5 * min_degree(start);
    if (floor_est <= 0.0)
        throw std::invalid_argument("solver start must have positive degrees");
    double eta = step_for_floor(params, d, floor_est);

    GraphVector w = start;
    double cur_loss = loss(w, zbar, params);
    SolveReport rep;
    Vec moved(w.w.size());
    for (long it = 0; it < max_iter; ++it) {
        Vec g = gradient(w, zbar, params);
        kern::scale_add(1.0, w.w.data(), -eta, g.data(), moved.data(),
                        moved.size());
        GraphVector next = project_box(d, moved, params.w_max);
        const double next_loss = loss(next, zbar, params);
        if (next_loss > cur_loss + 1e-12 || min_degree(next) < floor_est) {
            // Step too aggressive for the region the iterates visit:
            // shrink the floor estimate and retry with the smaller step.
            floor_est *= 0.5;
            eta = step_for_floor(params, d, floor_est);
            rep.iterations = it + 1;
            continue;
        }
        const double residual = inf_diff(w.w, next.w);
        w = std::move(next);
        cur_loss = next_loss;
        rep.iterations = it + 1;
        if (residual <= tol) {
            rep.converged = true;
            break;
        }
    }
    // Recompute the residual at the reported point.
    Vec g = gradient(w, zbar, params);
    kern::scale_add(1.0, w.w.data(), -eta, g.data(), moved.data(), moved.size());
    GraphVector mapped = project_box(d, moved, params.w_max);
    rep.kkt_residual = inf_diff(w.w, mapped.w);
    rep.converged = rep.kkt_residual <= tol;
    rep.w_star = std::move(w);
    return rep;
}

SolveReport solve(int d, const Vec& zbar, const ObjectiveParams& params,
                  double tol, long max_iter) {
    GraphVector start{d, Vec(pair_count(d), params.w_max / 2.0)};
    return solve_from(start, zbar, params, tol, max_iter);
}

std::vector<GraphVector> comparator_sequence(int d, std::span<const Vec> zbars,
                                             const ObjectiveParams& params,
                                             double tol, long max_iter) {
    if (zbars.empty())
        throw std::invalid_argument("comparator_sequence: empty input");
    std::vector<GraphVector> out;
    out.reserve(zbars.size());
    GraphVector start{d, Vec(pair_count(d), params.w_max / 2.0)};
    for (std::size_t t = 0; t < zbars.size(); ++t) {
        SolveReport rep = solve_from(start, zbars[t], params, tol, max_iter);
        if (!rep.converged)
            throw std::runtime_error("comparator solve failed at round " +
                                     std::to_string(t + 1));
        start = rep.w_star;
        out.push_back(std::move(rep.w_star));
    }
    return out;
}

}  // namespace oglp
