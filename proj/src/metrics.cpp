#include "oglp/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "oglp/kernels.hpp"

namespace oglp {

double relative_error(const GraphVector& w_hat, const GraphVector& w_true) {
    if (w_hat.d != w_true.d || w_hat.w.size() != w_true.w.size())
        throw std::invalid_argument("relative_error: dimension mismatch");
    const std::size_t n = w_true.w.size();
    const double denom = kern::nrm2sq(w_true.w.data(), n);
    if (denom == 0.0)
        throw std::invalid_argument("relative_error: true graph is all zeros");
    Vec diff(n);
    kern::scale_add(1.0, w_hat.w.data(), -1.0, w_true.w.data(), diff.data(), n);
    return std::sqrt(kern::nrm2sq(diff.data(), n) / denom);
}

double dynamic_regret(std::span<const double> learner_losses,
                      std::span<const double> comparator_losses) {
    if (learner_losses.size() != comparator_losses.size())
        throw std::invalid_argument("dynamic_regret: length mismatch");
    double sum = 0.0;
    for (std::size_t t = 0; t < learner_losses.size(); ++t)
        sum += learner_losses[t] - comparator_losses[t];
    return sum;
}

double path_variation(std::span<const GraphVector> comparators,
                      const Predictor& phi, const ObjectiveParams& params) {
    if (comparators.size() < 2)
        throw std::invalid_argument("path_variation needs at least 2 rounds");
    PredictionContext ctx;  // prior predictors need no data context
    double sum = 0.0;
    Vec diff(comparators[0].w.size());
    for (std::size_t t = 1; t < comparators.size(); ++t) {
        GraphVector predicted =
            apply_predictor(phi, comparators[t - 1], ctx, params.w_max);
        kern::scale_add(1.0, comparators[t].w.data(), -1.0, predicted.w.data(),
                        diff.data(), diff.size());
        sum += std::sqrt(kern::nrm2sq(diff.data(), diff.size()));
    }
    return sum;
}

double regret_bound(const ObjectiveParams& params, int d, long T, double c_vd,
                    double eta, double l_bound) {
    const double dd = static_cast<double>(d) * (d - 1);
    return dd * params.w_max * params.w_max / (4.0 * eta) +
           std::sqrt(2.0 * dd) * params.w_max / (2.0 * eta) * c_vd +
           eta * static_cast<double>(T) * l_bound * l_bound / 2.0;
}

}  // namespace oglp
