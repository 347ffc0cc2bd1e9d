#include "oglp/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "oglp/kernels.hpp"

namespace oglp {

std::string predictor_name(const Predictor& phi) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, IdentityPredictor>)
                return "identity";
            else if constexpr (std::is_same_v<T, ArPredictor>)
                return "ar";
            else if constexpr (std::is_same_v<T, TransitionPredictor>)
                return "transition";
            else
                return "data_driven";
        },
        phi);
}

static GraphVector predict_ar(const GraphVector& w, const ArPredictor& ar,
                              double w_max) {
    const auto p = static_cast<Eigen::Index>(w.w.size());
    if (ar.a_matrix.rows() != p || ar.a_matrix.cols() != p)
        throw std::invalid_argument("AR matrix size does not match graph");
    Eigen::Map<const Eigen::VectorXd> wv(w.w.data(), p);
    Eigen::VectorXd prod = ar.a_matrix * wv;
    Vec out(prod.data(), prod.data() + p);
    return project_box(w.d, out, w_max);
}

static GraphVector predict_transition(const GraphVector& w,
                                      const TransitionPredictor& tr,
                                      double w_max) {
    if (tr.a <= 0.0 || tr.a >= 1.0)
        throw std::invalid_argument("transition parameter a must be in (0,1)");
    if (tr.target.w.size() != w.w.size())
        throw std::invalid_argument("transition target size mismatch");
    Vec out(w.w.size());
    kern::scale_add(tr.a, w.w.data(), 1.0 - tr.a, tr.target.w.data(), out.data(),
                    out.size());
    return project_box(w.d, out, w_max);
}

static GraphVector predict_data_driven(const GraphVector& w_corrected,
                                       const DataDrivenPredictor& dd,
                                       const PredictionContext& ctx,
                                       double w_max) {
    if (dd.iterations < 1)
        throw std::invalid_argument("data-driven predictor needs P >= 1");
    if (!ctx.zbar_now || !ctx.zbar_prev || !ctx.params)
        throw std::invalid_argument("data-driven predictor needs a context");
    const ObjectiveParams& p = *ctx.params;
    const int d = w_corrected.d;

    // Frozen pieces of the quadratic model at the corrected iterate.
    const Vec grad = gradient(w_corrected, *ctx.zbar_now, p);
    const Vec tdiff = temporal_gradient_diff(*ctx.zbar_now, *ctx.zbar_prev);
    Vec base(grad.size());
    for (std::size_t i = 0; i < base.size(); ++i) base[i] = grad[i] + tdiff[i];

    double step = dd.step;
    if (step <= 0.0) step = step_size_adaptive(w_corrected, p, d);

    GraphVector iter = w_corrected;
    Vec diff(grad.size()), move(grad.size());
    for (int it = 0; it < dd.iterations; ++it) {
        kern::scale_add(1.0, iter.w.data(), -1.0, w_corrected.w.data(),
                        diff.data(), diff.size());
        Vec hv = hessian_apply(w_corrected, p, diff);
        for (std::size_t i = 0; i < move.size(); ++i)
            move[i] = iter.w[i] - step * (hv[i] + base[i]);
        iter = project_box(d, move, w_max);
    }
    return iter;
}

GraphVector apply_predictor(const Predictor& phi, const GraphVector& corrected,
                            const PredictionContext& ctx, double w_max) {
    return std::visit(
        [&](const auto& v) -> GraphVector {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, IdentityPredictor>)
                return corrected;
            else if constexpr (std::is_same_v<T, ArPredictor>)
                return predict_ar(corrected, v, w_max);
            else if constexpr (std::is_same_v<T, TransitionPredictor>)
                return predict_transition(corrected, v, w_max);
            else
                return predict_data_driven(corrected, v, ctx, w_max);
        },
        phi);
}

double contraction_estimate(const Predictor& phi, int d,
                            const ObjectiveParams& params,
                            const PredictionContext& ctx, int trials,
                            std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    std::mt19937_64 rng(seed);
    // Stay in the interior so degrees remain positive for the
    // data-driven variant.
    std::uniform_real_distribution<double> uni(0.05 * params.w_max,
                                               params.w_max);
    const std::size_t p = pair_count(d);
    double worst = 0.0;
    Vec diff(p);
    for (int t = 0; t < trials; ++t) {
        GraphVector w1{d, Vec(p)}, w2{d, Vec(p)};
        for (std::size_t i = 0; i < p; ++i) {
            w1.w[i] = uni(rng);
            w2.w[i] = uni(rng);
        }
        GraphVector y1 = apply_predictor(phi, w1, ctx, params.w_max);
        GraphVector y2 = apply_predictor(phi, w2, ctx, params.w_max);
        kern::scale_add(1.0, w1.w.data(), -1.0, w2.w.data(), diff.data(), p);
        const double denom = std::sqrt(kern::nrm2sq(diff.data(), p));
        if (denom < 1e-14) continue;
        kern::scale_add(1.0, y1.w.data(), -1.0, y2.w.data(), diff.data(), p);
        worst = std::max(worst, std::sqrt(kern::nrm2sq(diff.data(), p)) / denom);
    }
    return worst;
}

double spectral_norm(const Eigen::MatrixXd& m) {
    // Power iteration on m^T m.
    Eigen::VectorXd v = Eigen::VectorXd::Ones(m.cols());
    v.normalize();
    double prev = 0.0;
    for (int it = 0; it < 5000; ++it) {
        Eigen::VectorXd u = m.transpose() * (m * v);
        const double lambda = u.norm();
        if (lambda == 0.0) return 0.0;
        v = u / lambda;
        if (it > 2 && std::abs(lambda - prev) <= 1e-14 * lambda) break;
        prev = lambda;
    }
    return std::sqrt((m * v).squaredNorm() / v.squaredNorm());
}

Eigen::MatrixXd random_ar_matrix(std::size_t p, double eps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(p);
    Eigen::MatrixXd q(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) q(i, j) = gauss(rng);
    Eigen::MatrixXd anti = 0.5 * (q - q.transpose());
    Eigen::MatrixXd noise(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) noise(i, j) = gauss(rng);
    // Unit-norm perturbations keep eps interpretable as the per-round
    // relative change; the final rescale then only removes an O(eps^2)
    // excess instead of contracting the whole map.
    const double anorm = spectral_norm(anti);
    if (anorm > 0.0) anti /= anorm;
    const double nnorm = spectral_norm(noise);
    if (nnorm > 0.0) noise /= nnorm;
    Eigen::MatrixXd a =
        Eigen::MatrixXd::Identity(n, n) + eps * (anti + 0.1 * noise);
    const double norm = spectral_norm(a);
    if (norm > 1.0) a /= norm;
    return a;
}

}  // namespace oglp
