#include "oglp/objective.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "oglp/kernels.hpp"

namespace oglp {

void ObjectiveParams::validate() const {
    if (alpha <= 0.0) throw std::invalid_argument("alpha must be > 0");
    if (beta <= 0.0) throw std::invalid_argument("beta must be > 0");
    if (gamma < 0.0 || gamma >= 1.0)
        throw std::invalid_argument("gamma must lie in [0, 1)");
    if (w_max <= 0.0) throw std::invalid_argument("w_max must be > 0");
    if (deg_min <= 0.0) throw std::invalid_argument("deg_min must be > 0");
}

static void check_dims(const GraphVector& w, const Vec& zbar) {
    if (w.w.size() != pair_count(w.d) || zbar.size() != w.w.size())
        throw std::invalid_argument("objective: dimension mismatch");
}

double loss(const GraphVector& w, const Vec& zbar, const ObjectiveParams& p) {
    check_dims(w, zbar);
    const std::size_t n = w.w.size();
    Vec deg = degree_apply(w);
    double barrier = 0.0;
    for (double dv : deg) {
        if (dv <= 0.0) return std::numeric_limits<double>::infinity();
        barrier += std::log(dv);
    }
    const double data = 2.0 * kern::dot(zbar.data(), w.w.data(), n);
    const double quad = 2.0 * p.beta * kern::nrm2sq(w.w.data(), n);
    return data - p.alpha * barrier + quad;
}

Vec gradient(const GraphVector& w, const Vec& zbar, const ObjectiveParams& p) {
    check_dims(w, zbar);
    Vec deg = degree_apply(w);
    for (double& dv : deg) {
        if (dv <= 0.0)
            throw std::domain_error("gradient undefined: node degree <= 0");
        dv = 1.0 / dv;
    }
    Vec sadj(w.w.size());
    degree_adjoint(deg.data(), w.d, sadj.data());
    Vec g(w.w.size());
    kern::grad_combine(zbar.data(), w.w.data(), sadj.data(), p.beta, p.alpha,
                       g.data(), g.size());
    return g;
}

Vec hessian_apply(const GraphVector& w, const ObjectiveParams& p, const Vec& v) {
    if (v.size() != pair_count(w.d))
        throw std::invalid_argument("hessian_apply: dimension mismatch");
    Vec deg = degree_apply(w);
    Vec sv(deg.size());
    degree_apply(v.data(), w.d, sv.data());
    for (std::size_t i = 0; i < deg.size(); ++i) {
        if (deg[i] <= 0.0)
            throw std::domain_error("hessian undefined: node degree <= 0");
        sv[i] *= 1.0 / (deg[i] * deg[i]);
    }
    Vec out(v.size());
    degree_adjoint(sv.data(), w.d, out.data());
    // out = 4*beta*v + alpha*out
    kern::scale_add(4.0 * p.beta, v.data(), p.alpha, out.data(), out.data(),
                    out.size());
    return out;
}

Vec temporal_gradient_diff(const Vec& zbar_now, const Vec& zbar_prev) {
    if (zbar_now.size() != zbar_prev.size())
        throw std::invalid_argument("temporal_gradient_diff: length mismatch");
    Vec out(zbar_now.size());
    kern::scale_add(2.0, zbar_now.data(), -2.0, zbar_prev.data(), out.data(),
                    out.size());
    return out;
}

double gradient_bound(const ObjectiveParams& p, int d, double b_z) {
    if (b_z <= 0.0) throw std::invalid_argument("B_z must be > 0");
    const double dd = static_cast<double>(d) * (d - 1);
    return 2.0 * b_z + 2.0 * std::sqrt(2.0) * p.beta * std::sqrt(dd) * p.w_max +
           p.alpha * std::sqrt(2.0 * (d - 1)) * std::sqrt(static_cast<double>(d)) /
               p.deg_min;
}

double step_size_fixed(const ObjectiveParams& p, int d) {
    return 1.0 / (4.0 * p.beta + 2.0 * p.alpha * (d - 1) / (p.deg_min * p.deg_min));
}

double step_size_adaptive(const GraphVector& w, const ObjectiveParams& p, int d) {
    const double m = min_degree(w);
    if (m <= 0.0)
        throw std::domain_error("adaptive step size undefined: degree <= 0");
    return 1.0 / (4.0 * p.beta + 2.0 * p.alpha * (d - 1) / (m * m));
}

}  // namespace oglp
