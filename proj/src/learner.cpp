#include "oglp/learner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "oglp/kernels.hpp"

namespace oglp {

DistanceAggregate make_aggregate(int d, double gamma) {
    if (gamma < 0.0 || gamma >= 1.0)
        throw std::invalid_argument("gamma must lie in [0, 1)");
    return {Vec(pair_count(d), 0.0), gamma, 0};
}

DistanceAggregate aggregate_update(const DistanceAggregate& agg, const Vec& z) {
    if (z.size() != agg.zbar.size())
        throw std::invalid_argument("aggregate_update: dimension mismatch");
    DistanceAggregate out{Vec(z.size()), agg.gamma, agg.t + 1};
    kern::scale_add(agg.gamma, agg.zbar.data(), 1.0 - agg.gamma, z.data(),
                    out.zbar.data(), z.size());
    return out;
}

GraphVector correction_step(const GraphVector& w, const Vec& zbar,
                            const ObjectiveParams& params, double eta) {
    if (eta <= 0.0) throw std::invalid_argument("step size must be > 0");
    Vec g = gradient(w, zbar, params);
    Vec moved(w.w.size());
    kern::scale_add(1.0, w.w.data(), -eta, g.data(), moved.data(), moved.size());
    return project_box(w.d, moved, params.w_max);
}

LearnerState make_learner(int d, const ObjectiveParams& params, StepRule rule,
                          const GraphVector& w_init) {
    params.validate();
    if (w_init.w.size() != pair_count(d))
        throw std::invalid_argument("w_init length does not match d");
    LearnerState st;
    st.w_current = w_init;
    st.aggregate = make_aggregate(d, params.gamma);
    st.params = params;
    st.step_rule = rule;
    st.round = 1;
    st.zbar_prev = Vec(pair_count(d), 0.0);
    return st;
}

LearnerState make_learner(int d, const ObjectiveParams& params, StepRule rule) {
    GraphVector w0{d, Vec(pair_count(d), params.w_max / 2.0)};
    return make_learner(d, params, rule, w0);
}

// One round with an explicit step size.
static RoundRecord round_with_eta(LearnerState& state, const Vec& z,
                                  const Predictor& phi, double eta) {
    const Vec zbar_before = state.aggregate.zbar;
    state.aggregate = aggregate_update(state.aggregate, z);
    const Vec& zbar = state.aggregate.zbar;
    const int d = state.w_current.d;

    RoundRecord rec;
    rec.t = state.round;
    rec.eta = eta;
    rec.w_entering = state.w_current;
    rec.min_degree_entering = min_degree(state.w_current);
    rec.loss_entering = loss(state.w_current, zbar, state.params);

    Vec g = gradient(state.w_current, zbar, state.params);
    rec.grad_norm = std::sqrt(kern::nrm2sq(g.data(), g.size()));
    Vec moved(g.size());
    kern::scale_add(1.0, state.w_current.w.data(), -eta, g.data(), moved.data(),
                    moved.size());
    rec.w_corrected = project_box(d, moved, state.params.w_max);
    rec.loss_corrected = loss(rec.w_corrected, zbar, state.params);

    PredictionContext ctx{&zbar, &zbar_before, &state.params};
    state.w_current =
        apply_predictor(phi, rec.w_corrected, ctx, state.params.w_max);
    state.zbar_prev = zbar_before;
    ++state.round;
    return rec;
}

RoundRecord oglp_round(LearnerState& state, const Vec& z, const Predictor& phi) {
    const int d = state.w_current.d;
    const double eta = state.step_rule == StepRule::fixed
                           ? step_size_fixed(state.params, d)
                           : step_size_adaptive(state.w_current, state.params, d);
    return round_with_eta(state, z, phi, eta);
}

RunTrace run(std::span<const Vec> stream, const Predictor& phi,
             const ObjectiveParams& params, const GraphVector& w_init, long T,
             StepRule rule, double eta_override) {
    if (T < 1) throw std::invalid_argument("T must be >= 1");
    if (std::cmp_less(stream.size(), T))
        throw std::invalid_argument("stream shorter than T");
    LearnerState state = make_learner(w_init.d, params, rule, w_init);
    RunTrace trace;
    trace.rounds.reserve(static_cast<std::size_t>(T));
    trace.zbars.reserve(static_cast<std::size_t>(T));
    for (long t = 0; t < T; ++t) {
        if (min_degree(state.w_current) < 1e-12)
            throw std::runtime_error(
                "barrier breach: node degree collapsed below 1e-12 at round " +
                std::to_string(t + 1));
        RoundRecord rec =
            eta_override > 0.0
                ? round_with_eta(state, stream[t], phi, eta_override)
                : oglp_round(state, stream[t], phi);
        trace.rounds.push_back(std::move(rec));
        trace.zbars.push_back(state.aggregate.zbar);
        const double zn =
            std::sqrt(kern::nrm2sq(stream[t].data(), stream[t].size()));
        trace.b_z_observed = std::max(trace.b_z_observed, zn);
    }
    return trace;
}

}  // namespace oglp
