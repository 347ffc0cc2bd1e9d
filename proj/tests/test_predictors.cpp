#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oglp/batch.hpp"
#include "oglp/predictor.hpp"

using namespace oglp;

namespace {

const ObjectiveParams params{2.0, 1.0, 0.0, 1.0, 0.5};

}  // namespace

TEST_CASE("identity predictor returns its input") {
    PredictionContext ctx;
    GraphVector w{2, {0.3}};
    GraphVector out = apply_predictor(IdentityPredictor{}, w, ctx, 1.0);
    CHECK(out.w == w.w);
}

TEST_CASE("AR predictor: identity matrix, scaling and box projection") {
    PredictionContext ctx;
    const int d = 3;
    const auto p = static_cast<Eigen::Index>(pair_count(d));
    GraphVector w{d, {1.0, 1.0, 1.0}};

    GraphVector same = apply_predictor(
        ArPredictor{Eigen::MatrixXd::Identity(p, p)}, w, ctx, 2.0);
    CHECK(same.w == w.w);

    GraphVector scaled = apply_predictor(
        ArPredictor{0.9 * Eigen::MatrixXd::Identity(p, p)}, w, ctx, 2.0);
    for (double v : scaled.w) CHECK(v == doctest::Approx(0.9));

    GraphVector bad{d, {1.0, 1.0, 1.0}};
    CHECK_THROWS_AS(
        apply_predictor(ArPredictor{Eigen::MatrixXd::Identity(2, 2)}, bad, ctx,
                        1.0),
        std::invalid_argument);
}

TEST_CASE("transition predictor: fixed point and convex combination") {
    PredictionContext ctx;
    GraphVector target{2, {1.0}};
    GraphVector out = apply_predictor(TransitionPredictor{0.75, target},
                                      {2, {0.0}}, ctx, 5.0);
    CHECK(out.w[0] == doctest::Approx(0.25));

    GraphVector at_target = apply_predictor(TransitionPredictor{0.75, target},
                                            target, ctx, 5.0);
    CHECK(at_target.w[0] == doctest::Approx(1.0));

    // a -> 0 limit lands on the target.
    GraphVector near = apply_predictor(TransitionPredictor{1e-9, target},
                                       {2, {0.0}}, ctx, 5.0);
    CHECK(near.w[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("data-driven predictor equals an independent recurrence") {
    // Straightforward reimplementation of the P-step inner loop using
    // dense algebra, kept deliberately naive.
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> uni(0.2, 1.0);
    const int d = 4;
    const std::size_t p = pair_count(d);
    GraphVector w{d, Vec(p)};
    Vec znow(p), zprev(p);
    for (std::size_t k = 0; k < p; ++k) {
        w.w[k] = uni(rng);
        znow[k] = uni(rng);
        zprev[k] = uni(rng);
    }
    PredictionContext ctx{&znow, &zprev, &params};

    for (int steps : {1, 3, 7}) {
        const double a = 0.05;
        GraphVector got = apply_predictor(DataDrivenPredictor{steps, a}, w,
                                          ctx, params.w_max);

        Vec grad_w = gradient(w, znow, params);
        Vec tdiff = temporal_gradient_diff(znow, zprev);
        Vec iter = w.w;
        for (int s = 0; s < steps; ++s) {
            Vec diff(p);
            for (std::size_t k = 0; k < p; ++k) diff[k] = iter[k] - w.w[k];
            Vec hv = hessian_apply(w, params, diff);
            for (std::size_t k = 0; k < p; ++k) {
                double next = iter[k] - a * (hv[k] + tdiff[k] + grad_w[k]);
                iter[k] = std::min(std::max(next, 0.0), params.w_max);
            }
        }
        for (std::size_t k = 0; k < p; ++k)
            CHECK(std::abs(got.w[k] - iter[k]) <= 1e-12);
    }
}

TEST_CASE("data-driven predictor leaves a stationary fixed point unchanged") {
    std::mt19937_64 rng(78);
    std::uniform_real_distribution<double> uni(0.2, 1.5);
    const int d = 3;
    Vec z(pair_count(d));
    for (double& v : z) v = uni(rng);
    SolveReport rep = solve(d, z, params, 1e-12);
    REQUIRE(rep.converged);

    PredictionContext ctx{&z, &z, &params};
    GraphVector out = apply_predictor(DataDrivenPredictor{5, 0.0}, rep.w_star,
                                      ctx, params.w_max);
    for (std::size_t k = 0; k < out.w.size(); ++k)
        CHECK(std::abs(out.w[k] - rep.w_star.w[k]) < 1e-8);
}

TEST_CASE("data-driven predictor rejects P < 1 and a missing context") {
    PredictionContext empty;
    CHECK_THROWS_AS(
        apply_predictor(DataDrivenPredictor{0, 0.1}, {2, {0.5}}, empty, 1.0),
        std::invalid_argument);
    CHECK_THROWS_AS(
        apply_predictor(DataDrivenPredictor{1, 0.1}, {2, {0.5}}, empty, 1.0),
        std::invalid_argument);
}

TEST_CASE("contraction estimates") {
    PredictionContext ctx;
    CHECK(contraction_estimate(IdentityPredictor{}, 4, params, ctx, 100, 1) ==
          doctest::Approx(1.0));

    GraphVector target{4, Vec(pair_count(4), 0.5)};
    CHECK(contraction_estimate(TransitionPredictor{0.75, target}, 4, params,
                               ctx, 200, 2) <= 0.75 + 1e-9);

    const auto p = static_cast<Eigen::Index>(pair_count(4));
    Eigen::MatrixXd a = random_ar_matrix(pair_count(4), 0.3, 5);
    a *= 0.9 / spectral_norm(a);
    CHECK(contraction_estimate(ArPredictor{a}, 4, params, ctx, 500, 3) <=
          0.9 + 1e-9);
    CHECK(a.rows() == p);
}

TEST_CASE("random AR matrices have spectral norm at most 1") {
    for (std::uint64_t seed : {1u, 2u, 3u, 10u}) {
        Eigen::MatrixXd a = random_ar_matrix(pair_count(5), 0.1, seed);
        CHECK(spectral_norm(a) <= 1.0 + 1e-9);
    }
}

TEST_CASE("predictor outputs stay in the box") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int d = 5;
    const std::size_t p = pair_count(d);
    Eigen::MatrixXd a = random_ar_matrix(p, 0.5, 17);
    GraphVector target{d, Vec(p, 0.9)};
    Vec znow(p, 0.5), zprev(p, 0.4);
    PredictionContext ctx{&znow, &zprev, &params};
    std::vector<Predictor> predictors{
        IdentityPredictor{}, ArPredictor{a}, TransitionPredictor{0.5, target},
        DataDrivenPredictor{3, 0.0}};
    for (int trial = 0; trial < 20; ++trial) {
        GraphVector w{d, Vec(p)};
        for (double& v : w.w) v = 0.1 + 0.9 * uni(rng);
        for (const Predictor& phi : predictors) {
            GraphVector out = apply_predictor(phi, w, ctx, params.w_max);
            for (double v : out.w) {
                CHECK(v >= 0.0);
                CHECK(v <= params.w_max);
            }
        }
    }
}
