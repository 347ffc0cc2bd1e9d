#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oglp/objective.hpp"

using namespace oglp;

namespace {

GraphVector interior_graph(int d, std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> uni(lo, hi);
    GraphVector g = zero_graph(d);
    for (double& w : g.w) w = uni(rng);
    return g;
}

Vec random_distances(std::size_t p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 2.0);
    Vec z(p);
    for (double& v : z) v = uni(rng);
    return z;
}

double norm2(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("params validation") {
    ObjectiveParams p;
    CHECK_NOTHROW(p.validate());
    p.gamma = 1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.gamma = 0.0;
    p.alpha = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("loss worked example d=2") {
    // 2*1 - 1*2*log(1) + 2*0.5*1 = 3
    ObjectiveParams p{1.0, 0.5, 0.0, 5.0, 1.0};
    CHECK(loss({2, {1.0}}, {1.0}, p) == doctest::Approx(3.0));
}

TEST_CASE("loss returns +inf on a zero-degree node") {
    ObjectiveParams p{1.0, 0.5, 0.0, 5.0, 1.0};
    // d=3 with only edge (0,1): node 2 is isolated.
    CHECK(loss({3, {1.0, 0.0, 0.0}}, {0.0, 0.0, 0.0}, p) ==
          std::numeric_limits<double>::infinity());
}

TEST_CASE("loss term signs: barrier falls, quadratic grows with scale") {
    ObjectiveParams p{1.0, 0.5, 0.0, 100.0, 1.0};
    Vec z(pair_count(4), 0.0);
    GraphVector w1{4, Vec(pair_count(4), 1.0)};
    GraphVector w2{4, Vec(pair_count(4), 2.0)};
    // At zero data the loss splits into barrier + quadratic; check each.
    const double barrier1 = -p.alpha * 4 * std::log(3.0);
    const double barrier2 = -p.alpha * 4 * std::log(6.0);
    CHECK(barrier2 < barrier1);
    const double quad1 = 2 * p.beta * 6.0;
    const double quad2 = 2 * p.beta * 24.0;
    CHECK(quad2 > quad1);
    CHECK(loss(w1, z, p) == doctest::Approx(barrier1 + quad1));
    CHECK(loss(w2, z, p) == doctest::Approx(barrier2 + quad2));
}

TEST_CASE("gradient worked example d=2") {
    ObjectiveParams p{1.0, 0.5, 0.0, 5.0, 1.0};
    Vec g = gradient({2, {1.0}}, {1.0}, p);
    CHECK(g[0] == doctest::Approx(2.0));  // 2 + 2 - 2
}

TEST_CASE("gradient throws on non-positive degree") {
    ObjectiveParams p{1.0, 0.5, 0.0, 5.0, 1.0};
    CHECK_THROWS_AS(gradient({3, {1.0, 0.0, 0.0}}, {0.0, 0.0, 0.0}, p),
                    std::domain_error);
}

TEST_CASE("gradient matches central finite differences of the loss") {
    std::mt19937_64 rng(42);
    ObjectiveParams p{2.0, 1.0, 0.0, 1.0, 0.1};
    const double eps = 1e-5;
    for (int d : {3, 5, 10}) {
        for (int trial = 0; trial < 100; ++trial) {
            GraphVector w = interior_graph(d, rng, 0.1, p.w_max);
            Vec z = random_distances(w.w.size(), rng);
            Vec g = gradient(w, z, p);
            for (std::size_t k = 0; k < g.size(); k += 3) {
                GraphVector wp = w, wm = w;
                wp.w[k] += eps;
                wm.w[k] -= eps;
                const double fd =
                    (loss(wp, z, p) - loss(wm, z, p)) / (2.0 * eps);
                CHECK(std::abs(g[k] - fd) <=
                      1e-6 * std::max(1.0, std::abs(g[k])));
            }
        }
    }
}

TEST_CASE("gradient vanishes at the d=2 closed-form minimizer") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(0.2, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double zb = uni(rng), alpha = uni(rng), beta = uni(rng);
        const double wstar =
            (-zb + std::sqrt(zb * zb + 8.0 * alpha * beta)) / (4.0 * beta);
        ObjectiveParams p{alpha, beta, 0.0, 100.0, 0.1};
        Vec g = gradient({2, {wstar}}, {zb}, p);
        CHECK(std::abs(g[0]) < 1e-10);
    }
}

TEST_CASE("hessian worked example d=2") {
    ObjectiveParams p{1.0, 0.5, 0.0, 5.0, 1.0};
    Vec hv = hessian_apply({2, {1.0}}, p, {1.0});
    CHECK(hv[0] == doctest::Approx(4.0));  // 2 + 2
}

TEST_CASE("hessian_apply matches finite differences of the gradient") {
    std::mt19937_64 rng(43);
    ObjectiveParams p{2.0, 1.0, 0.0, 1.0, 0.1};
    std::uniform_real_distribution<double> dir(-1.0, 1.0);
    const double eps = 1e-5;
    for (int d : {3, 5, 10}) {
        for (int trial = 0; trial < 50; ++trial) {
            GraphVector w = interior_graph(d, rng, 0.1, p.w_max);
            Vec z = random_distances(w.w.size(), rng);
            Vec v(w.w.size());
            for (double& x : v) x = dir(rng);
            Vec hv = hessian_apply(w, p, v);
            GraphVector wp = w, wm = w;
            for (std::size_t k = 0; k < v.size(); ++k) {
                wp.w[k] += eps * v[k];
                wm.w[k] -= eps * v[k];
            }
            Vec gp = gradient(wp, z, p);
            Vec gm = gradient(wm, z, p);
            const double scale = std::max(1.0, norm2(hv));
            for (std::size_t k = 0; k < v.size(); ++k) {
                const double fd = (gp[k] - gm[k]) / (2.0 * eps);
                CHECK(std::abs(hv[k] - fd) <= 1e-5 * scale);
            }
        }
    }
}

TEST_CASE("hessian is symmetric, linear and bounded below by 4 beta") {
    std::mt19937_64 rng(44);
    ObjectiveParams p{2.0, 1.0, 0.0, 1.0, 0.1};
    std::uniform_real_distribution<double> dir(-1.0, 1.0);
    const int d = 6;
    for (int trial = 0; trial < 30; ++trial) {
        GraphVector w = interior_graph(d, rng, 0.1, 1.0);
        Vec u(w.w.size()), v(w.w.size());
        for (std::size_t k = 0; k < u.size(); ++k) {
            u[k] = dir(rng);
            v[k] = dir(rng);
        }
        Vec hu = hessian_apply(w, p, u);
        Vec hv = hessian_apply(w, p, v);
        double uhv = 0.0, vhu = 0.0, vhv = 0.0, vv = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            uhv += u[k] * hv[k];
            vhu += v[k] * hu[k];
            vhv += v[k] * hv[k];
            vv += v[k] * v[k];
        }
        CHECK(std::abs(uhv - vhu) <= 1e-10 * std::max(1.0, std::abs(uhv)));
        CHECK(vhv >= 4.0 * p.beta * vv - 1e-10);
    }
}

TEST_CASE("loss is convex on the feasible interior") {
    std::mt19937_64 rng(45);
    ObjectiveParams p{2.0, 1.0, 0.0, 1.0, 0.1};
    for (int trial = 0; trial < 30; ++trial) {
        GraphVector u = interior_graph(5, rng, 0.1, 1.0);
        GraphVector v = interior_graph(5, rng, 0.1, 1.0);
        Vec z = random_distances(u.w.size(), rng);
        const double fu = loss(u, z, p), fv = loss(v, z, p);
        for (double lambda : {0.25, 0.5, 0.75}) {
            GraphVector mid = u;
            for (std::size_t k = 0; k < mid.w.size(); ++k)
                mid.w[k] = lambda * u.w[k] + (1.0 - lambda) * v.w[k];
            CHECK(loss(mid, z, p) <=
                  lambda * fu + (1.0 - lambda) * fv + 1e-10);
        }
    }
}

TEST_CASE("temporal gradient difference") {
    CHECK(temporal_gradient_diff({3.0}, {1.0}) == Vec{4.0});
    Vec zero = temporal_gradient_diff({1.0, 2.0}, {1.0, 2.0});
    CHECK(zero == Vec{0.0, 0.0});
    // Linear drift: z_t = t*c gives a constant step 2c.
    const Vec c{0.3, 0.7};
    for (int t = 1; t < 5; ++t) {
        Vec now{t * c[0], t * c[1]};
        Vec prev{(t - 1) * c[0], (t - 1) * c[1]};
        Vec d = temporal_gradient_diff(now, prev);
        CHECK(d[0] == doctest::Approx(2.0 * c[0]));
        CHECK(d[1] == doctest::Approx(2.0 * c[1]));
    }
    CHECK_THROWS_AS(temporal_gradient_diff({1.0}, {1.0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("gradient bound formula and monotonicity") {
    ObjectiveParams p{2.0, 1.0, 0.0, 1.0, 1.0};
    CHECK(gradient_bound(p, 2, 1.0) == doctest::Approx(10.0));

    const double base = gradient_bound(p, 5, 1.0);
    CHECK(gradient_bound(p, 5, 2.0) > base);
    ObjectiveParams larger = p;
    larger.alpha = 3.0;
    CHECK(gradient_bound(larger, 5, 1.0) > base);
    larger = p;
    larger.beta = 2.0;
    CHECK(gradient_bound(larger, 5, 1.0) > base);
    larger = p;
    larger.w_max = 2.0;
    CHECK(gradient_bound(larger, 5, 1.0) > base);
}

TEST_CASE("sampled feasible gradients respect the bound") {
    std::mt19937_64 rng(46);
    ObjectiveParams p{2.0, 1.0, 0.0, 1.0, 0.5};
    const int d = 6;
    const double b_z = 3.0;
    const double l_bound = gradient_bound(p, d, b_z);
    std::uniform_real_distribution<double> zdist(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        GraphVector w = interior_graph(d, rng, 0.0, 1.0);
        if (min_degree(w) < p.deg_min) continue;
        Vec z(w.w.size());
        for (double& v : z) v = zdist(rng);
        double zn = norm2(z);
        if (zn > b_z)
            for (double& v : z) v *= b_z / zn;
        CHECK(norm2(gradient(w, z, p)) <= l_bound);
    }
}

TEST_CASE("step size formulas") {
    ObjectiveParams p{2.0, 1.0, 0.0, 1.0, 1.0};
    CHECK(step_size_fixed(p, 11) == doctest::Approx(1.0 / 44.0));
    ObjectiveParams q{2.0, 1.0, 0.0, 1.0, 2.0};
    CHECK(step_size_fixed(q, 2) == doctest::Approx(0.2));
    CHECK(step_size_fixed(p, 5) < step_size_fixed(p, 3));  // decreasing in d

    CHECK(step_size_adaptive({2, {1.0}}, p, 2) == doctest::Approx(0.125));
    // Equal to the fixed step when min degree hits deg_min.
    ObjectiveParams r{2.0, 1.0, 0.0, 5.0, 2.0};
    CHECK(step_size_adaptive({2, {2.0}}, r, 2) ==
          doctest::Approx(step_size_fixed(r, 2)));
    // Larger degrees give larger steps.
    CHECK(step_size_adaptive({2, {3.0}}, r, 2) >
          step_size_adaptive({2, {2.0}}, r, 2));
    CHECK_THROWS_AS(step_size_adaptive(zero_graph(3), p, 3), std::domain_error);
}
