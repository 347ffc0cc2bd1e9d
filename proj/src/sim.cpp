#include "oglp/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oglp {

DynModel parse_dyn_model(const std::string& s) {
    if (s == "static") return DynModel::static_graph;
    if (s == "ar") return DynModel::ar;
    if (s == "transition") return DynModel::transition;
    if (s == "switching") return DynModel::switching;
    throw std::invalid_argument("unknown dynamic model: " + s);
}

std::string dyn_model_name(DynModel m) {
    switch (m) {
        case DynModel::static_graph: return "static";
        case DynModel::ar: return "ar";
        case DynModel::transition: return "transition";
        case DynModel::switching: return "switching";
    }
    return "unknown";
}

void TrajectoryConfig::validate() const {
    if (d < 2) throw std::invalid_argument("d must be >= 2");
    if (T < 1) throw std::invalid_argument("T must be >= 1");
    if (w_max <= 0.0) throw std::invalid_argument("w_max must be > 0");
    if (model == DynModel::transition &&
        (transition_a <= 0.0 || transition_a >= 1.0))
        throw std::invalid_argument("transition_a must be in (0,1)");
    long prev = 0;
    for (long s : switch_times) {
        if (s <= prev || s > T)
            throw std::invalid_argument(
                "switch times must be strictly increasing within [1, T]");
        prev = s;
    }
    if (init.kind == InitGraphConfig::Kind::erdos_renyi) {
        if (init.p_edge < 0.0 || init.p_edge > 1.0)
            throw std::invalid_argument("p_edge must be in [0,1]");
        if (init.weight_min <= 0.0 || init.weight_max < init.weight_min)
            throw std::invalid_argument("bad edge weight range");
    }
}

static GraphVector draw_graph(const TrajectoryConfig& cfg,
                              std::mt19937_64& rng) {
    const int d = cfg.d;
    GraphVector g = zero_graph(d);
    if (cfg.init.kind == InitGraphConfig::Kind::erdos_renyi) {
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        std::uniform_real_distribution<double> weight(cfg.init.weight_min,
                                                      cfg.init.weight_max);
        for (double& w : g.w)
            if (coin(rng) < cfg.init.p_edge)
                w = std::min(weight(rng), cfg.w_max);
    } else {
        std::uniform_real_distribution<double> pos(0.0, 1.0);
        std::vector<double> px(d), py(d);
        for (int i = 0; i < d; ++i) {
            px[i] = pos(rng);
            py[i] = pos(rng);
        }
        const double denom = 2.0 * cfg.init.rbf_bandwidth * cfg.init.rbf_bandwidth;
        std::size_t k = 0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j, ++k) {
                const double dx = px[i] - px[j];
                const double dy = py[i] - py[j];
                const double w = std::exp(-(dx * dx + dy * dy) / denom);
                g.w[k] = w >= cfg.init.rbf_threshold ? std::min(w, cfg.w_max) : 0.0;
            }
    }
    return g;
}

GraphVector init_graph(const TrajectoryConfig& cfg, std::mt19937_64& rng) {
    cfg.validate();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        GraphVector g = draw_graph(cfg, rng);
        if (min_degree(g) > 0.0) return g;
    }
    throw std::runtime_error(
        "init_graph: could not draw a graph without isolated nodes "
        "(edge probability too low?)");
}

Vec sample_signal(const GraphVector& w, const SignalConfig& cfg,
                  std::mt19937_64& rng) {
    if (min_degree(w) <= 0.0)
        throw std::invalid_argument("sample_signal: graph has an isolated node");
    const int d = w.d;
    Eigen::MatrixXd W = vec_to_matrix(w);
    Eigen::MatrixXd L = -W;
    for (int i = 0; i < d; ++i) L(i, i) = W.row(i).sum();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(L);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("Laplacian eigendecomposition failed");

    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < d; ++i) {
        const double lambda = eig.eigenvalues()(i);
        if (lambda > cfg.pinv_tol)
            x += (gauss(rng) / std::sqrt(lambda)) * eig.eigenvectors().col(i);
    }
    if (cfg.noise_sigma > 0.0)
        for (int i = 0; i < d; ++i) x(i) += cfg.noise_sigma * gauss(rng);
    return Vec(x.data(), x.data() + d);
}

TrajectorySimulator::TrajectorySimulator(const TrajectoryConfig& cfg)
    : cfg_(cfg) {
    cfg_.validate();
    std::mt19937_64 rng(cfg_.seed);
    initial_ = init_graph(cfg_, rng);
    const std::size_t p = pair_count(cfg_.d);
    switch (cfg_.model) {
        case DynModel::ar:
            ar_matrix_ = random_ar_matrix(p, cfg_.ar_eps, cfg_.seed ^ 0x9e3779b9u);
            break;
        case DynModel::transition:
            target_ = init_graph(cfg_, rng);
            break;
        case DynModel::switching: {
            if (cfg_.switch_times.empty())
                throw std::invalid_argument(
                    "switching model needs at least one switch time");
            for (std::size_t s = 0; s < cfg_.switch_times.size(); ++s)
                switch_library_.push_back(init_graph(cfg_, rng));
            break;
        }
        case DynModel::static_graph:
            break;
    }
}

GraphVector TrajectorySimulator::evolve(const GraphVector& w, long t) const {
    switch (cfg_.model) {
        case DynModel::static_graph:
            return w;
        case DynModel::ar: {
            PredictionContext ctx;
            GraphVector cand =
                apply_predictor(ArPredictor{ar_matrix_}, w, ctx, cfg_.w_max);
            // The box projection can bleed weight out of a node until it
            // isolates, which breaks the smooth-signal model. Degrees are
            // linear in w, so blending back toward the previous graph by
            // the smallest factor that restores the floor keeps the
            // trajectory alive without visible kinks.
            const double floor = cfg_.ar_deg_floor;
            if (floor > 0.0 && min_degree(cand) < floor) {
                Vec deg_prev = degree_apply(w);
                Vec deg_cand = degree_apply(cand);
                double theta = 1.0;
                for (std::size_t i = 0; i < deg_cand.size(); ++i) {
                    if (deg_cand[i] >= floor) continue;
                    const double gap = deg_prev[i] - deg_cand[i];
                    if (gap <= 0.0 || deg_prev[i] <= floor) {
                        theta = 0.0;
                        break;
                    }
                    theta = std::min(theta, (deg_prev[i] - floor) / gap);
                }
                for (std::size_t k = 0; k < cand.w.size(); ++k)
                    cand.w[k] = theta * cand.w[k] + (1.0 - theta) * w.w[k];
            }
            return cand;
        }
        case DynModel::transition: {
            PredictionContext ctx;
            return apply_predictor(
                TransitionPredictor{cfg_.transition_a, target_}, w, ctx,
                cfg_.w_max);
        }
        case DynModel::switching: {
            for (std::size_t s = 0; s < cfg_.switch_times.size(); ++s)
                if (t + 1 == cfg_.switch_times[s]) return switch_library_[s];
            return w;
        }
    }
    throw std::logic_error("unreachable");
}

Predictor TrajectorySimulator::true_prior() const {
    switch (cfg_.model) {
        case DynModel::ar:
            return ArPredictor{ar_matrix_};
        case DynModel::transition:
            return TransitionPredictor{cfg_.transition_a, target_};
        default:
            return IdentityPredictor{};
    }
}

std::vector<StreamRound> generate_stream(const TrajectoryConfig& cfg,
                                         const SignalConfig& scfg) {
    TrajectorySimulator sim(cfg);
    // Signal RNG is separate from the topology RNG so that trajectories
    // are comparable across signal-noise settings.
    std::mt19937_64 signal_rng(cfg.seed ^ 0xda3e39cb94b95bdbULL);
    std::vector<StreamRound> stream;
    stream.reserve(static_cast<std::size_t>(cfg.T));
    GraphVector w = sim.initial();
    for (long t = 1; t <= cfg.T; ++t) {
        Vec x = sample_signal(w, scfg, signal_rng);
        stream.push_back({w, x, signal_to_distance(x)});
        if (t < cfg.T) w = sim.evolve(w, t);
    }
    return stream;
}

}  // namespace oglp
