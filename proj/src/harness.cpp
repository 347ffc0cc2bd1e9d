#include "oglp/harness.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <thread>

namespace oglp {

namespace fs = std::filesystem;
using nlohmann::json;

void ExperimentConfig::validate() const {
    sim.validate();
    objective.validate();
    if (seeds.empty()) throw std::invalid_argument("seed list is empty");
    if (predictors.empty())
        throw std::invalid_argument("predictor list is empty");
    if (sim.w_max != objective.w_max)
        throw std::invalid_argument("sim.w_max must equal objective.w_max");
    for (const PredictorSpec& p : predictors) {
        if (p.type != "identity" && p.type != "true_prior" &&
            p.type != "data_driven" && p.type != "ar_file" &&
            p.type != "transition_file")
            throw std::invalid_argument("unknown predictor type: " + p.type);
        if (p.type == "data_driven" && p.iterations < 1)
            throw std::invalid_argument("data_driven needs iterations >= 1");
    }
}

json config_to_json(const ExperimentConfig& cfg) {
    json init{{"kind", cfg.sim.init.kind == InitGraphConfig::Kind::erdos_renyi
                           ? "erdos_renyi"
                           : "rbf"},
              {"p_edge", cfg.sim.init.p_edge},
              {"weight_min", cfg.sim.init.weight_min},
              {"weight_max", cfg.sim.init.weight_max},
              {"rbf_bandwidth", cfg.sim.init.rbf_bandwidth},
              {"rbf_threshold", cfg.sim.init.rbf_threshold}};
    json sim{{"d", cfg.sim.d},
             {"T", cfg.sim.T},
             {"model", dyn_model_name(cfg.sim.model)},
             {"ar_eps", cfg.sim.ar_eps},
             {"ar_deg_floor", cfg.sim.ar_deg_floor},
             {"transition_a", cfg.sim.transition_a},
             {"switch_times", cfg.sim.switch_times},
             {"init", init}};
    json objective{{"alpha", cfg.objective.alpha},
                   {"beta", cfg.objective.beta},
                   {"gamma", cfg.objective.gamma},
                   {"w_max", cfg.objective.w_max},
                   {"deg_min", cfg.objective.deg_min}};
    json predictors = json::array();
    for (const PredictorSpec& p : cfg.predictors)
        predictors.push_back({{"type", p.type},
                              {"iterations", p.iterations},
                              {"step", p.step},
                              {"file", p.file},
                              {"transition_a", p.transition_a}});
    return json{{"sim", sim},
                {"signal",
                 {{"noise_sigma", cfg.signal.noise_sigma},
                  {"pinv_tol", cfg.signal.pinv_tol}}},
                {"objective", objective},
                {"predictors", predictors},
                {"step_rule",
                 cfg.step_rule == StepRule::fixed ? "fixed" : "adaptive"},
                {"seeds", cfg.seeds},
                {"snapshot_interval", cfg.snapshot_interval},
                {"regret", cfg.regret},
                {"comparator_tol", cfg.comparator_tol},
                {"eta_override", cfg.eta_override}};
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    const json& sim = j.at("sim");
    cfg.sim.d = sim.at("d").get<int>();
    cfg.sim.T = sim.at("T").get<long>();
    cfg.sim.model = parse_dyn_model(sim.at("model").get<std::string>());
    cfg.sim.ar_eps = sim.value("ar_eps", cfg.sim.ar_eps);
    cfg.sim.ar_deg_floor = sim.value("ar_deg_floor", cfg.sim.ar_deg_floor);
    cfg.sim.transition_a = sim.value("transition_a", cfg.sim.transition_a);
    cfg.sim.switch_times =
        sim.value("switch_times", std::vector<long>{});
    if (sim.contains("init")) {
        const json& init = sim.at("init");
        const std::string kind = init.value("kind", "erdos_renyi");
        if (kind == "erdos_renyi")
            cfg.sim.init.kind = InitGraphConfig::Kind::erdos_renyi;
        else if (kind == "rbf")
            cfg.sim.init.kind = InitGraphConfig::Kind::rbf;
        else
            throw std::invalid_argument("unknown init graph kind: " + kind);
        cfg.sim.init.p_edge = init.value("p_edge", cfg.sim.init.p_edge);
        cfg.sim.init.weight_min =
            init.value("weight_min", cfg.sim.init.weight_min);
        cfg.sim.init.weight_max =
            init.value("weight_max", cfg.sim.init.weight_max);
        cfg.sim.init.rbf_bandwidth =
            init.value("rbf_bandwidth", cfg.sim.init.rbf_bandwidth);
        cfg.sim.init.rbf_threshold =
            init.value("rbf_threshold", cfg.sim.init.rbf_threshold);
    }
    if (j.contains("signal")) {
        cfg.signal.noise_sigma =
            j.at("signal").value("noise_sigma", cfg.signal.noise_sigma);
        cfg.signal.pinv_tol =
            j.at("signal").value("pinv_tol", cfg.signal.pinv_tol);
    }
    const json& obj = j.at("objective");
    cfg.objective.alpha = obj.value("alpha", cfg.objective.alpha);
    cfg.objective.beta = obj.value("beta", cfg.objective.beta);
    cfg.objective.gamma = obj.value("gamma", cfg.objective.gamma);
    cfg.objective.w_max = obj.value("w_max", cfg.objective.w_max);
    cfg.objective.deg_min = obj.value("deg_min", cfg.objective.deg_min);
    cfg.sim.w_max = cfg.objective.w_max;
    cfg.predictors.clear();
    for (const json& p : j.at("predictors")) {
        PredictorSpec spec;
        spec.type = p.at("type").get<std::string>();
        spec.iterations = p.value("iterations", spec.iterations);
        spec.step = p.value("step", spec.step);
        spec.file = p.value("file", spec.file);
        spec.transition_a = p.value("transition_a", spec.transition_a);
        cfg.predictors.push_back(std::move(spec));
    }
    const std::string rule = j.value("step_rule", "adaptive");
    if (rule == "fixed")
        cfg.step_rule = StepRule::fixed;
    else if (rule == "adaptive")
        cfg.step_rule = StepRule::adaptive;
    else
        throw std::invalid_argument("unknown step rule: " + rule);
    cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    cfg.snapshot_interval = j.value("snapshot_interval", cfg.snapshot_interval);
    cfg.regret = j.value("regret", cfg.regret);
    cfg.comparator_tol = j.value("comparator_tol", cfg.comparator_tol);
    cfg.eta_override = j.value("eta_override", cfg.eta_override);
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config: " + path.string());
    json j;
    in >> j;
    return config_from_json(j);
}

void save_config(const fs::path& path, const ExperimentConfig& cfg) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write config: " + path.string());
    out << config_to_json(cfg).dump(2) << "\n";
}

Predictor build_predictor(const PredictorSpec& spec,
                          const TrajectorySimulator& sim,
                          const fs::path& base_dir) {
    if (spec.type == "identity") return IdentityPredictor{};
    if (spec.type == "true_prior") return sim.true_prior();
    if (spec.type == "data_driven")
        return DataDrivenPredictor{spec.iterations, spec.step};
    if (spec.type == "ar_file")
        return ArPredictor{io::read_matrix_csv(base_dir / spec.file)};
    if (spec.type == "transition_file")
        return TransitionPredictor{spec.transition_a,
                                   io::read_edge_list(base_dir / spec.file)};
    throw std::invalid_argument("unknown predictor type: " + spec.type);
}

static std::string predictor_label(const PredictorSpec& spec) {
    return spec.type;
}

namespace {

struct Stream {
    std::vector<GraphVector> truth;
    std::vector<Vec> signals;
    std::vector<Vec> distances;
};

Stream fresh_stream(const ExperimentConfig& cfg, std::uint64_t seed) {
    TrajectoryConfig tc = cfg.sim;
    tc.seed = seed;
    tc.w_max = cfg.objective.w_max;
    Stream s;
    for (StreamRound& r : generate_stream(tc, cfg.signal)) {
        s.truth.push_back(std::move(r.w_true));
        s.signals.push_back(std::move(r.x));
        s.distances.push_back(std::move(r.z));
    }
    return s;
}

Stream replay_stream(const ExperimentConfig& cfg, const fs::path& dir) {
    Stream s;
    s.signals = io::read_signals(dir / "signals.csv");
    for (const Vec& x : s.signals) {
        if (x.size() != static_cast<std::size_t>(cfg.sim.d))
            throw std::runtime_error("replayed signal dimension != config d");
        s.distances.push_back(signal_to_distance(x));
    }
    for (std::size_t t = 1; t <= s.signals.size(); ++t) {
        char name[32];
        std::snprintf(name, sizeof(name), "t%06zu.csv", t);
        s.truth.push_back(io::read_edge_list(dir / "graphs" / name));
    }
    return s;
}

LearnResult learn_on_stream(const ExperimentConfig& cfg,
                            const PredictorSpec& spec, std::uint64_t seed,
                            const Stream& stream, const fs::path& base_dir) {
    TrajectoryConfig tc = cfg.sim;
    tc.seed = seed;
    tc.w_max = cfg.objective.w_max;
    TrajectorySimulator sim(tc);
    Predictor phi = build_predictor(spec, sim, base_dir);

    const long T = std::min<long>(cfg.sim.T,
                                  static_cast<long>(stream.distances.size()));
    GraphVector w_init{cfg.sim.d,
                       Vec(pair_count(cfg.sim.d), cfg.objective.w_max / 2.0)};

    const auto t0 = std::chrono::steady_clock::now();
    LearnResult res;
    res.trace = run(stream.distances, phi, cfg.objective, w_init, T,
                    cfg.step_rule, cfg.eta_override);
    const auto t1 = std::chrono::steady_clock::now();
    res.per_round_us =
        std::chrono::duration<double, std::micro>(t1 - t0).count() / T;
    res.truth.assign(stream.truth.begin(), stream.truth.begin() + T);
    res.b_z = res.trace.b_z_observed;

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<GraphVector> comparators;
    std::vector<double> comp_losses;
    double c_vd = nan;
    if (cfg.regret) {
        comparators = comparator_sequence(cfg.sim.d, res.trace.zbars,
                                          cfg.objective, cfg.comparator_tol);
        comp_losses.reserve(comparators.size());
        for (std::size_t t = 0; t < comparators.size(); ++t)
            comp_losses.push_back(
                loss(comparators[t], res.trace.zbars[t], cfg.objective));
        // Path variation is defined for prior predictors; the data-driven
        // map depends on the stream, so fall back to identity there.
        const Predictor* pv_phi = &phi;
        Predictor identity = IdentityPredictor{};
        if (std::holds_alternative<DataDrivenPredictor>(phi))
            pv_phi = &identity;
        c_vd = path_variation(comparators, *pv_phi, cfg.objective);
    }

    double regret_cum = 0.0;
    for (long t = 0; t < T; ++t) {
        const RoundRecord& r = res.trace.rounds[static_cast<std::size_t>(t)];
        io::TraceRow row;
        row.t = r.t;
        row.eta = r.eta;
        row.loss = r.loss_corrected;
        row.rel_error = relative_error(r.w_corrected,
                                       res.truth[static_cast<std::size_t>(t)]);
        if (cfg.regret) {
            row.regret_increment =
                r.loss_entering - comp_losses[static_cast<std::size_t>(t)];
            regret_cum += row.regret_increment;
            if (t >= 1) {
                PredictionContext ctx;
                const Predictor* pv_phi =
                    std::holds_alternative<DataDrivenPredictor>(phi)
                        ? nullptr
                        : &phi;
                GraphVector predicted =
                    pv_phi ? apply_predictor(*pv_phi,
                                             comparators[static_cast<std::size_t>(t - 1)],
                                             ctx, cfg.objective.w_max)
                           : comparators[static_cast<std::size_t>(t - 1)];
                Vec diff(predicted.w.size());
                for (std::size_t i = 0; i < diff.size(); ++i)
                    diff[i] = comparators[static_cast<std::size_t>(t)].w[i] -
                              predicted.w[i];
                double s = 0.0;
                for (double v : diff) s += v * v;
                row.path_var_increment = std::sqrt(s);
            }
        } else {
            row.regret_increment = nan;
            row.path_var_increment = nan;
        }
        res.rows.push_back(row);
    }

    res.summary.final_rel_error = res.rows.back().rel_error;
    const long tail = std::max<long>(1, T / 10);
    double acc = 0.0;
    for (long t = T - tail; t < T; ++t)
        acc += res.rows[static_cast<std::size_t>(t)].rel_error;
    res.summary.mean_rel_error_tail = acc / tail;
    res.summary.regret = cfg.regret ? regret_cum : nan;
    res.summary.path_variation = c_vd;
    if (cfg.regret) {
        const double eta = cfg.eta_override > 0.0
                               ? cfg.eta_override
                               : step_size_fixed(cfg.objective, cfg.sim.d);
        const double l_bound =
            gradient_bound(cfg.objective, cfg.sim.d, std::max(res.b_z, 1e-12));
        res.summary.bound =
            regret_bound(cfg.objective, cfg.sim.d, T, c_vd, eta, l_bound);
        res.summary.bound_satisfied = regret_cum <= res.summary.bound;
    } else {
        res.summary.bound = nan;
        res.summary.bound_satisfied = false;
    }
    return res;
}

int worker_count() {
    if (const char* env = std::getenv("OGLP_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

void write_summary_csv(const fs::path& path,
                       const std::vector<std::string>& labels,
                       const std::vector<std::uint64_t>& seeds,
                       const std::vector<LearnResult>& results,
                       const std::vector<std::string>& status) {
    std::ofstream out(path);
    out << "predictor,seed,status,final_rel_error,mean_rel_error_tail,regret,"
           "c_vd,bound,bound_satisfied,b_z,per_round_us\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const RunSummary& s = results[i].summary;
        out << labels[i] << "," << seeds[i] << "," << status[i] << ","
            << io::fmt(s.final_rel_error) << ","
            << io::fmt(s.mean_rel_error_tail) << "," << io::fmt(s.regret)
            << "," << io::fmt(s.path_variation) << "," << io::fmt(s.bound)
            << "," << (s.bound_satisfied ? 1 : 0) << ","
            << io::fmt(results[i].b_z) << ","
            << io::fmt(results[i].per_round_us) << "\n";
    }
}

}  // namespace

LearnResult run_experiment(const ExperimentConfig& cfg,
                           const PredictorSpec& spec, std::uint64_t seed,
                           const fs::path& base_dir) {
    cfg.validate();
    Stream stream = fresh_stream(cfg, seed);
    return learn_on_stream(cfg, spec, seed, stream, base_dir);
}

int cmd_simulate(const ExperimentConfig& cfg, const fs::path& out_dir) {
    cfg.validate();
    fs::create_directories(out_dir / "graphs");
    Stream stream = fresh_stream(cfg, cfg.seeds.front());
    io::write_signals(out_dir / "signals.csv", stream.signals);
    double b_z = 0.0;
    for (const Vec& z : stream.distances) {
        double s = 0.0;
        for (double v : z) s += v * v;
        b_z = std::max(b_z, std::sqrt(s));
    }
    for (std::size_t t = 0; t < stream.truth.size(); ++t) {
        char name[32];
        std::snprintf(name, sizeof(name), "t%06zu.csv", t + 1);
        io::write_edge_list(out_dir / "graphs" / name, stream.truth[t]);
    }
    save_config(out_dir / "config.json", cfg);
    std::cout << "simulated d=" << cfg.sim.d << " T=" << cfg.sim.T
              << " model=" << dyn_model_name(cfg.sim.model)
              << " seed=" << cfg.seeds.front() << " B_z=" << io::fmt(b_z)
              << "\n";
    return 0;
}

int cmd_learn(const ExperimentConfig& cfg,
              const std::optional<fs::path>& replay_dir,
              const fs::path& out_dir) {
    cfg.validate();
    fs::create_directories(out_dir);
    Stream stream = replay_dir ? replay_stream(cfg, *replay_dir)
                               : fresh_stream(cfg, cfg.seeds.front());
    LearnResult res;
    try {
        res = learn_on_stream(cfg, cfg.predictors.front(), cfg.seeds.front(),
                              stream, ".");
    } catch (const std::runtime_error& e) {
        std::cerr << "learn failed: " << e.what() << "\n";
        return 3;
    }
    io::write_trace(out_dir / "trace.csv", res.rows);
    if (cfg.snapshot_interval > 0) {
        fs::create_directories(out_dir / "snapshots");
        for (long t = cfg.snapshot_interval;
             t <= static_cast<long>(res.trace.rounds.size());
             t += cfg.snapshot_interval) {
            char name[32];
            std::snprintf(name, sizeof(name), "t%06ld.csv", t);
            io::write_edge_list(
                out_dir / "snapshots" / name,
                res.trace.rounds[static_cast<std::size_t>(t - 1)].w_corrected);
        }
    }
    write_summary_csv(out_dir / "summary.csv",
                      {predictor_label(cfg.predictors.front())},
                      {cfg.seeds.front()}, {res}, {"ok"});
    std::cout << "learned " << res.rows.size()
              << " rounds, final rel_error="
              << io::fmt(res.summary.final_rel_error) << "\n";
    return 0;
}

int cmd_benchmark(const ExperimentConfig& cfg, const fs::path& out_dir,
                  bool search_beta) {
    cfg.validate();
    fs::create_directories(out_dir);

    struct Task {
        PredictorSpec spec;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (const PredictorSpec& spec : cfg.predictors)
        for (std::uint64_t seed : cfg.seeds) tasks.push_back({spec, seed});

    std::vector<LearnResult> results(tasks.size());
    std::vector<std::string> status(tasks.size(), "ok");
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                results[i] =
                    run_experiment(cfg, tasks[i].spec, tasks[i].seed, ".");
            } catch (const std::exception& e) {
                status[i] = std::string("failed: ") + e.what();
            }
        }
    };
    const int workers = std::min<int>(worker_count(),
                                      static_cast<int>(tasks.size()));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (std::thread& th : pool) th.join();
    }

    std::size_t failed = 0;
    for (const std::string& s : status)
        if (s != "ok") ++failed;

    // Long-format per-round errors and per-predictor mean curves.
    {
        std::ofstream runs(out_dir / "runs.csv");
        runs << "predictor,seed,t,rel_error\n";
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            if (status[i] != "ok") continue;
            for (const io::TraceRow& r : results[i].rows)
                runs << predictor_label(tasks[i].spec) << "," << tasks[i].seed
                     << "," << r.t << "," << io::fmt(r.rel_error) << "\n";
        }
    }
    {
        std::map<std::string, std::vector<double>> sums;
        std::map<std::string, long> counts;
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            if (status[i] != "ok") continue;
            auto& acc = sums[predictor_label(tasks[i].spec)];
            if (acc.empty()) acc.assign(results[i].rows.size(), 0.0);
            for (std::size_t t = 0; t < results[i].rows.size(); ++t)
                acc[t] += results[i].rows[t].rel_error;
            counts[predictor_label(tasks[i].spec)]++;
        }
        std::ofstream mean(out_dir / "mean_curves.csv");
        mean << "predictor,t,mean_rel_error\n";
        for (const PredictorSpec& spec : cfg.predictors) {
            const std::string label = predictor_label(spec);
            auto it = sums.find(label);
            if (it == sums.end()) continue;
            for (std::size_t t = 0; t < it->second.size(); ++t)
                mean << label << "," << (t + 1) << ","
                     << io::fmt(it->second[t] / counts[label]) << "\n";
        }
    }
    {
        std::vector<std::string> labels;
        std::vector<std::uint64_t> seeds;
        for (const Task& t : tasks) {
            labels.push_back(predictor_label(t.spec));
            seeds.push_back(t.seed);
        }
        write_summary_csv(out_dir / "summary.csv", labels, seeds, results,
                          status);
    }

    if (search_beta) {
        std::ofstream bs(out_dir / "beta_search.csv");
        bs << "beta,mean_final_rel_error\n";
        double best_beta = 0.0;
        double best_err = std::numeric_limits<double>::infinity();
        for (int k = -3; k <= 2; ++k) {
            const double beta = std::pow(10.0, k);
            ExperimentConfig trial = cfg;
            trial.objective.beta = beta;
            double acc = 0.0;
            long n = 0;
            for (std::uint64_t seed : cfg.seeds) {
                LearnResult r =
                    run_experiment(trial, cfg.predictors.front(), seed, ".");
                acc += r.summary.final_rel_error;
                ++n;
            }
            const double mean_err = acc / n;
            bs << io::fmt(beta) << "," << io::fmt(mean_err) << "\n";
            if (mean_err < best_err) {
                best_err = mean_err;
                best_beta = beta;
            }
        }
        bs << "# best beta=" << io::fmt(best_beta) << "\n";
    }

    std::cout << "benchmark: " << tasks.size() - failed << "/" << tasks.size()
              << " runs ok\n";
    return failed == tasks.size() ? 1 : 0;
}

long rounds_to_recover(const std::vector<double>& rel_errors, long switch_time,
                       long window, double factor) {
    const long n = static_cast<long>(rel_errors.size());
    if (switch_time < 2 || switch_time > n)
        throw std::invalid_argument("switch time outside the curve");
    const long lo = std::max<long>(0, switch_time - 1 - window);
    double pre_mean = 0.0;
    long count = 0;
    for (long t = lo; t < switch_time - 1; ++t) {
        pre_mean += rel_errors[static_cast<std::size_t>(t)];
        ++count;
    }
    pre_mean /= std::max<long>(count, 1);
    const double target = factor * pre_mean;
    for (long t = switch_time - 1; t < n; ++t)
        if (rel_errors[static_cast<std::size_t>(t)] <= target)
            return t - (switch_time - 1);
    return n;  // never recovered within the trace
}

}  // namespace oglp
