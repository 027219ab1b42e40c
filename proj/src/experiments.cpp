/*
 * Copyright 2026 the mrsnn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mrsnn/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "mrsnn/encoding.hpp"
#include "mrsnn/errors.hpp"
#include "mrsnn/idx.hpp"
#include "mrsnn/neuron.hpp"
#include "mrsnn/rng.hpp"

namespace mrsnn {

namespace {

double median(std::vector<double> values) {
    if (values.empty()) throw ConfigError("median of empty set");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2]
                      : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

Eigen::Matrix2d rotation(double theta) {
    Eigen::Matrix2d a;
    a << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return a;
}

}  // namespace

DeviceParams ExperimentConfig::resolved_device() const {
    return device_params ? *device_params
                         : mrsnn::device_preset(device_preset);
}

Rounding ExperimentConfig::resolved_rounding() const {
    if (rounding == "nearest") return Rounding::Nearest;
    if (rounding == "floor") return Rounding::Floor;
    if (rounding == "stochastic") return Rounding::Stochastic;
    throw ConfigError("unknown rounding mode: " + rounding);
}

PulseMode ExperimentConfig::resolved_pulse_mode() const {
    if (pulse_mode == "exact") return PulseMode::Exact;
    if (pulse_mode == "linearized") return PulseMode::Linearized;
    throw ConfigError("unknown pulse mode: " + pulse_mode);
}

void ExperimentConfig::validate() const {
    static const char* kKnown[] = {"ica", "sneakpath", "erbp-class",
                                   "delay-report", "device-curves"};
    if (std::find(std::begin(kKnown), std::end(kKnown), experiment) ==
        std::end(kKnown))
        throw ConfigError("unknown experiment: " + experiment);
    if (!seed_given) throw ConfigError("seed is mandatory");
    if (num_seeds < 1) throw ConfigError("num_seeds must be >= 1");
    if (!variation.valid()) throw ConfigError("invalid variation tolerances");
    resolved_rounding();
    resolved_pulse_mode();
    if (!device_params) mrsnn::device_preset(device_preset);  // must exist
}

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
    j = nlohmann::json{{"experiment", c.experiment},
                       {"seed", c.seed},
                       {"device_preset", c.device_preset},
                       {"variation", c.variation},
                       {"geometry", c.geometry},
                       {"rule", c.rule},
                       {"num_seeds", c.num_seeds},
                       {"ideal", c.ideal},
                       {"xl", c.xl},
                       {"samples", c.samples},
                       {"batch", c.batch},
                       {"log_every", c.log_every},
                       {"mixing_angle", c.mixing_angle},
                       {"w_max", c.w_max},
                       {"pulse_mode", c.pulse_mode},
                       {"rounding", c.rounding},
                       {"inputs", c.inputs},
                       {"hidden", c.hidden},
                       {"classes", c.classes},
                       {"patterns_per_class", c.patterns_per_class},
                       {"steps_per_pattern", c.steps_per_pattern},
                       {"epochs", c.epochs},
                       {"encoding", c.encoding},
                       {"rate_scale", c.rate_scale},
                       {"device_bridge", c.device_bridge},
                       {"mnist_images", c.mnist_images},
                       {"mnist_labels", c.mnist_labels},
                       {"curves_pulses", c.curves_pulses},
                       {"curves_devices", c.curves_devices},
                       {"out_dir", c.out_dir}};
    if (c.device_params) j["device_params"] = *c.device_params;
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
    ExperimentConfig d;
    c.experiment = j.value("experiment", d.experiment);
    c.seed_given = j.contains("seed");
    c.seed = j.value("seed", d.seed);
    c.device_preset = j.value("device_preset", d.device_preset);
    if (j.contains("device_params"))
        c.device_params = j.at("device_params").get<DeviceParams>();
    c.variation = j.value("variation", d.variation);
    c.geometry = j.value("geometry", d.geometry);
    c.rule = j.value("rule", d.rule);
    c.num_seeds = j.value("num_seeds", d.num_seeds);
    c.ideal = j.value("ideal", d.ideal);
    c.xl = j.value("xl", d.xl);
    c.samples = j.value("samples", d.samples);
    c.batch = j.value("batch", d.batch);
    c.log_every = j.value("log_every", d.log_every);
    c.mixing_angle = j.value("mixing_angle", d.mixing_angle);
    c.w_max = j.value("w_max", d.w_max);
    c.pulse_mode = j.value("pulse_mode", d.pulse_mode);
    c.rounding = j.value("rounding", d.rounding);
    c.inputs = j.value("inputs", d.inputs);
    c.hidden = j.value("hidden", d.hidden);
    c.classes = j.value("classes", d.classes);
    c.patterns_per_class = j.value("patterns_per_class", d.patterns_per_class);
    c.steps_per_pattern = j.value("steps_per_pattern", d.steps_per_pattern);
    c.epochs = j.value("epochs", d.epochs);
    c.encoding = j.value("encoding", d.encoding);
    c.rate_scale = j.value("rate_scale", d.rate_scale);
    c.device_bridge = j.value("device_bridge", d.device_bridge);
    c.mnist_images = j.value("mnist_images", d.mnist_images);
    c.mnist_labels = j.value("mnist_labels", d.mnist_labels);
    c.curves_pulses = j.value("curves_pulses", d.curves_pulses);
    c.curves_devices = j.value("curves_devices", d.curves_devices);
    c.out_dir = j.value("out_dir", d.out_dir);
}

double amari_index(const Eigen::MatrixXd& w, const Eigen::MatrixXd& a) {
    const Eigen::MatrixXd p = (w * a).cwiseAbs();
    const Eigen::Index k = p.rows();
    if (p.cols() != k)
        throw DimensionMismatch("amari_index: w * a must be square");
    if (k < 2) throw DimensionMismatch("amari_index: needs dimension >= 2");

    double sum = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
        const double row_max = p.row(i).maxCoeff();
        if (row_max == 0.0)
            throw DegenerateMatrix("amari_index: all-zero row in w * a");
        sum += p.row(i).sum() / row_max - 1.0;
    }
    for (Eigen::Index j = 0; j < k; ++j) {
        const double col_max = p.col(j).maxCoeff();
        if (col_max == 0.0)
            throw DegenerateMatrix("amari_index: all-zero column in w * a");
        sum += p.col(j).sum() / col_max - 1.0;
    }
    const double kk = static_cast<double>(k);
    return sum / (2.0 * kk * (kk - 1.0));
}

// ---------------------------------------------------------------------------
// ICA (online EGHR)
// ---------------------------------------------------------------------------

namespace {

struct IcaRunOutcome {
    std::vector<ResultRecord> records;
    Eigen::MatrixXd weights;
    double amari = 0.0;
};

IcaRunOutcome run_one_ica(const ExperimentConfig& cfg, std::uint64_t run_seed) {
    const Eigen::Matrix2d a = rotation(cfg.mixing_angle);
    RuleConfig rule = cfg.rule;
    rule.rule = RuleKind::Eghr;
    rule.validate();

    const DeviceParams params = cfg.resolved_device();
    const double eta_prime = params.delta_g() / cfg.w_max;
    const Rounding rounding = cfg.resolved_rounding();
    const PulseMode mode = cfg.resolved_pulse_mode();

    Eigen::MatrixXd w_float = Eigen::MatrixXd::Identity(2, 2);
    CrossbarState state;
    if (!cfg.ideal) {
        WeightMatrix wm{w_float, cfg.w_max};
        state = map_weights_varied(wm, params, Scheme::DifferentialPair,
                                   MappingStyle::OneSided, cfg.variation,
                                   derive_seed(run_seed, 0));
    }

    auto rng_data = make_rng(derive_seed(run_seed, 1));
    IcaRunOutcome out;
    Eigen::MatrixXd w_eff = w_float;
    const int batch = std::max(1, cfg.batch);
    Eigen::MatrixXd dw_acc = Eigen::MatrixXd::Zero(2, 2);
    int in_batch = 0;
    for (int t = 1; t <= cfg.samples; ++t) {
        const Eigen::Vector2d s(sample_laplace(rng_data),
                                sample_laplace(rng_data));
        const Eigen::Vector2d x = a * s;
        w_eff = cfg.ideal ? w_float : decode_weights(state, params, cfg.w_max);
        const Eigen::Vector2d u = w_eff * x;
        dw_acc += eghr_update(x, u, rule);
        ++in_batch;
        // The rule is an expectation over samples; estimate it with block
        // means and program the devices once per block.
        if (in_batch == batch || t == cfg.samples) {
            const Eigen::MatrixXd dw = dw_acc / in_batch;
            dw_acc.setZero();
            in_batch = 0;
            if (cfg.ideal) {
                w_float += dw;
            } else {
                const PulseProgram prog = delta_w_to_pulses(
                    dw, state, eta_prime, mode, ExecPolicy::Serial);
                apply_pulse_program(state, prog, rounding,
                                    derive_seed(run_seed, 2, t), 0.0,
                                    ExecPolicy::Serial);
            }
        }
        if (t % cfg.log_every == 0) {
            w_eff =
                cfg.ideal ? w_float : decode_weights(state, params, cfg.w_max);
            out.records.push_back(
                {"amari", t, amari_index(w_eff, a), run_seed});
            out.records.push_back({"w00", t, w_eff(0, 0), run_seed});
            out.records.push_back({"w01", t, w_eff(0, 1), run_seed});
            out.records.push_back({"w10", t, w_eff(1, 0), run_seed});
            out.records.push_back({"w11", t, w_eff(1, 1), run_seed});
        }
    }
    out.weights = cfg.ideal ? w_float : decode_weights(state, params, cfg.w_max);
    out.amari = amari_index(out.weights, a);
    return out;
}

}  // namespace

IcaResult run_ica(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<IcaRunOutcome> outcomes(cfg.num_seeds);
    parallel_for(cfg.num_seeds, ExecPolicy::Parallel, [&](std::int64_t k) {
        outcomes[static_cast<std::size_t>(k)] = run_one_ica(
            cfg, cfg.num_seeds == 1 ? cfg.seed
                                    : derive_seed(cfg.seed, 1000 + k));
    });
    IcaResult result;
    for (auto& o : outcomes) {
        result.records.insert(result.records.end(), o.records.begin(),
                              o.records.end());
        result.final_weights.push_back(std::move(o.weights));
        result.final_amari.push_back(o.amari);
    }
    result.median_amari = median(result.final_amari);
    return result;
}

// ---------------------------------------------------------------------------
// Sneak-path profile
// ---------------------------------------------------------------------------

SneakpathResult run_sneakpath_profile(const ExperimentConfig& cfg) {
    cfg.validate();
    CrossbarGeometry geom = cfg.geometry;
    if (cfg.xl) {
        geom.rows = geom.cols = 512;
        geom.partition_rows = geom.partition_cols = 64;
    }
    geom.validate();
    if (!geom.partitioned())
        throw ConfigError("sneakpath: partition sizes must be set");

    // R_on = 1 kOhm, R_off = 1 MOhm switching pattern.
    constexpr double kOnNs = 1e6;
    constexpr double kOffNs = 1e3;
    auto rng = make_rng(derive_seed(cfg.seed, 42));
    std::uniform_int_distribution<int> coin(0, 1);
    Eigen::MatrixXd g(geom.rows, geom.cols);
    for (int i = 0; i < geom.rows; ++i)
        for (int j = 0; j < geom.cols; ++j)
            g(i, j) = coin(rng) ? kOnNs : kOffNs;

    const CrossbarState state = make_single_array(g);
    CrossbarGeometry geom_full = geom;
    geom_full.partition_rows = geom_full.partition_cols = 0;

    SneakpathResult result;
    result.programmed = g;
    result.effective_full = effective_weights(state, geom_full);
    result.effective_partitioned = effective_weights(state, geom);

    const Eigen::MatrixXd rel_full =
        (result.effective_full - g).cwiseAbs().cwiseQuotient(g);
    const Eigen::MatrixXd rel_part =
        (result.effective_partitioned - g).cwiseAbs().cwiseQuotient(g);
    result.max_rel_full = rel_full.maxCoeff();
    result.mean_rel_full = rel_full.mean();
    result.max_rel_partitioned = rel_part.maxCoeff();
    result.mean_rel_partitioned = rel_part.mean();
    result.origin_rel = rel_full(0, 0);
    result.corner_rel = rel_full(geom.rows - 1, geom.cols - 1);

    const std::uint64_t s = cfg.seed;
    result.records = {
        {"max_rel_error_full", 0, result.max_rel_full, s},
        {"mean_rel_error_full", 0, result.mean_rel_full, s},
        {"max_rel_error_partitioned", 0, result.max_rel_partitioned, s},
        {"mean_rel_error_partitioned", 0, result.mean_rel_partitioned, s},
        {"origin_rel_error", 0, result.origin_rel, s},
        {"corner_rel_error", 0, result.corner_rel, s},
    };
    return result;
}

// ---------------------------------------------------------------------------
// eRBP classification
// ---------------------------------------------------------------------------

namespace {

struct ErbpTask {
    std::vector<Eigen::VectorXd> rates;        // one intensity vector per instance
    std::vector<int> labels;
    std::vector<std::uint64_t> encode_seeds;   // frozen per-instance trains
    int inputs = 0;
    int classes = 0;
};

ErbpTask make_synthetic_task(const ExperimentConfig& cfg,
                             std::uint64_t run_seed) {
    ErbpTask task;
    task.inputs = cfg.inputs;
    task.classes = cfg.classes;
    auto rng = make_rng(derive_seed(run_seed, 100));
    std::uniform_real_distribution<double> uni(0.05, 0.5);
    std::vector<Eigen::VectorXd> prototypes;
    for (int c = 0; c < cfg.classes; ++c) {
        Eigen::VectorXd r(cfg.inputs);
        for (int i = 0; i < cfg.inputs; ++i) r[i] = uni(rng);
        prototypes.push_back(std::move(r));
    }
    for (int c = 0; c < cfg.classes; ++c)
        for (int k = 0; k < cfg.patterns_per_class; ++k) {
            task.rates.push_back(prototypes[static_cast<std::size_t>(c)]);
            task.labels.push_back(c);
            task.encode_seeds.push_back(derive_seed(run_seed, 200, c, k));
        }
    return task;
}

ErbpTask make_mnist_task(const ExperimentConfig& cfg, std::uint64_t run_seed) {
    const IdxDataset ds = load_idx(cfg.mnist_images, cfg.mnist_labels);
    ErbpTask task;
    task.inputs = ds.images.height * ds.images.width;
    task.classes = 10;
    const int count = std::min(ds.images.count, cfg.samples);
    for (int n = 0; n < count; ++n) {
        Eigen::VectorXd r(task.inputs);
        for (int p = 0; p < task.inputs; ++p)
            r[p] = ds.images.pixels[static_cast<std::size_t>(n) * task.inputs + p] / 255.0;
        task.rates.push_back(std::move(r));
        task.labels.push_back(ds.labels.labels[static_cast<std::size_t>(n)]);
        task.encode_seeds.push_back(derive_seed(run_seed, 300, n));
    }
    return task;
}

struct ErbpNet {
    std::vector<int> sizes;                 // [inputs, hidden..., classes]
    std::vector<Eigen::MatrixXd> w;         // weight per layer
    std::vector<FeedbackWeights> fb;        // per hidden layer
    FeedbackWeights fb_out;                 // identity for the output layer
    LIFParams lif;
};

ErbpNet make_net(const ExperimentConfig& cfg, const ErbpTask& task,
                 std::uint64_t run_seed) {
    ErbpNet net;
    net.sizes.push_back(task.inputs);
    for (int h : cfg.hidden) net.sizes.push_back(h);
    net.sizes.push_back(task.classes);

    net.lif.mem_decay = 0.9;
    net.lif.syn_decay = 0.0;
    net.lif.v_th = 1.0;
    net.lif.u_rest = 0.0;

    const int layers = static_cast<int>(net.sizes.size()) - 1;
    for (int l = 0; l < layers; ++l) {
        const int fan_in = net.sizes[static_cast<std::size_t>(l)];
        const int fan_out = net.sizes[static_cast<std::size_t>(l) + 1];
        auto rng = make_rng(derive_seed(run_seed, 400, l));
        const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        std::uniform_real_distribution<double> uni(-bound, bound);
        Eigen::MatrixXd w(fan_out, fan_in);
        for (int i = 0; i < fan_out; ++i)
            for (int j = 0; j < fan_in; ++j) w(i, j) = uni(rng);
        net.w.push_back(std::move(w));
        if (l < layers - 1)
            net.fb.push_back(FeedbackWeights::make(
                task.classes, fan_out,
                derive_seed(cfg.rule.feedback_seed, l)));
    }
    net.fb_out.g = Eigen::MatrixXd::Identity(task.classes, task.classes);
    return net;
}

/// One pattern presentation; updates the weights in place when training.
int present(ErbpNet& net, const ExperimentConfig& cfg, const ErbpTask& task,
            std::size_t instance, bool train) {
    const int layers = static_cast<int>(net.w.size());
    const EncodingScheme scheme = cfg.encoding == "regular-rate"
                                      ? EncodingScheme::RegularRate
                                      : EncodingScheme::PoissonRate;
    const Eigen::MatrixXd spikes =
        encode_spikes(task.rates[instance], cfg.steps_per_pattern, scheme,
                      task.encode_seeds[instance], cfg.rate_scale);

    std::vector<LIFLayerState> st;
    for (int l = 0; l < layers; ++l)
        st.push_back(make_layer(net.sizes[static_cast<std::size_t>(l) + 1], net.lif));

    Eigen::VectorXd target = Eigen::VectorXd::Zero(task.classes);
    target[task.labels[instance]] = 1.0;
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(task.classes);

    RuleConfig rule = cfg.rule;
    rule.rule = RuleKind::Erbp;
    rule.boxcar_center = net.lif.v_th;

    for (int t = 0; t < cfg.steps_per_pattern; ++t) {
        std::vector<Eigen::VectorXd> layer_inputs;  // spikes entering layer l
        Eigen::VectorXd s = spikes.row(t).transpose();
        for (int l = 0; l < layers; ++l) {
            layer_inputs.push_back(s);
            st[static_cast<std::size_t>(l)] = lif_step(
                std::move(st[static_cast<std::size_t>(l)]), net.lif,
                net.w[static_cast<std::size_t>(l)] * s);
            s = st[static_cast<std::size_t>(l)].s;
        }
        counts += s;
        if (!train) continue;

        const Eigen::VectorXd error = target - s;
        for (int l = 0; l < layers; ++l) {
            const FeedbackWeights& fb =
                l == layers - 1 ? net.fb_out
                                : net.fb[static_cast<std::size_t>(l)];
            const Eigen::MatrixXd dw = erbp_update(
                layer_inputs[static_cast<std::size_t>(l)],
                st[static_cast<std::size_t>(l)].u_pre, error, fb, rule);
            net.w[static_cast<std::size_t>(l)] += dw;
            net.w[static_cast<std::size_t>(l)] =
                net.w[static_cast<std::size_t>(l)]
                    .cwiseMax(-cfg.w_max)
                    .cwiseMin(cfg.w_max);
        }
    }
    int best = 0;
    counts.maxCoeff(&best);
    return best;
}

struct ErbpRunOutcome {
    std::vector<ResultRecord> records;
    double final_accuracy = 0.0;
};

ErbpRunOutcome run_one_erbp(const ExperimentConfig& cfg,
                            std::uint64_t run_seed) {
    const bool mnist = !cfg.mnist_images.empty();
    const ErbpTask task = mnist ? make_mnist_task(cfg, run_seed)
                                : make_synthetic_task(cfg, run_seed);
    ErbpNet net = make_net(cfg, task, run_seed);

    std::vector<std::size_t> order(task.rates.size());
    std::iota(order.begin(), order.end(), 0);

    ErbpRunOutcome out;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        auto rng = make_rng(derive_seed(run_seed, 500, epoch));
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t idx : order) present(net, cfg, task, idx, true);

        int correct = 0;
        for (std::size_t i = 0; i < task.rates.size(); ++i)
            if (present(net, cfg, task, i, false) == task.labels[i]) ++correct;
        const double acc =
            static_cast<double>(correct) / static_cast<double>(task.rates.size());
        out.records.push_back({"train_accuracy", epoch, acc, run_seed});
        out.final_accuracy = acc;
    }
    return out;
}

}  // namespace

ErbpResult run_erbp_classification(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<ErbpRunOutcome> outcomes(cfg.num_seeds);
    parallel_for(cfg.num_seeds, ExecPolicy::Parallel, [&](std::int64_t k) {
        outcomes[static_cast<std::size_t>(k)] = run_one_erbp(
            cfg, cfg.num_seeds == 1 ? cfg.seed
                                    : derive_seed(cfg.seed, 2000 + k));
    });
    ErbpResult result;
    for (auto& o : outcomes) {
        result.records.insert(result.records.end(), o.records.begin(),
                              o.records.end());
        result.final_train_accuracy.push_back(o.final_accuracy);
    }
    return result;
}

// ---------------------------------------------------------------------------
// Device curves / delay report
// ---------------------------------------------------------------------------

DeviceCurvesResult run_device_curves(const ExperimentConfig& cfg) {
    cfg.validate();
    const DeviceParams nominal = cfg.resolved_device();
    nominal.validate();
    const int pulses = cfg.curves_pulses;
    const int devices = cfg.curves_devices;

    DeviceCurvesResult result;
    result.ltp.resize(devices + 1, pulses + 1);
    result.ltd.resize(devices + 1, pulses + 1);
    parallel_for(devices + 1, ExecPolicy::Parallel, [&](std::int64_t d) {
        const DeviceParams p =
            d == 0 ? nominal
                   : sample_params(nominal, cfg.variation,
                                   derive_seed(cfg.seed, 3000, d));
        for (int n = 0; n <= pulses; ++n) {
            result.ltp(d, n) = conductance_after_pulses(p, Polarity::LTP, n);
            result.ltd(d, n) = conductance_after_pulses(p, Polarity::LTD, n);
        }
    });

    auto spread = [&](const Eigen::MatrixXd& curves) {
        if (devices < 2) return 0.0;
        const Eigen::VectorXd finals =
            curves.block(1, pulses, devices, 1).col(0);
        const double mean = finals.mean();
        const double sq = (finals.array() - mean).square().sum() /
                          static_cast<double>(devices - 1);
        return std::sqrt(sq) / mean;
    };
    result.records = {
        {"ltp_final_nominal", 0, result.ltp(0, pulses), cfg.seed},
        {"ltd_final_nominal", 0, result.ltd(0, pulses), cfg.seed},
        {"ltp_final_std_over_mean", 0, spread(result.ltp), cfg.seed},
        {"ltd_final_std_over_mean", 0, spread(result.ltd), cfg.seed},
    };
    return result;
}

DelayResult run_delay_report(const ExperimentConfig& cfg) {
    cfg.validate();
    DelayResult result;
    result.delay_s = delay_estimate(cfg.geometry);
    result.records = {{"delay_seconds", 0, result.delay_s, cfg.seed}};
    return result;
}

// ---------------------------------------------------------------------------
// Dispatch + persistence
// ---------------------------------------------------------------------------

std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    namespace fs = std::filesystem;
    const bool persist = !cfg.out_dir.empty();
    if (persist) fs::create_directories(cfg.out_dir);
    auto artifact = [&cfg](const std::string& name) {
        return (fs::path(cfg.out_dir) / name).string();
    };

    std::vector<ResultRecord> records;
    if (cfg.experiment == "ica") {
        IcaResult r = run_ica(cfg);
        records = std::move(r.records);
        records.push_back({"median_final_amari", cfg.samples, r.median_amari,
                           cfg.seed});
        if (persist) {
            std::ofstream out(artifact("weights.csv"));
            out << "seed,row,col,value\n";
            for (std::size_t k = 0; k < r.final_weights.size(); ++k) {
                const auto& w = r.final_weights[k];
                const std::uint64_t s =
                    cfg.num_seeds == 1
                        ? cfg.seed
                        : derive_seed(cfg.seed, 1000 + static_cast<std::int64_t>(k));
                for (Eigen::Index i = 0; i < w.rows(); ++i)
                    for (Eigen::Index j = 0; j < w.cols(); ++j)
                        out << s << ',' << i << ',' << j << ','
                            << format_double(w(i, j)) << '\n';
            }
        }
    } else if (cfg.experiment == "sneakpath") {
        SneakpathResult r = run_sneakpath_profile(cfg);
        records = std::move(r.records);
        if (persist) {
            write_effective_map_csv(artifact("sneakpath_full.csv"),
                                    r.programmed, r.effective_full);
            write_effective_map_csv(artifact("sneakpath_partitioned.csv"),
                                    r.programmed, r.effective_partitioned);
        }
    } else if (cfg.experiment == "erbp-class") {
        ErbpResult r = run_erbp_classification(cfg);
        records = std::move(r.records);
    } else if (cfg.experiment == "device-curves") {
        DeviceCurvesResult r = run_device_curves(cfg);
        records = std::move(r.records);
        if (persist) {
            std::ofstream out(artifact("device_curves.csv"));
            out << "curve,device,pulse,conductance_nS\n";
            for (int d = 0; d <= cfg.curves_devices; ++d) {
                for (int n = 0; n <= cfg.curves_pulses; ++n)
                    out << "ltp," << d << ',' << n << ','
                        << format_double(r.ltp(d, n)) << '\n';
                for (int n = 0; n <= cfg.curves_pulses; ++n)
                    out << "ltd," << d << ',' << n << ','
                        << format_double(r.ltd(d, n)) << '\n';
            }
        }
    } else {  // delay-report
        DelayResult r = run_delay_report(cfg);
        records = std::move(r.records);
    }

    if (persist) {
        nlohmann::json j = cfg;
        save_json_file(artifact("config.json"), j);
        write_metrics_csv(artifact("metrics.csv"), records);
    }
    return records;
}

}  // namespace mrsnn
