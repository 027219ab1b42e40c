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

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrsnn/crossbar.hpp"
#include "mrsnn/device.hpp"
#include "mrsnn/io.hpp"
#include "mrsnn/plasticity.hpp"

namespace mrsnn {

/// Resolved description of one experiment run. `seed` is the master seed;
/// multi-seed runs derive one isolated stream per sub-run.
struct ExperimentConfig {
    std::string experiment = "ica";
    std::uint64_t seed = 1;
    bool seed_given = true;  // from_json clears it when the key is absent

    std::string device_preset = "mo-tiox-tin-3v";
    std::optional<DeviceParams> device_params;  // overrides the preset
    // Device-to-device tolerances reported for the +-3 V device.
    VariationSpec variation{0.25, 0.01, 0.05, false, 0.0};
    CrossbarGeometry geometry{128, 128, 0.1, 32, 32, 1e-15, 10e-9};
    RuleConfig rule;

    int num_seeds = 1;
    bool ideal = false;  // bypass the device/mesh models
    bool xl = false;     // sneak-path profile at 512x512 / 64x64

    // ica
    int samples = 10000;
    int batch = 50;  // samples averaged per weight update (the rule's <.>)
    int log_every = 100;
    double mixing_angle = 0.5235987755982988;  // pi/6
    double w_max = 3.0;
    std::string pulse_mode = "exact";  // or "linearized"
    std::string rounding = "nearest";  // or "floor" / "stochastic"

    // erbp-class
    int inputs = 100;
    std::vector<int> hidden = {60, 60};
    int classes = 3;
    int patterns_per_class = 20;
    int steps_per_pattern = 50;
    int epochs = 200;
    std::string encoding = "poisson-rate";
    double rate_scale = 1.0;
    bool device_bridge = false;  // realize eRBP updates on crossbars
    std::string mnist_images, mnist_labels;  // optional IDX override

    // device-curves
    int curves_pulses = 256;
    int curves_devices = 100;

    std::string out_dir;  // empty: in-memory only

    DeviceParams resolved_device() const;
    Rounding resolved_rounding() const;
    PulseMode resolved_pulse_mode() const;
    void validate() const;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

/// Permutation- and scale-invariant demixing distance of P = w * a; zero
/// iff P is a scaled permutation. Throws DegenerateMatrix if a row or
/// column of P is all-zero.
double amari_index(const Eigen::MatrixXd& w, const Eigen::MatrixXd& a);

struct IcaResult {
    std::vector<ResultRecord> records;
    std::vector<Eigen::MatrixXd> final_weights;  // one per sub-run
    std::vector<double> final_amari;             // one per sub-run
    double median_amari = 0.0;
};

/// Online EGHR demixing of two rotation-mixed Laplacian sources. In ideal
/// mode the weights are plain floats; otherwise every update is converted
/// to programming pulses and applied to a variation-sampled crossbar.
IcaResult run_ica(const ExperimentConfig& cfg);

struct SneakpathResult {
    std::vector<ResultRecord> records;
    Eigen::MatrixXd programmed;
    Eigen::MatrixXd effective_full;
    Eigen::MatrixXd effective_partitioned;
    double max_rel_full = 0.0, mean_rel_full = 0.0;
    double max_rel_partitioned = 0.0, mean_rel_partitioned = 0.0;
    double corner_rel = 0.0, origin_rel = 0.0;
};

/// One-hot effective-weight profile of a random R_on/R_off pattern, with
/// and without partitioning.
SneakpathResult run_sneakpath_profile(const ExperimentConfig& cfg);

struct ErbpResult {
    std::vector<ResultRecord> records;
    std::vector<double> final_train_accuracy;  // one per sub-run
};

/// Multi-layer LIF network trained with eRBP on a synthetic Poisson-pattern
/// classification task (or MNIST when IDX paths are configured).
ErbpResult run_erbp_classification(const ExperimentConfig& cfg);

struct DeviceCurvesResult {
    std::vector<ResultRecord> records;
    Eigen::MatrixXd ltp;  // (curves_devices + 1) x (curves_pulses + 1); row 0 nominal
    Eigen::MatrixXd ltd;
};

/// Nominal LTP/LTD conductance curves plus variation-sampled device curves.
DeviceCurvesResult run_device_curves(const ExperimentConfig& cfg);

struct DelayResult {
    std::vector<ResultRecord> records;
    double delay_s = 0.0;
};

DelayResult run_delay_report(const ExperimentConfig& cfg);

/// Dispatch on cfg.experiment, write config.json / metrics.csv / artifacts
/// into cfg.out_dir (if set). Returns the metrics that were written.
std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg);

}  // namespace mrsnn
