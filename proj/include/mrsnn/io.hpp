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
#include <string>
#include <vector>

#include <json.hpp>

#include "mrsnn/crossbar.hpp"
#include "mrsnn/device.hpp"
#include "mrsnn/neuron.hpp"
#include "mrsnn/plasticity.hpp"

namespace mrsnn {

/// One flat time-series row of an experiment metric.
struct ResultRecord {
    std::string metric;
    long step = 0;
    double value = 0.0;
    std::uint64_t seed = 0;
};

/// Shortest round-trippable decimal form; used everywhere numbers land in
/// files so reruns are byte-identical.
std::string format_double(double v);

void to_json(nlohmann::json& j, const DeviceParams& p);
void from_json(const nlohmann::json& j, DeviceParams& p);
void to_json(nlohmann::json& j, const VariationSpec& s);
void from_json(const nlohmann::json& j, VariationSpec& s);
void to_json(nlohmann::json& j, const LIFParams& p);
void from_json(const nlohmann::json& j, LIFParams& p);
void to_json(nlohmann::json& j, const CrossbarGeometry& g);
void from_json(const nlohmann::json& j, CrossbarGeometry& g);
void to_json(nlohmann::json& j, const RuleConfig& c);
void from_json(const nlohmann::json& j, RuleConfig& c);

/// CrossbarState <-> JSON: dimensions, scheme, row-major conductances (nS).
nlohmann::json crossbar_to_json(const CrossbarState& state);
CrossbarState crossbar_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

/// metrics.csv with header `metric,step,value,seed`.
void write_metrics_csv(const std::string& path,
                       const std::vector<ResultRecord>& records);

/// Per-cell map CSV with header `row,col,programmed_nS,effective_nS,rel_error`
/// (1-indexed cells).
void write_effective_map_csv(const std::string& path,
                             const Eigen::MatrixXd& programmed,
                             const Eigen::MatrixXd& effective);

/// Pulse program CSV with header `row,col,device,pulses`; device is + or -.
void write_pulse_program_csv(const std::string& path,
                             const PulseProgram& program);

/// Spike event list CSV with header `t_step,neuron_id` from a
/// (steps x neurons) 0/1 train.
void write_spike_events_csv(const std::string& path,
                            const Eigen::MatrixXd& train);

}  // namespace mrsnn
