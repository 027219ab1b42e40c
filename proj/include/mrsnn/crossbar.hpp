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
#include <vector>

#include "mrsnn/device.hpp"
#include "mrsnn/parallel.hpp"

namespace mrsnn {

/// How a signed weight maps onto physical conductances.
enum class Scheme {
    /// Two devices per weight, w ~ g_pos - g_neg.
    DifferentialPair,
    /// One device plus a fixed reference at (g_max + g_min) / 2; halves the
    /// dynamic range but uses one programmable device per weight.
    ReferenceDevice,
};

/// Placement of the conductance pair for a given net difference.
enum class MappingStyle {
    /// Smaller of the pair pinned at g_min: the minimum-read-power feasible
    /// point of the mapping constraints.
    OneSided,
    /// Pair centered on (g_max + g_min) / 2.
    Balanced,
};

/// Array geometry and parasitics. rows = outputs (N), cols = inputs (M).
/// partition_rows/partition_cols of 0 disable partitioning.
struct CrossbarGeometry {
    int rows = 1;
    int cols = 1;
    double r_wire = 0.0;  // ohms per cell segment
    int partition_rows = 0;
    int partition_cols = 0;
    double driver_capacitance = 1e-15;  // F
    double driver_delay = 10e-9;        // s

    bool partitioned() const { return partition_rows > 0 || partition_cols > 0; }
    void validate() const;
};

/// Signed weights with their scale; |w| <= w_max elementwise.
struct WeightMatrix {
    Eigen::MatrixXd w;
    double w_max = 1.0;

    void validate() const;
};

/// Conductance state of one crossbar-pair. g_pos/g_neg are the physical
/// arrays in nS (rows x cols). cells_* are the per-device states (current
/// conductance mirrored into g_pos/g_neg) and are populated only for
/// trainable arrays built through map_weights.
struct CrossbarState {
    Scheme scheme = Scheme::DifferentialPair;
    Eigen::MatrixXd g_pos;
    Eigen::MatrixXd g_neg;
    std::vector<DeviceCell> cells_pos;  // row-major, empty if untrainable
    std::vector<DeviceCell> cells_neg;

    int rows() const { return static_cast<int>(g_pos.rows()); }
    int cols() const { return static_cast<int>(g_pos.cols()); }
    bool trainable() const { return !cells_pos.empty(); }

    Eigen::MatrixXd net() const { return g_pos - g_neg; }
    DeviceCell& cell(int i, int j, bool positive);
    const DeviceCell& cell(int i, int j, bool positive) const;
};

/// Raw state from explicit conductance arrays (no device cells attached).
CrossbarState make_crossbar(Eigen::MatrixXd g_pos, Eigen::MatrixXd g_neg,
                            Scheme scheme = Scheme::DifferentialPair);

/// Single physical array (no differential partner): g_neg is all-zero,
/// meaning "no second device", not a programmed conductance.
CrossbarState make_single_array(Eigen::MatrixXd g);

/// Map weights onto conductances so that g_pos - g_neg = (w / w_max) * dG
/// (dG/2 under the reference scheme). Populates device cells with the
/// nominal params.
CrossbarState map_weights(const WeightMatrix& w, const DeviceParams& params,
                          Scheme scheme, MappingStyle style);

/// Same, but each device receives its own variation-sampled params
/// (seeded); target conductances are clamped into each device's range.
CrossbarState map_weights_varied(const WeightMatrix& w,
                                 const DeviceParams& params, Scheme scheme,
                                 MappingStyle style,
                                 const VariationSpec& variation,
                                 std::uint64_t rng_seed);

/// Recover the weight matrix encoded in the state: net() * w_max / dG.
Eigen::MatrixXd decode_weights(const CrossbarState& state,
                               const DeviceParams& params, double w_max);

/// Ideal vector-matrix multiply: I = (g_pos - g_neg) * v, nA.
Eigen::VectorXd read_ideal(const CrossbarState& state,
                           const Eigen::VectorXd& v);

/// Read through the resistive mesh (both arrays solved as separate physical
/// meshes, sensed currents subtracted). r_wire = 0 degenerates to the ideal
/// read exactly.
Eigen::VectorXd read_nonideal(const CrossbarState& state,
                              const Eigen::VectorXd& v,
                              const CrossbarGeometry& geometry);

/// Voltage-nonlinear read: I = (g_pos - g_neg) * sinh(a * v), for devices
/// whose conductance depends exponentially on the applied voltage.
Eigen::VectorXd read_sinh(const CrossbarState& state, const Eigen::VectorXd& v,
                          double a);

/// Split the array into (N/n) x (M/m) sub-arrays, read each through its own
/// mesh, and sum the sub-array output currents (ideal vertical interconnect,
/// fixed summation order). Sub-array solves run under `policy`.
Eigen::VectorXd read_partitioned(const CrossbarState& state,
                                 const CrossbarGeometry& geometry,
                                 const Eigen::VectorXd& v,
                                 ExecPolicy policy = ExecPolicy::Parallel);

/// Per-cell conductance map measured by one-hot reads through the mesh.
/// Honors geometry partitioning; r_wire = 0 returns the programmed net map.
Eigen::MatrixXd effective_weights(const CrossbarState& state,
                                  const CrossbarGeometry& geometry,
                                  ExecPolicy policy = ExecPolicy::Parallel);

/// Elmore estimate of the input interconnect delay:
/// 0.67 * (N - n) * r_wire * C_d + (N / n) * tau_d, seconds.
double delay_estimate(const CrossbarGeometry& geometry);

/// Static read power sum(g_pos + g_neg over cells of column j) * v_j^2,
/// watts.
double read_power(const CrossbarState& state, const Eigen::VectorXd& v);

}  // namespace mrsnn
