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

#include "mrsnn/crossbar.hpp"

#include <cmath>

#include "mrsnn/errors.hpp"
#include "mrsnn/mesh.hpp"
#include "mrsnn/rng.hpp"

namespace mrsnn {

namespace {
constexpr double kNwToW = 1e-9;

bool all_zero(const Eigen::MatrixXd& g) { return (g.array() == 0.0).all(); }

/// Mesh read of one physical array; zero-strength arrays short-circuit.
Eigen::VectorXd array_currents(const Eigen::MatrixXd& g, double r_wire,
                               const Eigen::VectorXd& v) {
    if (all_zero(g)) return Eigen::VectorXd::Zero(g.rows());
    return MeshSolver(g, r_wire).solve_currents(v);
}

Eigen::MatrixXd array_effective(const Eigen::MatrixXd& g, double r_wire,
                                ExecPolicy policy) {
    if (all_zero(g)) return Eigen::MatrixXd::Zero(g.rows(), g.cols());
    return MeshSolver(g, r_wire).effective_map(policy);
}

double weight_to_net_scale(Scheme scheme, const DeviceParams& params,
                           double w_max) {
    const double swing = scheme == Scheme::DifferentialPair
                             ? params.delta_g()
                             : 0.5 * params.delta_g();
    return swing / w_max;
}

}  // namespace

void CrossbarGeometry::validate() const {
    if (rows < 1 || cols < 1)
        throw ConfigError("CrossbarGeometry: rows/cols must be >= 1");
    if (r_wire < 0.0) throw ConfigError("CrossbarGeometry: negative r_wire");
    if (partitioned()) {
        if (partition_rows < 1 || partition_cols < 1)
            throw ConfigError("CrossbarGeometry: both partition sizes must be set");
        if (rows % partition_rows != 0 || cols % partition_cols != 0)
            throw ConfigError("CrossbarGeometry: partitions must divide the array");
    }
}

void WeightMatrix::validate() const {
    if (!(w_max > 0.0)) throw ConfigError("WeightMatrix: w_max must be > 0");
    if ((w.array().abs() > w_max * (1.0 + 1e-12)).any())
        throw ConfigError("WeightMatrix: |w| exceeds w_max");
}

DeviceCell& CrossbarState::cell(int i, int j, bool positive) {
    auto& cells = positive ? cells_pos : cells_neg;
    return cells[static_cast<std::size_t>(i) * cols() + j];
}

const DeviceCell& CrossbarState::cell(int i, int j, bool positive) const {
    const auto& cells = positive ? cells_pos : cells_neg;
    return cells[static_cast<std::size_t>(i) * cols() + j];
}

CrossbarState make_crossbar(Eigen::MatrixXd g_pos, Eigen::MatrixXd g_neg,
                            Scheme scheme) {
    if (g_pos.rows() != g_neg.rows() || g_pos.cols() != g_neg.cols())
        throw DimensionMismatch("make_crossbar: array shapes differ");
    CrossbarState state;
    state.scheme = scheme;
    state.g_pos = std::move(g_pos);
    state.g_neg = std::move(g_neg);
    return state;
}

CrossbarState make_single_array(Eigen::MatrixXd g) {
    Eigen::MatrixXd zeros = Eigen::MatrixXd::Zero(g.rows(), g.cols());
    return make_crossbar(std::move(g), std::move(zeros));
}

namespace {

/// Conductance pair realizing a net difference under the given style;
/// net is already in nS.
std::pair<double, double> place_pair(double net, const DeviceParams& p,
                                     Scheme scheme, MappingStyle style) {
    if (scheme == Scheme::ReferenceDevice) {
        const double ref = 0.5 * (p.g_max + p.g_min);
        return {std::clamp(ref + net, p.g_min, p.g_max), ref};
    }
    if (style == MappingStyle::OneSided) {
        if (net >= 0.0)
            return {std::clamp(p.g_min + net, p.g_min, p.g_max), p.g_min};
        return {p.g_min, std::clamp(p.g_min - net, p.g_min, p.g_max)};
    }
    const double center = 0.5 * (p.g_max + p.g_min);
    return {std::clamp(center + 0.5 * net, p.g_min, p.g_max),
            std::clamp(center - 0.5 * net, p.g_min, p.g_max)};
}

CrossbarState map_weights_impl(const WeightMatrix& wm,
                               const DeviceParams& params, Scheme scheme,
                               MappingStyle style,
                               const VariationSpec* variation,
                               std::uint64_t rng_seed) {
    wm.validate();
    params.validate();
    const int n = static_cast<int>(wm.w.rows());
    const int m = static_cast<int>(wm.w.cols());
    const double scale = weight_to_net_scale(scheme, params, wm.w_max);

    CrossbarState state;
    state.scheme = scheme;
    state.g_pos.resize(n, m);
    state.g_neg.resize(n, m);
    state.cells_pos.reserve(static_cast<std::size_t>(n) * m);
    state.cells_neg.reserve(static_cast<std::size_t>(n) * m);

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            const auto [g_p, g_n] = place_pair(wm.w(i, j) * scale, params,
                                               scheme, style);
            const std::uint64_t idx =
                static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(m) + j;
            DeviceParams pp = params;
            DeviceParams pn = params;
            if (variation) {
                pp = sample_params(params, *variation,
                                   derive_seed(rng_seed, idx, 0));
                pn = sample_params(params, *variation,
                                   derive_seed(rng_seed, idx, 1));
            }
            // make_cell clamps targets into each device's own range.
            DeviceCell cp = make_cell(pp, g_p);
            DeviceCell cn = make_cell(pn, g_n);
            state.g_pos(i, j) = cp.conductance;
            state.g_neg(i, j) = cn.conductance;
            state.cells_pos.push_back(std::move(cp));
            state.cells_neg.push_back(std::move(cn));
        }
    return state;
}

}  // namespace

CrossbarState map_weights(const WeightMatrix& w, const DeviceParams& params,
                          Scheme scheme, MappingStyle style) {
    return map_weights_impl(w, params, scheme, style, nullptr, 0);
}

CrossbarState map_weights_varied(const WeightMatrix& w,
                                 const DeviceParams& params, Scheme scheme,
                                 MappingStyle style,
                                 const VariationSpec& variation,
                                 std::uint64_t rng_seed) {
    return map_weights_impl(w, params, scheme, style, &variation, rng_seed);
}

Eigen::MatrixXd decode_weights(const CrossbarState& state,
                               const DeviceParams& params, double w_max) {
    const double scale = weight_to_net_scale(state.scheme, params, w_max);
    return state.net() / scale;
}

Eigen::VectorXd read_ideal(const CrossbarState& state,
                           const Eigen::VectorXd& v) {
    if (v.size() != state.cols())
        throw DimensionMismatch("read_ideal: input length != cols");
    return state.net() * v;
}

Eigen::VectorXd read_nonideal(const CrossbarState& state,
                              const Eigen::VectorXd& v,
                              const CrossbarGeometry& geometry) {
    if (v.size() != state.cols())
        throw DimensionMismatch("read_nonideal: input length != cols");
    if (geometry.r_wire == 0.0) return read_ideal(state, v);
    return array_currents(state.g_pos, geometry.r_wire, v) -
           array_currents(state.g_neg, geometry.r_wire, v);
}

Eigen::VectorXd read_sinh(const CrossbarState& state, const Eigen::VectorXd& v,
                          double a) {
    if (v.size() != state.cols())
        throw DimensionMismatch("read_sinh: input length != cols");
    if (!(a > 0.0)) throw ConfigError("read_sinh: a must be > 0");
    return state.net() * (a * v.array()).sinh().matrix();
}

Eigen::VectorXd read_partitioned(const CrossbarState& state,
                                 const CrossbarGeometry& geometry,
                                 const Eigen::VectorXd& v, ExecPolicy policy) {
    geometry.validate();
    if (!geometry.partitioned()) return read_nonideal(state, v, geometry);
    if (v.size() != state.cols())
        throw DimensionMismatch("read_partitioned: input length != cols");

    const int n = geometry.partition_rows;
    const int m = geometry.partition_cols;
    const int blocks_i = state.rows() / n;
    const int blocks_j = state.cols() / m;

    std::vector<Eigen::VectorXd> block_currents(
        static_cast<std::size_t>(blocks_i) * blocks_j);
    parallel_for(static_cast<std::int64_t>(blocks_i) * blocks_j, policy,
                 [&](std::int64_t b) {
                     const int bi = static_cast<int>(b) / blocks_j;
                     const int bj = static_cast<int>(b) % blocks_j;
                     CrossbarState sub;
                     sub.scheme = state.scheme;
                     sub.g_pos = state.g_pos.block(bi * n, bj * m, n, m);
                     sub.g_neg = state.g_neg.block(bi * n, bj * m, n, m);
                     const Eigen::VectorXd v_sub = v.segment(bj * m, m);
                     block_currents[static_cast<std::size_t>(b)] =
                         geometry.r_wire == 0.0
                             ? read_ideal(sub, v_sub)
                             : read_nonideal(sub, v_sub, geometry);
                 });

    // Fixed-order reduction over the vertical interconnect.
    Eigen::VectorXd out = Eigen::VectorXd::Zero(state.rows());
    for (int bi = 0; bi < blocks_i; ++bi)
        for (int bj = 0; bj < blocks_j; ++bj)
            out.segment(bi * n, n) +=
                block_currents[static_cast<std::size_t>(bi) * blocks_j + bj];
    return out;
}

Eigen::MatrixXd effective_weights(const CrossbarState& state,
                                  const CrossbarGeometry& geometry,
                                  ExecPolicy policy) {
    geometry.validate();
    if (geometry.r_wire == 0.0) return state.net();
    if (!geometry.partitioned()) {
        return array_effective(state.g_pos, geometry.r_wire, policy) -
               array_effective(state.g_neg, geometry.r_wire, policy);
    }
    const int n = geometry.partition_rows;
    const int m = geometry.partition_cols;
    const int blocks_i = state.rows() / n;
    const int blocks_j = state.cols() / m;

    Eigen::MatrixXd eff(state.rows(), state.cols());
    // One-hot inputs only excite their own sub-array, so the partitioned map
    // is the block-diagonal union of per-block maps. Parallelism goes over
    // blocks; the per-block solves then run serially to avoid nesting.
    parallel_for(static_cast<std::int64_t>(blocks_i) * blocks_j, policy,
                 [&](std::int64_t b) {
                     const int bi = static_cast<int>(b) / blocks_j;
                     const int bj = static_cast<int>(b) % blocks_j;
                     eff.block(bi * n, bj * m, n, m) =
                         array_effective(state.g_pos.block(bi * n, bj * m, n, m),
                                         geometry.r_wire, ExecPolicy::Serial) -
                         array_effective(state.g_neg.block(bi * n, bj * m, n, m),
                                         geometry.r_wire, ExecPolicy::Serial);
                 });
    return eff;
}

double delay_estimate(const CrossbarGeometry& geometry) {
    geometry.validate();
    const double n_rows = geometry.rows;
    const double n_part =
        geometry.partition_rows > 0 ? geometry.partition_rows : geometry.rows;
    return 0.67 * (n_rows - n_part) * geometry.r_wire *
               geometry.driver_capacitance +
           (n_rows / n_part) * geometry.driver_delay;
}

double read_power(const CrossbarState& state, const Eigen::VectorXd& v) {
    if (v.size() != state.cols())
        throw DimensionMismatch("read_power: input length != cols");
    const Eigen::VectorXd col_g =
        (state.g_pos + state.g_neg).colwise().sum().transpose();
    return col_g.dot(v.cwiseProduct(v)) * kNwToW;
}

}  // namespace mrsnn
