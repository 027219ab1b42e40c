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

#include "mrsnn/neuron.hpp"

#include <cmath>
#include <random>

#include "mrsnn/errors.hpp"
#include "mrsnn/rng.hpp"

namespace mrsnn {

void LIFParams::validate() const {
    if (!(mem_decay >= 0.0 && mem_decay < 1.0))
        throw ConfigError("LIFParams: mem_decay must be in [0, 1)");
    if (!(syn_decay >= 0.0 && syn_decay < 1.0))
        throw ConfigError("LIFParams: syn_decay must be in [0, 1)");
    if (!(v_th > u_rest)) throw ConfigError("LIFParams: v_th must exceed u_rest");
}

LIFLayerState make_layer(int n, const LIFParams& params) {
    params.validate();
    LIFLayerState state;
    state.u = Eigen::VectorXd::Constant(n, params.u_rest);
    state.i_syn = Eigen::VectorXd::Zero(n);
    state.s = Eigen::VectorXd::Zero(n);
    state.u_pre = state.u;
    return state;
}

namespace {

/// Shared leak-integrate stage of the deterministic and stochastic steps.
void integrate(LIFLayerState& state, const LIFParams& params,
               const Eigen::VectorXd& input_current) {
    if (input_current.size() != state.u.size())
        throw DimensionMismatch("lif_step: input length != layer size");
    state.i_syn = params.syn_decay * state.i_syn + input_current;
    state.u = params.mem_decay * state.u.array() +
              (1.0 - params.mem_decay) * params.u_rest + state.i_syn.array();
    state.u_pre = state.u;
}

}  // namespace

LIFLayerState lif_step(LIFLayerState state, const LIFParams& params,
                       const Eigen::VectorXd& input_current) {
    integrate(state, params, input_current);
    for (Eigen::Index i = 0; i < state.u.size(); ++i) {
        const bool fired = state.u[i] >= params.v_th;
        state.s[i] = fired ? 1.0 : 0.0;
        if (fired) state.u[i] = params.u_rest;
    }
    return state;
}

Eigen::VectorXd perceptron_forward(const Eigen::MatrixXd& w,
                                   const Eigen::VectorXd& s_in, double v_th) {
    if (s_in.size() != w.cols())
        throw DimensionMismatch("perceptron_forward: input length != cols");
    const Eigen::VectorXd u = w * s_in;
    return (u.array() >= v_th).cast<double>();
}

LIFLayerState stochastic_spike_step(LIFLayerState state,
                                    const LIFParams& params,
                                    const Eigen::VectorXd& input_current,
                                    const std::function<double(double)>& rho,
                                    std::uint64_t rng_seed) {
    integrate(state, params, input_current);
    auto rng = make_rng(rng_seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (Eigen::Index i = 0; i < state.u.size(); ++i) {
        const bool fired = uni(rng) < rho(state.u[i]);
        state.s[i] = fired ? 1.0 : 0.0;
        if (fired) state.u[i] = params.u_rest;
    }
    return state;
}

double surrogate_slope(double u, SurrogateKind kind, double width,
                       double center) {
    if (!(width > 0.0)) throw ConfigError("surrogate_slope: width must be > 0");
    if (kind == SurrogateKind::Boxcar)
        return std::abs(u - center) <= 0.5 * width ? 1.0 : 0.0;
    const double s = surrogate_activation(u, width, center);
    return s * (1.0 - s) / width;
}

double surrogate_activation(double u, double width, double center) {
    return 1.0 / (1.0 + std::exp(-(u - center) / width));
}

TraceState make_trace(int n, double decay) {
    if (!(decay >= 0.0 && decay < 1.0))
        throw ConfigError("TraceState: decay must be in [0, 1)");
    return TraceState{Eigen::VectorXd::Zero(n), decay};
}

TraceState update_trace(TraceState trace, const Eigen::VectorXd& spikes) {
    if (spikes.size() != trace.value.size())
        throw DimensionMismatch("update_trace: spike length != trace size");
    trace.value = trace.decay * trace.value + spikes;
    return trace;
}

Eigen::VectorXd blankout_transmit(const Eigen::VectorXd& spikes, double p,
                                  std::uint64_t rng_seed) {
    if (!(p >= 0.0 && p <= 1.0))
        throw ConfigError("blankout_transmit: p must be in [0, 1]");
    auto rng = make_rng(rng_seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(spikes.size());
    for (Eigen::Index i = 0; i < spikes.size(); ++i)
        if (spikes[i] != 0.0) out[i] = uni(rng) < p ? 1.0 : 0.0;
    return out;
}

}  // namespace mrsnn
