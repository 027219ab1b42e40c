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
#include <functional>

namespace mrsnn {

/// Discrete-time LIF constants. The decay factors are exp(-dt/tau): the
/// membrane decay multiplies u, the synaptic decay multiplies i_syn
/// (assigned by which state each time constant belongs to, independent of
/// any symbol lettering). Setting both decays to 0 collapses one step to a
/// perceptron.
struct LIFParams {
    double mem_decay = 0.9;  // exp(-dt/tau_mem), in [0, 1)
    double syn_decay = 0.0;  // exp(-dt/tau_syn), in [0, 1)
    double v_th = 1.0;       // V
    double u_rest = 0.0;     // V
    double dt = 1e-3;        // s (documentation of the step size)

    void validate() const;
};

/// Per-layer state; spikes s are 0/1 valued. Any neuron that spiked in a
/// step leaves that step with u == u_rest. u_pre keeps the membrane value
/// the threshold test saw (before reset) — the quantity surrogate-gated
/// plasticity rules read.
struct LIFLayerState {
    Eigen::VectorXd u;
    Eigen::VectorXd i_syn;
    Eigen::VectorXd s;
    Eigen::VectorXd u_pre;
};

LIFLayerState make_layer(int n, const LIFParams& params);

/// One deterministic step:
///   i_syn <- syn_decay * i_syn + input
///   u     <- mem_decay * u + (1 - mem_decay) * u_rest + i_syn
///   s     <- u >= v_th; spiking entries reset to u_rest.
/// The u_rest injection is scaled by (1 - mem_decay) so u_rest is the exact
/// no-input fixed point.
LIFLayerState lif_step(LIFLayerState state, const LIFParams& params,
                       const Eigen::VectorXd& input_current);

/// Stateless binary threshold layer: spikes where (w * s_in) >= v_th.
/// Equals one lif_step with both decays zero from a fresh state.
Eigen::VectorXd perceptron_forward(const Eigen::MatrixXd& w,
                                   const Eigen::VectorXd& s_in, double v_th);

/// Same integration as lif_step, but spikes are Bernoulli draws with
/// probability rho(u) (the stochastic intensity); reset applies to emitted
/// spikes. A hard-threshold rho reproduces lif_step bit-exactly.
LIFLayerState stochastic_spike_step(LIFLayerState state,
                                    const LIFParams& params,
                                    const Eigen::VectorXd& input_current,
                                    const std::function<double(double)>& rho,
                                    std::uint64_t rng_seed);

enum class SurrogateKind { Boxcar, SigmoidDerivative };

/// Surrogate slope of the spike nonlinearity at membrane potential u.
/// Boxcar: 1 inside |u - center| <= width/2, else 0. SigmoidDerivative: the
/// derivative of a logistic of the given width centered at `center`
/// (integrates to 1 over u).
double surrogate_slope(double u, SurrogateKind kind, double width,
                       double center);

/// Smooth activation whose derivative is surrogate_slope(SigmoidDerivative):
/// logistic((u - center)/width). Used by the rate-relaxed networks.
double surrogate_activation(double u, double width, double center);

/// First-order (exponential) spike trace: value <- decay * value + spikes.
struct TraceState {
    Eigen::VectorXd value;
    double decay = 0.9;
};

TraceState make_trace(int n, double decay);
TraceState update_trace(TraceState trace, const Eigen::VectorXd& spikes);

/// Blank-out synapse: each incoming spike is transmitted independently with
/// probability p.
Eigen::VectorXd blankout_transmit(const Eigen::VectorXd& spikes, double p,
                                  std::uint64_t rng_seed);

}  // namespace mrsnn
