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

#include "mrsnn/crossbar.hpp"
#include "mrsnn/neuron.hpp"
#include "mrsnn/parallel.hpp"

namespace mrsnn {

enum class RuleKind { Stdp, Erbp, Superspike, Decolle, Eghr, Ecd };

RuleKind rule_kind_from_string(const std::string& name);
std::string to_string(RuleKind kind);

/// Parameters for the rule family. Only the fields of the selected rule are
/// read; the rest keep their defaults.
struct RuleConfig {
    RuleKind rule = RuleKind::Eghr;
    double learning_rate = 0.05;

    // stdp
    double a_plus = 1.0;
    double a_minus = 1.0;
    double pre_decay = 0.9;
    double post_decay = 0.9;

    // erbp / decolle / superspike surrogate
    double boxcar_width = 4.0;
    double boxcar_center = 1.0;  // membrane window center, defaults to v_th
    SurrogateKind surrogate = SurrogateKind::SigmoidDerivative;
    double surrogate_width = 1.0;
    double surrogate_center = 1.0;

    // superspike
    double outer_decay = 0.9;

    // eghr
    double e0 = 4.0;  // 2 * output dimension by default

    // decolle / erbp feedback
    std::uint64_t feedback_seed = 1;

    void validate() const;
};

/// Fixed random feedback/readout weights, g (outputs x neurons). Entries are
/// uniform in [-1, 1] / sqrt(outputs), frozen at construction.
struct FeedbackWeights {
    Eigen::MatrixXd g;
    std::uint64_t seed = 0;

    static FeedbackWeights make(int outputs, int neurons, std::uint64_t seed);
    int outputs() const { return static_cast<int>(g.rows()); }
    int neurons() const { return static_cast<int>(g.cols()); }
};

/// Classical pair-based STDP accumulated over one step:
///   dW_ij = a_plus * post_i * pre_trace_j - a_minus * pre_j * post_trace_i.
/// Traces are the states *before* this step's spikes are folded in, so a
/// causal pre->post pairing potentiates and the reverse depresses.
Eigen::MatrixXd stdp_update(const TraceState& pre_trace,
                            const TraceState& post_trace,
                            const Eigen::VectorXd& pre_spikes,
                            const Eigen::VectorXd& post_spikes,
                            const RuleConfig& cfg);

/// Generic three-factor outer product: dW_ij = eta * m_i * f_post_i * f_pre_j.
Eigen::MatrixXd three_factor_update(const Eigen::VectorXd& f_pre,
                                    const Eigen::VectorXd& f_post,
                                    const Eigen::VectorXd& modulator,
                                    double eta);

/// Random-feedback error modulation gated by a membrane boxcar:
///   dW_ij = eta * (sum_k g_ik error_k) * boxcar(u_i) * pre_j.
Eigen::MatrixXd erbp_update(const Eigen::VectorXd& pre_spikes,
                            const Eigen::VectorXd& u_post,
                            const Eigen::VectorXd& error,
                            const FeedbackWeights& fb, const RuleConfig& cfg);

/// Per-synapse outer-kernel trace for SuperSpike (one extra state per
/// synapse).
struct SuperspikeState {
    Eigen::MatrixXd trace;
    static SuperspikeState make(int post, int pre);
};

/// Surrogate-gradient rule with the outer temporal kernel realized as an
/// exponential trace of the per-synapse product:
///   h_ij    = error_i * rho'(u_i) * pre_trace_j
///   state  <- outer_decay * state + h
///   dW      = eta * state.
Eigen::MatrixXd superspike_update(SuperspikeState& state,
                                  const Eigen::VectorXd& pre_trace,
                                  const Eigen::VectorXd& u_post,
                                  const Eigen::VectorXd& error,
                                  const RuleConfig& cfg);

struct DecolleResult {
    Eigen::MatrixXd dw;
    Eigen::VectorXd local_error;
};

/// Layer-local learning from a fixed random readout:
///   error_k = target_k - sum_i g_ik * post_i
///   dW_ij   = eta * (sum_k g_ik error_k) * rho'(u_i) * pre_trace_j.
/// Nothing here depends on any other layer's weights.
DecolleResult decolle_update(const Eigen::VectorXd& pre_trace,
                             const Eigen::VectorXd& u_post,
                             const Eigen::VectorXd& post_activity,
                             const Eigen::VectorXd& targets,
                             const FeedbackWeights& fb, const RuleConfig& cfg);

/// Error-gated Hebbian rule for ICA with Laplacian-prior nonlinearities:
///   dW = eta * (E0 - sum_k |u_k|) * sign(u) * x^T.
Eigen::MatrixXd eghr_update(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                            const RuleConfig& cfg);

enum class EcdPhase { Data, Reconstruction };

/// Contrastive modulation: +dW in the data phase, -dW in reconstruction.
Eigen::MatrixXd ecd_modulate(const Eigen::MatrixXd& stdp_dw, EcdPhase phase);

enum class PulseMode { Exact, Linearized };

/// Signed programming-pulse counts (real, pre-rounding) for each device of a
/// crossbar, aligned with the state. Positive = LTP, negative = LTD.
struct PulseProgram {
    Eigen::MatrixXd pulses_pos;
    Eigen::MatrixXd pulses_neg;
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> clipped;
    bool any_clipped = false;
};

/// Convert a weight-change matrix into pulse counts: dG = eta_prime * dw per
/// synapse, inverted through each device's own update curve. The signed
/// change goes to the G+ device; whatever exceeds its headroom is routed to
/// the G- device with opposite polarity, and anything beyond both headrooms
/// is clipped (flagged per cell). Requires a trainable state.
PulseProgram delta_w_to_pulses(const Eigen::MatrixXd& dw,
                               const CrossbarState& state, double eta_prime,
                               PulseMode mode,
                               ExecPolicy policy = ExecPolicy::Parallel);

struct ApplyStats {
    std::int64_t cells_written = 0;
    std::int64_t cells_exhausted = 0;
};

/// Run a pulse program through the device cells (LTP/LTD by sign), refresh
/// g_pos/g_neg, and report write statistics. Per-cell rounding randomness is
/// derived from (rng_seed, cell index), so results are identical under any
/// execution order.
ApplyStats apply_pulse_program(CrossbarState& state, const PulseProgram& prog,
                               Rounding rounding, std::uint64_t rng_seed,
                               double write_noise_std = 0.0,
                               ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace mrsnn
