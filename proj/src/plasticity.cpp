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

#include "mrsnn/plasticity.hpp"

#include <atomic>
#include <cmath>
#include <random>

#include "mrsnn/errors.hpp"
#include "mrsnn/rng.hpp"

namespace mrsnn {

RuleKind rule_kind_from_string(const std::string& name) {
    if (name == "stdp") return RuleKind::Stdp;
    if (name == "erbp") return RuleKind::Erbp;
    if (name == "superspike") return RuleKind::Superspike;
    if (name == "decolle") return RuleKind::Decolle;
    if (name == "eghr") return RuleKind::Eghr;
    if (name == "ecd") return RuleKind::Ecd;
    throw ConfigError("unknown plasticity rule: " + name);
}

std::string to_string(RuleKind kind) {
    switch (kind) {
        case RuleKind::Stdp: return "stdp";
        case RuleKind::Erbp: return "erbp";
        case RuleKind::Superspike: return "superspike";
        case RuleKind::Decolle: return "decolle";
        case RuleKind::Eghr: return "eghr";
        case RuleKind::Ecd: return "ecd";
    }
    return "?";
}

void RuleConfig::validate() const {
    if (!(learning_rate > 0.0))
        throw ConfigError("RuleConfig: learning_rate must be > 0");
    if (!(pre_decay >= 0.0 && pre_decay < 1.0) ||
        !(post_decay >= 0.0 && post_decay < 1.0) ||
        !(outer_decay >= 0.0 && outer_decay < 1.0))
        throw ConfigError("RuleConfig: decays must be in [0, 1)");
    if (!(boxcar_width > 0.0) || !(surrogate_width > 0.0))
        throw ConfigError("RuleConfig: window widths must be > 0");
}

FeedbackWeights FeedbackWeights::make(int outputs, int neurons,
                                      std::uint64_t seed) {
    auto rng = make_rng(seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(outputs));
    std::uniform_real_distribution<double> uni(-scale, scale);
    FeedbackWeights fb;
    fb.seed = seed;
    fb.g.resize(outputs, neurons);
    for (int k = 0; k < outputs; ++k)
        for (int i = 0; i < neurons; ++i) fb.g(k, i) = uni(rng);
    return fb;
}

Eigen::MatrixXd stdp_update(const TraceState& pre_trace,
                            const TraceState& post_trace,
                            const Eigen::VectorXd& pre_spikes,
                            const Eigen::VectorXd& post_spikes,
                            const RuleConfig& cfg) {
    if (pre_trace.value.size() != pre_spikes.size() ||
        post_trace.value.size() != post_spikes.size())
        throw DimensionMismatch("stdp_update: trace/spike shapes differ");
    return cfg.a_plus * post_spikes * pre_trace.value.transpose() -
           cfg.a_minus * post_trace.value * pre_spikes.transpose();
}

Eigen::MatrixXd three_factor_update(const Eigen::VectorXd& f_pre,
                                    const Eigen::VectorXd& f_post,
                                    const Eigen::VectorXd& modulator,
                                    double eta) {
    if (f_post.size() != modulator.size())
        throw DimensionMismatch("three_factor_update: modulator length != post length");
    return eta * modulator.cwiseProduct(f_post) * f_pre.transpose();
}

Eigen::MatrixXd erbp_update(const Eigen::VectorXd& pre_spikes,
                            const Eigen::VectorXd& u_post,
                            const Eigen::VectorXd& error,
                            const FeedbackWeights& fb, const RuleConfig& cfg) {
    if (error.size() != fb.outputs() || u_post.size() != fb.neurons())
        throw DimensionMismatch("erbp_update: feedback shape mismatch");
    const Eigen::VectorXd m = fb.g.transpose() * error;
    Eigen::VectorXd gate(u_post.size());
    for (Eigen::Index i = 0; i < u_post.size(); ++i)
        gate[i] = surrogate_slope(u_post[i], SurrogateKind::Boxcar,
                                  cfg.boxcar_width, cfg.boxcar_center);
    return cfg.learning_rate * m.cwiseProduct(gate) * pre_spikes.transpose();
}

SuperspikeState SuperspikeState::make(int post, int pre) {
    return SuperspikeState{Eigen::MatrixXd::Zero(post, pre)};
}

Eigen::MatrixXd superspike_update(SuperspikeState& state,
                                  const Eigen::VectorXd& pre_trace,
                                  const Eigen::VectorXd& u_post,
                                  const Eigen::VectorXd& error,
                                  const RuleConfig& cfg) {
    if (state.trace.rows() != u_post.size() ||
        state.trace.cols() != pre_trace.size())
        throw DimensionMismatch("superspike_update: state shape mismatch");
    if (error.size() != u_post.size())
        throw DimensionMismatch("superspike_update: error length != post length");
    Eigen::VectorXd slope(u_post.size());
    for (Eigen::Index i = 0; i < u_post.size(); ++i)
        slope[i] = surrogate_slope(u_post[i], cfg.surrogate,
                                   cfg.surrogate_width, cfg.surrogate_center);
    state.trace = cfg.outer_decay * state.trace +
                  error.cwiseProduct(slope) * pre_trace.transpose();
    return cfg.learning_rate * state.trace;
}

DecolleResult decolle_update(const Eigen::VectorXd& pre_trace,
                             const Eigen::VectorXd& u_post,
                             const Eigen::VectorXd& post_activity,
                             const Eigen::VectorXd& targets,
                             const FeedbackWeights& fb, const RuleConfig& cfg) {
    if (post_activity.size() != fb.neurons() || targets.size() != fb.outputs())
        throw DimensionMismatch("decolle_update: readout shape mismatch");
    DecolleResult out;
    out.local_error = targets - fb.g * post_activity;
    const Eigen::VectorXd m = fb.g.transpose() * out.local_error;
    Eigen::VectorXd slope(u_post.size());
    for (Eigen::Index i = 0; i < u_post.size(); ++i)
        slope[i] = surrogate_slope(u_post[i], cfg.surrogate,
                                   cfg.surrogate_width, cfg.surrogate_center);
    out.dw = cfg.learning_rate * m.cwiseProduct(slope) * pre_trace.transpose();
    return out;
}

Eigen::MatrixXd eghr_update(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                            const RuleConfig& cfg) {
    const double surprise = cfg.e0 - u.array().abs().sum();
    const Eigen::VectorXd g = u.array().sign();
    return cfg.learning_rate * surprise * g * x.transpose();
}

Eigen::MatrixXd ecd_modulate(const Eigen::MatrixXd& stdp_dw, EcdPhase phase) {
    return phase == EcdPhase::Data ? stdp_dw : Eigen::MatrixXd(-stdp_dw);
}

namespace {

/// Largest usable fraction of a device's headroom: requests above it would
/// need an unbounded pulse count.
constexpr double kHeadroomCap = 1.0 - 1e-9;

double pulses_toward(const DeviceCell& cell, double dg, PulseMode mode) {
    if (mode == PulseMode::Exact) return pulses_for_delta_exact(cell, dg);
    return pulses_for_delta_linearized(cell, dg);
}

}  // namespace

PulseProgram delta_w_to_pulses(const Eigen::MatrixXd& dw,
                               const CrossbarState& state, double eta_prime,
                               PulseMode mode, ExecPolicy policy) {
    if (!state.trainable())
        throw ConfigError("delta_w_to_pulses: state has no device cells");
    if (dw.rows() != state.rows() || dw.cols() != state.cols())
        throw DimensionMismatch("delta_w_to_pulses: dw shape != state shape");

    const int n = state.rows();
    const int m = state.cols();
    PulseProgram prog;
    prog.pulses_pos = Eigen::MatrixXd::Zero(n, m);
    prog.pulses_neg = Eigen::MatrixXd::Zero(n, m);
    prog.clipped.setConstant(n, m, false);
    std::atomic<bool> any_clipped{false};

    const bool route_overflow = state.scheme == Scheme::DifferentialPair;

    parallel_for(static_cast<std::int64_t>(n) * m, policy, [&](std::int64_t idx) {
        const int i = static_cast<int>(idx) / m;
        const int j = static_cast<int>(idx) % m;
        const double dg = eta_prime * dw(i, j);
        if (dg == 0.0) return;

        const DeviceCell& pos = state.cell(i, j, true);
        const DeviceCell& neg = state.cell(i, j, false);
        const bool up = dg > 0.0;
        double remaining = std::abs(dg);

        // Primary move on G+: LTP for a positive net change, LTD otherwise.
        const double pos_head = up ? pos.params.g_max - pos.conductance
                                   : pos.conductance - pos.params.g_min;
        const double on_pos = std::min(remaining, pos_head * kHeadroomCap);
        if (on_pos > 0.0) {
            prog.pulses_pos(i, j) =
                pulses_toward(pos, up ? on_pos : -on_pos, mode);
            remaining -= on_pos;
        }
        // Overflow moves G- the opposite way (same net sign).
        if (remaining > 0.0 && route_overflow) {
            const double neg_head = up ? neg.conductance - neg.params.g_min
                                       : neg.params.g_max - neg.conductance;
            const double on_neg = std::min(remaining, neg_head * kHeadroomCap);
            if (on_neg > 0.0) {
                prog.pulses_neg(i, j) =
                    pulses_toward(neg, up ? -on_neg : on_neg, mode);
                remaining -= on_neg;
            }
        }
        if (remaining > 1e-12 * std::abs(dg)) {
            prog.clipped(i, j) = true;
            any_clipped.store(true, std::memory_order_relaxed);
        }
    });
    prog.any_clipped = any_clipped.load();
    return prog;
}

ApplyStats apply_pulse_program(CrossbarState& state, const PulseProgram& prog,
                               Rounding rounding, std::uint64_t rng_seed,
                               double write_noise_std, ExecPolicy policy) {
    if (!state.trainable())
        throw ConfigError("apply_pulse_program: state has no device cells");
    if (prog.pulses_pos.rows() != state.rows() ||
        prog.pulses_pos.cols() != state.cols())
        throw DimensionMismatch("apply_pulse_program: program shape != state shape");

    const int m = state.cols();
    std::atomic<std::int64_t> written{0};
    std::atomic<std::int64_t> exhausted{0};

    parallel_for(static_cast<std::int64_t>(state.rows()) * m, policy,
                 [&](std::int64_t idx) {
                     const int i = static_cast<int>(idx) / m;
                     const int j = static_cast<int>(idx) % m;
                     for (int which = 0; which < 2; ++which) {
                         const bool positive = which == 0;
                         const double pulses = positive ? prog.pulses_pos(i, j)
                                                        : prog.pulses_neg(i, j);
                         if (pulses == 0.0) continue;
                         DeviceCell& cell = state.cell(i, j, positive);
                         const Polarity pol =
                             pulses > 0.0 ? Polarity::LTP : Polarity::LTD;
                         cell = apply_pulses(
                             cell, pol, std::abs(pulses), rounding,
                             derive_seed(rng_seed, static_cast<std::uint64_t>(idx),
                                         which),
                             write_noise_std);
                         (positive ? state.g_pos(i, j) : state.g_neg(i, j)) =
                             cell.conductance;
                         written.fetch_add(1, std::memory_order_relaxed);
                         if (cell.endurance_exhausted)
                             exhausted.fetch_add(1, std::memory_order_relaxed);
                     }
                 });
    return ApplyStats{written.load(), exhausted.load()};
}

}  // namespace mrsnn
