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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mrsnn/errors.hpp"
#include "mrsnn/plasticity.hpp"
#include "mrsnn/rng.hpp"

using namespace mrsnn;

namespace {
const DeviceParams& p3v() { return device_preset("mo-tiox-tin-3v"); }
}

TEST_CASE("stdp sign structure") {
    RuleConfig cfg;
    cfg.a_plus = 1.0;
    cfg.a_minus = 1.0;
    TraceState pre = make_trace(1, 0.9);
    TraceState post = make_trace(1, 0.9);
    const Eigen::VectorXd spike = Eigen::VectorXd::Ones(1);
    const Eigen::VectorXd none = Eigen::VectorXd::Zero(1);

    SUBCASE("causal pairing potentiates") {
        // Pre fires, trace builds, then post fires two steps later.
        Eigen::MatrixXd dw = stdp_update(pre, post, spike, none, cfg);
        CHECK(dw(0, 0) == 0.0);
        pre = update_trace(std::move(pre), spike);
        post = update_trace(std::move(post), none);
        pre = update_trace(std::move(pre), none);
        post = update_trace(std::move(post), none);
        dw = stdp_update(pre, post, none, spike, cfg);
        CHECK(dw(0, 0) > 0.0);
    }
    SUBCASE("anti-causal pairing depresses") {
        post = update_trace(std::move(post), spike);
        pre = update_trace(std::move(pre), none);
        const Eigen::MatrixXd dw = stdp_update(pre, post, spike, none, cfg);
        CHECK(dw(0, 0) < 0.0);
    }
    SUBCASE("silence leaves weights alone") {
        const Eigen::MatrixXd dw = stdp_update(pre, post, none, none, cfg);
        CHECK(dw.cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("generic three-factor product") {
    Eigen::VectorXd f_pre(3), f_post(2), m(2);
    f_pre << 1.0, 0.5, -0.5;
    f_post << 2.0, 1.0;
    m << 0.0, 0.0;
    CHECK(three_factor_update(f_pre, f_post, m, 0.1).cwiseAbs().maxCoeff() ==
          0.0);

    m << 1.0, -2.0;
    const Eigen::MatrixXd dw = three_factor_update(f_pre, f_post, m, 0.1);
    CHECK(dw.rows() == 2);
    CHECK(dw.cols() == 3);
    CHECK(dw(0, 0) == doctest::Approx(0.1 * 1.0 * 2.0 * 1.0));
    CHECK(dw(1, 2) == doctest::Approx(0.1 * -2.0 * 1.0 * -0.5));
    // Outer product of vectors has rank 1.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dw);
    CHECK(svd.singularValues()[1] < 1e-12 * svd.singularValues()[0]);

    SUBCASE("unit modulator with spike/trace factors reduces to the stdp LTP term") {
        RuleConfig cfg;
        cfg.a_plus = 0.1;
        cfg.a_minus = 0.0;
        TraceState pre = make_trace(3, 0.9);
        pre.value << 0.4, 0.0, 0.9;
        TraceState post = make_trace(2, 0.9);
        Eigen::VectorXd post_spikes(2);
        post_spikes << 1.0, 0.0;
        const Eigen::MatrixXd a = stdp_update(
            pre, post, Eigen::VectorXd::Zero(3), post_spikes, cfg);
        const Eigen::MatrixXd b = three_factor_update(
            pre.value, post_spikes, Eigen::VectorXd::Ones(2), 0.1);
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("erbp update") {
    RuleConfig cfg;
    cfg.learning_rate = 1.0;
    cfg.boxcar_width = 2.0;
    cfg.boxcar_center = 0.0;
    FeedbackWeights fb = FeedbackWeights::make(2, 3, 7);

    Eigen::VectorXd pre(4), u(3), err(2);
    pre << 1.0, 0.0, 1.0, 1.0;
    u << 0.1, -0.4, 0.9;

    SUBCASE("zero error means zero update") {
        err << 0.0, 0.0;
        CHECK(erbp_update(pre, u, err, fb, cfg).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("membrane outside the window gates its row off") {
        err << 1.0, -0.5;
        u << 0.1, 5.0, -0.2;  // neuron 1 far outside the boxcar
        const Eigen::MatrixXd dw = erbp_update(pre, u, err, fb, cfg);
        CHECK(dw.row(1).cwiseAbs().maxCoeff() == 0.0);
        CHECK(dw.row(0).cwiseAbs().maxCoeff() > 0.0);
    }
    SUBCASE("scalar arithmetic") {
        FeedbackWeights unit;
        unit.g = Eigen::MatrixXd::Ones(1, 1);
        Eigen::VectorXd e1(1), u1(1), s1(1);
        e1 << 0.5;
        u1 << 0.0;
        s1 << 1.0;
        const Eigen::MatrixXd dw = erbp_update(s1, u1, e1, unit, cfg);
        CHECK(dw(0, 0) == doctest::Approx(0.5));
    }
}

TEST_CASE("superspike update") {
    RuleConfig cfg;
    cfg.learning_rate = 0.5;
    cfg.outer_decay = 0.0;
    cfg.surrogate = SurrogateKind::Boxcar;
    cfg.surrogate_width = 2.0;
    cfg.surrogate_center = 0.0;
    cfg.boxcar_width = 2.0;
    cfg.boxcar_center = 0.0;

    Eigen::VectorXd trace(3), u(2), err(2);
    trace << 0.5, 0.0, 1.0;
    u << 0.2, -0.3;
    err << 1.0, -1.0;

    SUBCASE("no presynaptic history, no update") {
        SuperspikeState st = SuperspikeState::make(2, 3);
        const Eigen::MatrixXd dw = superspike_update(
            st, Eigen::VectorXd::Zero(3), u, err, cfg);
        CHECK(dw.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("with a flat outer kernel and boxcar slope it is erbp with identity feedback") {
        SuperspikeState st = SuperspikeState::make(2, 3);
        const Eigen::MatrixXd ss = superspike_update(st, trace, u, err, cfg);
        FeedbackWeights identity;
        identity.g = Eigen::MatrixXd::Identity(2, 2);
        const Eigen::MatrixXd rb = erbp_update(trace, u, err, identity, cfg);
        CHECK((ss - rb).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("update sign follows the error when slope and trace are positive") {
        SuperspikeState st = SuperspikeState::make(2, 3);
        const Eigen::MatrixXd dw = superspike_update(st, trace, u, err, cfg);
        CHECK(dw(0, 0) > 0.0);
        CHECK(dw(1, 0) < 0.0);
    }
    SUBCASE("outer kernel accumulates across steps") {
        cfg.outer_decay = 0.5;
        SuperspikeState st = SuperspikeState::make(2, 3);
        const Eigen::MatrixXd first = superspike_update(st, trace, u, err, cfg);
        const Eigen::MatrixXd second = superspike_update(st, trace, u, err, cfg);
        CHECK(second(0, 0) == doctest::Approx(1.5 * first(0, 0)));
    }
}

TEST_CASE("decolle update") {
    RuleConfig cfg;
    cfg.learning_rate = 1.0;
    cfg.surrogate = SurrogateKind::SigmoidDerivative;
    cfg.surrogate_width = 0.5;
    cfg.surrogate_center = 0.0;
    FeedbackWeights fb = FeedbackWeights::make(2, 4, 11);

    Eigen::VectorXd trace(3), u(4), spikes(4), targets(2);
    trace << 0.3, 0.9, 0.1;
    u << 0.2, -0.1, 0.4, 0.0;
    spikes << 1.0, 0.0, 1.0, 0.0;

    SUBCASE("a readout that already hits the target freezes the layer") {
        targets = fb.g * spikes;
        const DecolleResult r =
            decolle_update(trace, u, spikes, targets, fb, cfg);
        CHECK(r.local_error.cwiseAbs().maxCoeff() == 0.0);
        CHECK(r.dw.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("local error definition") {
        targets << 1.0, -1.0;
        const DecolleResult r =
            decolle_update(trace, u, spikes, targets, fb, cfg);
        CHECK((r.local_error - (targets - fb.g * spikes)).cwiseAbs().maxCoeff() <
              1e-15);
    }
    SUBCASE("updates are local: other layers' weights never enter") {
        targets << 1.0, -1.0;
        // Downstream layer, arbitrarily perturbed between the two calls.
        Eigen::MatrixXd downstream = Eigen::MatrixXd::Random(5, 4);
        const DecolleResult before =
            decolle_update(trace, u, spikes, targets, fb, cfg);
        downstream *= 17.0;
        const DecolleResult after =
            decolle_update(trace, u, spikes, targets, fb, cfg);
        CHECK(before.dw == after.dw);
    }
    SUBCASE("one-neuron case is delta rule x surrogate x trace") {
        FeedbackWeights unit;
        unit.g = Eigen::MatrixXd::Ones(1, 1);
        Eigen::VectorXd p1(1), u1(1), s1(1), t1(1);
        p1 << 0.7;
        u1 << 0.2;
        s1 << 0.0;
        t1 << 1.0;
        const DecolleResult r = decolle_update(p1, u1, s1, t1, unit, cfg);
        const double expect =
            (1.0 - 0.0) *
            surrogate_slope(0.2, cfg.surrogate, cfg.surrogate_width,
                            cfg.surrogate_center) *
            0.7;
        CHECK(r.dw(0, 0) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("decolle matches the analytic gradient of the relaxed rate cost") {
    // Relaxed network: r = rho(W p), y = g r, C = 0.5 * ||t - y||^2. The
    // update with eta = 1 must equal -dC/dW.
    RuleConfig cfg;
    cfg.learning_rate = 1.0;
    cfg.surrogate = SurrogateKind::SigmoidDerivative;
    cfg.surrogate_width = 0.7;
    cfg.surrogate_center = 0.2;

    auto rng = make_rng(2024);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int inst = 0; inst < 20; ++inst) {
        const int pre_n = 3 + inst % 3;
        const int post_n = 2 + inst % 4;
        const int out_n = 1 + inst % 3;
        FeedbackWeights fb =
            FeedbackWeights::make(out_n, post_n, derive_seed(55, inst));
        Eigen::MatrixXd w(post_n, pre_n);
        Eigen::VectorXd p(pre_n), t(out_n);
        for (int i = 0; i < post_n; ++i)
            for (int j = 0; j < pre_n; ++j) w(i, j) = uni(rng);
        for (int j = 0; j < pre_n; ++j) p[j] = 0.5 + 0.5 * uni(rng);
        for (int k = 0; k < out_n; ++k) t[k] = uni(rng);

        auto cost = [&](const Eigen::MatrixXd& wm) {
            const Eigen::VectorXd u = wm * p;
            Eigen::VectorXd r(u.size());
            for (Eigen::Index i = 0; i < u.size(); ++i)
                r[i] = surrogate_activation(u[i], cfg.surrogate_width,
                                            cfg.surrogate_center);
            return 0.5 * (t - fb.g * r).squaredNorm();
        };

        const Eigen::VectorXd u = w * p;
        Eigen::VectorXd r(u.size());
        for (Eigen::Index i = 0; i < u.size(); ++i)
            r[i] = surrogate_activation(u[i], cfg.surrogate_width,
                                        cfg.surrogate_center);
        const Eigen::MatrixXd analytic =
            decolle_update(p, u, r, t, fb, cfg).dw;

        Eigen::MatrixXd fd(post_n, pre_n);
        const double h = 1e-5;
        for (int i = 0; i < post_n; ++i)
            for (int j = 0; j < pre_n; ++j) {
                Eigen::MatrixXd wp = w, wm_ = w;
                wp(i, j) += h;
                wm_(i, j) -= h;
                fd(i, j) = -(cost(wp) - cost(wm_)) / (2.0 * h);
            }
        const double denom = std::max(analytic.cwiseAbs().maxCoeff(), 1e-12);
        CHECK((fd - analytic).cwiseAbs().maxCoeff() / denom < 1e-6);
    }
}

TEST_CASE("eghr update") {
    RuleConfig cfg;
    cfg.learning_rate = 1.0;
    cfg.e0 = 4.0;

    SUBCASE("balanced surprise freezes the weights") {
        Eigen::VectorXd x(2), u(2);
        x << 0.3, -0.1;
        u << 3.0, 1.0;  // E(u) = 4 = E0
        CHECK(eghr_update(x, u, cfg).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("scalar sign") {
        Eigen::VectorXd x(1), u(1);
        x << 0.5;
        u << 1.0;  // E0 - E = 3 > 0, sign(u) = +1
        CHECK(eghr_update(x, u, cfg)(0, 0) > 0.0);
    }
    SUBCASE("stationary at the unmixing solution") {
        // 2x2 rotation mixing of Laplacian sources; at W = c A^{-1} with
        // c = E0 / 3 the expected update vanishes.
        const double theta = 0.5235987755982988;
        Eigen::Matrix2d a;
        a << std::cos(theta), -std::sin(theta), std::sin(theta),
            std::cos(theta);
        const double c = cfg.e0 / 3.0;
        const Eigen::Matrix2d w = c * a.inverse();

        const int n = 100000;
        auto rng = make_rng(31337);
        Eigen::Matrix2d sum = Eigen::Matrix2d::Zero();
        Eigen::Matrix2d sum2 = Eigen::Matrix2d::Zero();
        for (int k = 0; k < n; ++k) {
            const Eigen::Vector2d s(sample_laplace(rng), sample_laplace(rng));
            const Eigen::Vector2d x = a * s;
            const Eigen::Matrix2d dw = eghr_update(x, w * x, cfg);
            sum += dw;
            sum2 += dw.cwiseProduct(dw);
        }
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const double mean = sum(i, j) / n;
                const double var = sum2(i, j) / n - mean * mean;
                const double sem = std::sqrt(var / n);
                CHECK(std::abs(mean) < 3.0 * sem + 1e-12);
            }
    }
}

TEST_CASE("ecd modulation") {
    Eigen::MatrixXd dw = Eigen::MatrixXd::Random(3, 3);
    CHECK(ecd_modulate(dw, EcdPhase::Data) == dw);
    CHECK(ecd_modulate(dw, EcdPhase::Reconstruction) == -dw);
    CHECK((ecd_modulate(dw, EcdPhase::Data) +
           ecd_modulate(dw, EcdPhase::Reconstruction))
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("weight changes convert to pulse programs") {
    WeightMatrix wm;
    wm.w = Eigen::MatrixXd::Zero(2, 2);
    wm.w_max = 3.0;
    const double eta_prime = p3v().delta_g() / wm.w_max;

    SUBCASE("zero change, empty program") {
        CrossbarState st = map_weights(wm, p3v(), Scheme::DifferentialPair,
                                       MappingStyle::OneSided);
        const PulseProgram prog = delta_w_to_pulses(
            Eigen::MatrixXd::Zero(2, 2), st, eta_prime, PulseMode::Exact);
        CHECK(prog.pulses_pos.cwiseAbs().maxCoeff() == 0.0);
        CHECK(prog.pulses_neg.cwiseAbs().maxCoeff() == 0.0);
        CHECK_FALSE(prog.any_clipped);
    }
    SUBCASE("exact programs invert to the requested net change") {
        auto rng = make_rng(61);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        WeightMatrix init;
        init.w_max = 3.0;
        init.w = Eigen::MatrixXd::Zero(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) init.w(i, j) = 1.5 * uni(rng);
        CrossbarState st = map_weights(init, p3v(), Scheme::DifferentialPair,
                                       MappingStyle::Balanced);
        Eigen::MatrixXd dw(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) dw(i, j) = 0.4 * uni(rng);
        const PulseProgram prog =
            delta_w_to_pulses(dw, st, eta_prime, PulseMode::Exact);
        CHECK_FALSE(prog.any_clipped);

        // Continuous application (no rounding): walk each device along its
        // curve by the real count and compare the realized net change.
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const DeviceCell& cp = st.cell(i, j, true);
                const DeviceCell& cn = st.cell(i, j, false);
                const double np = prog.pulses_pos(i, j);
                const double nn = prog.pulses_neg(i, j);
                const double gp = advance_conductance(
                    cp.params, cp.conductance,
                    np >= 0 ? Polarity::LTP : Polarity::LTD, std::abs(np));
                const double gn = advance_conductance(
                    cn.params, cn.conductance,
                    nn >= 0 ? Polarity::LTP : Polarity::LTD, std::abs(nn));
                const double realized =
                    (gp - gn) - (cp.conductance - cn.conductance);
                const double requested = eta_prime * dw(i, j);
                if (requested != 0.0)
                    CHECK(std::abs(realized - requested) <=
                          1e-9 * std::abs(requested));
            }
    }
    SUBCASE("linearized counts stay within 1% of exact at 1% headroom") {
        CrossbarState st = map_weights(wm, p3v(), Scheme::DifferentialPair,
                                       MappingStyle::Balanced);
        // 1% of the potentiation headroom from the balanced center.
        const DeviceCell& cell = st.cell(0, 0, true);
        const double head = cell.params.g_max - cell.conductance;
        Eigen::MatrixXd dw = Eigen::MatrixXd::Zero(2, 2);
        dw(0, 0) = 0.01 * head / eta_prime;
        const PulseProgram lin =
            delta_w_to_pulses(dw, st, eta_prime, PulseMode::Linearized);
        const PulseProgram ex =
            delta_w_to_pulses(dw, st, eta_prime, PulseMode::Exact);
        CHECK(std::abs(lin.pulses_pos(0, 0) - ex.pulses_pos(0, 0)) /
                  ex.pulses_pos(0, 0) <
              0.01);
    }
    SUBCASE("overflow routes to the partner device, then clips") {
        WeightMatrix high;
        high.w = Eigen::MatrixXd::Constant(1, 1, 2.9);
        high.w_max = 3.0;
        CrossbarState st = map_weights(high, p3v(), Scheme::DifferentialPair,
                                       MappingStyle::Balanced);
        // Ask for more increase than G+ alone can provide (but still
        // within the representable weight range).
        Eigen::MatrixXd dw = Eigen::MatrixXd::Constant(1, 1, 0.08);
        PulseProgram prog =
            delta_w_to_pulses(dw, st, eta_prime, PulseMode::Exact);
        CHECK(prog.pulses_pos(0, 0) > 0.0);   // LTP on G+
        CHECK(prog.pulses_neg(0, 0) < 0.0);   // LTD on G-
        CHECK_FALSE(prog.any_clipped);

        // And far beyond both headrooms the request clips.
        dw(0, 0) = 10.0;
        prog = delta_w_to_pulses(dw, st, eta_prime, PulseMode::Exact);
        CHECK(prog.any_clipped);
        CHECK(prog.clipped(0, 0));
    }
}

TEST_CASE("pulse program application") {
    WeightMatrix wm;
    wm.w = Eigen::MatrixXd::Zero(4, 4);
    wm.w_max = 3.0;
    const double eta_prime = p3v().delta_g() / wm.w_max;
    auto rng = make_rng(71);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::MatrixXd dw(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) dw(i, j) = 0.5 * uni(rng);

    SUBCASE("serial and parallel application agree bitwise") {
        CrossbarState a = map_weights(wm, p3v(), Scheme::DifferentialPair,
                                      MappingStyle::Balanced);
        CrossbarState b = a;
        const PulseProgram prog =
            delta_w_to_pulses(dw, a, eta_prime, PulseMode::Exact);
        apply_pulse_program(a, prog, Rounding::Stochastic, 99, 0.0,
                            ExecPolicy::Serial);
        apply_pulse_program(b, prog, Rounding::Stochastic, 99, 0.0,
                            ExecPolicy::Parallel);
        CHECK(a.g_pos == b.g_pos);
        CHECK(a.g_neg == b.g_neg);
    }
    SUBCASE("cells and matrices stay in sync, write counts grow") {
        CrossbarState st = map_weights(wm, p3v(), Scheme::DifferentialPair,
                                       MappingStyle::Balanced);
        const PulseProgram prog =
            delta_w_to_pulses(dw, st, eta_prime, PulseMode::Exact);
        const ApplyStats stats =
            apply_pulse_program(st, prog, Rounding::Nearest, 3);
        CHECK(stats.cells_written > 0);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                CHECK(st.cell(i, j, true).conductance == st.g_pos(i, j));
                CHECK(st.cell(i, j, false).conductance == st.g_neg(i, j));
            }
    }
}
