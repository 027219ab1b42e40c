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

#include "mrsnn/encoding.hpp"
#include "mrsnn/errors.hpp"
#include "mrsnn/neuron.hpp"
#include "mrsnn/rng.hpp"

using namespace mrsnn;

TEST_CASE("membrane decay without input") {
    LIFParams p;
    p.mem_decay = 0.9;
    p.syn_decay = 0.0;
    p.u_rest = 0.0;
    p.v_th = 10.0;
    LIFLayerState st = make_layer(1, p);
    st.u[0] = 1.0;
    for (int k = 1; k <= 20; ++k) {
        st = lif_step(std::move(st), p, Eigen::VectorXd::Zero(1));
        CHECK(st.u[0] == doctest::Approx(std::pow(0.9, k)).epsilon(1e-12));
        CHECK(st.s[0] == 0.0);
    }
}

TEST_CASE("spike emission and reset") {
    LIFParams p;
    p.mem_decay = 0.5;
    p.syn_decay = 0.0;
    p.v_th = 1.0;
    p.u_rest = 0.2;
    LIFLayerState st = make_layer(1, p);
    st = lif_step(std::move(st), p, Eigen::VectorXd::Constant(1, 2.0));
    CHECK(st.s[0] == 1.0);
    CHECK(st.u[0] == p.u_rest);
    CHECK(st.u_pre[0] > p.v_th);
}

TEST_CASE("subthreshold fixed point never spikes") {
    LIFParams p;
    p.mem_decay = 0.8;
    p.syn_decay = 0.0;
    p.v_th = 1.0;
    p.u_rest = 0.0;
    // u* = I / (1 - mem_decay) = 0.9 < v_th.
    const Eigen::VectorXd input = Eigen::VectorXd::Constant(1, 0.18);
    LIFLayerState st = make_layer(1, p);
    for (int k = 0; k < 500; ++k) {
        st = lif_step(std::move(st), p, input);
        CHECK(st.s[0] == 0.0);
    }
    CHECK(st.u[0] == doctest::Approx(0.9).epsilon(1e-9));
}

TEST_CASE("u_rest is the no-input fixed point") {
    LIFParams p;
    p.mem_decay = 0.9;
    p.syn_decay = 0.0;
    p.v_th = 1.0;
    p.u_rest = -0.3;
    LIFLayerState st = make_layer(1, p);
    for (int k = 0; k < 200; ++k)
        st = lif_step(std::move(st), p, Eigen::VectorXd::Zero(1));
    CHECK(st.u[0] == doctest::Approx(-0.3).epsilon(1e-12));
}

TEST_CASE("perceptron reduction") {
    Eigen::MatrixXd w(2, 3);
    w << 1.5, 0.0, -0.2, 0.1, 0.3, 0.4;
    Eigen::VectorXd s_in(3);
    s_in << 1.0, 0.0, 1.0;
    const double v_th = 1.0;

    const Eigen::VectorXd out = perceptron_forward(w, s_in, v_th);
    CHECK(out[0] == 1.0);  // 1.3 >= 1
    CHECK(out[1] == 0.0);  // 0.5 < 1

    LIFParams p;
    p.mem_decay = 0.0;
    p.syn_decay = 0.0;
    p.v_th = v_th;
    p.u_rest = 0.0;
    LIFLayerState st = make_layer(2, p);
    st = lif_step(std::move(st), p, w * s_in);
    CHECK(st.s == out);

    CHECK(perceptron_forward(w, Eigen::VectorXd::Zero(3), v_th).sum() == 0.0);
}

TEST_CASE("stochastic neuron") {
    LIFParams p;
    p.mem_decay = 0.9;
    p.syn_decay = 0.0;
    p.v_th = 1.0;
    p.u_rest = 0.0;

    SUBCASE("rho == 0 and rho == 1 extremes") {
        LIFLayerState st = make_layer(4, p);
        st = stochastic_spike_step(std::move(st), p,
                                   Eigen::VectorXd::Constant(4, 0.05),
                                   [](double) { return 0.0; }, 1);
        CHECK(st.s.sum() == 0.0);
        st = stochastic_spike_step(std::move(st), p,
                                   Eigen::VectorXd::Constant(4, 0.05),
                                   [](double) { return 1.0; }, 2);
        CHECK(st.s.sum() == 4.0);
        CHECK(st.u[0] == p.u_rest);
    }
    SUBCASE("constant intensity matches the binomial rate") {
        LIFLayerState st = make_layer(1, p);
        const int n = 100000;
        int spikes = 0;
        for (int k = 0; k < n; ++k) {
            st = stochastic_spike_step(std::move(st), p,
                                       Eigen::VectorXd::Zero(1),
                                       [](double) { return 0.3; },
                                       derive_seed(9, k));
            spikes += st.s[0] == 1.0;
        }
        const double sigma = std::sqrt(0.3 * 0.7 / n);
        CHECK(std::abs(spikes / static_cast<double>(n) - 0.3) < 3.0 * sigma);
    }
    SUBCASE("hard-threshold intensity reproduces lif_step bit-exactly") {
        auto rng = make_rng(77);
        std::uniform_real_distribution<double> uni(-0.5, 1.5);
        LIFLayerState a = make_layer(5, p);
        LIFLayerState b = make_layer(5, p);
        const double v_th = p.v_th;
        for (int k = 0; k < 200; ++k) {
            Eigen::VectorXd input(5);
            for (int i = 0; i < 5; ++i) input[i] = uni(rng);
            a = lif_step(std::move(a), p, input);
            b = stochastic_spike_step(
                std::move(b), p, input,
                [v_th](double u) { return u >= v_th ? 1.0 : 0.0; },
                derive_seed(13, k));
            CHECK(a.u == b.u);
            CHECK(a.s == b.s);
            CHECK(a.i_syn == b.i_syn);
        }
    }
}

TEST_CASE("surrogate slope") {
    CHECK(surrogate_slope(1.0, SurrogateKind::Boxcar, 2.0, 1.0) == 1.0);
    CHECK(surrogate_slope(2.0, SurrogateKind::Boxcar, 2.0, 1.0) == 1.0);
    CHECK(surrogate_slope(2.01, SurrogateKind::Boxcar, 2.0, 1.0) == 0.0);
    CHECK(surrogate_slope(-5.0, SurrogateKind::Boxcar, 2.0, 1.0) == 0.0);

    SUBCASE("sigmoid derivative integrates to one") {
        const double width = 0.7, center = 1.0;
        double integral = 0.0;
        const double du = 1e-3;
        for (double u = -40.0; u <= 42.0; u += du)
            integral +=
                surrogate_slope(u, SurrogateKind::SigmoidDerivative, width,
                                center) *
                du;
        CHECK(integral == doctest::Approx(1.0).epsilon(1e-3));
    }
    SUBCASE("matches a finite difference of the smooth activation") {
        const double width = 0.5, center = 0.3, h = 1e-6;
        for (double u : {-1.0, 0.0, 0.3, 1.2}) {
            const double fd = (surrogate_activation(u + h, width, center) -
                               surrogate_activation(u - h, width, center)) /
                              (2.0 * h);
            CHECK(surrogate_slope(u, SurrogateKind::SigmoidDerivative, width,
                                  center) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("activity trace") {
    TraceState tr = make_trace(1, 0.8);

    SUBCASE("single spike decays geometrically") {
        Eigen::VectorXd one = Eigen::VectorXd::Ones(1);
        tr = update_trace(std::move(tr), one);
        for (int k = 1; k <= 10; ++k) {
            CHECK(tr.value[0] ==
                  doctest::Approx(std::pow(0.8, k - 1)).epsilon(1e-12));
            tr = update_trace(std::move(tr), Eigen::VectorXd::Zero(1));
        }
    }
    SUBCASE("silence stays at zero") {
        for (int k = 0; k < 10; ++k)
            tr = update_trace(std::move(tr), Eigen::VectorXd::Zero(1));
        CHECK(tr.value[0] == 0.0);
    }
    SUBCASE("periodic spiking saturates at the geometric series") {
        const int period = 3;
        double peak = 0.0;
        for (int k = 0; k < 600; ++k) {
            Eigen::VectorXd s = Eigen::VectorXd::Zero(1);
            if (k % period == 0) s[0] = 1.0;
            tr = update_trace(std::move(tr), s);
            if (k % period == 0) peak = tr.value[0];
        }
        CHECK(peak ==
              doctest::Approx(1.0 / (1.0 - std::pow(0.8, period)))
                  .epsilon(1e-9));
        // Bound for binary inputs.
        CHECK(peak <= 1.0 / (1.0 - 0.8) + 1e-12);
    }
}

TEST_CASE("blank-out synapse") {
    Eigen::VectorXd spikes = Eigen::VectorXd::Ones(8);
    CHECK(blankout_transmit(spikes, 1.0, 3) == spikes);
    CHECK(blankout_transmit(spikes, 0.0, 3).sum() == 0.0);

    SUBCASE("pass fraction concentrates at p") {
        int passed = 0;
        const int n = 100000;
        Eigen::VectorXd one = Eigen::VectorXd::Ones(1);
        for (int k = 0; k < n; ++k)
            passed += blankout_transmit(one, 0.5, derive_seed(21, k))[0] == 1.0;
        const double sigma = std::sqrt(0.25 / n);
        CHECK(std::abs(passed / static_cast<double>(n) - 0.5) < 3.0 * sigma);
    }
    SUBCASE("zeros never turn into spikes") {
        Eigen::VectorXd mixed(4);
        mixed << 1.0, 0.0, 1.0, 0.0;
        const Eigen::VectorXd out = blankout_transmit(mixed, 0.7, 5);
        CHECK(out[1] == 0.0);
        CHECK(out[3] == 0.0);
    }
}

TEST_CASE("spike encoding") {
    Eigen::VectorXd values(3);
    values << 0.0, 0.5, 1.0;

    SUBCASE("zero intensity stays silent, full regular rate fires always") {
        const Eigen::MatrixXd reg =
            encode_spikes(values, 10, EncodingScheme::RegularRate, 1);
        CHECK(reg.col(0).sum() == 0.0);
        CHECK(reg.col(1).sum() == 5.0);
        CHECK(reg.col(2).sum() == 10.0);
    }
    SUBCASE("poisson count concentrates") {
        Eigen::VectorXd half(1);
        half << 0.5;
        const int steps = 10000;
        const Eigen::MatrixXd train =
            encode_spikes(half, steps, EncodingScheme::PoissonRate, 11);
        const double sigma = std::sqrt(0.25 * steps);
        CHECK(std::abs(train.sum() - 0.5 * steps) < 3.0 * sigma);
    }
    CHECK_THROWS_AS(
        (void)encode_spikes(Eigen::VectorXd::Constant(1, 1.5), 10,
                            EncodingScheme::PoissonRate, 1),
        ConfigError);
}
