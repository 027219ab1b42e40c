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

// Timing harness for the OpenMP kernels against their serial twins. Each
// kernel pair must produce identical results; the table reports both times
// and the max deviation (expected exactly 0).

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mrsnn/crossbar.hpp"
#include "mrsnn/device.hpp"
#include "mrsnn/plasticity.hpp"
#include "mrsnn/rng.hpp"

using namespace mrsnn;

namespace {

template <typename Fn>
double time_once(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

void row(const char* name, double serial_s, double parallel_s, double diff) {
    std::printf("%-34s %9.3f ms %9.3f ms  x%.2f  max|diff| %g\n", name,
                serial_s * 1e3, parallel_s * 1e3,
                parallel_s > 0.0 ? serial_s / parallel_s : 0.0, diff);
}

Eigen::MatrixXd random_pattern(int n, Rng& rng) {
    std::uniform_int_distribution<int> coin(0, 1);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = coin(rng) ? 1e6 : 1e3;
    return g;
}

void bench_effective_map(int n) {
    auto rng = make_rng(1);
    const CrossbarState st = make_single_array(random_pattern(n, rng));
    CrossbarGeometry geom;
    geom.rows = geom.cols = n;
    geom.r_wire = 0.1;

    Eigen::MatrixXd serial, parallel;
    const double ts = time_once(
        [&] { serial = effective_weights(st, geom, ExecPolicy::Serial); });
    const double tp = time_once(
        [&] { parallel = effective_weights(st, geom, ExecPolicy::Parallel); });
    char name[64];
    std::snprintf(name, sizeof(name), "effective map %dx%d one-hot batch", n, n);
    row(name, ts, tp, (serial - parallel).cwiseAbs().maxCoeff());
}

void bench_partitioned_read(int n, int part) {
    auto rng = make_rng(2);
    const CrossbarState st = make_single_array(random_pattern(n, rng));
    CrossbarGeometry geom;
    geom.rows = geom.cols = n;
    geom.r_wire = 0.1;
    geom.partition_rows = geom.partition_cols = part;
    const Eigen::VectorXd v = Eigen::VectorXd::Random(n);

    Eigen::VectorXd serial, parallel;
    const double ts = time_once(
        [&] { serial = read_partitioned(st, geom, v, ExecPolicy::Serial); });
    const double tp = time_once(
        [&] { parallel = read_partitioned(st, geom, v, ExecPolicy::Parallel); });
    char name[64];
    std::snprintf(name, sizeof(name), "partitioned read %dx%d / %dx%d", n, n,
                  part, part);
    row(name, ts, tp, (serial - parallel).cwiseAbs().maxCoeff());
}

void bench_pulse_pipeline(int n) {
    const DeviceParams params = device_preset("mo-tiox-tin-3v");
    WeightMatrix wm;
    wm.w = Eigen::MatrixXd::Zero(n, n);
    wm.w_max = 3.0;
    const CrossbarState base =
        map_weights(wm, params, Scheme::DifferentialPair,
                    MappingStyle::Balanced);
    auto rng = make_rng(3);
    std::uniform_real_distribution<double> uni(-0.5, 0.5);
    Eigen::MatrixXd dw(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dw(i, j) = uni(rng);
    const double eta_prime = params.delta_g() / wm.w_max;

    PulseProgram prog_s, prog_p;
    const double ts = time_once([&] {
        prog_s = delta_w_to_pulses(dw, base, eta_prime, PulseMode::Exact,
                                   ExecPolicy::Serial);
    });
    const double tp = time_once([&] {
        prog_p = delta_w_to_pulses(dw, base, eta_prime, PulseMode::Exact,
                                   ExecPolicy::Parallel);
    });
    char name[64];
    std::snprintf(name, sizeof(name), "delta_w -> pulses %dx%d", n, n);
    row(name, ts, tp,
        (prog_s.pulses_pos - prog_p.pulses_pos).cwiseAbs().maxCoeff());

    CrossbarState st_s = base, st_p = base;
    const double as = time_once([&] {
        apply_pulse_program(st_s, prog_s, Rounding::Stochastic, 9, 0.0,
                            ExecPolicy::Serial);
    });
    const double ap = time_once([&] {
        apply_pulse_program(st_p, prog_p, Rounding::Stochastic, 9, 0.0,
                            ExecPolicy::Parallel);
    });
    std::snprintf(name, sizeof(name), "apply pulse program %dx%d", n, n);
    row(name, as, ap, (st_s.g_pos - st_p.g_pos).cwiseAbs().maxCoeff());
}

void bench_device_sampling(int count) {
    const DeviceParams nominal = device_preset("mo-tiox-tin-3v");
    const VariationSpec spec{0.25, 0.01, 0.05, false, 0.0};
    std::vector<double> out_s(static_cast<std::size_t>(count));
    std::vector<double> out_p(static_cast<std::size_t>(count));
    auto kernel = [&](std::vector<double>& out, ExecPolicy policy) {
        parallel_for(count, policy, [&](std::int64_t k) {
            out[static_cast<std::size_t>(k)] =
                sample_params(nominal, spec, derive_seed(7, k)).alpha_p;
        });
    };
    const double ts = time_once([&] { kernel(out_s, ExecPolicy::Serial); });
    const double tp = time_once([&] { kernel(out_p, ExecPolicy::Parallel); });
    double diff = 0.0;
    for (int k = 0; k < count; ++k)
        diff = std::max(diff, std::abs(out_s[static_cast<std::size_t>(k)] -
                                       out_p[static_cast<std::size_t>(k)]));
    char name[64];
    std::snprintf(name, sizeof(name), "device sampling x%d", count);
    row(name, ts, tp, diff);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP\n");
#endif
    std::printf("%-34s %12s %12s\n", "kernel", "serial", "parallel");
    bench_effective_map(96);
    bench_partitioned_read(128, 32);
    bench_pulse_pipeline(192);
    bench_device_sampling(20000);
    return 0;
}
