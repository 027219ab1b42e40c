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

#include <cstdio>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "mrsnn/errors.hpp"
#include "mrsnn/experiments.hpp"
#include "mrsnn/io.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

struct CliOverrides {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int num_seeds = 0;
    bool ideal = false;
    bool xl = false;
};

void add_common_options(CLI::App* sub, CliOverrides& ov) {
    sub->add_option("--config", ov.config_path, "experiment config (JSON)");
    sub->add_option("--seed", ov.seed, "master seed")->each([&ov](std::string) {
        ov.seed_set = true;
    });
    sub->add_option("--out", ov.out_dir, "output directory");
    sub->add_option("--seeds", ov.num_seeds, "number of sub-runs");
    sub->add_flag("--ideal", ov.ideal, "bypass device and wire models");
    sub->add_flag("--xl", ov.xl, "full-scale 512x512 sneak-path profile");
}

int run(const std::string& experiment, const CliOverrides& ov) {
    mrsnn::ExperimentConfig cfg;
    if (!ov.config_path.empty())
        cfg = mrsnn::load_json_file(ov.config_path)
                  .get<mrsnn::ExperimentConfig>();
    cfg.experiment = experiment;
    if (ov.seed_set) {
        cfg.seed = ov.seed;
        cfg.seed_given = true;
    }
    if (!ov.out_dir.empty()) cfg.out_dir = ov.out_dir;
    if (ov.num_seeds > 0) cfg.num_seeds = ov.num_seeds;
    if (ov.ideal) cfg.ideal = true;
    if (ov.xl) cfg.xl = true;
    cfg.validate();

    const auto records = mrsnn::run_experiment(cfg);

    // Final value of every metric, in first-seen order.
    std::vector<std::string> order;
    std::map<std::string, double> last;
    for (const auto& r : records) {
        if (!last.count(r.metric)) order.push_back(r.metric);
        last[r.metric] = r.value;
    }
    for (const auto& name : order)
        std::printf("%-28s %s\n", name.c_str(),
                    mrsnn::format_double(last[name]).c_str());
    if (!cfg.out_dir.empty())
        std::printf("artifacts written to %s\n", cfg.out_dir.c_str());
    return 0;
}

int list_presets() {
    for (const auto& [name, params] : mrsnn::device_presets())
        std::printf("%-18s g_max %7.2f nS  g_min %7.2f nS  alpha_p %.5f  "
                    "alpha_d %.5f  beta_p %7.2f nS  beta_d %7.2f nS  (%.1f V)\n",
                    name.c_str(), params.g_max, params.g_min, params.alpha_p,
                    params.alpha_d, params.beta_p, params.beta_d, params.v_p);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mrsnn - memristive spiking neural network simulator"};
    app.require_subcommand(1);

    CliOverrides ov;
    static const char* kExperiments[] = {"ica", "sneakpath", "erbp-class",
                                         "delay-report", "device-curves"};
    static const char* kDescriptions[] = {
        "online EGHR demixing of rotation-mixed Laplacian sources",
        "effective-weight profile of a random R_on/R_off array",
        "eRBP training on a synthetic spike-pattern task (or MNIST)",
        "Elmore estimate of the partitioned input delay",
        "LTP/LTD conductance curves with variation bands"};
    for (std::size_t k = 0; k < std::size(kExperiments); ++k)
        add_common_options(app.add_subcommand(kExperiments[k],
                                              kDescriptions[k]),
                           ov);

    CLI::App* presets = app.add_subcommand("presets", "device parameter sets");
    presets->add_subcommand("list", "print the named presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }

    try {
        if (presets->parsed()) return list_presets();
        for (const char* name : kExperiments)
            if (app.get_subcommand(name)->parsed()) return run(name, ov);
        return kExitConfigError;
    } catch (const mrsnn::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfigError;
    } catch (const mrsnn::Error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumericalError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumericalError;
    }
}
