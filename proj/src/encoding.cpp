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

#include "mrsnn/encoding.hpp"

#include <cmath>
#include <random>

#include "mrsnn/errors.hpp"
#include "mrsnn/rng.hpp"

namespace mrsnn {

Eigen::MatrixXd encode_spikes(const Eigen::VectorXd& values, int steps,
                              EncodingScheme scheme, std::uint64_t rng_seed,
                              double rate_scale) {
    if ((values.array() < 0.0).any() || (values.array() > 1.0).any())
        throw ConfigError("encode_spikes: values must lie in [0, 1]");
    if (steps < 1) throw ConfigError("encode_spikes: steps must be >= 1");

    Eigen::MatrixXd train = Eigen::MatrixXd::Zero(steps, values.size());
    if (scheme == EncodingScheme::PoissonRate) {
        auto rng = make_rng(rng_seed);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (int t = 0; t < steps; ++t)
            for (Eigen::Index i = 0; i < values.size(); ++i)
                if (uni(rng) < values[i] * rate_scale) train(t, i) = 1.0;
        return train;
    }
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        const int count =
            static_cast<int>(std::lround(values[i] * static_cast<double>(steps)));
        if (count <= 0) continue;
        // Even spacing: spike k sits at the center of its 1/count slice.
        for (int k = 0; k < count; ++k) {
            const int t = static_cast<int>(
                std::floor((k + 0.5) * static_cast<double>(steps) / count));
            train(std::min(t, steps - 1), i) = 1.0;
        }
    }
    return train;
}

}  // namespace mrsnn
