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

namespace mrsnn {

enum class EncodingScheme { PoissonRate, RegularRate };

/// Turn intensities in [0, 1] into a (steps x n) binary spike train.
/// PoissonRate draws Bernoulli(value * rate_scale) independently per step;
/// RegularRate emits round(value * steps) evenly spaced spikes.
Eigen::MatrixXd encode_spikes(const Eigen::VectorXd& values, int steps,
                              EncodingScheme scheme, std::uint64_t rng_seed,
                              double rate_scale = 1.0);

}  // namespace mrsnn
