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

#include <cstdint>

namespace mrsnn {

/// Execution policy for the data-parallel kernels. Every parallel kernel has
/// a serial twin reachable through ExecPolicy::Serial; the two must produce
/// identical results (kernels only ever write disjoint output slots, and any
/// reduction is performed in fixed index order after the parallel section).
enum class ExecPolicy { Serial, Parallel };

/// Run func(i) for i in [0, n). Under ExecPolicy::Parallel the iterations are
/// distributed over OpenMP threads; iterations must be independent.
template <typename Func>
void parallel_for(std::int64_t n, ExecPolicy policy, Func&& func) {
    if (policy == ExecPolicy::Serial) {
        for (std::int64_t i = 0; i < n; ++i) {
            func(i);
        }
        return;
    }
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        func(i);
    }
}

}  // namespace mrsnn
