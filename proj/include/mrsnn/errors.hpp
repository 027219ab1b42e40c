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

#include <stdexcept>
#include <string>

namespace mrsnn {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent configuration / parameters.
struct ConfigError : Error {
    using Error::Error;
};

/// Requested conductance change exceeds the device headroom
/// (the log argument of the pulse-count inversion is <= 0).
struct HeadroomExceeded : Error {
    using Error::Error;
};

/// Linearized pulse count undefined: headroom is exactly zero.
struct DivisionDegenerate : Error {
    using Error::Error;
};

/// Parameter re-sampling failed to satisfy invariants after the retry limit.
struct ResampleLimit : Error {
    using Error::Error;
};

/// Write-verify target outside the device conductance range.
struct TargetOutOfRange : Error {
    using Error::Error;
};

/// Iterative procedure did not reach its tolerance within the budget.
struct NotConverged : Error {
    using Error::Error;
};

/// Vector/matrix shapes do not conform.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// Nodal system is singular (no conductive path to a source or ground).
struct SingularSystem : Error {
    using Error::Error;
};

/// Linear solver failed the residual contract.
struct SolverNotConverged : Error {
    using Error::Error;
};

/// Matrix has an all-zero row or column where a nonzero one is required.
struct DegenerateMatrix : Error {
    using Error::Error;
};

/// IDX file does not start with a recognized magic number.
struct BadMagic : Error {
    using Error::Error;
};

/// IDX file is shorter than its header promises.
struct TruncatedFile : Error {
    using Error::Error;
};

/// Image and label files disagree on the record count.
struct CountMismatch : Error {
    using Error::Error;
};

}  // namespace mrsnn
