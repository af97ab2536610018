// Copyright 2026 The mgloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MGLOC_ERRORS_HPP
#define MGLOC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mgloc {

/// Index outside the valid range of a matrix or mode set.
struct BoundsError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Operand shapes are incompatible (non-square, mismatched dimensions).
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A numerical precondition on the input was violated (e.g. a generator that is not antisymmetric).
struct ContractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Invalid argument value (site out of range, empty sample list, non-unit axis, ...).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Iterative routine failed to converge, or a result lost its structural invariant.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense reference computation requested beyond its size cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Light-cone post-processing could not produce a result (e.g. too few points to fit).
struct AnalysisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Experiment configuration is malformed or inconsistent.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mgloc

#endif  // MGLOC_ERRORS_HPP
