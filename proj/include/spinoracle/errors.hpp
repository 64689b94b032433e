// Copyright 2026 The spinoracle Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace spinoracle {

/// Bad parameters: out-of-range n, d, variant mismatch, malformed flags.
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Request exceeds the dense-linear-algebra or enumeration budget.
class ResourceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A structural property that must hold (normalization, symmetry, unitarity) was violated.
class InvariantViolation : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Eigensolver or minimizer did not converge.
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// The requested problem-instance class is empty, e.g. unrestricted errors with N/16 <= d.
class DegenerateInstanceError : public ConfigError {
   public:
    using ConfigError::ConfigError;
};

// CLI exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitInvariant = 4;

}  // namespace spinoracle
