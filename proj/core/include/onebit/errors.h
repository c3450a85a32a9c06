// Copyright 2026 The onebit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ONEBIT_ERRORS_H_
#define ONEBIT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace onebit {

// Bad arguments: out-of-range parameters, wrong bit-word lengths, etc.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inconsistent or zero dimensions.
class DimensionError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// Operation not defined for the given constellation kind.
class UnsupportedError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// Problem too large for an enumeration routine.
class SizeError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// Singular systems, LP non-convergence.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid simulation configuration, detected before any slot runs.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace onebit

#endif  // ONEBIT_ERRORS_H_
