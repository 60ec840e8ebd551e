// Copyright 2026 The timeop Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace timeop {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes are incompatible, or a composite dimension exceeds its cap.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition (non-Hermitian matrix where a
/// Hermitian one is required, non-normalized probe vector, bad grid widths...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share a convention (such as the value of hbar) were
/// combined with conflicting ones.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// An energy level cannot be placed on the clock's s ladder within tolerance,
/// or falls outside the ladder range.
class CommensurationError : public Error {
 public:
  using Error::Error;
};

/// A quantity that must be strictly positive to normalize against (a trace,
/// a slice mass) vanished or was not finite.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// A configuration file or override could not be parsed, or named an unknown
/// key or scenario.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace timeop
