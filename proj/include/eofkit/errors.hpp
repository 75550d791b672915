// Copyright 2026 The eofkit Authors
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

namespace eofkit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or vector shapes do not fit the operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An operand that must be Hermitian is not, beyond tolerance.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// A result would exceed the configured maximum dimension.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument value (bad index, negative weight, out-of-range parameter).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Probability or state normalization violated beyond tolerance.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Structural premise of a state family violated (e.g. overlapping supports).
class ConstraintError : public Error {
 public:
  using Error::Error;
};

}  // namespace eofkit
