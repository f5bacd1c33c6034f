// Copyright 2026 The qmsi Authors.
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

namespace qmsi {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: wrong dimensions, non-Hermitian data, non-positive
/// arguments, broken stochastic constraints.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The argument sits where a ratio degenerates (e.g. f close to a multiple of
/// the identity).
class DegenerateInput : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The Dirichlet form vanishes on a direction of positive variance, so no
/// tight inequality with a finite constant exists.
class NoTightInequality : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown: non-ergodic kernels, missing faithful state,
/// non-convergent eigensolves.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmsi
