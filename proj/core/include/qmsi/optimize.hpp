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


// Derivative-free local minimization.

#pragma once

#include <cstddef>
#include <functional>

#include "qmsi/hermitian.hpp"

namespace qmsi {

struct NelderMeadOptions {
  std::size_t iterations = 200;
  double initial_step = 0.5;
  double tolerance = 1e-12;  // stop when the simplex values spread below this
};

struct NelderMeadResult {
  RealVector x;
  double value;
  std::size_t evaluations;
};

/// Minimizes objective from x0; non-finite values are treated as +infinity.
NelderMeadResult nelder_mead(const std::function<double(const RealVector&)>& objective,
                             const RealVector& x0, const NelderMeadOptions& options = {});

}  // namespace qmsi
