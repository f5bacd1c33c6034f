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

#include <string>

#include "qmsi_app/problem_spec.hpp"

namespace qmsi::app {

/// Serializes with 2-space indentation, keys in insertion order and floats
/// at 17 significant digits. Non-finite floats become null.
std::string dump(const Json& value);

/// "{:.17g}", or "null" when x is not finite.
std::string format_double(double x);

}  // namespace qmsi::app
