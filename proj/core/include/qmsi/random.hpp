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

// Seeded samplers for observables, states and unitaries.

#pragma once

#include <cstdint>
#include <random>

#include "qmsi/hermitian.hpp"

namespace qmsi {

using Rng = std::mt19937_64;

/// splitmix64 step; derives independent child seeds from (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

double uniform(Rng& rng, double lo, double hi);
double gaussian(Rng& rng);

/// Hermitian matrix with i.i.d. Gaussian entries (GUE-like), scaled.
HermitianMatrix random_hermitian(Rng& rng, std::size_t n, double scale = 1.0);
/// Real diagonal matrix with Gaussian entries.
HermitianMatrix random_diagonal(Rng& rng, std::size_t n, double scale = 1.0);
/// exp(h) for a random Hermitian (or diagonal) h.
HermitianMatrix random_positive(Rng& rng, std::size_t n, double scale = 1.0, bool diagonal = false);
/// Haar-ish unitary from the QR of a complex Gaussian matrix.
Matrix random_unitary(Rng& rng, std::size_t n);
/// Faithful density with eigenvalues bounded below by floor / n.
HermitianMatrix random_density(Rng& rng, std::size_t n, double floor = 0.05);
/// Probability vector with entries bounded below by floor / n.
RealVector random_law(Rng& rng, std::size_t n, double floor = 0.05);

}  // namespace qmsi
