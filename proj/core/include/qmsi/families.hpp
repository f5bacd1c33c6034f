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


// Random generator families used by the property checks and the search mode.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qmsi/random.hpp"
#include "qmsi/semigroup.hpp"

namespace qmsi {

enum class Family {
  trace_hermitian,     // rho = 1/N, Hermitian jumps, no Hamiltonian
  kms_general,         // eigenbasis jumps of a random rho with detailed-balance rates
  classical,           // reversible chain embedded on the diagonal
  trace_nonsymmetric,  // rho = 1/N, Hamiltonian plus Hermitian and unitary jumps
};

std::string family_name(Family f);
std::optional<Family> parse_family(const std::string& name);

struct SampledGenerator {
  Generator generator;
  WeightedSpace space;
  Family family;
};

/// Reversible rate matrix: Q_ij = S_ij / pi_i for a random symmetric S >= 0.
RealMatrix random_reversible_rates(Rng& rng, const RealVector& law, double scale = 1.0);

SampledGenerator sample_trace_hermitian(Rng& rng, std::size_t n);
SampledGenerator sample_classical(Rng& rng, std::size_t n);
SampledGenerator sample_trace_nonsymmetric(Rng& rng, std::size_t n);
/// Candidate detailed-balance generator; returns nullopt when the numeric KMS
/// check rejects it.
std::optional<SampledGenerator> sample_kms_general(Rng& rng, std::size_t n);

/// Draws from the family; kms_general retries until a candidate is accepted.
SampledGenerator sample_generator(Rng& rng, Family family, std::size_t n);

}  // namespace qmsi
