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


// Time-domain checks along t -> P_t f: entropy and variance trajectories,
// instantaneous entropy decay rates, the exponential entropy bound and the
// randomized search for positive MLSI estimates at zero gap.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmsi/families.hpp"
#include "qmsi/inequalities.hpp"
#include "qmsi/semigroup.hpp"
#include "qmsi/state_space.hpp"

namespace qmsi {

struct Trajectory {
  std::vector<double> times;
  std::vector<double> entropy;
  std::vector<double> variance;
  std::vector<double> analytic_rate;  // NaN where E(f_t) is degenerate
  std::vector<double> l1_norm;
};

/// t = 0 followed by `points` geometric points on [1e-3/gap, 5/gap]; gap <= 0
/// uses the unit interval scale.
std::vector<double> default_time_grid(double gap, std::size_t points = 50);

/// EP(f) / E(f), the instantaneous decay rate -E'(f_t)/E(f_t) at f. Throws
/// DegenerateInput when E(f) <= 1e-12 ||f||_1.
double entropy_rate(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f);

/// Requires a KMS-symmetric generator; f > 0; times ascending and >= 0.
Trajectory entropy_trajectory(const WeightedSpace& w, const Generator& g, const KmsSpectrum& spectrum,
                              const HermitianMatrix& f, const std::vector<double>& times);
Trajectory entropy_trajectory(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f,
                              const std::vector<double>& times);

/// Only the variance channel is filled.
Trajectory variance_trajectory(const WeightedSpace& w, const KmsSpectrum& spectrum,
                               const HermitianMatrix& f, const std::vector<double>& times);

struct VarianceVerdict {
  double gap = 0.0;
  double worst_ratio = 0.0;  // max Var(f_t) / (e^{-2 gap t} Var(f))
  bool pass = false;         // Var(f_t) <= e^{-2 gap t} Var(f) (1 + 1e-9)
};

VarianceVerdict check_variance_decay(const Trajectory& trajectory, double gap);

struct EntropyDecayVerdict {
  double alpha = 0.0;                 // min finite analytic rate
  double worst_increase = 0.0;        // max step increase of e^{alpha t} E(f_t), over E(f)
  bool monotone = false;
  double inflated_worst_increase = 0.0;
  bool sharpness_broken = false;      // 1.01 alpha breaks monotonicity
  std::size_t derivative_points = 0;
  double worst_derivative_error = 0.0;
  bool derivative_pass = false;
  bool consistent = false;            // alpha <= mlsi_ratio(f_t) + 1e-9 wherever defined
  bool pass = false;                  // monotone && derivative_pass && consistent
};

EntropyDecayVerdict verify_entropy_decay(const WeightedSpace& w, const Generator& g, const KmsSpectrum& spectrum,
                                const HermitianMatrix& f, const std::vector<double>& times);
EntropyDecayVerdict verify_entropy_decay(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f,
                                const std::vector<double>& times);

struct SearchConfig {
  std::uint64_t seed = 1;
  std::size_t dim = 2;
  Family family = Family::trace_hermitian;
  std::size_t budget = 8;  // generators sampled
  OptimizerConfig optimizer{1, 8, 100, 1.0};
};

struct SearchEntry {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  double gap = 0.0;
  double alpha_estimate = 0.0;  // NaN when every sample was degenerate
  bool flagged = false;
  std::string label;
};

struct SearchLog {
  SearchConfig config;
  std::vector<SearchEntry> entries;
  std::size_t flags = 0;
};

/// Samples symmetric generators and flags those with a positive MLSI upper
/// bound at zero gap. Flags are inconclusive: the estimate is an upper bound.
SearchLog search_counterexample(const SearchConfig& config);

}  // namespace qmsi
