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


#include <benchmark/benchmark.h>

#include "qmsi/decay_lab.hpp"
#include "qmsi/families.hpp"
#include "qmsi/inequalities.hpp"
#include "qmsi/random.hpp"

namespace {

using namespace qmsi;

SampledGenerator kms_instance(std::size_t n) {
  Rng rng(derive_seed(17, n));
  return sample_generator(rng, Family::kms_general, n);
}

void BM_Spectral(benchmark::State& state) {
  Rng rng(1);
  const HermitianMatrix a = random_hermitian(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectral(a));
}
BENCHMARK(BM_Spectral)->DenseRange(2, 8, 2);

void BM_KernelIntegral(benchmark::State& state) {
  double a = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_integral(a, 2.0));
    a = a < 9.0 ? a + 0.01 : 0.5;
  }
}
BENCHMARK(BM_KernelIntegral);

void BM_EntropyE(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const WeightedSpace w(random_density(rng, n));
  const HermitianMatrix f = random_positive(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(entropy_E(w, f));
}
BENCHMARK(BM_EntropyE)->DenseRange(2, 8, 2);

void BM_KmsSpectrum(benchmark::State& state) {
  const SampledGenerator s = kms_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(KmsSpectrum(s.generator, s.space).gap());
}
BENCHMARK(BM_KmsSpectrum)->DenseRange(2, 6, 1);

void BM_EvolvePade(benchmark::State& state) {
  const SampledGenerator s = kms_instance(static_cast<std::size_t>(state.range(0)));
  Rng rng(3);
  const HermitianMatrix f = random_hermitian(rng, s.generator.dim());
  for (auto _ : state) benchmark::DoNotOptimize(evolve(s.generator, f, 0.7));
}
BENCHMARK(BM_EvolvePade)->DenseRange(2, 6, 1);

void BM_EvolveSpectral(benchmark::State& state) {
  const SampledGenerator s = kms_instance(static_cast<std::size_t>(state.range(0)));
  const KmsSpectrum spectrum(s.generator, s.space);
  Rng rng(3);
  const HermitianMatrix f = random_hermitian(rng, s.generator.dim());
  for (auto _ : state) benchmark::DoNotOptimize(spectrum.evolve(f, 0.7));
}
BENCHMARK(BM_EvolveSpectral)->DenseRange(2, 6, 1);

void BM_ExpandH(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  const WeightedSpace w(random_density(rng, n));
  HermitianMatrix f = random_hermitian(rng, n);
  f = f - expectation(w, f) * HermitianMatrix::identity(n);
  for (auto _ : state) benchmark::DoNotOptimize(expand_H(w, f));
}
BENCHMARK(BM_ExpandH)->DenseRange(2, 5, 1);

void BM_EstimateMlsi(benchmark::State& state) {
  const SampledGenerator s = kms_instance(static_cast<std::size_t>(state.range(0)));
  const OptimizerConfig config{1, 4, 100, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_mlsi(s.space, s.generator, config).estimate);
}
BENCHMARK(BM_EstimateMlsi)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

void BM_EntropyTrajectory(benchmark::State& state) {
  const SampledGenerator s = kms_instance(3);
  const KmsSpectrum spectrum(s.generator, s.space);
  Rng rng(5);
  const HermitianMatrix f = sample_positive(rng, s.generator);
  const auto times = default_time_grid(spectrum.gap());
  for (auto _ : state) benchmark::DoNotOptimize(entropy_trajectory(s.space, s.generator, spectrum, f, times));
}
BENCHMARK(BM_EntropyTrajectory)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
