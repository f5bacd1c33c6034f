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


#include "qmsi/families.hpp"

#include <cmath>

#include "qmsi/error.hpp"

namespace qmsi {

namespace {

std::size_t jump_count(Rng& rng, std::size_t n) {
  return 1 + static_cast<std::size_t>(uniform(rng, 0.0, static_cast<double>(n) + 1.0));
}

Matrix unit(std::size_t n, Eigen::Index i, Eigen::Index j) {
  const auto k = static_cast<Eigen::Index>(n);
  Matrix e = Matrix::Zero(k, k);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::trace_hermitian: return "trace_hermitian";
    case Family::kms_general: return "kms_general";
    case Family::classical: return "classical";
    case Family::trace_nonsymmetric: return "trace_nonsymmetric";
  }
  return "unknown";
}

std::optional<Family> parse_family(const std::string& name) {
  for (Family f : {Family::trace_hermitian, Family::kms_general, Family::classical,
                   Family::trace_nonsymmetric}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

RealMatrix random_reversible_rates(Rng& rng, const RealVector& law, double scale) {
  const auto n = law.size();
  RealMatrix q = RealMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double s = scale * uniform(rng, 0.05, 1.0);
      q(i, j) = s / law(i);
      q(j, i) = s / law(j);
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) q(i, i) = -(q.row(i).sum() - q(i, i));
  return q;
}

SampledGenerator sample_trace_hermitian(Rng& rng, std::size_t n) {
  std::vector<Matrix> jumps;
  const std::size_t k = jump_count(rng, n);
  for (std::size_t j = 0; j < k; ++j) jumps.push_back(random_hermitian(rng, n, 0.5).matrix());
  return {build_lindblad(HermitianMatrix::zero(n), jumps), WeightedSpace::trace_state(n),
          Family::trace_hermitian};
}

SampledGenerator sample_classical(Rng& rng, std::size_t n) {
  const RealVector law = random_law(rng, n, 0.2);
  const RealMatrix rates = random_reversible_rates(rng, law);
  auto [g, w] = embed_classical(rates, law);
  return {std::move(g), std::move(w), Family::classical};
}

SampledGenerator sample_trace_nonsymmetric(Rng& rng, std::size_t n) {
  std::vector<Matrix> jumps;
  const std::size_t k = jump_count(rng, n);
  for (std::size_t j = 0; j < k; ++j) jumps.push_back(random_hermitian(rng, n, 0.5).matrix());
  // Unitary jumps keep the dual unital while breaking trace symmetry.
  const double amp = uniform(rng, 0.2, 1.0);
  jumps.push_back(amp * random_unitary(rng, n));
  return {build_lindblad(random_hermitian(rng, n, 1.0), jumps), WeightedSpace::trace_state(n),
          Family::trace_nonsymmetric};
}

std::optional<SampledGenerator> sample_kms_general(Rng& rng, std::size_t n) {
  WeightedSpace w(random_density(rng, n, 0.2));
  const auto& sd = w.spectrum();
  const Matrix& u = sd.eigenvectors;
  const auto k = static_cast<Eigen::Index>(n);
  std::vector<Matrix> jumps;
  // gamma_ij = s_ij rho_i with s symmetric makes gamma_ij rho_j = gamma_ji rho_i.
  RealMatrix base = RealMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) base(i, j) = base(j, i) = uniform(rng, 0.2, 2.0);
    base(i, i) = uniform(rng, 0.0, 0.5);
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const double gamma = base(i, j) * (i == j ? 1.0 : sd.eigenvalues(i));
      if (gamma <= 0.0) continue;
      jumps.push_back(std::sqrt(gamma) * u * unit(n, i, j) * u.adjoint());
    }
  }
  Generator g = build_lindblad(HermitianMatrix::zero(n), jumps);
  if (kms_asymmetry(g, w) > 1e-9) return std::nullopt;
  return SampledGenerator{std::move(g), std::move(w), Family::kms_general};
}

SampledGenerator sample_generator(Rng& rng, Family family, std::size_t n) {
  if (n < 1) throw DomainError("dimension must be positive");
  switch (family) {
    case Family::trace_hermitian: return sample_trace_hermitian(rng, n);
    case Family::classical: return sample_classical(rng, n);
    case Family::trace_nonsymmetric: return sample_trace_nonsymmetric(rng, n);
    case Family::kms_general:
      for (int attempt = 0; attempt < 64; ++attempt) {
        if (auto s = sample_kms_general(rng, n)) return std::move(*s);
      }
      throw NumericalError("no KMS-symmetric candidate accepted after 64 attempts");
  }
  throw DomainError("unknown family");
}

}  // namespace qmsi
