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

#include "qmsi/random.hpp"

#include <cmath>

namespace qmsi {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Box-Muller and a 53-bit uniform keep the streams identical across standard
// library implementations, unlike std::normal_distribution.
double uniform(Rng& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double gaussian(Rng& rng) {
  double u1 = 0.0;
  while (u1 == 0.0) u1 = uniform(rng, 0.0, 1.0);
  const double u2 = uniform(rng, 0.0, 1.0);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

HermitianMatrix random_hermitian(Rng& rng, std::size_t n, double scale) {
  const auto k = static_cast<Eigen::Index>(n);
  Matrix a(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) a(i, j) = Complex(gaussian(rng), gaussian(rng));
  }
  return HermitianMatrix::hermitian_part(scale * a);
}

HermitianMatrix random_diagonal(Rng& rng, std::size_t n, double scale) {
  RealVector d(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = scale * gaussian(rng);
  return HermitianMatrix::diagonal(d);
}

HermitianMatrix random_positive(Rng& rng, std::size_t n, double scale, bool diagonal) {
  return mat_exp(diagonal ? random_diagonal(rng, n, scale) : random_hermitian(rng, n, scale));
}

Matrix random_unitary(Rng& rng, std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  Matrix a(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) a(i, j) = Complex(gaussian(rng), gaussian(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < k; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

RealVector random_law(Rng& rng, std::size_t n, double floor) {
  RealVector p(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = -std::log(uniform(rng, 1e-300, 1.0));
  p /= p.sum();
  const double nn = static_cast<double>(n);
  p = (1.0 - floor) * p.array() + floor / nn;
  return p / p.sum();
}

HermitianMatrix random_density(Rng& rng, std::size_t n, double floor) {
  const RealVector p = random_law(rng, n, floor);
  const Matrix u = random_unitary(rng, n);
  Matrix rho = u * p.cast<Complex>().asDiagonal() * u.adjoint();
  rho /= rho.trace().real();
  return HermitianMatrix::hermitian_part(rho);
}

}  // namespace qmsi
