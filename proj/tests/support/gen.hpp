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


// Hand-rolled generators for property tests. Independent of qmsi/random so a
// bug in the library sampler cannot hide a bug in the code under test.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qmsi/hermitian.hpp"
#include "qmsi/semigroup.hpp"
#include "qmsi/state_space.hpp"

namespace qmsi::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }
  double normal() {
    // Box-Muller; 1 - unit() keeps the log argument in (0, 1].
    const double u = 1.0 - unit();
    const double v = unit();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
  }

  Matrix complex_matrix(std::size_t n, double scale = 1.0) {
    const auto k = static_cast<Eigen::Index>(n);
    Matrix m(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) m(i, j) = scale * Complex(normal(), normal());
    }
    return m;
  }

  HermitianMatrix hermitian(std::size_t n, double scale = 1.0) {
    const Matrix m = complex_matrix(n, scale);
    return HermitianMatrix::hermitian_part(m);
  }

  RealVector law(std::size_t n, double floor = 0.05) {
    RealVector p(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = floor + unit();
    return p / p.sum();
  }

  Matrix unitary(std::size_t n) {
    Eigen::HouseholderQR<Matrix> qr(complex_matrix(n));
    return qr.householderQ();
  }

  // U diag(p) U* with p drawn from law(n, floor).
  HermitianMatrix density(std::size_t n, double floor = 0.05) {
    const Matrix u = unitary(n);
    const RealVector p = law(n, floor);
    return HermitianMatrix::hermitian_part(u * p.cast<Complex>().asDiagonal() * u.adjoint());
  }

  // f = U diag(e^{s x}) U* with x standard normal, so f > 0.
  HermitianMatrix positive(std::size_t n, double spread = 1.0) {
    const Matrix u = unitary(n);
    RealVector d(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = std::exp(spread * normal());
    return HermitianMatrix::hermitian_part(u * d.cast<Complex>().asDiagonal() * u.adjoint());
  }

  RealVector positive_vector(std::size_t n, double spread = 1.0) {
    RealVector d(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = std::exp(spread * normal());
    return d;
  }

  // Reversible rates for law pi: Q_ij = s_ij / pi_i with s symmetric.
  RealMatrix reversible_rates(const RealVector& pi) {
    const auto n = pi.size();
    RealMatrix q = RealMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double s = uniform(0.05, 1.0);
        q(i, j) = s / pi(i);
        q(j, i) = s / pi(j);
      }
    }
    for (Eigen::Index i = 0; i < n; ++i) q(i, i) = -(q.row(i).sum() - q(i, i));
    return q;
  }

  // Hermitian jumps and no Hamiltonian: symmetric for the trace state.
  Generator trace_symmetric(std::size_t n) {
    std::vector<Matrix> jumps;
    const std::size_t k = 1 + index(n + 1);
    for (std::size_t j = 0; j < k; ++j) jumps.push_back(hermitian(n, 0.5).matrix());
    return build_lindblad(HermitianMatrix::zero(n), jumps);
  }

  // Hamiltonian part plus a unitary jump: unital, trace preserving, not symmetric.
  Generator trace_nonsymmetric(std::size_t n) {
    std::vector<Matrix> jumps;
    jumps.push_back(hermitian(n, 0.5).matrix());
    jumps.push_back(uniform(0.3, 1.0) * unitary(n));
    return build_lindblad(hermitian(n), jumps);
  }

  // Detailed-balance jumps sqrt(g_ij) |i><j| in the eigenbasis of rho,
  // g_ij rho_j = g_ji rho_i.
  std::pair<Generator, WeightedSpace> kms_symmetric(std::size_t n) {
    const Matrix u = unitary(n);
    const RealVector p = law(n, 0.2);
    const HermitianMatrix rho = HermitianMatrix::hermitian_part(u * p.cast<Complex>().asDiagonal() * u.adjoint());
    const auto k = static_cast<Eigen::Index>(n);
    std::vector<Matrix> jumps;
    RealMatrix base(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = i; j < k; ++j) base(i, j) = base(j, i) = uniform(0.2, 2.0);
    }
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        if (i == j) continue;
        Matrix e = Matrix::Zero(k, k);
        e(i, j) = 1.0;
        jumps.push_back(std::sqrt(base(i, j) * p(i)) * u * e * u.adjoint());
      }
    }
    return {build_lindblad(HermitianMatrix::zero(n), jumps), WeightedSpace(rho)};
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace qmsi::testing
