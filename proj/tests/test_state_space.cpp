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


#include <thread>

#include <gtest/gtest.h>

#include "qmsi/error.hpp"
#include "qmsi/state_space.hpp"
#include "support/gen.hpp"
#include "support/oracle.hpp"

namespace qmsi {
namespace {

RealVector vec(std::initializer_list<double> d) {
  RealVector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return v;
}

double rel(double x, double ref) { return std::abs(x - ref) / std::max(1e-300, std::abs(ref)); }

TEST(WeightedSpace, RejectsNonFaithfulOrUnnormalized) {
  EXPECT_THROW(WeightedSpace::diagonal(vec({1.0, 0.0})), DomainError);
  EXPECT_THROW(WeightedSpace::diagonal(vec({0.5, 0.6})), DomainError);
  EXPECT_THROW(WeightedSpace(HermitianMatrix::identity(2)), DomainError);
}

TEST(WeightedSpace, PowerCacheIsConsistentAcrossThreads) {
  testing::Gen gen(20);
  const WeightedSpace w(gen.density(4));
  std::vector<std::thread> pool;
  std::vector<double> errors(4, 0.0);
  for (int k = 0; k < 4; ++k) {
    pool.emplace_back([&, k] {
      for (int i = 0; i < 50; ++i) {
        const double a = 0.1 * (i % 7) - 0.3;
        const Matrix& p = w.power(a);
        errors[static_cast<std::size_t>(k)] =
            std::max(errors[static_cast<std::size_t>(k)], (p - mat_pow(w.rho(), a).matrix()).norm());
      }
    });
  }
  for (auto& t : pool) t.join();
  for (double e : errors) EXPECT_LE(e, 1e-12);
}

TEST(NormP, IdentityHasUnitNorm) {
  testing::Gen gen(21);
  const WeightedSpace w(gen.density(3));
  for (double p : {1.0, 1.5, 2.0, 7.0}) EXPECT_NEAR(norm_p(w, HermitianMatrix::identity(3), p), 1.0, 1e-12);
}

TEST(NormP, MonotoneInPProperty) {
  testing::Gen gen(22);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen.index(5);
    const WeightedSpace w(gen.density(n));
    const HermitianMatrix f = gen.positive(n);
    const double p = gen.uniform(1.0, 5.0);
    const double p2 = p + gen.uniform(0.0, 5.0);
    EXPECT_LE(norm_p(w, f, p), norm_p(w, f, p2) * (1 + 1e-12));
  }
}

TEST(EmbedIpq, CommutingCaseIsPower) {
  const WeightedSpace w = WeightedSpace::diagonal(vec({0.2, 0.3, 0.5}));
  const RealVector f = vec({0.5, 2.0, 3.0});
  const HermitianMatrix out = embed_Ipq(w, 3.0, 1.5, HermitianMatrix::diagonal(f));
  for (Eigen::Index i = 0; i < 3; ++i) EXPECT_NEAR(out(i, i).real(), std::pow(f(i), 0.5), 1e-14);
}

TEST(EmbedIpq, NormIdentityProperty) {
  testing::Gen gen(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen.index(5);
    const WeightedSpace w(gen.density(n));
    const HermitianMatrix f = gen.positive(n);
    const double p = gen.uniform(1.0, 6.0);
    const double q = gen.uniform(1.0, 6.0);
    const double lhs = std::pow(norm_p(w, embed_Ipq(w, p, q, f), p), p);
    const double rhs = std::pow(norm_p(w, f, q), q);
    EXPECT_LE(rel(lhs, rhs), 1e-10);
  }
}

TEST(OpEntropy, IdentityGivesZero) {
  testing::Gen gen(24);
  const WeightedSpace w(gen.density(3));
  EXPECT_LE(op_entropy_Tq(w, 2.5, HermitianMatrix::identity(3)).norm(), 1e-13);
}

TEST(OpEntropy, CommutingCaseIsFLogF) {
  const WeightedSpace w = WeightedSpace::diagonal(vec({0.1, 0.4, 0.5}));
  const RealVector f = vec({0.5, 2.0, 3.0});
  for (double q : {1.0, 1.7, 4.0}) {
    const Matrix t = op_entropy_Tq(w, q, HermitianMatrix::diagonal(f));
    for (Eigen::Index i = 0; i < 3; ++i) EXPECT_NEAR(t(i, i).real(), f(i) * std::log(f(i)), 1e-13);
  }
}

TEST(Entropy, VanishesOnMultiplesOfIdentity) {
  testing::Gen gen(25);
  const WeightedSpace w(gen.density(4));
  for (double lam : {1e-3, 1.0, 7.5}) {
    EXPECT_NEAR(entropy_E(w, lam * HermitianMatrix::identity(4)), 0.0, 1e-15 * std::max(1.0, lam));
    EXPECT_NEAR(functional_H(w, lam * HermitianMatrix::identity(4)), 0.0, 1e-13 * std::max(1.0, lam * lam));
    EXPECT_NEAR(variance(w, lam * HermitianMatrix::identity(4)), 0.0, 1e-13 * std::max(1.0, lam * lam));
  }
}

TEST(Entropy, RejectsNonPositive) {
  const WeightedSpace w = WeightedSpace::trace_state(2);
  RealVector d(2);
  d << 1.0, -0.5;
  EXPECT_THROW(entropy_E(w, HermitianMatrix::diagonal(d)), DomainError);
}

TEST(Entropy, PositiveAndBridgeProperty) {
  testing::Gen gen(26);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen.index(5);
    const WeightedSpace w(gen.density(n));
    const HermitianMatrix f = gen.positive(n, gen.uniform(0.01, 2.0));
    const double e = entropy_E(w, f);
    EXPECT_GE(e, -1e-10);
    const double h = functional_H(w, embed_I21(w, f));
    EXPECT_NEAR(e, 2.0 * h, 1e-9 * std::max(1.0, std::abs(e)));
  }
}

TEST(Entropy, NearIdentityIsSecondOrder) {
  // E(1 + eps g) = eps^2 Var(g)/2 + O(eps^3) in the trace state.
  testing::Gen gen(27);
  const WeightedSpace w = WeightedSpace::trace_state(3);
  const HermitianMatrix g = gen.hermitian(3);
  const double eps = 1e-5;
  const double e = entropy_E(w, HermitianMatrix::identity(3) + eps * g);
  EXPECT_NEAR(e / (eps * eps), 0.5 * variance(w, g), 1e-4);
}

TEST(CommutativeReduction, MatchesClassicalFormulasProperty) {
  testing::Gen gen(28);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + gen.index(5);
    const RealVector pi = gen.law(n);
    const RealVector f = gen.positive_vector(n);
    // The general constructor, so the diagonal shortcut is not what is tested.
    const WeightedSpace w(HermitianMatrix::diagonal(pi));
    const HermitianMatrix fm = HermitianMatrix::diagonal(f);
    const double p = gen.uniform(1.0, 6.0);
    EXPECT_LE(rel(norm_p(w, fm, p), oracle::classical_norm_p(pi, f, p)), 1e-10);
    EXPECT_LE(rel(entropy_E(w, fm), oracle::classical_entropy(pi, f)), 1e-10);
    EXPECT_LE(rel(functional_H(w, fm), oracle::classical_H(pi, f)), 1e-10);
    EXPECT_LE(rel(variance(w, fm), oracle::classical_variance(pi, f)), 1e-10);
  }
}

TEST(KmsInner, HermitianSymmetryAndPositivity) {
  testing::Gen gen(29);
  const WeightedSpace w(gen.density(3));
  const Matrix f = gen.complex_matrix(3);
  const Matrix g = gen.complex_matrix(3);
  EXPECT_LE(std::abs(kms_inner(w, f, g) - std::conj(kms_inner(w, g, f))), 1e-13);
  EXPECT_GT(kms_inner(w, f, f).real(), 0.0);
  EXPECT_NEAR(kms_inner(w, Matrix::Identity(3, 3), Matrix::Identity(3, 3)).real(), 1.0, 1e-13);
}

TEST(RelativeLog, DiagonalCase) {
  const RealVector pi = vec({0.25, 0.75});
  const RealVector f = vec({2.0, 0.5});
  const HermitianMatrix k = relative_log(WeightedSpace::diagonal(pi), HermitianMatrix::diagonal(f));
  for (Eigen::Index i = 0; i < 2; ++i) EXPECT_NEAR(k(i, i).real(), std::log(f(i)), 1e-14);
}

}  // namespace
}  // namespace qmsi
