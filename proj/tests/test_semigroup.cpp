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


#include <gtest/gtest.h>

#include "qmsi/error.hpp"
#include "qmsi/semigroup.hpp"
#include "support/gen.hpp"
#include "support/oracle.hpp"

namespace qmsi {
namespace {

Matrix unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

RealMatrix two_state(double a, double b) {
  RealMatrix q(2, 2);
  q << -a, a, b, -b;
  return q;
}

TEST(BuildLindblad, IdentityJumpGivesZeroGenerator) {
  const Generator g = build_lindblad(HermitianMatrix::zero(2), {Matrix::Identity(2, 2)});
  EXPECT_LE(g.superop().norm(), 1e-15);
}

TEST(BuildLindblad, MatrixUnitsAnnihilateIdentity) {
  const Generator g = build_lindblad(HermitianMatrix::zero(2), {unit(2, 0, 1), unit(2, 1, 0)});
  EXPECT_LE(g.apply(Matrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(BuildLindblad, MatchesDirectFormula) {
  testing::Gen gen(30);
  const HermitianMatrix h = gen.hermitian(3);
  const Matrix l = gen.complex_matrix(3);
  const Matrix f = gen.complex_matrix(3);
  const Generator g = build_lindblad(h, {l});
  const Complex i(0.0, 1.0);
  const Matrix k = l.adjoint() * l;
  const Matrix direct = i * (h.matrix() * f - f * h.matrix()) + l.adjoint() * f * l - 0.5 * (k * f + f * k);
  EXPECT_LE((g.apply(f) - direct).norm(), 1e-12 * direct.norm());
}

TEST(BuildLindblad, IdentityPreservedProperty) {
  testing::Gen gen(31);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + gen.index(4);
    std::vector<Matrix> jumps{gen.complex_matrix(n), gen.complex_matrix(n)};
    const Generator g = build_lindblad(gen.hermitian(n), jumps);
    const auto k = static_cast<Eigen::Index>(n);
    EXPECT_LE(g.apply(Matrix::Identity(k, k)).norm(), 1e-10 * std::max(1.0, g.scale()));
  }
}

TEST(FromSuperoperator, RejectsWrongShapeOrNonUnital) {
  EXPECT_THROW(from_superoperator(Matrix::Zero(3, 3)), DomainError);
  EXPECT_THROW(from_superoperator(Matrix::Identity(4, 4)), DomainError);
}

TEST(EmbedClassical, TwoStateGap) {
  auto [g, w] = embed_classical(two_state(1, 1), RealVector::Constant(2, 0.5));
  EXPECT_NEAR(KmsSpectrum(g, w).gap(), 2.0, 1e-12);
}

TEST(EmbedClassical, RejectsBadInput) {
  RealVector pi(2);
  pi << 0.5, 0.5;
  EXPECT_THROW(embed_classical(two_state(1, 2), pi), DomainError);  // detailed balance
  RealMatrix rowsum = two_state(1, 1);
  rowsum(0, 0) = -2;
  EXPECT_THROW(embed_classical(rowsum, pi), DomainError);
  pi << 0.5, 0.6;
  EXPECT_THROW(embed_classical(two_state(1, 1), pi), DomainError);
}

TEST(EmbedClassical, GapMatchesRateMatrixProperty) {
  testing::Gen gen(32);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + gen.index(5);
    const RealVector pi = gen.law(n);
    const RealMatrix q = gen.reversible_rates(pi);
    auto [g, w] = embed_classical(q, pi);
    const double ref = oracle::classical_gap(q);
    EXPECT_NEAR(KmsSpectrum(g, w).gap(), ref, 1e-10 * ref);
  }
}

TEST(EmbedClassical, DirichletMatchesClassicalProperty) {
  testing::Gen gen(33);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + gen.index(5);
    const RealVector pi = gen.law(n);
    const RealMatrix q = gen.reversible_rates(pi);
    auto [g, w] = embed_classical(q, pi);
    const RealVector f = gen.positive_vector(n);
    const RealVector h = gen.positive_vector(n);
    const double ref = oracle::classical_dirichlet(q, pi, f, h);
    const double got = dirichlet(w, g, HermitianMatrix::diagonal(f), HermitianMatrix::diagonal(h));
    EXPECT_NEAR(got, ref, 1e-10 * std::max(1.0, std::abs(ref)));
  }
}

TEST(FindInvariantState, ZeroGeneratorIsDegenerate) {
  const Generator g = build_lindblad(HermitianMatrix::zero(2), {});
  EXPECT_THROW(find_invariant_state(g), NumericalError);
}

TEST(FindInvariantState, ClassicalRecoversLaw) {
  testing::Gen gen(34);
  const RealVector pi = gen.law(4);
  auto [g, w] = embed_classical(gen.reversible_rates(pi), pi);
  const WeightedSpace found = find_invariant_state(g);
  EXPECT_LE((found.rho().matrix() - HermitianMatrix::diagonal(pi).matrix()).norm(), 1e-10);
}

TEST(FindInvariantState, HermitianJumpsGiveTraceState) {
  testing::Gen gen(35);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + gen.index(3);
    // Two generic Hermitian jumps have trivial commutant, so the kernel is one-dimensional.
    const Generator g = build_lindblad(HermitianMatrix::zero(n), {gen.hermitian(n).matrix(), gen.hermitian(n).matrix()});
    const WeightedSpace found = find_invariant_state(g);
    EXPECT_TRUE(found.is_trace_state(1e-9));
  }
}

TEST(FindInvariantState, DetailedBalanceState) {
  testing::Gen gen(36);
  auto [g, w] = gen.kms_symmetric(3);
  const WeightedSpace found = find_invariant_state(g);
  EXPECT_LE((found.rho().matrix() - w.rho().matrix()).norm(), 1e-9);
}

TEST(Validate, DepolarizingPassesEverything) {
  const WeightedSpace w = WeightedSpace::trace_state(3);
  EXPECT_TRUE(validate(depolarizing(w), w).all_pass());
}

TEST(Validate, ClassicalPassesEverything) {
  testing::Gen gen(37);
  const RealVector pi = gen.law(4);
  auto [g, w] = embed_classical(gen.reversible_rates(pi), pi);
  EXPECT_TRUE(validate(g, w).all_pass());
}

TEST(Validate, HamiltonianOnlyFailsKmsAtNonTraceState) {
  testing::Gen gen(38);
  RealVector pi(2);
  pi << 0.3, 0.7;
  const WeightedSpace w = WeightedSpace::diagonal(pi);
  Matrix h(2, 2);
  h << 0, 1, 1, 0;
  const Generator g = build_lindblad(HermitianMatrix(h), {});
  const ValidationRecord r = validate(g, w);
  EXPECT_FALSE(r.kms_symmetric.pass);
  EXPECT_GT(r.kms_symmetric.residual, 1e-3);
  EXPECT_TRUE(r.identity_preserving.pass);
}

TEST(Validate, DetectsNonPositiveRawGenerator) {
  // id - T with T the transpose: unital, but exp(t(id - T)) is not positive.
  const Eigen::Index n = 2;
  Matrix s = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) s(i + n * j, j + n * i) = -1.0;
  }
  s += Matrix::Identity(n * n, n * n);
  const Generator g = from_superoperator(s);
  const ValidationRecord r = validate(g, WeightedSpace::trace_state(2));
  EXPECT_FALSE(r.positivity_probe.pass);
}

TEST(Validate, SymmetryDualityProperty) {
  testing::Gen gen(39);
  for (int trial = 0; trial < 10; ++trial) {
    auto [g, w] = gen.kms_symmetric(2 + gen.index(3));
    for (const auto& b : hermitian_basis(g.dim(), g.domain())) {
      EXPECT_LE(std::abs((w.rho().matrix() * g.apply(b)).trace()), 1e-10);
      const auto k = static_cast<Eigen::Index>(g.dim());
      EXPECT_LE(std::abs(dirichlet_complex(w, g, Matrix::Identity(k, k), b)), 1e-10);
    }
  }
}

TEST(Evolve, TimeZeroIsIdentity) {
  testing::Gen gen(40);
  const Generator g = gen.trace_symmetric(3);
  const HermitianMatrix f = gen.hermitian(3);
  EXPECT_LE((evolve(g, f, 0.0).matrix() - f.matrix()).norm(), 1e-15);
}

TEST(Evolve, SemigroupLawProperty) {
  testing::Gen gen(41);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + gen.index(3);
    const Generator g = gen.trace_nonsymmetric(n);
    const HermitianMatrix f = gen.hermitian(n);
    const double s = gen.uniform(0.0, 2.0);
    const double t = gen.uniform(0.0, 2.0);
    const Matrix lhs = evolve(g, evolve(g, f, s), t).matrix();
    const Matrix rhs = evolve(g, f, s + t).matrix();
    EXPECT_LE((lhs - rhs).norm(), 1e-8 * std::max(1.0, f.frobenius_norm()));
  }
}

TEST(Evolve, PositivityAndL1ConservationProperty) {
  testing::Gen gen(42);
  for (int trial = 0; trial < 64; ++trial) {
    auto [g, w] = gen.kms_symmetric(2 + gen.index(3));
    const HermitianMatrix f = gen.positive(g.dim());
    const double l1 = norm_p(w, f, 1.0);
    for (int k = 0; k < 10; ++k) {
      const HermitianMatrix ft = evolve(g, f, 0.3 * k);
      EXPECT_GE(min_eig(ft), -1e-9);
      EXPECT_NEAR(norm_p(w, ft, 1.0), l1, 1e-10 * std::max(1.0, l1));
    }
  }
}

TEST(KmsSpectrum, AgreesWithPadeRouteProperty) {
  testing::Gen gen(43);
  for (int trial = 0; trial < 20; ++trial) {
    auto [g, w] = gen.kms_symmetric(2 + gen.index(3));
    const KmsSpectrum s(g, w);
    const HermitianMatrix f = gen.hermitian(g.dim());
    const double t = gen.uniform(0.0, 3.0);
    EXPECT_LE((s.evolve(f, t).matrix() - evolve(g, f, t).matrix()).norm(), 1e-10 * std::max(1.0, f.frobenius_norm()));
  }
}

TEST(KmsSpectrum, GapMatchesBruteForceSpectrumProperty) {
  testing::Gen gen(44);
  for (int trial = 0; trial < 20; ++trial) {
    auto [g, w] = gen.kms_symmetric(2 + gen.index(3));
    const double ref = oracle::superop_gap(g.superop());
    EXPECT_NEAR(KmsSpectrum(g, w).gap(), ref, 1e-9 * std::max(1.0, ref));
  }
}

TEST(KmsSpectrum, DepolarizingGapIsRate) {
  const WeightedSpace w = WeightedSpace::trace_state(2);
  EXPECT_NEAR(KmsSpectrum(depolarizing(w), w).gap(), 1.0, 1e-12);
  EXPECT_NEAR(KmsSpectrum(depolarizing(w, 2.5), w).gap(), 2.5, 1e-12);
}

TEST(KmsSpectrum, ZeroGeneratorHasZeroGap) {
  const Generator g = build_lindblad(HermitianMatrix::zero(2), {});
  EXPECT_EQ(KmsSpectrum(g, WeightedSpace::trace_state(2)).gap(), 0.0);
}

TEST(KmsSpectrum, RejectsNonSymmetric) {
  testing::Gen gen(45);
  EXPECT_THROW(KmsSpectrum(gen.trace_nonsymmetric(3), WeightedSpace::trace_state(3)), DomainError);
}

TEST(KmsSpectrum, WitnessAttainsGap) {
  testing::Gen gen(46);
  auto [g, w] = gen.kms_symmetric(3);
  const KmsSpectrum s(g, w);
  const HermitianMatrix& f = s.gap_witness();
  EXPECT_NEAR(dirichlet(w, g, f, f), s.gap() * variance(w, f), 1e-10);
}

TEST(DirichletQ, QEqualsTwoIsDirichletProperty) {
  testing::Gen gen(47);
  for (int trial = 0; trial < 30; ++trial) {
    auto [g, w] = gen.kms_symmetric(2 + gen.index(3));
    const HermitianMatrix f = gen.positive(g.dim());
    const double ref = dirichlet(w, g, f, f);
    EXPECT_NEAR(dirichlet_q(w, g, 2.0, f), ref, 1e-10 * std::max(1.0, ref));
  }
}

TEST(DirichletQ, IdentityGivesZero) {
  testing::Gen gen(48);
  auto [g, w] = gen.kms_symmetric(3);
  for (double q : {1.1, 2.0, 5.0}) EXPECT_NEAR(dirichlet_q(w, g, q, HermitianMatrix::identity(3)), 0.0, 1e-12);
}

TEST(DirichletQ, CommutingTraceCaseAtThree) {
  // I_{3/2,3}(f) = f^2 when rho = 1/N and f is diagonal.
  testing::Gen gen(49);
  const RealVector pi = RealVector::Constant(3, 1.0 / 3.0);
  const RealMatrix q = gen.reversible_rates(pi);
  auto [g, w] = embed_classical(q, pi);
  const RealVector f = gen.positive_vector(3);
  const RealVector lf = q * f;
  const double ref = -(f.array().square() * lf.array()).sum() / 3.0;
  EXPECT_NEAR(dirichlet_q(w, g, 3.0, HermitianMatrix::diagonal(f)), ref, 1e-12 * std::max(1.0, std::abs(ref)));
}

TEST(EntropyProduction, CommutingTraceCase) {
  testing::Gen gen(50);
  const RealVector pi = RealVector::Constant(4, 0.25);
  const RealMatrix q = gen.reversible_rates(pi);
  auto [g, w] = embed_classical(q, pi);
  const RealVector f = gen.positive_vector(4);
  const RealVector lf = q * f;
  const double ref = -(f.array().log() * lf.array()).sum() / 4.0;
  EXPECT_NEAR(entropy_production(w, g, HermitianMatrix::diagonal(f)), ref, 1e-12 * std::max(1.0, std::abs(ref)));
}

}  // namespace
}  // namespace qmsi
