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


#include <set>

#include <gtest/gtest.h>

#include "qmsi/families.hpp"
#include "qmsi/optimize.hpp"
#include "qmsi/random.hpp"
#include "qmsi/semigroup.hpp"

namespace qmsi {
namespace {

TEST(DeriveSeed, DistinctChildren) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(derive_seed(42, 7), derive_seed(42, 7));
  EXPECT_NE(derive_seed(42, 7), derive_seed(43, 7));
}

TEST(RandomDensity, IsFaithfulState) {
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const HermitianMatrix rho = random_density(rng, 4, 0.1);
    EXPECT_NEAR(rho.trace(), 1.0, 1e-12);
    EXPECT_GT(min_eig(rho), 0.0);
  }
}

TEST(Families, NamesRoundTrip) {
  for (Family f : {Family::trace_hermitian, Family::kms_general, Family::classical, Family::trace_nonsymmetric}) {
    ASSERT_TRUE(parse_family(family_name(f)).has_value());
    EXPECT_EQ(*parse_family(family_name(f)), f);
  }
  EXPECT_FALSE(parse_family("bogus").has_value());
}

TEST(Families, SymmetricSamplesValidate) {
  Rng rng(2);
  for (Family f : {Family::trace_hermitian, Family::kms_general, Family::classical}) {
    for (int i = 0; i < 5; ++i) {
      const SampledGenerator s = sample_generator(rng, f, 3);
      const ValidationRecord r = validate(s.generator, s.space);
      EXPECT_TRUE(r.all_pass()) << family_name(f);
    }
  }
}

TEST(Families, NonsymmetricSampleIsTracePreservingButNotSymmetric) {
  Rng rng(3);
  const SampledGenerator s = sample_generator(rng, Family::trace_nonsymmetric, 3);
  EXPECT_GT(kms_asymmetry(s.generator, s.space), 1e-6);
  for (const auto& b : hermitian_basis(3, ObservableDomain::full)) {
    EXPECT_LE(std::abs(s.generator.apply(b).trace()), 1e-10);
  }
}

TEST(NelderMead, FindsQuadraticMinimum) {
  auto f = [](const RealVector& x) { return (x(0) - 1) * (x(0) - 1) + 10 * (x(1) + 2) * (x(1) + 2); };
  const NelderMeadResult r = nelder_mead(f, RealVector::Zero(2), {500, 0.5, 1e-14});
  EXPECT_NEAR(r.x(0), 1.0, 1e-4);
  EXPECT_NEAR(r.x(1), -2.0, 1e-4);
  EXPECT_LE(r.value, 1e-8);
}

TEST(NelderMead, NonFiniteValuesAreAvoided) {
  auto f = [](const RealVector& x) { return x(0) < 0 ? std::nan("") : (x(0) - 0.5) * (x(0) - 0.5); };
  RealVector x0(1);
  x0 << 2.0;
  const NelderMeadResult r = nelder_mead(f, x0, {300, 1.0, 1e-14});
  EXPECT_NEAR(r.x(0), 0.5, 1e-4);
}

}  // namespace
}  // namespace qmsi
