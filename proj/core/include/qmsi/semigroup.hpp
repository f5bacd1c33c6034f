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

// Identity-preserving generators on M_N in the Heisenberg picture, their
// validation against a reference state, evolution P_t = exp(tL) and the
// Dirichlet forms.
//
// Superoperators act on column-stacked vectorizations: vec(A X B) =
// (B^T kron A) vec(X).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qmsi/hermitian.hpp"
#include "qmsi/state_space.hpp"

namespace qmsi {

/// Subalgebra the generator is meant to act on. Classical chains live on
/// the diagonal matrices; their superoperator is zero off the diagonal.
enum class ObservableDomain { full, diagonal };

struct LindbladProvenance {
  HermitianMatrix hamiltonian;
  std::vector<Matrix> jumps;
};

struct ClassicalProvenance {
  RealMatrix rates;
  RealVector law;
};

struct RawProvenance {};

using Provenance = std::variant<LindbladProvenance, ClassicalProvenance, RawProvenance>;

std::string provenance_name(const Provenance& p);

struct CheckResult {
  bool pass = false;
  double residual = 0.0;
};

struct ValidationRecord {
  CheckResult identity_preserving;
  CheckResult invariance;
  CheckResult kms_symmetric;
  CheckResult positivity_probe;  // residual holds the worst min eigenvalue seen

  [[nodiscard]] bool all_pass() const {
    return identity_preserving.pass && invariance.pass && kms_symmetric.pass &&
           positivity_probe.pass;
  }
};

class Generator {
 public:
  /// Wraps a raw N^2 x N^2 superoperator. Throws DomainError if the shape is
  /// wrong or L(1) != 0 beyond 1e-10 (relative to ||L||).
  Generator(Matrix superop, ObservableDomain domain, Provenance provenance);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const Matrix& superop() const { return superop_; }
  [[nodiscard]] ObservableDomain domain() const { return domain_; }
  [[nodiscard]] const Provenance& provenance() const { return provenance_; }
  [[nodiscard]] const std::optional<ValidationRecord>& diagnostics() const { return diagnostics_; }
  [[nodiscard]] double scale() const { return scale_; }

  /// L(f).
  [[nodiscard]] Matrix apply(const Matrix& f) const;

  [[nodiscard]] Generator with_diagnostics(ValidationRecord record) const;

 private:
  std::size_t dim_;
  Matrix superop_;
  ObservableDomain domain_;
  Provenance provenance_;
  double scale_;
  std::optional<ValidationRecord> diagnostics_;
};

/// L(f) = i[H, f] + sum_k (L_k* f L_k - {L_k* L_k, f} / 2).
Generator build_lindblad(const HermitianMatrix& hamiltonian, const std::vector<Matrix>& jumps);

/// Reversible chain (rate matrix Q, law pi) embedded on diagonal matrices:
/// (Lf)_ii = sum_j Q_ij f_jj, rho = diag(pi).
std::pair<Generator, WeightedSpace> embed_classical(const RealMatrix& rates, const RealVector& law);

/// A raw superoperator acting on the full algebra.
Generator from_superoperator(const Matrix& superop);

/// L f = tr(rho f) 1 - f, written as a Lindblad generator with jumps
/// sqrt(rho_i) |e_i><e_j| in the eigenbasis of rho.
Generator depolarizing(const WeightedSpace& w, double rate = 1.0);

/// Hilbert-Schmidt orthonormal Hermitian basis of the domain.
std::vector<Matrix> hermitian_basis(std::size_t n, ObservableDomain domain);

/// Faithful state spanning the kernel of the predual. Throws NumericalError
/// when the kernel is not one-dimensional or holds no faithful state.
WeightedSpace find_invariant_state(const Generator& g);

struct ValidationOptions {
  std::uint64_t seed = 0x5eed;
  std::size_t probe_samples = 64;
  double kms_tolerance = 1e-9;
  double invariance_tolerance = 1e-9;
  double identity_tolerance = 1e-10;
  double positivity_floor = -1e-9;
};

ValidationRecord validate(const Generator& g, const WeightedSpace& w,
                          const ValidationOptions& options = {});

/// P_t f via the scaling-and-squaring exponential of t L.
HermitianMatrix evolve(const Generator& g, const HermitianMatrix& f, double t);

/// -L written as a real symmetric matrix in a KMS-orthonormal Hermitian basis
/// of the domain, diagonalized once. Requires KMS symmetry (relative
/// asymmetry <= tolerance). Immutable once built, so it can be shared by any
/// number of readers.
class KmsSpectrum {
 public:
  KmsSpectrum(const Generator& g, const WeightedSpace& w, double tolerance = 1e-9);

  [[nodiscard]] double asymmetry() const { return asymmetry_; }
  [[nodiscard]] const RealMatrix& form() const { return form_; }
  [[nodiscard]] const RealVector& rates() const { return rates_; }
  [[nodiscard]] double gap() const { return gap_; }
  /// Centered Hermitian observable attaining the gap: E(f, f) = gap Var(f).
  [[nodiscard]] const HermitianMatrix& gap_witness() const { return gap_witness_; }

  /// P_t f; components outside the domain are left unchanged.
  [[nodiscard]] HermitianMatrix evolve(const HermitianMatrix& f, double t) const;

  [[nodiscard]] RealVector coordinates(const HermitianMatrix& f) const;
  [[nodiscard]] Matrix from_coordinates(const RealVector& c) const;

 private:
  std::vector<Matrix> basis_;
  Matrix quarter_;
  Matrix inv_quarter_;
  RealMatrix form_;
  RealVector rates_;
  RealMatrix modes_;
  double asymmetry_;
  double gap_ = 0.0;
  HermitianMatrix gap_witness_;
};

/// Relative deviation max |<e_a, L e_b> - <L e_a, e_b>| / max |<e_a, L e_b>|
/// over the Hermitian domain basis.
double kms_asymmetry(const Generator& g, const WeightedSpace& w);

/// E(f, g) = -<f, L g> (real part; exact for Hermitian f, g and symmetric L).
double dirichlet(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f,
                 const HermitianMatrix& h);
Complex dirichlet_complex(const WeightedSpace& w, const Generator& g, const Matrix& f,
                          const Matrix& h);

/// E_q(f, f) = -<I_{p,q}(f), L f>, p conjugate to q > 1.
double dirichlet_q(const WeightedSpace& w, const Generator& g, double q, const HermitianMatrix& f);

/// E(lg(rho^{1/2} f rho^{1/2}) - lg rho, f): the entropy production at f.
double entropy_production(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f);

}  // namespace qmsi
