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

// rho-weighted L^p structure on a matrix algebra: norms, the KMS inner
// product, the I_{p,q} embeddings, the operator-valued entropy T_q and the
// scalar functionals built from them (E, H, Var).

#pragma once

#include <map>
#include <memory>
#include <shared_mutex>

#include "qmsi/hermitian.hpp"

namespace qmsi {

/// A faithful density rho together with its spectral data.
///
/// Fixed powers (1/2, 1/4, -1/4) and log rho are computed at construction.
/// Other powers rho^a are memoized on demand; the memo is shared between
/// copies and safe for concurrent readers.
class WeightedSpace {
 public:
  explicit WeightedSpace(const HermitianMatrix& rho);

  static WeightedSpace trace_state(std::size_t n);
  static WeightedSpace diagonal(const RealVector& pi);

  [[nodiscard]] std::size_t dim() const { return rho_.dim(); }
  [[nodiscard]] const HermitianMatrix& rho() const { return rho_; }
  [[nodiscard]] const SpectralDecomposition& spectrum() const { return spectrum_; }
  [[nodiscard]] const Matrix& sqrt_rho() const { return half_; }
  [[nodiscard]] const Matrix& quarter_rho() const { return quarter_; }
  [[nodiscard]] const Matrix& inv_quarter_rho() const { return inv_quarter_; }
  [[nodiscard]] const HermitianMatrix& log_rho() const { return log_; }
  [[nodiscard]] bool is_trace_state(double tol = 1e-12) const;
  [[nodiscard]] bool is_diagonal() const { return rho_.is_diagonal(); }

  /// rho^a, memoized on the exact value of a.
  [[nodiscard]] const Matrix& power(double a) const;

 private:
  struct PowerCache {
    mutable std::shared_mutex mutex;
    std::map<double, Matrix> powers;
  };

  HermitianMatrix rho_;
  SpectralDecomposition spectrum_;
  Matrix half_;
  Matrix quarter_;
  Matrix inv_quarter_;
  HermitianMatrix log_;
  std::shared_ptr<PowerCache> cache_;
};

/// Conjugate exponents 1/p + 1/q = 1 (q > 1), or the limiting pair q = 1.
class ExponentPair {
 public:
  static ExponentPair from_q(double q);

  [[nodiscard]] double p() const { return p_; }
  [[nodiscard]] double q() const { return q_; }

 private:
  ExponentPair(double p, double q) : p_(p), q_(q) {}
  double p_;
  double q_;
};

/// ||f||_p = tr(|rho^{1/2p} f rho^{1/2p}|^p)^{1/p}; p = infinity is the
/// operator norm of f.
double norm_p(const WeightedSpace& w, const HermitianMatrix& f, double p);

/// <f, g> = tr(rho^{1/2} f* rho^{1/2} g).
Complex kms_inner(const WeightedSpace& w, const Matrix& f, const Matrix& g);
inline Complex kms_inner(const WeightedSpace& w, const HermitianMatrix& f,
                         const HermitianMatrix& g) {
  return kms_inner(w, f.matrix(), g.matrix());
}

/// I_{p,q}(f) = rho^{-1/2p} (rho^{1/2q} f rho^{1/2q})^{q/p} rho^{-1/2p}, f > 0,
/// p, q >= 1.
HermitianMatrix embed_Ipq(const WeightedSpace& w, double p, double q, const HermitianMatrix& f);
inline HermitianMatrix embed_Ipq(const WeightedSpace& w, const ExponentPair& pq,
                                 const HermitianMatrix& f) {
  return embed_Ipq(w, pq.p(), pq.q(), f);
}
/// The q = 1 member used throughout: rho^{-1/4} (rho^{1/2} f rho^{1/2})^{1/2} rho^{-1/4}.
inline HermitianMatrix embed_I21(const WeightedSpace& w, const HermitianMatrix& f) {
  return embed_Ipq(w, 2.0, 1.0, f);
}

/// Operator-valued entropy
///   T_q(f) = rho^{-1/2q} X lg X rho^{-1/2q} - (f lg rho + lg rho f) / 2q,
/// with X = rho^{1/2q} f rho^{1/2q}. Not Hermitian in general for q != 1.
Matrix op_entropy_Tq(const WeightedSpace& w, double q, const HermitianMatrix& f);

/// E(f) = tr(X (lg X - lg rho)) - ||f||_1 lg ||f||_1, X = rho^{1/2} f rho^{1/2}.
double entropy_E(const WeightedSpace& w, const HermitianMatrix& f);

/// H(f) = <f, T_2(f)> - ||f||_2^2 lg ||f||_2.
double functional_H(const WeightedSpace& w, const HermitianMatrix& f);

/// Var(f) = ||f - tr(rho f)||_2^2.
double variance(const WeightedSpace& w, const HermitianMatrix& f);

/// lg(rho^{1/2} f rho^{1/2}) - lg rho: the first slot of the entropy
/// production form E(., f).
HermitianMatrix relative_log(const WeightedSpace& w, const HermitianMatrix& f);

/// tr(rho f), real for Hermitian f.
double expectation(const WeightedSpace& w, const HermitianMatrix& f);

/// Throws DomainError unless min eig(f) > 1e-12.
void require_strictly_positive(const HermitianMatrix& f, const char* what);

}  // namespace qmsi
