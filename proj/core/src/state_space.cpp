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

#include "qmsi/state_space.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

#include "qmsi/error.hpp"

namespace qmsi {

namespace {

Matrix spectral_power(const SpectralDecomposition& sd, double a) {
  const RealVector v = sd.eigenvalues.array().pow(a);
  return sd.eigenvectors * v.cast<Complex>().asDiagonal() * sd.eigenvectors.adjoint();
}

void require_same_dim(const WeightedSpace& w, const HermitianMatrix& f) {
  if (f.dim() != w.dim()) throw DomainError("observable dimension does not match rho");
}

// x lg x with the convention 0 lg 0 = 0 for the eigenvalue sums below.
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// With m = tr(rho f) and Y = rho^{1/2} f rho^{1/2} / m = rho + Z, returns
// K = lg Y - lg rho from the divided differences of lg between the spectra of
// rho and Y. Close to the identity K is O(Z) with relative accuracy, where
// subtracting the two logarithms would leave an absolute error of order eps.
struct LogDifference {
  double mass;
  RealVector y_values;
  Matrix y_vectors;
  Matrix k;
};

LogDifference log_difference(const WeightedSpace& w, const HermitianMatrix& f) {
  const Matrix& h = w.sqrt_rho();
  const double mass = (w.rho().matrix() * f.matrix()).trace().real();
  if (!(mass > 0.0)) throw DomainError("tr(rho f) must be positive");
  const auto n = static_cast<Eigen::Index>(f.dim());
  Matrix z = h * (f.matrix() / mass - Matrix::Identity(n, n)) * h;
  // tr Z = 0 exactly in theory; rounding in the mass would otherwise leave an
  // O(eps) first-order term in tr(Y K).
  z -= z.trace() * w.rho().matrix();
  const auto y = HermitianMatrix::hermitian_part(w.rho().matrix() + z);
  Eigen::SelfAdjointEigenSolver<Matrix> es(y.matrix());
  if (es.eigenvalues().minCoeff() <= 0.0) throw DomainError("rho^{1/2} f rho^{1/2} is not positive");
  const auto& sd = w.spectrum();
  const Matrix& u = sd.eigenvectors;
  const Matrix& v = es.eigenvectors();
  Matrix mixed = u.adjoint() * z * v;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      mixed(i, j) *= log_divided_difference(es.eigenvalues()(j), sd.eigenvalues(i));
    }
  }
  return {mass, es.eigenvalues(), v, u * mixed * v.adjoint()};
}

}  // namespace

void require_strictly_positive(const HermitianMatrix& f, const char* what) {
  const double lo = min_eig(f);
  if (!(lo > kPositivityFloor)) {
    std::ostringstream os;
    os << what << " requires f > 0 (min eigenvalue " << lo << ")";
    throw DomainError(os.str());
  }
}

WeightedSpace::WeightedSpace(const HermitianMatrix& rho)
    : rho_(rho), spectrum_(spectral(rho)), cache_(std::make_shared<PowerCache>()) {
  const double lo = spectrum_.eigenvalues.minCoeff();
  if (!(lo > kPositivityFloor)) {
    std::ostringstream os;
    os << "rho is not faithful: min eigenvalue " << lo;
    throw DomainError(os.str());
  }
  if (std::abs(rho_.trace() - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "rho must have unit trace (got " << rho_.trace() << ")";
    throw DomainError(os.str());
  }
  half_ = spectral_power(spectrum_, 0.5);
  quarter_ = spectral_power(spectrum_, 0.25);
  inv_quarter_ = spectral_power(spectrum_, -0.25);
  log_ = mat_fn(spectrum_, LogFn{});
}

WeightedSpace WeightedSpace::trace_state(std::size_t n) {
  return WeightedSpace((1.0 / static_cast<double>(n)) * HermitianMatrix::identity(n));
}

WeightedSpace WeightedSpace::diagonal(const RealVector& pi) {
  return WeightedSpace(HermitianMatrix::diagonal(pi));
}

bool WeightedSpace::is_trace_state(double tol) const {
  const double target = 1.0 / static_cast<double>(dim());
  return (spectrum_.eigenvalues.array() - target).abs().maxCoeff() <= tol;
}

const Matrix& WeightedSpace::power(double a) const {
  {
    std::shared_lock lock(cache_->mutex);
    if (auto it = cache_->powers.find(a); it != cache_->powers.end()) return it->second;
  }
  Matrix value = spectral_power(spectrum_, a);
  std::unique_lock lock(cache_->mutex);
  // Map nodes are never erased, so the reference outlives the lock.
  return cache_->powers.try_emplace(a, std::move(value)).first->second;
}

ExponentPair ExponentPair::from_q(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("exponent q must be >= 1");
  if (q == 1.0) return {std::numeric_limits<double>::infinity(), 1.0};
  return {q / (q - 1.0), q};
}

double norm_p(const WeightedSpace& w, const HermitianMatrix& f, double p) {
  require_same_dim(w, f);
  if (!(p >= 1.0)) throw DomainError("norm_p requires p >= 1");
  if (std::isinf(p)) return max_abs_eig(f);
  const Matrix& r = w.power(1.0 / (2.0 * p));
  const auto x = HermitianMatrix::hermitian_part(r * f.matrix() * r);
  Eigen::SelfAdjointEigenSolver<Matrix> es(x.matrix(), Eigen::EigenvaluesOnly);
  const double sum = es.eigenvalues().cwiseAbs().array().pow(p).sum();
  return std::pow(sum, 1.0 / p);
}

Complex kms_inner(const WeightedSpace& w, const Matrix& f, const Matrix& g) {
  const Matrix& h = w.sqrt_rho();
  return (h * f.adjoint() * h * g).trace();
}

HermitianMatrix embed_Ipq(const WeightedSpace& w, double p, double q, const HermitianMatrix& f) {
  require_same_dim(w, f);
  if (!(p >= 1.0) || !(q >= 1.0)) throw DomainError("I_{p,q} requires p, q >= 1");
  require_strictly_positive(f, "I_{p,q}");
  const Matrix& inner = w.power(1.0 / (2.0 * q));
  const auto x = HermitianMatrix::hermitian_part(inner * f.matrix() * inner);
  const Matrix xr = mat_pow(x, q / p).matrix();
  const Matrix& outer = w.power(-1.0 / (2.0 * p));
  return HermitianMatrix::hermitian_part(outer * xr * outer);
}

Matrix op_entropy_Tq(const WeightedSpace& w, double q, const HermitianMatrix& f) {
  require_same_dim(w, f);
  if (!(q >= 1.0)) throw DomainError("T_q requires q >= 1");
  require_strictly_positive(f, "T_q");
  const Matrix& inner = w.power(1.0 / (2.0 * q));
  const Matrix& inv = w.power(-1.0 / (2.0 * q));
  const auto x = HermitianMatrix::hermitian_part(inner * f.matrix() * inner);
  const SpectralDecomposition sx = spectral(x);
  RealVector xlx(sx.eigenvalues.size());
  for (Eigen::Index i = 0; i < xlx.size(); ++i) xlx(i) = xlogx(sx.eigenvalues(i));
  const Matrix x_lg_x = sx.eigenvectors * xlx.cast<Complex>().asDiagonal() * sx.eigenvectors.adjoint();
  const Matrix& lg = w.log_rho().matrix();
  return inv * x_lg_x * inv - (f.matrix() * lg + lg * f.matrix()) / (2.0 * q);
}

double entropy_E(const WeightedSpace& w, const HermitianMatrix& f) {
  require_same_dim(w, f);
  require_strictly_positive(f, "entropy E");
  const LogDifference ld = log_difference(w, f);
  // tr(Y (lg Y - lg rho)) in the eigenbasis of Y; Y = rho + Z.
  const Matrix yk = ld.y_vectors.adjoint() * ld.k * ld.y_vectors;
  double d = 0.0;
  for (Eigen::Index j = 0; j < yk.rows(); ++j) d += ld.y_values(j) * yk(j, j).real();
  return ld.mass * d;
}

double functional_H(const WeightedSpace& w, const HermitianMatrix& f) {
  require_same_dim(w, f);
  const Matrix t2 = op_entropy_Tq(w, 2.0, f);
  const Complex first = kms_inner(w, f.matrix(), t2);
  const double norm2sq = kms_inner(w, f, f).real();
  const double scale = std::max({1.0, std::abs(first.real()), norm2sq});
  if (std::abs(first.imag()) > 1e-10 * scale) {
    std::ostringstream os;
    os << "<f, T_2 f> has imaginary residue " << first.imag();
    throw NumericalError(os.str());
  }
  // ||f||_2^2 lg ||f||_2 = (1/2) n lg n with n = ||f||_2^2.
  return first.real() - 0.5 * xlogx(norm2sq);
}

double expectation(const WeightedSpace& w, const HermitianMatrix& f) {
  require_same_dim(w, f);
  return (w.rho().matrix() * f.matrix()).trace().real();
}

double variance(const WeightedSpace& w, const HermitianMatrix& f) {
  const double mean = expectation(w, f);
  const HermitianMatrix centered = f - mean * HermitianMatrix::identity(f.dim());
  return std::max(0.0, kms_inner(w, centered, centered).real());
}

HermitianMatrix relative_log(const WeightedSpace& w, const HermitianMatrix& f) {
  require_same_dim(w, f);
  require_strictly_positive(f, "relative log");
  const LogDifference ld = log_difference(w, f);
  return HermitianMatrix::hermitian_part(ld.k) + std::log(ld.mass) * HermitianMatrix::identity(f.dim());
}

}  // namespace qmsi
