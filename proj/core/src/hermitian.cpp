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

#include "qmsi/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qmsi/error.hpp"

namespace qmsi {

namespace {

bool is_integer(double r) { return std::isfinite(r) && r == std::nearbyint(r); }

double apply_scalar(const MatrixFunction& fn, double x) {
  return std::visit(
      [x](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, LogFn>) {
          return std::log(x);
        } else if constexpr (std::is_same_v<F, ExpFn>) {
          return std::exp(x);
        } else {
          return std::pow(x, f.exponent);
        }
      },
      fn);
}

// Log and fractional powers need a strictly positive spectrum; integer powers
// only need invertibility when negative.
void check_domain(const MatrixFunction& fn, const RealVector& eig) {
  const double lo = eig.minCoeff();
  bool ok = true;
  if (std::holds_alternative<LogFn>(fn)) {
    ok = lo > kPositivityFloor;
  } else if (const auto* p = std::get_if<PowerFn>(&fn)) {
    if (!is_integer(p->exponent)) {
      ok = lo > kPositivityFloor;
    } else if (p->exponent < 0) {
      ok = eig.cwiseAbs().minCoeff() > kPositivityFloor;
    }
  }
  if (!ok) {
    std::ostringstream os;
    os << "matrix function outside its domain: min eigenvalue " << lo;
    throw DomainError(os.str());
  }
}

}  // namespace

HermitianMatrix::HermitianMatrix(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DomainError("Hermitian matrix must be square with dim >= 1");
  }
  if (!m.allFinite()) throw DomainError("Hermitian matrix has non-finite entries");
  const double asym = (m - m.adjoint()).norm();
  if (asym > kHermitianTolerance * m.norm()) {
    std::ostringstream os;
    os << "matrix is not Hermitian: |A - A*| = " << asym << ", |A| = " << m.norm();
    throw DomainError(os.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::hermitian_part(const Matrix& m) {
  return HermitianMatrix(Unchecked{}, 0.5 * (m + m.adjoint()));
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return HermitianMatrix(Unchecked{}, Matrix::Identity(k, k));
}

HermitianMatrix HermitianMatrix::zero(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return HermitianMatrix(Unchecked{}, Matrix::Zero(k, k));
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& d) {
  return HermitianMatrix(Unchecked{}, d.cast<Complex>().asDiagonal());
}

bool HermitianMatrix::is_diagonal(double tol) const {
  Matrix off = m_;
  off.diagonal().setZero();
  return off.norm() <= tol;
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(HermitianMatrix::Unchecked{}, a.m_ + b.m_);
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(HermitianMatrix::Unchecked{}, a.m_ - b.m_);
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix(HermitianMatrix::Unchecked{}, s * a.m_);
}

Matrix SpectralDecomposition::reconstruct() const {
  const auto n = eigenvectors.rows();
  Matrix out = Matrix::Zero(n, n);
  for (const auto& c : clusters) out += c.value * c.projector;
  return out;
}

SpectralDecomposition spectral(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix());
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");

  SpectralDecomposition sd;
  sd.eigenvalues = es.eigenvalues();
  sd.eigenvectors = es.eigenvectors();
  const auto n = sd.eigenvalues.size();
  const double scale = sd.eigenvalues.cwiseAbs().maxCoeff();
  const double gap_tol = kClusterTolerance * scale;

  sd.index_map.assign(static_cast<std::size_t>(n), 0);
  Eigen::Index begin = 0;
  while (begin < n) {
    Eigen::Index end = begin + 1;
    while (end < n && sd.eigenvalues(end) - sd.eigenvalues(end - 1) <= gap_tol) ++end;
    const auto block = sd.eigenvectors.middleCols(begin, end - begin);
    SpectralCluster c{sd.eigenvalues.segment(begin, end - begin).mean(),
                      block * block.adjoint(), static_cast<std::size_t>(end - begin)};
    for (Eigen::Index k = begin; k < end; ++k) {
      sd.index_map[static_cast<std::size_t>(k)] = sd.clusters.size();
    }
    sd.clusters.push_back(std::move(c));
    begin = end;
  }
  return sd;
}

HermitianMatrix mat_fn(const SpectralDecomposition& sd, MatrixFunction fn) {
  check_domain(fn, sd.eigenvalues);
  RealVector values(sd.eigenvalues.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) values(i) = apply_scalar(fn, sd.eigenvalues(i));
  const Matrix& v = sd.eigenvectors;
  return HermitianMatrix::hermitian_part(v * values.cast<Complex>().asDiagonal() * v.adjoint());
}

HermitianMatrix mat_fn(const HermitianMatrix& a, MatrixFunction fn) {
  return mat_fn(spectral(a), fn);
}

double log_divided_difference(double x, double y) {
  const double d = x - y;
  if (d == 0.0) return 1.0 / x;
  const double r = d / y;
  if (std::abs(r) < 0.5) return std::log1p(r) / d;
  return (std::log(x) - std::log(y)) / d;
}

Matrix dlog(const SpectralDecomposition& sd, const Matrix& x) {
  if (sd.eigenvalues.minCoeff() <= kPositivityFloor) {
    throw DomainError("dlog requires a strictly positive base point");
  }
  if (x.rows() != sd.eigenvectors.rows() || x.cols() != x.rows()) {
    throw DomainError("dlog direction has the wrong dimension");
  }
  const Matrix& v = sd.eigenvectors;
  Matrix y = v.adjoint() * x * v;
  const auto n = y.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto ci = sd.index_map[static_cast<std::size_t>(i)];
      const auto cj = sd.index_map[static_cast<std::size_t>(j)];
      const double w = ci == cj ? 1.0 / sd.clusters[ci].value
                                : log_divided_difference(sd.eigenvalues(i), sd.eigenvalues(j));
      y(i, j) *= w;
    }
  }
  return v * y * v.adjoint();
}

HermitianMatrix dlog(const HermitianMatrix& a, const HermitianMatrix& x) {
  if (a.dim() != x.dim()) throw DomainError("dlog: dimension mismatch");
  return HermitianMatrix::hermitian_part(dlog(spectral(a), x.matrix()));
}

double min_eig(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_abs_eig(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double kernel_integral(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("kernel_integral needs a, b > 0");
  const double d = a - b;
  if (std::abs(d) <= kKernelBranchTolerance * std::max(a, b)) return 3.0 / (2.0 * a);
  // lg(a/b) through log1p keeps the near-diagonal regime accurate.
  const double lg_ratio = std::abs(d / b) < 0.5 ? std::log1p(d / b) : std::log(a / b);
  return (a - 2.0 * b) / (d * d) * lg_ratio + 1.0 / d;
}

}  // namespace qmsi
