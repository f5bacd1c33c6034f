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

// Dense Hermitian matrix primitives: spectral decomposition, matrix
// functions, the Frechet derivative of the logarithm and the closed-form
// scalar integral used by the second-order entropy expansion.

#pragma once

#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace qmsi {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kClusterTolerance = 1e-10;
inline constexpr double kPositivityFloor = 1e-12;
inline constexpr double kKernelBranchTolerance = 1e-9;

/// An N x N complex self-adjoint matrix.
///
/// Construction through `HermitianMatrix(const Matrix&)` rejects inputs whose
/// anti-Hermitian part exceeds 1e-12 relative (Frobenius) and symmetrizes the
/// rest. `hermitian_part` skips the check; it is meant for results of
/// arithmetic that is Hermitian in exact arithmetic.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const Matrix& m);

  static HermitianMatrix hermitian_part(const Matrix& m);
  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix zero(std::size_t n);
  static HermitianMatrix diagonal(const RealVector& d);

  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  [[nodiscard]] const Matrix& matrix() const { return m_; }
  [[nodiscard]] Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  [[nodiscard]] double trace() const { return m_.trace().real(); }
  [[nodiscard]] double frobenius_norm() const { return m_.norm(); }
  [[nodiscard]] bool is_diagonal(double tol = 0.0) const;

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);

 private:
  struct Unchecked {};
  HermitianMatrix(Unchecked, Matrix m) : m_(std::move(m)) {}

  Matrix m_;
};

/// One eigenvalue cluster: its representative value and spectral projection.
struct SpectralCluster {
  double value;
  Matrix projector;
  std::size_t multiplicity;
};

/// Spectral resolution A = sum_lambda lambda Q_lambda.
struct SpectralDecomposition {
  RealVector eigenvalues;   // ascending, repeated by multiplicity
  Matrix eigenvectors;      // columns, same order as eigenvalues
  std::vector<SpectralCluster> clusters;
  std::vector<std::size_t> index_map;  // eigenvector index -> cluster index

  [[nodiscard]] Matrix reconstruct() const;
};

SpectralDecomposition spectral(const HermitianMatrix& a);

struct LogFn {};
struct ExpFn {};
struct PowerFn {
  double exponent;
};
using MatrixFunction = std::variant<LogFn, ExpFn, PowerFn>;

/// Applies a scalar function through the spectral resolution. Log and
/// non-integer powers require min eigenvalue > 1e-12.
HermitianMatrix mat_fn(const HermitianMatrix& a, MatrixFunction fn);
HermitianMatrix mat_fn(const SpectralDecomposition& sd, MatrixFunction fn);

inline HermitianMatrix mat_log(const HermitianMatrix& a) { return mat_fn(a, LogFn{}); }
inline HermitianMatrix mat_exp(const HermitianMatrix& a) { return mat_fn(a, ExpFn{}); }
inline HermitianMatrix mat_pow(const HermitianMatrix& a, double r) {
  return mat_fn(a, PowerFn{r});
}

/// Frechet derivative of the matrix logarithm at A > 0 in direction X,
/// d/dh log(A + hX) at h = 0, via the Loewner divided-difference matrix in
/// the eigenbasis of A.
HermitianMatrix dlog(const HermitianMatrix& a, const HermitianMatrix& x);

/// Same derivative for a general (not necessarily Hermitian) direction.
Matrix dlog(const SpectralDecomposition& a, const Matrix& x);

double min_eig(const HermitianMatrix& a);
double max_abs_eig(const HermitianMatrix& a);

/// Integral over s in (0, inf) of (2s + a) / ((s + b)(s + a)^2) for a, b > 0.
double kernel_integral(double a, double b);

/// Divided difference (log x - log y) / (x - y), equal to 1/x on the diagonal.
double log_divided_difference(double x, double y);

}  // namespace qmsi
