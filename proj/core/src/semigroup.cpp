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

#include "qmsi/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "qmsi/error.hpp"
#include "qmsi/random.hpp"

namespace qmsi {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Vector& v, Eigen::Index n) { return Eigen::Map<const Matrix>(v.data(), n, n); }

// tr(a b) without forming the product.
Complex trace_product(const Matrix& a, const Matrix& b) {
  return a.transpose().cwiseProduct(b).sum();
}

void require_dims(const WeightedSpace& w, const Generator& g) {
  if (w.dim() != g.dim()) throw DomainError("generator and state dimensions differ");
}

}  // namespace

std::string provenance_name(const Provenance& p) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, LindbladProvenance>) return "lindblad";
        if constexpr (std::is_same_v<T, ClassicalProvenance>) return "classical";
        return "raw";
      },
      p);
}

Generator::Generator(Matrix superop, ObservableDomain domain, Provenance provenance)
    : superop_(std::move(superop)), domain_(domain), provenance_(std::move(provenance)) {
  const auto d = superop_.rows();
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(d))));
  if (d < 1 || superop_.cols() != d || n * n != d) {
    throw DomainError("superoperator must be N^2 x N^2");
  }
  if (!superop_.allFinite()) throw DomainError("superoperator has non-finite entries");
  dim_ = static_cast<std::size_t>(n);
  scale_ = superop_.norm();
  const double residual = apply(Matrix::Identity(n, n)).norm();
  if (residual > 1e-10 * std::max(1.0, scale_)) {
    std::ostringstream os;
    os << "generator is not identity preserving: |L(1)| = " << residual;
    throw DomainError(os.str());
  }
}

Matrix Generator::apply(const Matrix& f) const {
  const auto n = static_cast<Eigen::Index>(dim_);
  if (f.rows() != n || f.cols() != n) throw DomainError("observable dimension mismatch");
  return unvec(superop_ * vec(f), n);
}

Generator Generator::with_diagnostics(ValidationRecord record) const {
  Generator out = *this;
  out.diagnostics_ = record;
  return out;
}

Generator build_lindblad(const HermitianMatrix& hamiltonian, const std::vector<Matrix>& jumps) {
  const auto n = static_cast<Eigen::Index>(hamiltonian.dim());
  const Matrix id = Matrix::Identity(n, n);
  const Matrix& h = hamiltonian.matrix();
  const Complex i(0.0, 1.0);
  Matrix s = i * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& l : jumps) {
    if (l.rows() != n || l.cols() != n) throw DomainError("jump operator dimension mismatch");
    const Matrix ll = l.adjoint() * l;
    s += kron(l.transpose(), l.adjoint()) - 0.5 * kron(id, ll) - 0.5 * kron(ll.transpose(), id);
  }
  return Generator(std::move(s), ObservableDomain::full, LindbladProvenance{hamiltonian, jumps});
}

std::pair<Generator, WeightedSpace> embed_classical(const RealMatrix& rates, const RealVector& law) {
  const auto n = rates.rows();
  if (n < 1 || rates.cols() != n || law.size() != n) {
    throw DomainError("rate matrix must be N x N with a length-N law");
  }
  const double scale = std::max(1.0, rates.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && rates(i, j) < 0.0) throw DomainError("rates: negative off-diagonal rate");
    }
    if (std::abs(rates.row(i).sum()) > 1e-10 * scale) {
      throw DomainError("rates: rows must sum to zero");
    }
  }
  if ((law.array() <= 0.0).any()) throw DomainError("pi: entries must be strictly positive");
  if (std::abs(law.sum() - 1.0) > 1e-12) throw DomainError("pi: entries must sum to one");
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(law(i) * rates(i, j) - law(j) * rates(j, i)) > 1e-10 * scale) {
        std::ostringstream os;
        os << "rates/pi: detailed balance fails at (" << i << ", " << j << ")";
        throw DomainError(os.str());
      }
    }
  }
  Matrix s = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) s(i + n * i, j + n * j) = rates(i, j);
  }
  Generator g(std::move(s), ObservableDomain::diagonal, ClassicalProvenance{rates, law});
  return {std::move(g), WeightedSpace::diagonal(law)};
}

Generator from_superoperator(const Matrix& superop) {
  return Generator(superop, ObservableDomain::full, RawProvenance{});
}

Generator depolarizing(const WeightedSpace& w, double rate) {
  const auto& sd = w.spectrum();
  const auto n = static_cast<Eigen::Index>(w.dim());
  std::vector<Matrix> jumps;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double amp = std::sqrt(rate * sd.eigenvalues(i));
      jumps.push_back(amp * sd.eigenvectors.col(i) * sd.eigenvectors.col(j).adjoint());
    }
  }
  return build_lindblad(HermitianMatrix::zero(w.dim()), jumps);
}

std::vector<Matrix> hermitian_basis(std::size_t n, ObservableDomain domain) {
  const auto k = static_cast<Eigen::Index>(n);
  std::vector<Matrix> basis;
  for (Eigen::Index i = 0; i < k; ++i) {
    Matrix e = Matrix::Zero(k, k);
    e(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  if (domain == ObservableDomain::diagonal) return basis;
  const double r = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      Matrix sym = Matrix::Zero(k, k);
      sym(i, j) = sym(j, i) = r;
      Matrix anti = Matrix::Zero(k, k);
      anti(i, j) = Complex(0.0, -r);
      anti(j, i) = Complex(0.0, r);
      basis.push_back(std::move(sym));
      basis.push_back(std::move(anti));
    }
  }
  return basis;
}

WeightedSpace find_invariant_state(const Generator& g) {
  const auto basis = hermitian_basis(g.dim(), g.domain());
  const auto d = static_cast<Eigen::Index>(basis.size());
  std::vector<Matrix> images;
  images.reserve(basis.size());
  for (const auto& b : basis) images.push_back(g.apply(b));
  // pairing(c, a) = tr(b_a L(b_c)); the state coefficients r solve pairing r = 0.
  Matrix pairing(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index a = 0; a < d; ++a) pairing(c, a) = trace_product(basis[a], images[c]);
  }
  Eigen::JacobiSVD<Matrix> svd(pairing, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index kernel = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) <= 1e-10 * top || top == 0.0) ++kernel;
  }
  if (kernel != 1) {
    std::ostringstream os;
    os << "predual kernel has dimension " << kernel << " (expected 1; non-ergodic generator)";
    throw NumericalError(os.str());
  }
  const Vector r = svd.matrixV().col(d - 1);
  const auto n = static_cast<Eigen::Index>(g.dim());
  Matrix rho = Matrix::Zero(n, n);
  for (Eigen::Index a = 0; a < d; ++a) rho += r(a) * basis[static_cast<std::size_t>(a)];
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-12) throw NumericalError("invariant kernel has no faithful state");
  rho /= tr;
  const auto herm = HermitianMatrix::hermitian_part(rho);
  if (!(min_eig(herm) > kPositivityFloor)) {
    throw NumericalError("invariant state is not faithful");
  }
  WeightedSpace w(herm);
  double worst = 0.0;
  for (const auto& img : images) worst = std::max(worst, std::abs(trace_product(w.rho().matrix(), img)));
  if (worst > 1e-9 * std::max(1.0, g.scale())) {
    throw NumericalError("invariant state residual too large");
  }
  return w;
}

double kms_asymmetry(const Generator& g, const WeightedSpace& w) {
  require_dims(w, g);
  const auto basis = hermitian_basis(g.dim(), g.domain());
  const auto d = static_cast<Eigen::Index>(basis.size());
  Matrix gram(d, d);
  for (Eigen::Index b = 0; b < d; ++b) {
    const Matrix img = g.apply(basis[static_cast<std::size_t>(b)]);
    for (Eigen::Index a = 0; a < d; ++a) gram(a, b) = kms_inner(w, basis[static_cast<std::size_t>(a)], img);
  }
  const double top = gram.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0.0;
  return (gram - gram.adjoint()).cwiseAbs().maxCoeff() / top;
}

ValidationRecord validate(const Generator& g, const WeightedSpace& w, const ValidationOptions& options) {
  require_dims(w, g);
  ValidationRecord rec;
  const auto n = static_cast<Eigen::Index>(g.dim());
  const double scale = std::max(1.0, g.scale());

  rec.identity_preserving.residual = g.apply(Matrix::Identity(n, n)).norm();
  rec.identity_preserving.pass = rec.identity_preserving.residual <= options.identity_tolerance * scale;

  double inv = 0.0;
  for (const auto& b : hermitian_basis(g.dim(), g.domain())) {
    inv = std::max(inv, std::abs(trace_product(w.rho().matrix(), g.apply(b))));
  }
  rec.invariance.residual = inv;
  rec.invariance.pass = inv <= options.invariance_tolerance * scale;

  rec.kms_symmetric.residual = kms_asymmetry(g, w);
  rec.kms_symmetric.pass = rec.kms_symmetric.residual <= options.kms_tolerance;

  // Positivity probe: rank-one projectors are the most sensitive inputs, the
  // exp(h) samples exercise the strictly positive cone.
  Rng rng(options.seed);
  const bool diag = g.domain() == ObservableDomain::diagonal;
  std::vector<Vector> samples;
  samples.reserve(options.probe_samples);
  for (std::size_t k = 0; k < options.probe_samples; ++k) {
    Matrix f;
    if (k % 2 == 0) {
      if (diag) {
        f = Matrix::Zero(n, n);
        f(static_cast<Eigen::Index>(k / 2) % n, static_cast<Eigen::Index>(k / 2) % n) = 1.0;
      } else {
        Vector psi(n);
        for (Eigen::Index i = 0; i < n; ++i) psi(i) = Complex(gaussian(rng), gaussian(rng));
        psi.normalize();
        f = psi * psi.adjoint();
      }
    } else {
      f = random_positive(rng, g.dim(), 1.0, diag).matrix();
    }
    samples.push_back(vec(f));
  }
  double worst = std::numeric_limits<double>::infinity();
  if (g.scale() > 0.0) {
    for (double tau : {0.01, 0.1, 0.5, 1.0, 3.0}) {
      const Matrix prop = (g.superop() * (tau / g.scale())).exp();
      for (const auto& s : samples) {
        const auto ft = HermitianMatrix::hermitian_part(unvec(prop * s, n));
        worst = std::min(worst, min_eig(ft));
      }
    }
  } else {
    for (const auto& s : samples) worst = std::min(worst, min_eig(HermitianMatrix::hermitian_part(unvec(s, n))));
  }
  rec.positivity_probe.residual = worst;
  rec.positivity_probe.pass = worst >= options.positivity_floor;
  return rec;
}

HermitianMatrix evolve(const Generator& g, const HermitianMatrix& f, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("evolve requires t >= 0");
  if (f.dim() != g.dim()) throw DomainError("observable dimension mismatch");
  if (t == 0.0) return f;
  const Matrix prop = (g.superop() * t).exp();
  return HermitianMatrix::hermitian_part(unvec(prop * vec(f.matrix()), static_cast<Eigen::Index>(g.dim())));
}

KmsSpectrum::KmsSpectrum(const Generator& g, const WeightedSpace& w, double tolerance)
    : basis_(hermitian_basis(g.dim(), g.domain())),
      quarter_(w.quarter_rho()),
      inv_quarter_(w.inv_quarter_rho()) {
  require_dims(w, g);
  const auto d = static_cast<Eigen::Index>(basis_.size());
  // u_a = rho^{-1/4} b_a rho^{-1/4} is KMS-orthonormal and Hermitian.
  std::vector<Matrix> units;
  units.reserve(basis_.size());
  for (const auto& b : basis_) units.push_back(inv_quarter_ * b * inv_quarter_);
  Matrix gram(d, d);
  for (Eigen::Index b = 0; b < d; ++b) {
    const Matrix img = g.apply(units[static_cast<std::size_t>(b)]);
    for (Eigen::Index a = 0; a < d; ++a) gram(a, b) = kms_inner(w, units[static_cast<std::size_t>(a)], img);
  }
  const double top = gram.cwiseAbs().maxCoeff();
  asymmetry_ = top == 0.0 ? 0.0 : (gram - gram.adjoint()).cwiseAbs().maxCoeff() / top;
  if (asymmetry_ > tolerance) {
    std::ostringstream os;
    os << "generator is not KMS-symmetric (relative asymmetry " << asymmetry_ << ")";
    throw DomainError(os.str());
  }
  form_ = -0.5 * (gram.real() + gram.real().transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(form_);
  if (es.info() != Eigen::Success) throw NumericalError("KMS eigensolver did not converge");
  rates_ = es.eigenvalues();
  modes_ = es.eigenvectors();

  // The identity has coordinates of rho^{1/2}, a unit vector since tr rho = 1.
  const RealVector one = coordinates(HermitianMatrix::identity(g.dim()));
  if (d < 2) {
    gap_ = 0.0;
    gap_witness_ = HermitianMatrix::zero(g.dim());
    return;
  }
  Eigen::HouseholderQR<RealMatrix> qr(one);
  const RealMatrix q = qr.householderQ();
  const RealMatrix complement = q.rightCols(d - 1);
  Eigen::SelfAdjointEigenSolver<RealMatrix> reduced(complement.transpose() * form_ * complement);
  gap_ = std::max(0.0, reduced.eigenvalues()(0));
  gap_witness_ = HermitianMatrix::hermitian_part(from_coordinates(complement * reduced.eigenvectors().col(0)));
}

RealVector KmsSpectrum::coordinates(const HermitianMatrix& f) const {
  const Matrix x = quarter_ * f.matrix() * quarter_;
  RealVector c(static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t a = 0; a < basis_.size(); ++a) {
    c(static_cast<Eigen::Index>(a)) = trace_product(basis_[a], x).real();
  }
  return c;
}

Matrix KmsSpectrum::from_coordinates(const RealVector& c) const {
  const auto n = quarter_.rows();
  Matrix x = Matrix::Zero(n, n);
  for (std::size_t a = 0; a < basis_.size(); ++a) x += c(static_cast<Eigen::Index>(a)) * basis_[a];
  return inv_quarter_ * x * inv_quarter_;
}

HermitianMatrix KmsSpectrum::evolve(const HermitianMatrix& f, double t) const {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("evolve requires t >= 0");
  if (static_cast<Eigen::Index>(f.dim()) != quarter_.rows()) throw DomainError("observable dimension mismatch");
  const RealVector c = coordinates(f);
  const Matrix inside = from_coordinates(c);
  const RealVector decay = (-t * rates_.array()).exp();
  const RealVector ct = modes_ * decay.asDiagonal() * (modes_.transpose() * c);
  return HermitianMatrix::hermitian_part(from_coordinates(ct) + (f.matrix() - inside));
}

Complex dirichlet_complex(const WeightedSpace& w, const Generator& g, const Matrix& f, const Matrix& h) {
  require_dims(w, g);
  return -kms_inner(w, f, g.apply(h));
}

double dirichlet(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f,
                 const HermitianMatrix& h) {
  return dirichlet_complex(w, g, f.matrix(), h.matrix()).real();
}

double dirichlet_q(const WeightedSpace& w, const Generator& g, double q, const HermitianMatrix& f) {
  if (!(q > 1.0)) throw DomainError("E_q requires q > 1");
  const auto pq = ExponentPair::from_q(q);
  return dirichlet(w, g, embed_Ipq(w, pq, f), f);
}

double entropy_production(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f) {
  return dirichlet(w, g, relative_log(w, f), f);
}

}  // namespace qmsi
