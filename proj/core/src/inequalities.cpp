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


#include "qmsi/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qmsi/error.hpp"
#include "qmsi/optimize.hpp"

namespace qmsi {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kVarianceFloor = 1e-6;
constexpr double kFormFloor = 1e-12;

double norm2sq(const WeightedSpace& w, const HermitianMatrix& f) { return kms_inner(w, f, f).real(); }

double form_scale(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f) {
  return norm2sq(w, f) * g.scale();
}

bool near_identity(const WeightedSpace& w, const HermitianMatrix& f) {
  return variance(w, f) < kVarianceFloor * norm2sq(w, f);
}

HermitianMatrix from_params(const std::vector<Matrix>& basis, const RealVector& x) {
  Matrix h = Matrix::Zero(basis.front().rows(), basis.front().cols());
  for (std::size_t a = 0; a < basis.size(); ++a) h += x(static_cast<Eigen::Index>(a)) * basis[a];
  return mat_exp(HermitianMatrix::hermitian_part(h));
}

using RatioFn = RatioValue (*)(const WeightedSpace&, const Generator&, const HermitianMatrix&);

Estimate multistart(const WeightedSpace& w, const Generator& g, const OptimizerConfig& config,
                    const SampleSink& sink, RatioFn ratio, BoundDirection direction,
                    const char* what) {
  if (w.dim() != g.dim()) throw DomainError("generator and state dimensions differ");
  const auto basis = hermitian_basis(g.dim(), g.domain());
  const double sign = direction == BoundDirection::lower ? -1.0 : 1.0;
  Estimate best;
  best.direction = direction;
  best.estimate = direction == BoundDirection::lower ? -std::numeric_limits<double>::infinity()
                                                     : std::numeric_limits<double>::infinity();
  bool unbounded = false;
  auto objective = [&](const RealVector& x) {
    const HermitianMatrix f = from_params(basis, x);
    if (sink) sink(f);
    const RatioValue r = ratio(w, g, f);
    if (r.status == RatioStatus::unbounded) unbounded = true;
    if (r.status != RatioStatus::ok || !std::isfinite(r.value)) {
      return std::numeric_limits<double>::infinity();
    }
    ++best.samples;
    if (sign * r.value < sign * best.estimate) {
      best.estimate = r.value;
      best.witness = f;
    }
    return sign * r.value;
  };
  NelderMeadOptions nm;
  nm.iterations = config.iterations;
  nm.initial_step = 0.5 * config.scale;
  for (std::size_t k = 0; k < config.starts; ++k) {
    Rng rng(derive_seed(config.seed, k));
    RealVector x0(static_cast<Eigen::Index>(basis.size()));
    for (Eigen::Index a = 0; a < x0.size(); ++a) x0(a) = config.scale * gaussian(rng);
    nelder_mead(objective, x0, nm);
  }
  if (unbounded) {
    std::ostringstream os;
    os << what << ": Dirichlet form vanishes on a direction of positive variance";
    throw NoTightInequality(os.str());
  }
  if (best.samples == 0) {
    std::ostringstream os;
    os << what << ": every sample was degenerate";
    throw DegenerateInput(os.str());
  }
  return best;
}

double checked(const RatioValue& r, const char* what) {
  if (r.status == RatioStatus::degenerate) {
    std::ostringstream os;
    os << what << ": degenerate input (f too close to a multiple of the identity)";
    throw DegenerateInput(os.str());
  }
  if (r.status == RatioStatus::unbounded) {
    std::ostringstream os;
    os << what << ": Dirichlet form vanishes while Var(f) > 0 (no tight inequality)";
    throw NoTightInequality(os.str());
  }
  return r.value;
}

}  // namespace

std::string bound_direction_name(BoundDirection d) {
  return d == BoundDirection::lower ? "lower" : "upper";
}

double spectral_gap(const WeightedSpace& w, const Generator& g) { return KmsSpectrum(g, w).gap(); }

RatioValue try_lsi_ratio(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f) {
  require_strictly_positive(f, "LSI ratio");
  const double n2 = norm2sq(w, f);
  if (variance(w, f) < kVarianceFloor * n2) return {kNaN, RatioStatus::degenerate};
  const double e = dirichlet(w, g, f, f);
  if (e <= kFormFloor * n2) return {kNaN, RatioStatus::unbounded};
  return {functional_H(w, f) / e, RatioStatus::ok};
}

RatioValue try_mlsi_ratio(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f) {
  require_strictly_positive(f, "MLSI ratio");
  const double ent = entropy_E(w, f);
  if (near_identity(w, f) || ent <= kFormFloor * expectation(w, f)) {
    return {kNaN, RatioStatus::degenerate};
  }
  return {entropy_production(w, g, f) / ent, RatioStatus::ok};
}

RatioValue try_wrc_ratio(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f) {
  require_strictly_positive(f, "WRC ratio");
  if (near_identity(w, f)) return {kNaN, RatioStatus::degenerate};
  const HermitianMatrix root = embed_I21(w, f);
  const double den = dirichlet(w, g, root, root);
  if (den <= kFormFloor * expectation(w, f)) return {kNaN, RatioStatus::degenerate};
  return {entropy_production(w, g, f) / den, RatioStatus::ok};
}

double lsi_ratio(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f) {
  return checked(try_lsi_ratio(w, g, f), "LSI ratio");
}

double mlsi_ratio(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f) {
  return checked(try_mlsi_ratio(w, g, f), "MLSI ratio");
}

double wrc_ratio(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f) {
  return checked(try_wrc_ratio(w, g, f), "WRC ratio");
}

Estimate estimate_lsi(const WeightedSpace& w, const Generator& g, const OptimizerConfig& config,
                      const SampleSink& sink) {
  return multistart(w, g, config, sink, &try_lsi_ratio, BoundDirection::lower, "LSI");
}

Estimate estimate_mlsi(const WeightedSpace& w, const Generator& g, const OptimizerConfig& config,
                       const SampleSink& sink) {
  return multistart(w, g, config, sink, &try_mlsi_ratio, BoundDirection::upper, "MLSI");
}

Estimate wrc_beta(const WeightedSpace& w, const Generator& g, const OptimizerConfig& config,
                  const SampleSink& sink) {
  return multistart(w, g, config, sink, &try_wrc_ratio, BoundDirection::upper, "WRC");
}

HermitianMatrix sample_positive(Rng& rng, const Generator& g, double scale) {
  return random_positive(rng, g.dim(), scale, g.domain() == ObservableDomain::diagonal);
}

RcResult rc_check(const WeightedSpace& w, const Generator& g, double q, const HermitianMatrix& f) {
  if (!(q > 1.0)) throw DomainError("RC requires q > 1");
  RcResult r;
  r.q = q;
  const HermitianMatrix lifted = embed_Ipq(w, 2.0, q, f);
  r.lhs = dirichlet(w, g, lifted, lifted);
  r.rhs = q * q / (4.0 * (q - 1.0)) * dirichlet_q(w, g, q, f);
  r.slack = r.rhs - r.lhs;
  r.scale = std::max({std::abs(r.lhs), std::abs(r.rhs), form_scale(w, g, f)});
  r.pass = r.slack >= -1e-9 * r.scale;
  return r;
}

LimitTable rc_limit_probe(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f,
                          const std::vector<double>& q_sequence) {
  LimitTable table;
  table.target = entropy_production(w, g, f);
  table.scale = std::max(std::abs(table.target), 1e-12 * form_scale(w, g, f));
  table.decreasing = true;
  double previous = std::numeric_limits<double>::infinity();
  for (double q : q_sequence) {
    LimitRow row{q, kNaN, kNaN, false};
    // Below q - 1 = 1e-6 the conjugate exponent exceeds 1e6 and the powers
    // lose all accuracy; such rows are reported as non-finite.
    if (q > 1.0 && q - 1.0 >= 1e-6) {
      row.value = dirichlet_q(w, g, q, f) / (q - 1.0);
      row.relative_error = table.scale > 0.0 ? std::abs(row.value - table.target) / table.scale
                                             : std::abs(row.value - table.target);
      row.finite = std::isfinite(row.relative_error);
    }
    if (row.finite) {
      if (row.relative_error > previous + 1e-13) table.decreasing = false;
      previous = row.relative_error;
    }
    table.rows.push_back(row);
  }
  return table;
}

ExpansionResult expand_H(const WeightedSpace& w, const HermitianMatrix& f, bool with_fd) {
  if (f.dim() != w.dim()) throw DomainError("observable dimension does not match rho");
  const double mean = expectation(w, f);
  const double size = f.frobenius_norm() == 0.0 ? 0.0 : max_abs_eig(f);
  if (std::abs(mean) > 1e-10 * std::max(1.0, size)) {
    std::ostringstream os;
    os << "expansion requires tr(rho f) = 0 (got " << mean << ")";
    throw DomainError(os.str());
  }
  ExpansionResult out;
  out.var = variance(w, f);
  const Matrix fbar = w.quarter_rho() * f.matrix() * w.quarter_rho();

  const SpectralDecomposition root = spectral(HermitianMatrix::hermitian_part(w.sqrt_rho()));
  out.A = (w.rho().matrix() * dlog(root, fbar)).trace().real();

  const auto& clusters = w.spectrum().clusters;
  for (const auto& ck : clusters) {
    const Matrix left = ck.projector * f.matrix();
    for (const auto& cj : clusters) {
      const double overlap = (left * cj.projector * f.matrix()).trace().real();
      const double a = std::sqrt(ck.value);
      const double b = std::sqrt(cj.value);
      out.B += b * ck.value * overlap * kernel_integral(a, b);
    }
  }

  out.fd_B = kNaN;
  if (!with_fd) return out;
  if (size == 0.0) {
    out.fd_B = 0.0;
    return out;
  }
  const auto id = HermitianMatrix::identity(f.dim());
  auto second = [&](double eps) {
    const double up = functional_H(w, id + eps * f);
    const double down = functional_H(w, id - eps * f);
    return (up + down) / (2.0 * eps * eps);
  };
  const double eps = 1e-2 / size;
  const double d1 = second(eps);
  const double d2 = second(eps / 2.0);
  const double d3 = second(eps / 4.0);
  const double r1 = (4.0 * d2 - d1) / 3.0;
  const double r2 = (4.0 * d3 - d2) / 3.0;
  out.fd_B = (16.0 * r2 - r1) / 15.0 + 0.5 * norm2sq(w, f);
  return out;
}

double StochasticBridge::pairing(const std::function<double(double)>& h,
                                 const std::function<double(double)>& g) const {
  RealVector hv(spectrum.size());
  RealVector gv(spectrum.size());
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    hv(i) = h(spectrum(i));
    gv(i) = g(spectrum(i));
  }
  return hv.dot(K * gv);
}

StochasticBridge kt_bridge(const Generator& g, const HermitianMatrix& f, double t) {
  if (f.dim() != g.dim()) throw DomainError("observable dimension mismatch");
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("K(t) requires t >= 0");
  const WeightedSpace trace = WeightedSpace::trace_state(g.dim());
  const double asym = kms_asymmetry(g, trace);
  if (asym > 1e-9) {
    std::ostringstream os;
    os << "K(t) requires a trace-symmetric generator (asymmetry " << asym << ")";
    throw DomainError(os.str());
  }
  double leak = 0.0;
  for (const auto& b : hermitian_basis(g.dim(), g.domain())) leak = std::max(leak, std::abs(g.apply(b).trace()));
  if (leak > 1e-9 * std::max(1.0, g.scale())) throw DomainError("K(t) requires a trace-preserving generator");

  const SpectralDecomposition sd = spectral(f);
  StochasticBridge out;
  out.t = t;
  out.index_map = sd.index_map;
  out.spectrum = sd.eigenvalues;
  std::vector<Matrix> evolved;
  for (const auto& c : sd.clusters) {
    out.projections.push_back(c.projector);
    evolved.push_back(evolve(g, HermitianMatrix::hermitian_part(c.projector), t).matrix());
  }
  const auto n = static_cast<Eigen::Index>(g.dim());
  out.K.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& ci = sd.clusters[sd.index_map[static_cast<std::size_t>(i)]];
    const Matrix& pi = evolved[sd.index_map[static_cast<std::size_t>(i)]];
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& cj = sd.clusters[sd.index_map[static_cast<std::size_t>(j)]];
      const double overlap = (pi * cj.projector).trace().real();
      out.K(i, j) = overlap / (static_cast<double>(ci.multiplicity) * static_cast<double>(cj.multiplicity));
    }
  }
  return out;
}

double pairing_residual(const Generator& g, const StochasticBridge& bridge,
                          const std::function<double(double)>& h,
                          const std::function<double(double)>& gf) {
  const auto n = static_cast<Eigen::Index>(g.dim());
  Matrix mh = Matrix::Zero(n, n);
  Matrix mg = Matrix::Zero(n, n);
  for (std::size_t c = 0; c < bridge.projections.size(); ++c) {
    // Every index of a cluster carries the same eigenvalue; take the first.
    std::size_t first = 0;
    while (bridge.index_map[first] != c) ++first;
    const double lambda = bridge.spectrum(static_cast<Eigen::Index>(first));
    mh += h(lambda) * bridge.projections[c];
    mg += gf(lambda) * bridge.projections[c];
  }
  const Matrix evolved = evolve(g, HermitianMatrix::hermitian_part(mh), bridge.t).matrix();
  const double direct = (evolved * mg).trace().real();
  return std::abs(bridge.pairing(h, gf) - direct);
}

namespace {

// (rhs - lhs) / max(|lhs|, |rhs|); zero when both sides vanish.
double relative_slack(double lhs, double rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0.0 ? 0.0 : (rhs - lhs) / scale;
}

void record(ScalarCheck& check, double lhs, double rhs) {
  const double s = relative_slack(lhs, rhs);
  ++check.samples;
  check.worst_relative_slack = std::min(check.worst_relative_slack, s);
  if (s < -1e-12) ++check.violations;
}

// Point in (0, hi].
double open_uniform(Rng& rng, double hi) { return hi * (1.0 - uniform(rng, 0.0, 1.0)); }

// (a^{q/2} - b^{q/2})^2 <= q^2/(4(q-1)) (a^{q-1} - b^{q-1})(a - b), divided by b^q.
std::pair<double, double> rc_sides(double a, double b, double q) {
  const double l = std::log(a / b);
  const double left = std::expm1(0.5 * q * l);
  return {left * left, q * q / (4.0 * (q - 1.0)) * std::expm1((q - 1.0) * l) * std::expm1(l)};
}

// lg t / (t - 1) >= 2 / (t + 1), written as lhs <= rhs.
std::pair<double, double> log_sides(double t) {
  const double ratio = t == 1.0 ? 1.0 : std::log1p(t - 1.0) / (t - 1.0);
  return {2.0 / (t + 1.0), ratio};
}

// (b^{q/2} - a^{q/2}) b^{q/2} <= (q/2) b^{q-1} (b - a), divided by b^q.
std::pair<double, double> power_sides(double a, double b, double q) {
  const double l = std::log(a / b);
  return {-std::expm1(0.5 * q * l), -0.5 * q * std::expm1(l)};
}

// (2/b)(b - a) <= lg b^2 - lg a^2.
std::pair<double, double> log_tangent_sides(double a, double b) {
  return {-2.0 * std::expm1(std::log(a / b)), 2.0 * std::log(b / a)};
}

}  // namespace

std::vector<ScalarCheck> scalar_inequality_suite(std::size_t sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw DomainError("sample_count must be >= 1");
  std::vector<ScalarCheck> out(4);
  out[0].name = "rc_elementary";
  out[1].name = "log_ratio";
  out[2].name = "power_tangent";
  out[3].name = "log_tangent";
  for (auto& c : out) c.worst_relative_slack = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  for (std::size_t k = 0; k < sample_count; ++k) {
    const double a = open_uniform(rng, 10.0);
    const double b = open_uniform(rng, 10.0);
    const double q = 1.0 + open_uniform(rng, 9.0);
    const double t = open_uniform(rng, 100.0);
    const double q2 = 2.0 + 8.0 * uniform(rng, 0.0, 1.0);
    auto [l0, r0] = rc_sides(a, b, q);
    record(out[0], l0, r0);
    auto [l1, r1] = log_sides(t);
    record(out[1], l1, r1);
    auto [l2, r2] = power_sides(a, b, q2);
    record(out[2], l2, r2);
    auto [l3, r3] = log_tangent_sides(a, b);
    record(out[3], l3, r3);
  }
  {
    auto [l, r] = rc_sides(2.5, 2.5, 3.0);
    out[0].equality_residual = std::abs(r - l);
  }
  {
    auto [l, r] = log_sides(1.0);
    auto [l8, r8] = log_sides(1.0 + 1e-8);
    out[1].equality_residual = std::max(std::abs(r - l), std::abs(r8 - l8));
  }
  {
    auto [l, r] = power_sides(2.5, 2.5, 4.0);
    out[2].equality_residual = std::abs(r - l);
  }
  {
    auto [l, r] = log_tangent_sides(2.5, 2.5);
    out[3].equality_residual = std::abs(r - l);
  }
  for (auto& c : out) c.pass = c.violations == 0 && c.equality_residual <= 1e-12;
  return out;
}

InequalityReport hierarchy_report(const WeightedSpace& w, const Generator& g,
                                  const HierarchyConfig& config) {
  InequalityReport report;
  if (kms_asymmetry(g, w) > 1e-9) {
    report.status = "not applicable (non-symmetric)";
    report.gap = kNaN;
    report.lsi_status = report.mlsi_status = report.wrc_status = "not applicable";
    return report;
  }
  report.applicable = true;
  report.status = "ok";
  const KmsSpectrum spectrum(g, w);
  report.gap = spectrum.gap();

  HierarchyChecks& checks = report.checks;
  checks.beta_proven = w.is_trace_state(1e-12) || g.domain() == ObservableDomain::diagonal;
  checks.expansion_margin = std::numeric_limits<double>::infinity();
  const double beta = checks.beta_target;

  auto check_expansion = [&](const HermitianMatrix& centered) {
    const ExpansionResult e = expand_H(w, centered, false);
    const double margin = (e.B - 1.5 * e.var) / std::max(1.0, e.var);
    checks.expansion_margin = std::min(checks.expansion_margin, margin);
    if (margin < -1e-9) checks.expansion_pass = false;
  };

  SampleSink sink = [&](const HermitianMatrix& f) {
    ++checks.samples;
    const HermitianMatrix root = embed_I21(w, f);
    const double ent = entropy_E(w, f);
    const double bridge = std::abs(ent - 2.0 * functional_H(w, root)) / std::max(1.0, std::abs(ent));
    checks.entropy_bridge_residual = std::max(checks.entropy_bridge_residual, bridge);
    if (bridge > 1e-9) checks.entropy_bridge_pass = false;

    const double lhs = beta * dirichlet(w, g, root, root);
    const double rhs = entropy_production(w, g, f);
    const double scale = std::max({std::abs(lhs), std::abs(rhs), form_scale(w, g, f)});
    const double violation = scale > 0.0 ? (lhs - rhs) / scale : 0.0;
    checks.wrc_chain_violation = std::max(checks.wrc_chain_violation, violation);
    if (checks.beta_proven && violation > 1e-9) checks.wrc_chain_pass = false;

    const double mean = expectation(w, f);
    const HermitianMatrix centered = f - mean * HermitianMatrix::identity(f.dim());
    if (variance(w, centered) > 1e-14 * norm2sq(w, f)) check_expansion(centered);
  };

  const double ergodic_floor = 1e-12 * std::max(1.0, g.scale());
  if (report.gap <= ergodic_floor) {
    report.status = "no tight inequality";
    report.lsi_status = "no tight inequality";
  } else {
    try {
      report.c_lsi = estimate_lsi(w, g, config.optimizer, sink);
    } catch (const NoTightInequality&) {
      report.lsi_status = "no tight inequality";
    } catch (const DegenerateInput&) {
      report.lsi_status = "degenerate";
    }
  }
  try {
    report.alpha_mlsi = estimate_mlsi(w, g, config.optimizer, sink);
  } catch (const DegenerateInput&) {
    report.mlsi_status = "degenerate";
  }
  try {
    report.beta_wrc = wrc_beta(w, g, config.optimizer, sink);
  } catch (const DegenerateInput&) {
    report.wrc_status = "degenerate";
  }

  const HermitianMatrix& witness = spectrum.gap_witness();
  if (report.gap > ergodic_floor && variance(w, witness) > 0.0) {
    const ExpansionResult e = expand_H(w, witness, false);
    checks.lsi_near_identity_bound = (e.B - 0.5 * e.var) / dirichlet(w, g, witness, witness);
    check_expansion(witness);
  }
  if (!std::isfinite(checks.expansion_margin)) checks.expansion_margin = 0.0;

  Rng rng(derive_seed(config.optimizer.seed, 0x5c));
  std::vector<HermitianMatrix> probes;
  for (std::size_t k = 0; k < config.rc_samples; ++k) probes.push_back(sample_positive(rng, g, config.optimizer.scale));
  for (double q : config.q_grid) {
    RcVerdict v{q, std::numeric_limits<double>::infinity(), true, probes.size()};
    for (const auto& f : probes) {
      const RcResult r = rc_check(w, g, q, f);
      const double rel = r.scale > 0.0 ? r.slack / r.scale : 0.0;
      v.worst_slack = std::min(v.worst_slack, rel);
      v.pass = v.pass && r.pass;
    }
    if (probes.empty()) v.worst_slack = 0.0;
    report.rc_verdicts.push_back(v);
  }
  return report;
}

}  // namespace qmsi
