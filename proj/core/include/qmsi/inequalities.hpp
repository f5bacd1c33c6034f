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


// Functional-inequality constants: spectral gap, log-Sobolev, modified
// log-Sobolev and weak-regularity estimates, the regularity condition, the
// near-identity expansion of H and the doubly stochastic bridge K(t).

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmsi/random.hpp"
#include "qmsi/semigroup.hpp"
#include "qmsi/state_space.hpp"

namespace qmsi {

enum class BoundDirection { lower, upper };

std::string bound_direction_name(BoundDirection d);

/// A sup (lower bound) or inf (upper bound) of a ratio over sampled f > 0.
struct Estimate {
  double estimate = 0.0;
  BoundDirection direction = BoundDirection::lower;
  HermitianMatrix witness;
  std::size_t samples = 0;  // evaluations that produced a finite ratio
};

struct OptimizerConfig {
  std::uint64_t seed = 1;
  std::size_t starts = 32;
  std::size_t iterations = 200;
  double scale = 1.0;  // standard deviation of the entries of h in f = exp(h)
};

/// Called with every f evaluated by the optimizer.
using SampleSink = std::function<void(const HermitianMatrix&)>;

enum class RatioStatus { ok, degenerate, unbounded };

struct RatioValue {
  double value = 0.0;
  RatioStatus status = RatioStatus::ok;
};

/// Smallest eigenvalue of -L on the KMS complement of 1. Throws DomainError
/// for non-symmetric generators.
double spectral_gap(const WeightedSpace& w, const Generator& g);

/// H(f) / E(f, f). Degenerate when Var(f) < 1e-6 ||f||_2^2; unbounded when
/// E(f, f) <= 1e-12 ||f||_2^2 with Var(f) > 0.
RatioValue try_lsi_ratio(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f);
/// E(lg(rho^{1/2} f rho^{1/2}) - lg rho, f) / E(f). Degenerate when
/// E(f) <= 1e-12 ||f||_1 or Var(f) < 1e-6 ||f||_2^2.
RatioValue try_mlsi_ratio(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f);
/// E(lg(rho^{1/2} f rho^{1/2}) - lg rho, f) / E(I_{2,1} f, I_{2,1} f).
/// Degenerate when the denominator is <= 1e-12 ||f||_1 or Var(f) is tiny.
RatioValue try_wrc_ratio(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f);

/// Throwing forms: DegenerateInput or NoTightInequality.
double lsi_ratio(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f);
double mlsi_ratio(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f);
double wrc_ratio(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f);

/// Multistart Nelder-Mead over f = exp(h). Start k is seeded with
/// derive_seed(config.seed, k), so a larger budget evaluates a superset of
/// samples: the LSI estimate never decreases and the MLSI and WRC estimates
/// never increase with config.starts.
Estimate estimate_lsi(const WeightedSpace& w, const Generator& g, const OptimizerConfig& config,
                      const SampleSink& sink = {});
Estimate estimate_mlsi(const WeightedSpace& w, const Generator& g, const OptimizerConfig& config,
                       const SampleSink& sink = {});
Estimate wrc_beta(const WeightedSpace& w, const Generator& g, const OptimizerConfig& config,
                  const SampleSink& sink = {});

/// Random f = exp(h) on the generator's domain.
HermitianMatrix sample_positive(Rng& rng, const Generator& g, double scale = 1.0);

struct RcResult {
  double q = 0.0;
  double lhs = 0.0;    // E(I_{2,q} f, I_{2,q} f)
  double rhs = 0.0;    // q^2 / (4(q-1)) E_q(f, f)
  double slack = 0.0;  // rhs - lhs
  double scale = 0.0;  // max(|lhs|, |rhs|, ||f||_2^2 ||L||)
  bool pass = false;   // slack >= -1e-9 scale
};

RcResult rc_check(const WeightedSpace& w, const Generator& g, double q, const HermitianMatrix& f);

struct LimitRow {
  double q;
  double value;           // E_q(f, f) / (q - 1)
  double relative_error;  // |value - target| / scale
  bool finite;
};

struct LimitTable {
  double target = 0.0;  // entropy production at f
  double scale = 0.0;   // max(|target|, 1e-12 ||f||_2^2 ||L||)
  std::vector<LimitRow> rows;
  bool decreasing = false;
};

/// E_q(f, f) / (q - 1) along a sequence q -> 1 against its limit.
LimitTable rc_limit_probe(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f,
                          const std::vector<double>& q_sequence);

struct ExpansionResult {
  double A = 0.0;
  double B = 0.0;
  double var = 0.0;
  double fd_B = 0.0;  // NaN when the finite-difference sweep was skipped
};

/// Coefficients of H(1 + eps f) = eps A + eps^2 (B - Var(f)/2) + O(eps^3) for
/// centered Hermitian f. Throws DomainError if |tr(rho f)| > 1e-10 (1 + |f|).
ExpansionResult expand_H(const WeightedSpace& w, const HermitianMatrix& f, bool with_fd = true);

struct StochasticBridge {
  RealMatrix K;
  std::vector<std::size_t> index_map;
  std::vector<Matrix> projections;
  RealVector spectrum;  // eigenvalue of f at each index
  double t = 0.0;

  /// sum_{n,m} K_nm h(f_n) g(f_m).
  [[nodiscard]] double pairing(const std::function<double(double)>& h,
                               const std::function<double(double)>& g) const;
};

/// Requires L to be trace preserving and symmetric for the trace inner
/// product; throws DomainError otherwise.
StochasticBridge kt_bridge(const Generator& g, const HermitianMatrix& f, double t);

/// |sum K_nm h(f_n) g(f_m) - tr(P_t(h(f)) g(f))|.
double pairing_residual(const Generator& g, const StochasticBridge& bridge,
                          const std::function<double(double)>& h,
                          const std::function<double(double)>& gf);

struct ScalarCheck {
  std::string name;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_relative_slack = 0.0;  // min over samples of (rhs - lhs) / scale
  double equality_residual = 0.0;     // at the equality case
  bool pass = false;
};

/// Samples the four elementary inequalities behind the regularity proofs.
std::vector<ScalarCheck> scalar_inequality_suite(std::size_t sample_count, std::uint64_t seed = 7);

struct RcVerdict {
  double q;
  double worst_slack;  // min over samples of slack / scale
  bool pass;
  std::size_t samples;
};

struct HierarchyChecks {
  std::size_t samples = 0;
  double entropy_bridge_residual = 0.0;  // max |E(f) - 2 H(I_{2,1} f)| / max(1, |E(f)|)
  bool entropy_bridge_pass = true;
  double beta_target = 4.0;
  bool beta_proven = false;            // trace-state or classical generator
  double wrc_chain_violation = 0.0;    // max (beta E(I f, I f) - EP(f)) / scale
  bool wrc_chain_pass = true;
  double expansion_margin = 0.0;       // min (B - Var/2 - Var) / max(1, Var)
  bool expansion_pass = true;
  double lsi_near_identity_bound = 0.0;  // (B - Var/2) / E(g, g) at the gap witness
};

struct HierarchyConfig {
  OptimizerConfig optimizer;
  std::vector<double> q_grid = {1.1, 1.5, 2.0, 3.0, 5.0, 10.0};
  std::size_t rc_samples = 32;
};

struct InequalityReport {
  bool applicable = false;
  std::string status;  // "ok", "not applicable (non-symmetric)" or "no tight inequality"
  double gap = 0.0;
  std::optional<Estimate> c_lsi;
  std::optional<Estimate> alpha_mlsi;
  std::optional<Estimate> beta_wrc;
  std::string lsi_status = "ok";
  std::string mlsi_status = "ok";
  std::string wrc_status = "ok";
  std::vector<RcVerdict> rc_verdicts;
  HierarchyChecks checks;
};

InequalityReport hierarchy_report(const WeightedSpace& w, const Generator& g,
                                  const HierarchyConfig& config = {});

}  // namespace qmsi
