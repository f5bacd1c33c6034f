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


#include "qmsi/decay_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qmsi/error.hpp"

namespace qmsi {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_times(const std::vector<double>& times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) throw DomainError("times must be finite and >= 0");
    if (i > 0 && times[i] < times[i - 1]) throw DomainError("times must be ascending");
  }
}

double rate_or_nan(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f, double ent) {
  if (!(ent > 1e-12 * expectation(w, f))) return kNaN;
  return entropy_production(w, g, f) / ent;
}

double worst_step_increase(const Trajectory& tr, double alpha) {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < tr.times.size(); ++i) {
    const double a = std::exp(alpha * tr.times[i]) * tr.entropy[i];
    const double b = std::exp(alpha * tr.times[i + 1]) * tr.entropy[i + 1];
    worst = std::max(worst, b - a);
  }
  return worst;
}

}  // namespace

std::vector<double> default_time_grid(double gap, std::size_t points) {
  const double unit = gap > 0.0 ? 1.0 / gap : 1.0;
  std::vector<double> times{0.0};
  const double lo = std::log(1e-3 * unit);
  const double hi = std::log(5.0 * unit);
  for (std::size_t i = 0; i < points; ++i) {
    const double s = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    times.push_back(std::exp(lo + s * (hi - lo)));
  }
  return times;
}

double entropy_rate(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f) {
  const double ent = entropy_E(w, f);
  const double r = rate_or_nan(w, g, f, ent);
  if (std::isnan(r)) throw DegenerateInput("entropy rate: E(f) vanishes (f is a multiple of the identity)");
  return r;
}

Trajectory entropy_trajectory(const WeightedSpace& w, const Generator& g, const KmsSpectrum& spectrum,
                              const HermitianMatrix& f, const std::vector<double>& times) {
  require_times(times);
  require_strictly_positive(f, "entropy trajectory");
  Trajectory tr;
  tr.times = times;
  for (double t : times) {
    const HermitianMatrix ft = spectrum.evolve(f, t);
    const double ent = entropy_E(w, ft);
    tr.entropy.push_back(ent);
    tr.variance.push_back(variance(w, ft));
    tr.analytic_rate.push_back(rate_or_nan(w, g, ft, ent));
    tr.l1_norm.push_back(norm_p(w, ft, 1.0));
  }
  return tr;
}

Trajectory entropy_trajectory(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f,
                              const std::vector<double>& times) {
  return entropy_trajectory(w, g, KmsSpectrum(g, w), f, times);
}

Trajectory variance_trajectory(const WeightedSpace& w, const KmsSpectrum& spectrum,
                               const HermitianMatrix& f, const std::vector<double>& times) {
  require_times(times);
  Trajectory tr;
  tr.times = times;
  for (double t : times) tr.variance.push_back(variance(w, spectrum.evolve(f, t)));
  return tr;
}

VarianceVerdict check_variance_decay(const Trajectory& trajectory, double gap) {
  VarianceVerdict v;
  v.gap = gap;
  v.pass = true;
  if (trajectory.times.empty()) return v;
  const double v0 = trajectory.variance.front();
  const double t0 = trajectory.times.front();
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    const double bound = std::exp(-2.0 * gap * (trajectory.times[i] - t0)) * v0;
    const double value = trajectory.variance[i];
    if (bound > 0.0) v.worst_ratio = std::max(v.worst_ratio, value / bound);
    // The absolute floor absorbs rounding when Var(f) itself is zero.
    if (value > bound * (1.0 + 1e-9) + 1e-14 * std::max(1.0, v0)) v.pass = false;
  }
  return v;
}

EntropyDecayVerdict verify_entropy_decay(const WeightedSpace& w, const Generator& g, const KmsSpectrum& spectrum,
                                const HermitianMatrix& f, const std::vector<double>& times) {
  const Trajectory tr = entropy_trajectory(w, g, spectrum, f, times);
  EntropyDecayVerdict v;
  double alpha = std::numeric_limits<double>::infinity();
  for (double r : tr.analytic_rate) {
    if (std::isfinite(r)) alpha = std::min(alpha, r);
  }
  v.alpha = std::isfinite(alpha) ? std::max(0.0, alpha) : 0.0;
  const double e0 = tr.entropy.empty() ? 0.0 : tr.entropy.front();
  const double norm = e0 > 0.0 ? e0 : 1.0;
  v.worst_increase = worst_step_increase(tr, v.alpha) / norm;
  v.monotone = v.worst_increase <= 1e-9;
  v.inflated_worst_increase = worst_step_increase(tr, 1.01 * v.alpha) / norm;
  v.sharpness_broken = v.inflated_worst_increase > 1e-9;

  v.consistent = true;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const HermitianMatrix ft = spectrum.evolve(f, tr.times[i]);
    const RatioValue r = try_mlsi_ratio(w, g, ft);
    if (r.status == RatioStatus::ok && v.alpha > r.value + 1e-9 * std::max(1.0, std::abs(r.value))) {
      v.consistent = false;
    }
  }

  // Fourth-order centered differences of E(f_t) at interior grid points.
  const double unit = spectrum.gap() > 0.0 ? 1.0 / spectrum.gap() : 1.0;
  v.derivative_pass = true;
  for (std::size_t i = 1; i + 1 < tr.times.size(); ++i) {
    const double t = tr.times[i];
    if (t <= 0.0 || !std::isfinite(tr.analytic_rate[i])) continue;
    const double target = -tr.analytic_rate[i] * tr.entropy[i];
    if (target == 0.0) continue;
    auto ent = [&](double s) { return entropy_E(w, spectrum.evolve(f, s)); };
    auto stencil = [&](double h) {
      return (-ent(t + 2 * h) + 8 * ent(t + h) - 8 * ent(t - h) + ent(t - 2 * h)) / (12 * h);
    };
    // Small eigenvalues of f_t make the higher derivatives of lg large, so
    // the step is halved until two successive stencils agree.
    double h = std::min(1e-3 * unit, t / 4.0);
    double d = stencil(h);
    for (int k = 0; k < 8; ++k) {
      const double finer = stencil(h / 2.0);
      const bool settled = std::abs(finer - d) <= 1e-9 * std::abs(finer);
      d = finer;
      h /= 2.0;
      if (settled) break;
    }
    const double err = std::abs(d - target) / std::abs(target);
    ++v.derivative_points;
    v.worst_derivative_error = std::max(v.worst_derivative_error, err);
    if (err > 1e-6) v.derivative_pass = false;
  }
  v.pass = v.monotone && v.derivative_pass && v.consistent;
  return v;
}

EntropyDecayVerdict verify_entropy_decay(const WeightedSpace& w, const Generator& g, const HermitianMatrix& f,
                                const std::vector<double>& times) {
  return verify_entropy_decay(w, g, KmsSpectrum(g, w), f, times);
}

SearchLog search_counterexample(const SearchConfig& config) {
  if (config.budget < 1) throw DomainError("search budget must be >= 1");
  if (config.family == Family::trace_nonsymmetric) {
    throw DomainError("search samples symmetric families only");
  }
  SearchLog log;
  log.config = config;
  for (std::size_t i = 0; i < config.budget; ++i) {
    SearchEntry e;
    e.index = i;
    e.seed = derive_seed(config.seed, i);
    Rng rng(e.seed);
    const SampledGenerator s = sample_generator(rng, config.family, config.dim);
    e.gap = KmsSpectrum(s.generator, s.space).gap();
    OptimizerConfig opt = config.optimizer;
    opt.seed = e.seed;
    try {
      e.alpha_estimate = estimate_mlsi(s.space, s.generator, opt).estimate;
    } catch (const DegenerateInput&) {
      e.alpha_estimate = kNaN;
    }
    e.flagged = e.alpha_estimate > 1e-10 && e.gap <= 1e-10;
    if (e.flagged) {
      e.label = "candidate (inconclusive, upper bound only)";
      ++log.flags;
    }
    log.entries.push_back(std::move(e));
  }
  return log;
}

}  // namespace qmsi
