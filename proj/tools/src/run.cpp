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


#include "qmsi_app/run.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "qmsi/decay_lab.hpp"
#include "qmsi/error.hpp"
#include "qmsi/families.hpp"
#include "qmsi/inequalities.hpp"
#include "qmsi/random.hpp"
#include "qmsi/semigroup.hpp"
#include "qmsi/state_space.hpp"
#include "qmsi_app/problem_spec.hpp"
#include "qmsi_app/report.hpp"

#ifndef QMSI_VERSION
#define QMSI_VERSION "0.0.0"
#endif

namespace qmsi::app {

namespace {

// Sub-seeds for the independent random draws of one run.
constexpr std::uint64_t kProbeStream = 1;
constexpr std::uint64_t kObservableStream = 2;
constexpr std::uint64_t kOptimizerStream = 3;

struct Context {
  ProblemSpec spec;
  ValidationOptions validation;
  std::optional<std::string> csv;
  std::string diagnostics;
};

Json check_json(const CheckResult& c) {
  Json j = Json::object();
  j["pass"] = c.pass;
  j["residual"] = c.residual;
  return j;
}

Json validation_json(const ValidationRecord& r, const Generator& g) {
  Json j = Json::object();
  j["provenance"] = provenance_name(g.provenance());
  j["complete_positivity"] =
      std::holds_alternative<RawProvenance>(g.provenance()) ? "probe only" : "by construction";
  j["identity_preserving"] = check_json(r.identity_preserving);
  j["invariance"] = check_json(r.invariance);
  j["kms_symmetric"] = check_json(r.kms_symmetric);
  j["positivity_probe"] = check_json(r.positivity_probe);
  j["all_pass"] = r.all_pass();
  return j;
}

Json estimate_json(const std::optional<Estimate>& e) {
  if (!e) return nullptr;
  Json j = Json::object();
  j["estimate"] = e->estimate;
  j["direction"] = bound_direction_name(e->direction);
  j["samples"] = e->samples;
  j["witness"] = matrix_json(e->witness.matrix());
  return j;
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

HermitianMatrix random_observable(const Generator& g, std::uint64_t seed) {
  Rng rng(derive_seed(seed, kObservableStream));
  return g.domain() == ObservableDomain::diagonal ? random_diagonal(rng, g.dim()) : random_hermitian(rng, g.dim());
}

Json run_gap(const Context&, const Problem& p) {
  Json j = Json::object();
  const double asym = kms_asymmetry(p.generator, p.space);
  j["kms_asymmetry"] = asym;
  try {
    const KmsSpectrum s(p.generator, p.space);
    j["applicable"] = true;
    j["gap"] = s.gap();
    j["rates"] = vector_json(s.rates());
    j["gap_witness"] = matrix_json(s.gap_witness().matrix());
  } catch (const DomainError&) {
    j["applicable"] = false;
    j["status"] = "not applicable (non-symmetric)";
    j["gap"] = nan();
  }
  return j;
}

Json run_constants(const Context& ctx, const Problem& p) {
  const SpecOptions& o = ctx.spec.options;
  HierarchyConfig config;
  config.optimizer.seed = derive_seed(o.seed, kOptimizerStream);
  config.optimizer.starts = o.budget;
  config.q_grid = o.q_grid;
  const InequalityReport r = hierarchy_report(p.space, p.generator, config);

  Json j = Json::object();
  j["applicable"] = r.applicable;
  j["status"] = r.status;
  j["gap"] = r.gap;
  j["c_lsi"] = estimate_json(r.c_lsi);
  j["lsi_status"] = r.lsi_status;
  j["alpha_mlsi"] = estimate_json(r.alpha_mlsi);
  j["mlsi_status"] = r.mlsi_status;
  j["beta_wrc"] = estimate_json(r.beta_wrc);
  j["wrc_status"] = r.wrc_status;
  Json rc = Json::array();
  for (const auto& v : r.rc_verdicts) {
    Json e = Json::object();
    e["q"] = v.q;
    e["worst_slack"] = v.worst_slack;
    e["samples"] = v.samples;
    e["pass"] = v.pass;
    rc.push_back(std::move(e));
  }
  j["rc_verdicts"] = std::move(rc);
  const HierarchyChecks& c = r.checks;
  Json checks = Json::object();
  checks["samples"] = c.samples;
  checks["entropy_bridge_residual"] = c.entropy_bridge_residual;
  checks["entropy_bridge_pass"] = c.entropy_bridge_pass;
  checks["beta_target"] = c.beta_target;
  checks["beta_proven"] = c.beta_proven;
  checks["wrc_chain_violation"] = c.wrc_chain_violation;
  checks["wrc_chain_pass"] = c.wrc_chain_pass;
  checks["expansion_margin"] = c.expansion_margin;
  checks["expansion_pass"] = c.expansion_pass;
  checks["lsi_near_identity_bound"] = c.lsi_near_identity_bound;
  j["checks"] = std::move(checks);
  return j;
}

std::string trajectory_csv(const Trajectory& tr) {
  std::ostringstream os;
  os << "t,entropy,variance,analytic_rate,l1_norm\n";
  auto cell = [](double x) { return std::isfinite(x) ? format_double(x) : std::string("nan"); };
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    os << cell(tr.times[i]) << ',' << cell(tr.entropy[i]) << ',' << cell(tr.variance[i]) << ','
       << cell(tr.analytic_rate[i]) << ',' << cell(tr.l1_norm[i]) << '\n';
  }
  return os.str();
}

Json run_decay(Context& ctx, const Problem& p) {
  const SpecOptions& o = ctx.spec.options;
  const KmsSpectrum s(p.generator, p.space, o.tolerance);
  HermitianMatrix f;
  if (o.observable) {
    f = HermitianMatrix(*o.observable);
  } else {
    Rng rng(derive_seed(o.seed, kObservableStream));
    f = sample_positive(rng, p.generator);
  }
  const std::vector<double> times = o.times ? *o.times : default_time_grid(s.gap());
  const Trajectory tr = entropy_trajectory(p.space, p.generator, s, f, times);
  const EntropyDecayVerdict ed = verify_entropy_decay(p.space, p.generator, s, f, times);
  const VarianceVerdict vv = check_variance_decay(tr, s.gap());
  ctx.csv = trajectory_csv(tr);

  Json j = Json::object();
  j["gap"] = s.gap();
  j["observable"] = matrix_json(f.matrix());
  Json traj = Json::object();
  traj["t"] = tr.times;
  traj["entropy"] = tr.entropy;
  traj["variance"] = tr.variance;
  traj["analytic_rate"] = tr.analytic_rate;
  traj["l1_norm"] = tr.l1_norm;
  j["trajectory"] = std::move(traj);
  Json e = Json::object();
  e["alpha"] = ed.alpha;
  e["worst_increase"] = ed.worst_increase;
  e["monotone"] = ed.monotone;
  e["inflated_worst_increase"] = ed.inflated_worst_increase;
  e["sharpness_broken"] = ed.sharpness_broken;
  e["derivative_points"] = ed.derivative_points;
  e["worst_derivative_error"] = ed.worst_derivative_error;
  e["derivative_pass"] = ed.derivative_pass;
  e["consistent"] = ed.consistent;
  e["pass"] = ed.pass;
  j["entropy_decay"] = std::move(e);
  Json v = Json::object();
  v["worst_ratio"] = vv.worst_ratio;
  v["pass"] = vv.pass;
  j["variance_decay"] = std::move(v);
  return j;
}

Json run_expand(const Context& ctx, const Problem& p) {
  const SpecOptions& o = ctx.spec.options;
  const HermitianMatrix raw = o.observable ? HermitianMatrix(*o.observable) : random_observable(p.generator, o.seed);
  const double mean = expectation(p.space, raw);
  const HermitianMatrix f = raw - mean * HermitianMatrix::identity(p.space.dim());
  const ExpansionResult e = expand_H(p.space, f);
  Json j = Json::object();
  j["removed_mean"] = mean;
  j["observable"] = matrix_json(f.matrix());
  j["A"] = e.A;
  j["B"] = e.B;
  j["variance"] = e.var;
  j["B_over_variance"] = e.var > 0.0 ? e.B / e.var : nan();
  j["fd_B"] = e.fd_B;
  j["fd_relative_error"] = e.B != 0.0 ? std::abs(e.fd_B - e.B) / std::abs(e.B) : nan();
  return j;
}

Json run_kt(const Context& ctx, const Problem& p) {
  const SpecOptions& o = ctx.spec.options;
  const HermitianMatrix f = o.observable ? HermitianMatrix(*o.observable) : random_observable(p.generator, o.seed);
  const StochasticBridge b = kt_bridge(p.generator, f, o.t);
  const RealMatrix& k = b.K;
  const auto ones = RealVector::Ones(k.rows());
  Json j = Json::object();
  j["t"] = b.t;
  j["spectrum"] = vector_json(b.spectrum);
  Json idx = Json::array();
  for (auto i : b.index_map) idx.push_back(i);
  j["index_map"] = std::move(idx);
  j["K"] = real_matrix_json(k);
  j["min_entry"] = k.minCoeff();
  j["symmetry_error"] = (k - k.transpose()).cwiseAbs().maxCoeff();
  j["row_sum_error"] = (k * ones - ones).cwiseAbs().maxCoeff();
  j["column_sum_error"] = (k.transpose() * ones - ones).cwiseAbs().maxCoeff();
  const std::vector<std::pair<std::string, std::function<double(double)>>> fns = {
      {"x", [](double x) { return x; }},
      {"x^2", [](double x) { return x * x; }},
      {"exp(-x)", [](double x) { return std::exp(-x); }},
  };
  Json pairs = Json::array();
  for (const auto& [hn, h] : fns) {
    for (const auto& [gn, gf] : fns) {
      Json e = Json::object();
      e["h"] = hn;
      e["g"] = gn;
      e["residual"] = pairing_residual(p.generator, b, h, gf);
      pairs.push_back(std::move(e));
    }
  }
  j["pairings"] = std::move(pairs);
  return j;
}

Json run_search(const Context& ctx) {
  const SpecOptions& o = ctx.spec.options;
  SearchConfig config;
  config.seed = o.seed;
  config.dim = ctx.spec.dim;
  config.family = *parse_family(o.family);
  config.budget = o.budget;
  const SearchLog log = search_counterexample(config);
  Json j = Json::object();
  j["family"] = o.family;
  j["dim"] = config.dim;
  j["flags"] = log.flags;
  Json entries = Json::array();
  for (const auto& e : log.entries) {
    Json x = Json::object();
    x["index"] = e.index;
    x["seed"] = e.seed;
    x["gap"] = e.gap;
    x["alpha_estimate"] = e.alpha_estimate;
    x["flagged"] = e.flagged;
    if (e.flagged) x["label"] = e.label;
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json header(const RunRequest& request) {
  Json j = Json::object();
  j["tool"] = "qmsi";
  j["version"] = QMSI_VERSION;
  j["command"] = request.command;
  return j;
}

Json error_json(const std::string& kind, const std::string& message) {
  Json e = Json::object();
  e["kind"] = kind;
  e["message"] = message;
  return e;
}

}  // namespace

std::vector<double> parse_q_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double q = 0.0;
    try {
      q = std::stod(item, &used);
    } catch (const std::exception&) {
      throw SpecError("--q-grid: \"" + item + "\" is not a number");
    }
    if (used != item.size()) throw SpecError("--q-grid: \"" + item + "\" is not a number");
    if (!(q > 1.0) || !std::isfinite(q)) throw SpecError("--q-grid: every q must exceed 1");
    out.push_back(q);
  }
  if (out.empty()) throw SpecError("--q-grid: empty list");
  return out;
}

RunResult run(const RunRequest& request) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  Json report = header(request);
  Context ctx;
  try {
    if (std::find(std::begin(kCommands), std::end(kCommands), request.command) == std::end(kCommands)) {
      throw SpecError("command: unknown subcommand \"" + request.command + "\"");
    }
    ctx.spec = parse_spec(request.spec_text);
    SpecOptions& o = ctx.spec.options;
    if (request.seed) o.seed = *request.seed;
    if (request.budget) {
      if (*request.budget < 1) throw SpecError("--budget: must be >= 1");
      o.budget = *request.budget;
    }
    if (request.q_grid) o.q_grid = *request.q_grid;
    if (request.tolerance) {
      if (!(*request.tolerance > 0.0)) throw SpecError("--tol: must be positive");
      o.tolerance = *request.tolerance;
    }
    ctx.validation.seed = derive_seed(o.seed, kProbeStream);
    ctx.validation.kms_tolerance = o.tolerance;
    ctx.validation.invariance_tolerance = o.tolerance;

    report["seed"] = o.seed;
    report["budget"] = o.budget;
    Json tol = Json::object();
    tol["kms"] = ctx.validation.kms_tolerance;
    tol["invariance"] = ctx.validation.invariance_tolerance;
    tol["identity"] = ctx.validation.identity_tolerance;
    tol["positivity_floor"] = ctx.validation.positivity_floor;
    tol["probe_samples"] = ctx.validation.probe_samples;
    report["tolerances"] = std::move(tol);
    report["spec"] = normalize(ctx.spec);

    if (request.command == "search") {
      report["result"] = run_search(ctx);
    } else {
      const Problem p = build_problem(ctx.spec);
      report["validation"] = validation_json(validate(p.generator, p.space, ctx.validation), p.generator);
      if (request.command == "gap") report["result"] = run_gap(ctx, p);
      if (request.command == "constants") report["result"] = run_constants(ctx, p);
      if (request.command == "decay") report["result"] = run_decay(ctx, p);
      if (request.command == "expand") report["result"] = run_expand(ctx, p);
      if (request.command == "kt") report["result"] = run_kt(ctx, p);
    }
  } catch (const DomainError& e) {
    result.exit_code = 1;
    report["error"] = error_json("domain", e.what());
  } catch (const NoTightInequality& e) {
    result.exit_code = 1;
    report["error"] = error_json("no tight inequality", e.what());
  } catch (const NumericalError& e) {
    result.exit_code = 2;
    report["error"] = error_json("numerical", e.what());
  } catch (const std::exception& e) {
    result.exit_code = 2;
    report["error"] = error_json("internal", e.what());
  }
  if (report.contains("error")) {
    result.diagnostics += fmt::format("qmsi {}: {}\n", request.command, report["error"]["message"].get<std::string>());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.diagnostics += fmt::format("wall time: {:.3f} s\n", seconds);
  if (request.timing) report["wall_time_seconds"] = seconds;
  result.report = dump(report);
  result.csv = std::move(ctx.csv);
  return result;
}

}  // namespace qmsi::app
