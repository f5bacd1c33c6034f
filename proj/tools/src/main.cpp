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


#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "qmsi_app/run.hpp"

namespace {

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), {}}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional inequalities for quantum Markov semigroups"};
  app.require_subcommand(1, 1);

  std::string spec_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
  std::string csv_path;
  std::string q_grid;
  std::optional<double> tol;
  bool timing = false;

  const std::map<std::string, std::string> help = {
      {"validate", "check identity preservation, invariance, KMS symmetry and positivity"},
      {"gap", "spectral gap of a KMS-symmetric generator"},
      {"constants", "estimate log-Sobolev, modified log-Sobolev and weak-regularity constants"},
      {"decay", "entropy and variance trajectories along the semigroup"},
      {"expand", "second-order expansion of H(1 + eps f)"},
      {"kt", "doubly stochastic matrix K(t) for an observable"},
      {"search", "sample generators and flag alpha > 0 with zero gap"},
  };
  for (const char* name : qmsi::app::kCommands) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--spec", spec_path, "problem spec (JSON file, or - for stdin)")->required();
    sub->add_option("--seed", seed, "override options.seed");
    sub->add_option("--budget", budget, "override options.budget");
    sub->add_option("--csv", csv_path, "write the decay trajectory as CSV");
    sub->add_option("--q-grid", q_grid, "comma-separated q values, each > 1");
    sub->add_option("--tol", tol, "override options.tolerance");
    sub->add_flag("--timing", timing, "embed the wall time in the report");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  qmsi::app::RunRequest request;
  request.command = app.get_subcommands().front()->get_name();
  request.seed = seed;
  request.budget = budget;
  request.tolerance = tol;
  request.timing = timing;
  try {
    if (!q_grid.empty()) request.q_grid = qmsi::app::parse_q_list(q_grid);
  } catch (const std::exception& e) {
    std::cerr << "qmsi: " << e.what() << '\n';
    return 1;
  }
  if (spec_path == "-") {
    request.spec_text = read_all(std::cin);
  } else {
    std::ifstream in(spec_path, std::ios::binary);
    if (!in) {
      std::cerr << "qmsi: spec: cannot open " << spec_path << '\n';
      return 1;
    }
    request.spec_text = read_all(in);
  }

  const qmsi::app::RunResult result = qmsi::app::run(request);
  std::cout << result.report;
  std::cerr << result.diagnostics;
  if (!csv_path.empty()) {
    if (!result.csv) {
      std::cerr << "qmsi: --csv ignored, " << request.command << " produces no trajectory\n";
    } else {
      std::ofstream out(csv_path, std::ios::binary);
      if (!out || !(out << *result.csv)) {
        std::cerr << "qmsi: cannot write " << csv_path << '\n';
        return 2;
      }
    }
  }
  return result.exit_code;
}
