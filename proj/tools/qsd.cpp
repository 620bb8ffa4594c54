// Copyright 2026 The qsd developers
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

// Command-line front end: bound reports for ensemble files, seeded random
// sweeps, proof-identity verification runs, and copies-needed queries.
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 numeric
// failure.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsd/bounds.hpp"
#include "qsd/ensemble.hpp"
#include "qsd/errors.hpp"
#include "qsd/proofcheck.hpp"
#include "qsd/rng.hpp"

namespace {

struct BoundsConfig {
  std::string ensemble_path;
  bool optimize = false;
  std::string out_path;
};

struct SweepConfig {
  std::size_t trials = 10;
  std::size_t n_min = 2;
  std::size_t n_max = 4;
  std::size_t dim_min = 2;
  std::size_t dim_max = 4;
  std::string kind = "mixed";
  std::string priors = "uniform";
  std::uint64_t seed = 0;
  bool optimize = false;
  std::string out_path;
  std::string format = "csv";
  // Report 0.000 in the seconds column so repeated runs are byte-identical.
  bool no_timing = false;
};

struct VerifyConfig {
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  std::string out_path;
};

struct CopiesConfig {
  double fidelity = 0.0;
  double epsilon = 0.0;
  std::optional<std::size_t> n;
};

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw qsd::ParseError(out_path, "cannot open file for writing");
  out << content;
}

std::string full_precision(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string milliseconds(double seconds) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", seconds);
  return buf;
}

int run_bounds(const BoundsConfig& config) {
  const qsd::Ensemble e = qsd::load_ensemble(config.ensemble_path);
  qsd::BoundReportOptions options;
  options.optimize = config.optimize;
  const qsd::BoundReport report = qsd::bound_report(e, options);
  write_output(config.out_path, qsd::report_to_json(report).dump(2) + "\n");
  return 0;
}

struct SweepRow {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t dim = 0;
  double lower = 0.0;
  std::optional<double> optimized;
  double upper = 0.0;
  double min_fidelity = 1.0;
  double seconds = 0.0;
};

int run_sweep(const SweepConfig& config) {
  if (config.trials == 0) throw qsd::InvalidInput("--trials must be at least 1");
  if (config.n_min == 0 || config.n_min > config.n_max) {
    throw qsd::InvalidInput("state count range is empty");
  }
  if (config.dim_min == 0 || config.dim_min > config.dim_max) {
    throw qsd::InvalidInput("dimension range is empty");
  }
  if (config.kind != "pure" && config.kind != "mixed") {
    throw qsd::InvalidInput("--kind must be pure or mixed");
  }
  if (config.priors != "uniform" && config.priors != "dirichlet") {
    throw qsd::InvalidInput("--priors must be uniform or dirichlet");
  }
  if (config.format != "csv" && config.format != "json") {
    throw qsd::InvalidInput("--format must be csv or json");
  }
  const qsd::PriorKind prior_kind = config.priors == "uniform"
                                        ? qsd::PriorKind::uniform
                                        : qsd::PriorKind::dirichlet;

  std::vector<SweepRow> rows;
  rows.reserve(config.trials);
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    const auto start = std::chrono::steady_clock::now();
    SweepRow row;
    row.seed = config.seed + trial;
    qsd::SplitMix64 rng(row.seed);
    row.n = rng.uniform_index(config.n_min, config.n_max);
    row.dim = rng.uniform_index(config.dim_min, config.dim_max);
    const std::uint64_t ensemble_seed = rng.next();
    const qsd::Ensemble e =
        config.kind == "pure"
            ? qsd::random_pure_ensemble(row.n, row.dim, prior_kind, ensemble_seed)
            : qsd::random_mixed_ensemble(row.n, row.dim, prior_kind, ensemble_seed);
    qsd::BoundReportOptions options;
    options.optimize = config.optimize;
    options.seed = row.seed;
    const qsd::BoundReport report = qsd::bound_report(e, options);
    row.lower = report.montanaro_lower;
    row.optimized = report.optimized_error;
    row.upper = report.barnum_knill_upper;
    for (std::size_t i = 1; i < report.pairwise_fidelities.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        row.min_fidelity = std::min(row.min_fidelity, report.pairwise_fidelities[i][j]);
      }
    }
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    row.seconds = config.no_timing ? 0.0 : elapsed.count();
    rows.push_back(row);
  }

  std::ostringstream out;
  if (config.format == "csv") {
    out << "seed,n,dim,lower,optimized,upper,min_fidelity,seconds\n";
    for (const SweepRow& row : rows) {
      out << row.seed << ',' << row.n << ',' << row.dim << ','
          << full_precision(row.lower) << ','
          << (row.optimized ? full_precision(*row.optimized) : std::string()) << ','
          << full_precision(row.upper) << ',' << full_precision(row.min_fidelity)
          << ',' << milliseconds(row.seconds) << '\n';
    }
  } else {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const SweepRow& row : rows) {
      nlohmann::ordered_json entry;
      entry["seed"] = row.seed;
      entry["n"] = row.n;
      entry["dim"] = row.dim;
      entry["lower"] = row.lower;
      if (row.optimized) {
        entry["optimized"] = *row.optimized;
      } else {
        entry["optimized"] = nullptr;
      }
      entry["upper"] = row.upper;
      entry["min_fidelity"] = row.min_fidelity;
      entry["seconds"] = std::round(row.seconds * 1000.0) / 1000.0;
      j.push_back(std::move(entry));
    }
    out << j.dump(2) << "\n";
  }
  write_output(config.out_path, out.str());
  return 0;
}

int run_verify(const VerifyConfig& config) {
  if (config.trials == 0) throw qsd::InvalidInput("--trials must be at least 1");
  const std::vector<qsd::CheckResult> results =
      qsd::run_verification(config.trials, config.seed);
  write_output(config.out_path,
               qsd::verification_to_json(results, config.tol).dump(2) + "\n");
  return qsd::verification_passed(results, config.tol) ? 0 : 1;
}

int run_copies(const CopiesConfig& config) {
  const double bound = qsd::copies_needed(config.fidelity, config.epsilon);
  const long long ceiling = static_cast<long long>(std::ceil(bound));
  std::ostringstream out;
  out << "bound " << full_precision(bound) << "\n";
  out << "ceiling " << ceiling << "\n";
  if (config.n) {
    const std::size_t m = ceiling > 0 ? static_cast<std::size_t>(ceiling) : 1;
    out << "floor_m " << m << "\n";
    out << "floor "
        << full_precision(qsd::multicopy_floor_lower(*config.n, config.fidelity, m))
        << "\n";
  }
  std::cout << out.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Bounds, exact small-instance optima, and proof-identity verification "
      "for minimum-error quantum state discrimination"};
  app.require_subcommand(1);

  BoundsConfig bounds_config;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Print the JSON bound report for an ensemble file");
  bounds->add_option("--ensemble", bounds_config.ensemble_path, "Ensemble JSON file")
      ->required();
  bounds->add_flag("--optimize", bounds_config.optimize,
                   "Also run the measurement optimizer");
  bounds->add_option("--out", bounds_config.out_path,
                     "Write the report here instead of standard output");

  SweepConfig sweep_config;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Bound reports for seeded random ensembles, one row per trial");
  sweep->add_option("--trials", sweep_config.trials, "Number of trials (default 10)");
  sweep->add_option("--n-min", sweep_config.n_min, "Smallest state count (default 2)");
  sweep->add_option("--n-max", sweep_config.n_max, "Largest state count (default 4)");
  sweep->add_option("--dim-min", sweep_config.dim_min, "Smallest dimension (default 2)");
  sweep->add_option("--dim-max", sweep_config.dim_max, "Largest dimension (default 4)");
  sweep->add_option("--kind", sweep_config.kind, "State kind: pure or mixed (default mixed)");
  sweep->add_option("--priors", sweep_config.priors,
                    "Prior kind: uniform or dirichlet (default uniform)");
  sweep->add_option("--seed", sweep_config.seed,
                    "Base seed; trial t uses seed + t (default 0)");
  sweep->add_flag("--optimize", sweep_config.optimize,
                  "Also run the measurement optimizer per trial");
  sweep->add_option("--out", sweep_config.out_path,
                    "Write rows here instead of standard output");
  sweep->add_option("--format", sweep_config.format, "Output format: csv or json (default csv)");
  sweep->add_flag("--no-timing", sweep_config.no_timing,
                  "Zero the seconds column for byte-identical reruns");

  VerifyConfig verify_config;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run every proof-identity check over seeded random instances");
  verify->add_option("--trials", verify_config.trials,
                     "Trials per check (default 100)");
  verify->add_option("--seed", verify_config.seed,
                     "Base seed; trial t uses seed + t (default 1)");
  verify->add_option("--tol", verify_config.tol,
                     "Pass threshold: slacks >= -tol, residuals <= tol (default 1e-8)");
  verify->add_option("--out", verify_config.out_path,
                     "Write the report here instead of standard output");

  CopiesConfig copies_config;
  CLI::App* copies = app.add_subcommand(
      "copies", "Copies needed to reach a target error at a given fidelity floor");
  copies->add_option("--fidelity", copies_config.fidelity,
                     "Pairwise fidelity floor, strictly between 0 and 1")
      ->required();
  copies->add_option("--epsilon", copies_config.epsilon,
                     "Target error probability, strictly between 0 and 1")
      ->required();
  copies->add_option("--n", copies_config.n,
                     "State count; adds the error floor at the ceiling copy count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (bounds->parsed()) return run_bounds(bounds_config);
    if (sweep->parsed()) return run_sweep(sweep_config);
    if (verify->parsed()) return run_verify(verify_config);
    return run_copies(copies_config);
  } catch (const qsd::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
