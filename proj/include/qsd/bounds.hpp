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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qsd/ensemble.hpp"
#include "qsd/policy.hpp"

namespace qsd {

// Fidelity-weighted pair sum: sum over i > j of prior_i prior_j F(rho_i, rho_j).
// Lower-bounds the error probability of every measurement. Exactly invariant
// under relabeling of the ensemble.
double montanaro_lower(const Ensemble& e, const NumericPolicy& pol = {});

// 2 sum over i > j of sqrt(prior_i prior_j) sqrt(F(rho_i, rho_j)); upper-bounds
// the error probability of the square-root measurement. May exceed 1.
double barnum_knill_upper_raw(const Ensemble& e, const NumericPolicy& pol = {});

// The raw value clamped at 1.
double barnum_knill_upper(const Ensemble& e, const NumericPolicy& pol = {});

// Exact two-state optimum 1/2 - 1/2 ||prior_0 rho_0 - prior_1 rho_1||_1,
// clamped at 0. Throws NotTwoStates otherwise.
double helstrom_exact_two(const Ensemble& e, const NumericPolicy& pol = {});

// Error-probability lower bound for discriminating m copies of each state:
// (1/n^2) sum over i > j of F(rho_i, rho_j)^m. Requires uniform priors
// (NonUniformPriors otherwise, within trace_tol) and m >= 1.
double multicopy_lower(const Ensemble& e, std::size_t m, const NumericPolicy& pol = {});

// Closed-form floor (n - 1) F^m / (2 n) for n states whose pairwise
// fidelities all reach the floor F.
double multicopy_floor_lower(std::size_t n, double fidelity_floor, std::size_t m);

// Real-valued lower bound on the copies needed to reach error epsilon when
// every pair fidelity is at least the floor: (log2(1/eps) - 2) / log2(1/F).
// May be nonpositive for large epsilon; callers take the ceiling.
double copies_needed(double fidelity_floor, double epsilon);

// Failure-probability lower bound for unambiguous discrimination of pure
// states: (2/(n-1)) sum over i > j of sqrt(prior_i prior_j) |<psi_i|psi_j>|.
// Requires n >= 2 (TooFewStates) rank-1 states (NotPureStates; second-largest
// eigenvalue above psd_tol disqualifies).
double zhang_unambiguous_lower(const Ensemble& e, const NumericPolicy& pol = {});

// Symmetric n x n fidelity table with an exact unit diagonal.
std::vector<std::vector<double>> pairwise_fidelities(const Ensemble& e,
                                                     const NumericPolicy& pol = {});

struct BoundReportOptions {
  // Also run the measurement optimizer and include its error probability.
  bool optimize = false;
  std::size_t max_iters = 10000;
  double cert_tol = 1e-7;
  // Provenance only: recorded in the report metadata, null when unknown.
  std::optional<std::uint64_t> seed;
};

struct BoundReportMetadata {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::optional<std::uint64_t> seed;
  // Phase name -> elapsed wall time, in evaluation order.
  std::vector<std::pair<std::string, double>> timings_seconds;
};

// Every applicable bound for one ensemble: helstrom_exact for two states,
// zhang_unambiguous_lower for all-pure ensembles, optimized_error on request.
struct BoundReport {
  double montanaro_lower = 0.0;
  double barnum_knill_upper = 0.0;
  double barnum_knill_upper_raw = 0.0;
  std::optional<double> helstrom_exact;
  std::optional<double> optimized_error;
  std::optional<double> zhang_unambiguous_lower;
  std::vector<std::vector<double>> pairwise_fidelities;
  BoundReportMetadata metadata;
};

BoundReport bound_report(const Ensemble& e, const BoundReportOptions& options = {},
                         const NumericPolicy& pol = {});

// Snake-case JSON in declaration order; absent optionals are omitted, the
// metadata seed is null when unknown, timings are rounded to milliseconds.
nlohmann::ordered_json report_to_json(const BoundReport& report);

}  // namespace qsd
