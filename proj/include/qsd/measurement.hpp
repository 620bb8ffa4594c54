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
#include <string>
#include <vector>

#include "qsd/ensemble.hpp"
#include "qsd/matrix.hpp"
#include "qsd/policy.hpp"

namespace qsd {

// A validated measurement: Hermitian PSD operators of one dimension, summing
// to the identity within povm_tol.
class Povm {
 public:
  explicit Povm(std::vector<ComplexMatrix> operators, const NumericPolicy& pol = {});

  // Skips validation; the caller asserts the invariants hold.
  static Povm unchecked(std::vector<ComplexMatrix> operators);

  std::size_t size() const { return operators_.size(); }
  std::size_t dim() const { return operators_.front().rows(); }
  const std::vector<ComplexMatrix>& operators() const { return operators_; }
  const ComplexMatrix& operator[](std::size_t i) const { return operators_[i]; }

 private:
  struct Unchecked {};
  Povm(Unchecked, std::vector<ComplexMatrix> operators)
      : operators_(std::move(operators)) {}
  std::vector<ComplexMatrix> operators_;
};

// Repairs nearly-valid operators into a Povm: symmetrizes, clamps negative
// eigenvalues to zero, renormalizes by the inverse square root of the sum on
// its support, and assigns whatever of the identity remains to outcome 0.
Povm povm_from_raw(std::vector<ComplexMatrix> raw, const NumericPolicy& pol = {});

// Average probability of naming the wrong state: sum over i != j of
// prior_j * tr(op_i rho_j). Outcome count must equal state count.
double error_probability(const Povm& povm, const Ensemble& e,
                         const NumericPolicy& pol = {});

// Square-root measurement: op_i = S^-1/2 prior_i rho_i S^-1/2 with S the
// average state, remainder off the support of S assigned to outcome 0.
Povm pretty_good_measurement(const Ensemble& e, const NumericPolicy& pol = {});

// Exact optimum for two states: project onto the nonnegative eigenspace of
// prior_0 rho_0 - prior_1 rho_1 (zero eigenvalues count toward outcome 0).
// Throws NotTwoStates otherwise.
Povm helstrom_measurement(const Ensemble& e, const NumericPolicy& pol = {});

// Largest amount by which any weighted state exceeds the dual operator
// (1/2) sum_j (op_j R_j + R_j op_j), clamped at zero. A gap of g certifies
// the POVM is within dim * g of the optimal error probability.
double dual_gap(const Povm& povm, const Ensemble& e, const NumericPolicy& pol = {});

struct OptimizationResult {
  Povm povm;
  double error_probability;
  std::size_t iterations;
  double dual_gap;
  // True when the final dual gap certifies optimality to cert_tol.
  bool converged;
  // Success probability after each step; entry 0 is the starting measurement.
  std::vector<double> success_history;
};

// Fixed-point iteration for the minimum-error measurement, started from the
// square-root measurement. Stops once the dual gap certifies cert_tol, the
// success probability plateaus, or max_iters is reached; an uncertified run
// returns the best measurement found with converged = false.
OptimizationResult optimize_measurement(const Ensemble& e,
                                        std::size_t max_iters = 10000,
                                        double cert_tol = 1e-7,
                                        const NumericPolicy& pol = {});

// n-outcome measurement from normalized random Wishart operators.
// Deterministic in the seed.
Povm random_povm(std::size_t n, std::size_t dim, std::uint64_t seed,
                 const NumericPolicy& pol = {});

// File format: {"dim": d, "operators": [[[re, im], ...], ...]}, matrices
// row-major. Structural problems raise ParseError, semantic ones
// ValidationError; both carry the offending field path.
Povm load_povm(const std::string& path, const NumericPolicy& pol = {});
void save_povm(const Povm& povm, const std::string& path);

}  // namespace qsd
