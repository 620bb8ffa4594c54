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

#include "qsd/matrix.hpp"
#include "qsd/policy.hpp"

namespace qsd {

// A validated density matrix: Hermitian within hermitian_tol, eigenvalues
// >= -psd_tol, unit trace within trace_tol.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, const NumericPolicy& pol = {});

  // Skips validation; the caller asserts the invariants hold.
  static DensityMatrix unchecked(ComplexMatrix m);

  // |psi><psi| from amplitudes, normalized internally.
  static DensityMatrix pure(const std::vector<Complex>& amplitudes);

  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  struct Unchecked {};
  DensityMatrix(Unchecked, ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

double purity(const DensityMatrix& rho);

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma,
                const NumericPolicy& pol = {});

struct WeightedState {
  double prior;
  DensityMatrix state;
};

// States with priors, all of one dimension. Priors are nonnegative and sum to
// one within trace_tol. Duplicate states are allowed.
class Ensemble {
 public:
  static Ensemble unchecked(std::vector<WeightedState> entries);

  std::size_t size() const { return entries_.size(); }
  std::size_t dim() const { return entries_.front().state.dim(); }
  const std::vector<WeightedState>& entries() const { return entries_; }
  double prior(std::size_t i) const { return entries_[i].prior; }
  const DensityMatrix& state(std::size_t i) const { return entries_[i].state; }

 private:
  explicit Ensemble(std::vector<WeightedState> entries) : entries_(std::move(entries)) {}
  std::vector<WeightedState> entries_;
};

// Validates priors (BadPriors), per-state invariants (BadState), and equal
// dimensions (DimensionMismatch).
Ensemble make_ensemble(std::vector<WeightedState> entries, const NumericPolicy& pol = {});

enum class PriorKind { uniform, dirichlet };

// n states drawn uniformly from the unit sphere (normalized complex gaussian
// amplitudes). Dirichlet priors are flat over the simplex. Deterministic in the
// seed; the draw order is priors first, then states, entries row-major.
Ensemble random_pure_ensemble(std::size_t n, std::size_t dim, PriorKind priors,
                              std::uint64_t seed, const NumericPolicy& pol = {});

// n mixed states G G^dagger / tr(G G^dagger) with G a square complex gaussian.
Ensemble random_mixed_ensemble(std::size_t n, std::size_t dim, PriorKind priors,
                               std::uint64_t seed, const NumericPolicy& pol = {});

// Same priors over m-fold tensor powers of the states. Throws TooLarge when
// dim^m exceeds the cap.
Ensemble tensor_power(const Ensemble& e, std::size_t m, std::size_t dim_cap = 256);

// File format: {"dim": d, "entries": [{"prob": p, "matrix": [[[re, im], ...], ...]}]},
// matrices row-major. Structural problems raise ParseError, semantic ones
// ValidationError; both carry the offending field path.
Ensemble load_ensemble(const std::string& path, const NumericPolicy& pol = {});
void save_ensemble(const Ensemble& e, const std::string& path);

}  // namespace qsd
