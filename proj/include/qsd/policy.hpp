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

namespace qsd {

// Shared tolerances. One instance is threaded through constructors and checks
// so callers can tighten or relax the whole stack in one place.
struct NumericPolicy {
  // Max |a(i,j) - conj(a(j,i))| accepted as Hermitian.
  double hermitian_tol = 1e-10;
  // Accepted reconstruction residual of eigen/singular decompositions,
  // relative to the input norm.
  double eig_tol = 1e-9;
  // Eigenvalues in [-psd_tol, 0) are clamped to zero; anything below
  // -psd_tol means the matrix is not positive semidefinite.
  double psd_tol = 1e-9;
  // Width of the clamp window at the [0, 1] boundary for fidelities.
  double fid_tol = 1e-9;
  // Accepted slack on unit traces and prior sums.
  double trace_tol = 1e-9;
  // Accepted Frobenius distance of a POVM element sum from the identity.
  double povm_tol = 1e-8;
  // Relative eigenvalue cutoff for pseudo-inverses: eigenvalues below
  // pinv_cutoff * lambda_max count as zero and stay outside the support.
  double pinv_cutoff = 1e-12;
  // Eigenvalues below this absolute cutoff become exact zero columns in the
  // block factors, keeping block shapes independent of numerical rank.
  double zero_eigenvalue_cutoff = 1e-12;
};

}  // namespace qsd
