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

#include <vector>

#include "qsd/matrix.hpp"
#include "qsd/policy.hpp"

namespace qsd {

struct EigDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // unitary, k-th column pairs with eigenvalues[k]
};

// Cyclic Jacobi diagonalization of a Hermitian matrix. Exact rotations, so the
// residual lands near machine precision for the dimensions this library targets.
// Throws NotHermitian when the input fails the hermitian_tol check and
// NoConvergence past the sweep cap.
EigDecomposition hermitian_eig(const ComplexMatrix& m, const NumericPolicy& pol = {});

// Singular values, descending, min(rows, cols) of them. Computed by one-sided
// Jacobi on the columns of the tall orientation: column rotations never square
// the matrix, so small singular values keep their absolute accuracy, which the
// trace-norm identities downstream depend on.
std::vector<double> singular_values(const ComplexMatrix& m, const NumericPolicy& pol = {});

struct Svd {
  ComplexMatrix u;                   // square unitary
  std::vector<double> singular_values;  // descending
  ComplexMatrix v;                   // square unitary; m = u * diag(s) * v^dagger
};

// Full SVD of a square matrix via one-sided Jacobi with accumulated right
// rotations. Left columns belonging to singular values at noise level are
// completed by Gram-Schmidt over the standard basis; the matching right columns
// are rebuilt the same way, so for a normal input the unitary factor u * v^dagger
// acts as the identity on the null space. Consumers must not rely on the
// completion beyond that.
Svd svd_square(const ComplexMatrix& m, const NumericPolicy& pol = {});

struct PolarDecomposition {
  ComplexMatrix positive_part;  // P, positive semidefinite
  ComplexMatrix unitary_part;   // U; m = P * U
};

// m = P * U for square m. For singular m the unitary factor is completed as
// described at svd_square.
PolarDecomposition polar_decompose(const ComplexMatrix& m, const NumericPolicy& pol = {});

// Principal square root of a positive semidefinite Hermitian matrix.
// Eigenvalues in [-psd_tol, 0) are clamped to zero; below -psd_tol throws NotPsd.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m, const NumericPolicy& pol = {});

struct SupportInverseSqrt {
  ComplexMatrix inv_sqrt;  // pseudo-inverse square root, zero off the support
  ComplexMatrix support;   // projector onto the retained eigenspace
};

// Pseudo-inverse square root of a positive semidefinite matrix. Eigenvalues at
// or below pinv_cutoff * lambda_max count as zero and are excluded from the
// support projector.
SupportInverseSqrt pseudo_inverse_sqrt(const ComplexMatrix& m, const NumericPolicy& pol = {});

}  // namespace qsd
