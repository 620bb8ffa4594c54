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

#include "qsd/decomp.hpp"
#include "qsd/matrix.hpp"
#include "qsd/policy.hpp"

namespace qsd {

// (sum_i sigma_i^p)^(1/p) over the singular values. Defined for every p > 0;
// p >= 1 is a norm, p in (0, 1) the usual quasi-norm. Throws InvalidP otherwise.
double schatten_norm(const ComplexMatrix& m, double p, const NumericPolicy& pol = {});

// Schatten-1: sum of singular values.
double trace_norm(const ComplexMatrix& m, const NumericPolicy& pol = {});

// Fidelity of two density matrices: squared trace norm of sqrt(rho) * sqrt(sigma).
// Results within fid_tol of 0 or 1 are clamped onto [0, 1].
// Both arguments must be density matrices of equal dimension.
double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma,
                const NumericPolicy& pol = {});

}  // namespace qsd
