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
#include "qsd/rng.hpp"

namespace qsd::test {

inline ComplexMatrix random_matrix(SplitMix64& rng, std::size_t rows,
                                   std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.complex_gaussian();
  }
  return m;
}

inline ComplexMatrix random_hermitian(SplitMix64& rng, std::size_t dim) {
  return random_matrix(rng, dim, dim).hermitian_part();
}

inline ComplexMatrix random_psd(SplitMix64& rng, std::size_t dim) {
  const ComplexMatrix g = random_matrix(rng, dim, dim);
  return (g * g.adjoint()).hermitian_part();
}

inline ComplexMatrix random_unitary(SplitMix64& rng, std::size_t dim) {
  return polar_decompose(random_matrix(rng, dim, dim)).unitary_part;
}

}  // namespace qsd::test
