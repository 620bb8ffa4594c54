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

#include "qsd/norms.hpp"

#include <cmath>

#include "qsd/errors.hpp"

namespace qsd {

double schatten_norm(const ComplexMatrix& m, double p, const NumericPolicy& pol) {
  if (!(p > 0.0)) throw InvalidP("schatten_norm: exponent must be positive");
  const std::vector<double> sigma = singular_values(m, pol);
  if (p == 1.0) {
    // Ascending accumulation; singular_values returns descending.
    double s = 0.0;
    for (auto it = sigma.rbegin(); it != sigma.rend(); ++it) s += *it;
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (auto it = sigma.rbegin(); it != sigma.rend(); ++it) s += *it * *it;
    return std::sqrt(s);
  }
  double s = 0.0;
  for (auto it = sigma.rbegin(); it != sigma.rend(); ++it)
    if (*it > 0.0) s += std::pow(*it, p);
  return s == 0.0 ? 0.0 : std::pow(s, 1.0 / p);
}

double trace_norm(const ComplexMatrix& m, const NumericPolicy& pol) {
  return schatten_norm(m, 1.0, pol);
}

double fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma, const NumericPolicy& pol) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols() || !rho.is_square())
    throw DimensionMismatch("fidelity: arguments must be square matrices of equal dimension");
  const ComplexMatrix product = matrix_sqrt_psd(rho, pol) * matrix_sqrt_psd(sigma, pol);
  const double t = trace_norm(product, pol);
  double f = t * t;
  if (f < 0.0 && f >= -pol.fid_tol) f = 0.0;
  if (f > 1.0 && f <= 1.0 + pol.fid_tol) f = 1.0;
  return f;
}

}  // namespace qsd
