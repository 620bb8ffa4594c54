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

#include "qsd/ensemble.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "json_io.hpp"
#include "qsd/decomp.hpp"
#include "qsd/errors.hpp"
#include "qsd/norms.hpp"
#include "qsd/rng.hpp"

namespace qsd {

namespace {

void validate_density(const ComplexMatrix& m, const NumericPolicy& pol) {
  if (!m.is_square() || m.rows() == 0) {
    throw BadState("density matrix must be square and nonempty");
  }
  const double defect = m.hermiticity_defect();
  if (!(defect <= pol.hermitian_tol)) {
    std::ostringstream os;
    os << "density matrix is not Hermitian (defect " << defect << ")";
    throw BadState(os.str());
  }
  const Complex tr = m.trace();
  if (!(std::abs(tr - Complex(1.0, 0.0)) <= pol.trace_tol)) {
    std::ostringstream os;
    os << "density matrix trace is " << tr.real() << " + " << tr.imag()
       << "i, expected 1";
    throw BadState(os.str());
  }
  const EigDecomposition eig = hermitian_eig(m, pol);
  const double lambda_min = eig.eigenvalues.front();
  if (!(lambda_min >= -pol.psd_tol)) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << lambda_min;
    throw BadState(os.str());
  }
}

std::vector<double> draw_priors(std::size_t n, PriorKind kind, SplitMix64& rng) {
  std::vector<double> priors(n, 1.0 / static_cast<double>(n));
  if (kind == PriorKind::dirichlet) {
    // Flat Dirichlet: normalized unit-rate exponentials.
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      priors[i] = -std::log(rng.uniform_open());
      total += priors[i];
    }
    for (double& p : priors) p /= total;
  }
  return priors;
}

void check_generator_args(std::size_t n, std::size_t dim) {
  if (n == 0) throw InvalidInput("ensemble needs at least one state");
  if (dim == 0) throw InvalidInput("state dimension must be positive");
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m, const NumericPolicy& pol)
    : matrix_(std::move(m)) {
  validate_density(matrix_, pol);
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m) {
  return DensityMatrix(Unchecked{}, std::move(m));
}

DensityMatrix DensityMatrix::pure(const std::vector<Complex>& amplitudes) {
  const std::size_t d = amplitudes.size();
  if (d == 0) throw BadState("pure state needs at least one amplitude");
  double norm_sq = 0.0;
  for (const Complex& a : amplitudes) norm_sq += std::norm(a);
  if (norm_sq <= 0.0) throw BadState("pure state amplitudes are all zero");
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      m(i, j) = amplitudes[i] * std::conj(amplitudes[j]) / norm_sq;
    }
  }
  return DensityMatrix(Unchecked{}, std::move(m));
}

double purity(const DensityMatrix& rho) {
  return trace_product(rho.matrix(), rho.matrix()).real();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma,
                const NumericPolicy& pol) {
  return fidelity(rho.matrix(), sigma.matrix(), pol);
}

Ensemble Ensemble::unchecked(std::vector<WeightedState> entries) {
  return Ensemble(std::move(entries));
}

Ensemble make_ensemble(std::vector<WeightedState> entries, const NumericPolicy& pol) {
  if (entries.empty()) throw InvalidInput("ensemble needs at least one state");
  double total = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const double p = entries[i].prior;
    if (!(p >= 0.0) || !std::isfinite(p)) {
      std::ostringstream os;
      os << "prior " << i << " is " << p << ", expected nonnegative";
      throw BadPriors(os.str());
    }
    total += p;
  }
  if (!(std::abs(total - 1.0) <= pol.trace_tol)) {
    std::ostringstream os;
    os << "priors sum to " << total << ", expected 1";
    throw BadPriors(os.str());
  }
  const std::size_t dim = entries.front().state.dim();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].state.dim() != dim) {
      std::ostringstream os;
      os << "state " << i << " has dimension " << entries[i].state.dim()
         << ", expected " << dim;
      throw DimensionMismatch(os.str());
    }
    validate_density(entries[i].state.matrix(), pol);
  }
  return Ensemble::unchecked(std::move(entries));
}

Ensemble random_pure_ensemble(std::size_t n, std::size_t dim, PriorKind priors,
                              std::uint64_t seed, const NumericPolicy& pol) {
  check_generator_args(n, dim);
  SplitMix64 rng(seed);
  const std::vector<double> p = draw_priors(n, priors, rng);
  std::vector<WeightedState> entries;
  entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Complex> amp(dim);
    for (std::size_t k = 0; k < dim; ++k) amp[k] = rng.complex_gaussian();
    entries.push_back({p[i], DensityMatrix::pure(amp)});
  }
  return make_ensemble(std::move(entries), pol);
}

Ensemble random_mixed_ensemble(std::size_t n, std::size_t dim, PriorKind priors,
                               std::uint64_t seed, const NumericPolicy& pol) {
  check_generator_args(n, dim);
  SplitMix64 rng(seed);
  const std::vector<double> p = draw_priors(n, priors, rng);
  std::vector<WeightedState> entries;
  entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMatrix g(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) g(r, c) = rng.complex_gaussian();
    }
    ComplexMatrix rho = g * g.adjoint();
    const double tr = rho.trace().real();
    rho *= Complex(1.0 / tr, 0.0);
    // Wishart matrices are PSD with unit trace by construction; symmetrize to
    // scrub the roundoff from the product.
    entries.push_back({p[i], DensityMatrix::unchecked(rho.hermitian_part())});
  }
  return make_ensemble(std::move(entries), pol);
}

Ensemble tensor_power(const Ensemble& e, std::size_t m, std::size_t dim_cap) {
  if (m == 0) throw InvalidInput("tensor power needs at least one copy");
  const std::size_t dim = e.dim();
  // Detect dim^m > dim_cap without overflowing.
  std::size_t power = 1;
  for (std::size_t k = 0; k < m; ++k) {
    if (power > dim_cap / dim) {
      std::ostringstream os;
      os << "tensor power dimension exceeds " << dim_cap;
      throw TooLarge(os.str());
    }
    power *= dim;
  }
  std::vector<WeightedState> entries;
  entries.reserve(e.size());
  for (const WeightedState& ws : e.entries()) {
    ComplexMatrix acc = ws.state.matrix();
    for (std::size_t k = 1; k < m; ++k) acc = kron(acc, ws.state.matrix());
    entries.push_back({ws.prior, DensityMatrix::unchecked(std::move(acc))});
  }
  return Ensemble::unchecked(std::move(entries));
}

namespace {
using nlohmann::json;
}  // namespace

Ensemble load_ensemble(const std::string& path, const NumericPolicy& pol) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ParseError(path, err.what());
  }
  if (!j.is_object()) throw ParseError("$", "expected a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_unsigned()) {
    throw ParseError("$.dim", "expected a positive integer");
  }
  const std::size_t dim = j["dim"].get<std::size_t>();
  if (dim == 0) throw ValidationError("$.dim", "dimension must be positive");
  if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].empty()) {
    throw ParseError("$.entries", "expected a nonempty array");
  }
  std::vector<WeightedState> entries;
  entries.reserve(j["entries"].size());
  for (std::size_t i = 0; i < j["entries"].size(); ++i) {
    const json& entry = j["entries"][i];
    const std::string entry_path = "$.entries[" + std::to_string(i) + "]";
    if (!entry.is_object()) throw ParseError(entry_path, "expected an object");
    if (!entry.contains("prob") || !entry["prob"].is_number()) {
      throw ParseError(entry_path + ".prob", "expected a number");
    }
    if (!entry.contains("matrix")) {
      throw ParseError(entry_path + ".matrix", "missing");
    }
    const double prob = entry["prob"].get<double>();
    ComplexMatrix m = detail::matrix_from_json(entry["matrix"], dim, entry_path + ".matrix");
    try {
      entries.push_back({prob, DensityMatrix(std::move(m), pol)});
    } catch (const BadState& err) {
      throw ValidationError(entry_path + ".matrix", err.what());
    }
  }
  try {
    return make_ensemble(std::move(entries), pol);
  } catch (const BadPriors& err) {
    throw ValidationError("$.entries", err.what());
  } catch (const DimensionMismatch& err) {
    throw ValidationError("$.entries", err.what());
  }
}

void save_ensemble(const Ensemble& e, const std::string& path) {
  json j;
  j["dim"] = e.dim();
  json entries = json::array();
  for (const WeightedState& ws : e.entries()) {
    entries.push_back({{"prob", ws.prior},
                       {"matrix", detail::matrix_to_json(ws.state.matrix())}});
  }
  j["entries"] = std::move(entries);
  std::ofstream out(path);
  if (!out) throw ParseError(path, "cannot open file for writing");
  out << j.dump(2) << "\n";
}

}  // namespace qsd
