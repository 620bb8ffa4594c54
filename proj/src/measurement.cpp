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

#include "qsd/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "json_io.hpp"
#include "qsd/decomp.hpp"
#include "qsd/errors.hpp"
#include "qsd/rng.hpp"

namespace qsd {

namespace {

void validate_povm(const std::vector<ComplexMatrix>& ops, const NumericPolicy& pol) {
  if (ops.empty()) throw ValidationError("operators", "measurement needs at least one outcome");
  const std::size_t dim = ops.front().rows();
  if (dim == 0) throw ValidationError("operators[0]", "operators must be nonempty");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string path = "operators[" + std::to_string(i) + "]";
    if (!ops[i].is_square() || ops[i].rows() != dim) {
      throw ValidationError(path, "expected a " + std::to_string(dim) + "x" +
                                      std::to_string(dim) + " matrix");
    }
    const double defect = ops[i].hermiticity_defect();
    if (!(defect <= pol.hermitian_tol)) {
      std::ostringstream os;
      os << "operator is not Hermitian (defect " << defect << ")";
      throw ValidationError(path, os.str());
    }
    const EigDecomposition eig = hermitian_eig(ops[i], pol);
    if (!(eig.eigenvalues.front() >= -pol.psd_tol)) {
      std::ostringstream os;
      os << "operator has negative eigenvalue " << eig.eigenvalues.front();
      throw ValidationError(path, os.str());
    }
  }
  ComplexMatrix sum(dim, dim);
  for (const ComplexMatrix& op : ops) sum += op;
  const double deviation = max_abs_diff(sum, ComplexMatrix::identity(dim));
  if (!(deviation <= pol.povm_tol)) {
    std::ostringstream os;
    os << "operators sum to the identity only within " << deviation;
    throw ValidationError("operators", os.str());
  }
}

// Clamp negative eigenvalues to zero, leaving already-PSD operators untouched.
ComplexMatrix clamp_psd(const ComplexMatrix& m, const NumericPolicy& pol) {
  const EigDecomposition eig = hermitian_eig(m, pol);
  if (eig.eigenvalues.front() >= 0.0) return m;
  const std::size_t d = m.rows();
  ComplexMatrix scaled = eig.eigenvectors;
  for (std::size_t c = 0; c < d; ++c) {
    const Complex lambda(std::max(eig.eigenvalues[c], 0.0), 0.0);
    for (std::size_t r = 0; r < d; ++r) scaled(r, c) *= lambda;
  }
  return (scaled * eig.eigenvectors.adjoint()).hermitian_part();
}

std::vector<ComplexMatrix> weighted_states(const Ensemble& e) {
  std::vector<ComplexMatrix> r;
  r.reserve(e.size());
  for (const WeightedState& ws : e.entries()) {
    r.push_back(Complex(ws.prior, 0.0) * ws.state.matrix());
  }
  return r;
}

void check_compatible(const Povm& povm, const Ensemble& e) {
  if (povm.size() != e.size()) {
    std::ostringstream os;
    os << "measurement has " << povm.size() << " outcomes for " << e.size()
       << " states";
    throw CountMismatch(os.str());
  }
  if (povm.dim() != e.dim()) {
    std::ostringstream os;
    os << "measurement dimension " << povm.dim() << " does not match state dimension "
       << e.dim();
    throw DimensionMismatch(os.str());
  }
}

// Largest eigenvalue excess of any weighted state over the symmetrized dual
// operator built from the measurement.
double dual_gap_impl(const std::vector<ComplexMatrix>& ops,
                     const std::vector<ComplexMatrix>& r, const NumericPolicy& pol) {
  const std::size_t dim = ops.front().rows();
  ComplexMatrix y(dim, dim);
  for (std::size_t j = 0; j < ops.size(); ++j) y += ops[j] * r[j];
  y = y.hermitian_part();
  double gap = 0.0;
  for (const ComplexMatrix& ri : r) {
    const EigDecomposition eig = hermitian_eig(ri - y, pol);
    gap = std::max(gap, eig.eigenvalues.back());
  }
  return gap;
}

double success_probability(const std::vector<ComplexMatrix>& ops,
                           const std::vector<ComplexMatrix>& r) {
  double s = 0.0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    s += trace_product(ops[i], r[i]).real();
  }
  return s;
}

}  // namespace

Povm::Povm(std::vector<ComplexMatrix> operators, const NumericPolicy& pol)
    : operators_(std::move(operators)) {
  validate_povm(operators_, pol);
}

Povm Povm::unchecked(std::vector<ComplexMatrix> operators) {
  return Povm(Unchecked{}, std::move(operators));
}

Povm povm_from_raw(std::vector<ComplexMatrix> raw, const NumericPolicy& pol) {
  if (raw.empty()) throw InvalidInput("measurement needs at least one outcome");
  const std::size_t dim = raw.front().rows();
  for (ComplexMatrix& op : raw) {
    if (!op.is_square() || op.rows() != dim) {
      throw DimensionMismatch("raw operators must be square and of one dimension");
    }
    op = clamp_psd(op.hermitian_part(), pol);
  }
  ComplexMatrix total(dim, dim);
  for (const ComplexMatrix& op : raw) total += op;
  const SupportInverseSqrt t = pseudo_inverse_sqrt(total.hermitian_part(), pol);
  for (ComplexMatrix& op : raw) {
    op = (t.inv_sqrt * op * t.inv_sqrt).hermitian_part();
  }
  // The renormalized operators sum to the support projector; outcome 0 absorbs
  // the rest of the identity.
  ComplexMatrix sum(dim, dim);
  for (const ComplexMatrix& op : raw) sum += op;
  raw.front() += (ComplexMatrix::identity(dim) - sum).hermitian_part();
  return Povm(std::move(raw), pol);
}

double error_probability(const Povm& povm, const Ensemble& e, const NumericPolicy& pol) {
  (void)pol;
  check_compatible(povm, e);
  double p_err = 0.0;
  for (std::size_t i = 0; i < povm.size(); ++i) {
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (i == j) continue;
      p_err += e.prior(j) * trace_product(povm[i], e.state(j).matrix()).real();
    }
  }
  return p_err;
}

Povm pretty_good_measurement(const Ensemble& e, const NumericPolicy& pol) {
  const std::size_t dim = e.dim();
  ComplexMatrix average(dim, dim);
  std::vector<ComplexMatrix> r = weighted_states(e);
  for (const ComplexMatrix& ri : r) average += ri;
  const SupportInverseSqrt s = pseudo_inverse_sqrt(average.hermitian_part(), pol);
  std::vector<ComplexMatrix> raw;
  raw.reserve(r.size());
  for (const ComplexMatrix& ri : r) {
    raw.push_back((s.inv_sqrt * ri * s.inv_sqrt).hermitian_part());
  }
  return povm_from_raw(std::move(raw), pol);
}

Povm helstrom_measurement(const Ensemble& e, const NumericPolicy& pol) {
  if (e.size() != 2) {
    throw NotTwoStates("the exact two-state measurement needs exactly two states");
  }
  const std::size_t dim = e.dim();
  const ComplexMatrix delta = Complex(e.prior(0), 0.0) * e.state(0).matrix() -
                              Complex(e.prior(1), 0.0) * e.state(1).matrix();
  const EigDecomposition eig = hermitian_eig(delta, pol);
  ComplexMatrix mu0(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    if (eig.eigenvalues[c] < 0.0) continue;
    for (std::size_t r1 = 0; r1 < dim; ++r1) {
      for (std::size_t r2 = 0; r2 < dim; ++r2) {
        mu0(r1, r2) += eig.eigenvectors(r1, c) * std::conj(eig.eigenvectors(r2, c));
      }
    }
  }
  mu0 = mu0.hermitian_part();
  const ComplexMatrix mu1 = (ComplexMatrix::identity(dim) - mu0).hermitian_part();
  return Povm({mu0, mu1}, pol);
}

double dual_gap(const Povm& povm, const Ensemble& e, const NumericPolicy& pol) {
  check_compatible(povm, e);
  return dual_gap_impl(povm.operators(), weighted_states(e), pol);
}

OptimizationResult optimize_measurement(const Ensemble& e, std::size_t max_iters,
                                        double cert_tol, const NumericPolicy& pol) {
  const std::size_t n = e.size();
  const std::size_t dim = e.dim();
  const std::vector<ComplexMatrix> r = weighted_states(e);

  std::vector<ComplexMatrix> ops = pretty_good_measurement(e, pol).operators();
  std::vector<double> history;
  history.push_back(success_probability(ops, r));

  std::vector<ComplexMatrix> best_ops = ops;
  double best_success = history.front();
  double gap = dual_gap_impl(ops, r, pol);

  // Improvements below the plateau threshold this many times in a row mean the
  // iteration has stalled at the working precision.
  constexpr int kPlateauLimit = 50;
  constexpr double kPlateauStep = 1e-15;
  constexpr double kDecreaseGuard = 1e-12;

  std::size_t iters = 0;
  int plateau = 0;
  while (gap > cert_tol && iters < max_iters) {
    ComplexMatrix lambda(dim, dim);
    for (std::size_t j = 0; j < n; ++j) lambda += r[j] * ops[j] * r[j];
    const SupportInverseSqrt l = pseudo_inverse_sqrt(lambda.hermitian_part(), pol);
    for (std::size_t i = 0; i < n; ++i) {
      ops[i] = (l.inv_sqrt * r[i] * ops[i] * r[i] * l.inv_sqrt).hermitian_part();
    }
    ComplexMatrix sum(dim, dim);
    for (const ComplexMatrix& op : ops) sum += op;
    ops.front() += (ComplexMatrix::identity(dim) - sum).hermitian_part();
    ++iters;

    const double success = success_probability(ops, r);
    const double delta = success - history.back();
    history.push_back(success);
    if (success > best_success) {
      best_success = success;
      best_ops = ops;
    }
    if (delta < -kDecreaseGuard) break;  // numerical floor reached
    if (delta < kPlateauStep) {
      if (++plateau >= kPlateauLimit) break;
    } else {
      plateau = 0;
    }
    gap = dual_gap_impl(ops, r, pol);
  }

  Povm povm = povm_from_raw(std::move(best_ops), pol);
  const double p_err = error_probability(povm, e, pol);
  const double final_gap = dual_gap_impl(povm.operators(), r, pol);
  return OptimizationResult{std::move(povm), p_err,          iters,
                            final_gap,      final_gap <= cert_tol, std::move(history)};
}

Povm random_povm(std::size_t n, std::size_t dim, std::uint64_t seed,
                 const NumericPolicy& pol) {
  if (n == 0) throw InvalidInput("measurement needs at least one outcome");
  if (dim == 0) throw InvalidInput("operator dimension must be positive");
  SplitMix64 rng(seed);
  std::vector<ComplexMatrix> raw;
  raw.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMatrix g(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) g(r, c) = rng.complex_gaussian();
    }
    raw.push_back((g * g.adjoint()).hermitian_part());
  }
  return povm_from_raw(std::move(raw), pol);
}

Povm load_povm(const std::string& path, const NumericPolicy& pol) {
  using nlohmann::json;
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
  if (!j.contains("operators") || !j["operators"].is_array() || j["operators"].empty()) {
    throw ParseError("$.operators", "expected a nonempty array");
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(j["operators"].size());
  for (std::size_t i = 0; i < j["operators"].size(); ++i) {
    ops.push_back(detail::matrix_from_json(j["operators"][i], dim,
                                           "$.operators[" + std::to_string(i) + "]"));
  }
  try {
    return Povm(std::move(ops), pol);
  } catch (const ValidationError& err) {
    throw ValidationError("$." + err.field_path, err.message);
  }
}

void save_povm(const Povm& povm, const std::string& path) {
  using nlohmann::json;
  json j;
  j["dim"] = povm.dim();
  json ops = json::array();
  for (const ComplexMatrix& op : povm.operators()) {
    ops.push_back(detail::matrix_to_json(op));
  }
  j["operators"] = std::move(ops);
  std::ofstream out(path);
  if (!out) throw ParseError(path, "cannot open file for writing");
  out << j.dump(2) << "\n";
}

}  // namespace qsd
