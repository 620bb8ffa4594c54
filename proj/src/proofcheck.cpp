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

#include "qsd/proofcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "qsd/bounds.hpp"
#include "qsd/decomp.hpp"
#include "qsd/errors.hpp"
#include "qsd/norms.hpp"
#include "qsd/rng.hpp"

namespace qsd {

namespace {

// d x d factor L of a PSD matrix with L L^dag = m: columns sqrt(lambda) v in
// descending eigenvalue order, zero columns once eigenvalues fall below the
// cutoff. Rank-1 inputs thus get their whole weight in the first column.
ComplexMatrix psd_factor(const ComplexMatrix& m, const NumericPolicy& pol) {
  const EigDecomposition eig = hermitian_eig(m, pol);
  const std::size_t d = m.rows();
  ComplexMatrix factor(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t src = d - 1 - k;  // ascending order reversed
    if (eig.eigenvalues[src] < pol.zero_eigenvalue_cutoff) continue;
    const double scale = std::sqrt(eig.eigenvalues[src]);
    for (std::size_t r = 0; r < d; ++r) {
      factor(r, k) = scale * eig.eigenvectors(r, src);
    }
  }
  return factor;
}

ComplexMatrix pad_to(const ComplexMatrix& m, std::size_t rows, std::size_t cols) {
  ComplexMatrix out(rows, cols);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  }
  return out;
}

ComplexMatrix hcat(const std::vector<ComplexMatrix>& blocks) {
  std::size_t cols = 0;
  for (const ComplexMatrix& b : blocks) cols += b.cols();
  ComplexMatrix out(blocks.front().rows(), cols);
  std::size_t offset = 0;
  for (const ComplexMatrix& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r) {
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, offset + c) = b(r, c);
    }
    offset += b.cols();
  }
  return out;
}

double frobenius_sq(const ComplexMatrix& m) {
  const double f = m.frobenius_norm();
  return f * f;
}

double trace_norm_sq(const ComplexMatrix& m, const NumericPolicy& pol) {
  const double t = trace_norm(m, pol);
  return t * t;
}

void check_counts_and_dims(const Povm& m, const Ensemble& e) {
  if (m.size() != e.size() || m.dim() != e.dim()) {
    throw DimensionMismatch(
        "measurement and ensemble must agree in outcome count and dimension");
  }
}

}  // namespace

ComplexMatrix BlockMatrix::flatten() const {
  ComplexMatrix out(block_rows * rows_per_block, block_cols * cols_per_block);
  for (std::size_t i = 0; i < block_rows; ++i) {
    for (std::size_t j = 0; j < block_cols; ++j) {
      const ComplexMatrix& b = block(i, j);
      for (std::size_t r = 0; r < rows_per_block; ++r) {
        for (std::size_t c = 0; c < cols_per_block; ++c) {
          out(i * rows_per_block + r, j * cols_per_block + c) = b(r, c);
        }
      }
    }
  }
  return out;
}

BlockMatrix BlockMatrix::slice(const ComplexMatrix& m, std::size_t block_rows,
                               std::size_t block_cols) {
  if (block_rows == 0 || block_cols == 0 || m.rows() % block_rows != 0 ||
      m.cols() % block_cols != 0) {
    throw DimensionMismatch("matrix shape is not divisible into the requested grid");
  }
  BlockMatrix out;
  out.block_rows = block_rows;
  out.block_cols = block_cols;
  out.rows_per_block = m.rows() / block_rows;
  out.cols_per_block = m.cols() / block_cols;
  out.blocks.reserve(block_rows * block_cols);
  for (std::size_t i = 0; i < block_rows; ++i) {
    for (std::size_t j = 0; j < block_cols; ++j) {
      ComplexMatrix b(out.rows_per_block, out.cols_per_block);
      for (std::size_t r = 0; r < out.rows_per_block; ++r) {
        for (std::size_t c = 0; c < out.cols_per_block; ++c) {
          b(r, c) = m(i * out.rows_per_block + r, j * out.cols_per_block + c);
        }
      }
      out.blocks.push_back(std::move(b));
    }
  }
  return out;
}

BlockMatrix build_state_matrix(const Ensemble& e, const NumericPolicy& pol) {
  BlockMatrix s;
  s.block_rows = 1;
  s.block_cols = e.size();
  s.rows_per_block = e.dim();
  s.cols_per_block = e.dim();
  s.blocks.reserve(e.size());
  for (const WeightedState& ws : e.entries()) {
    s.blocks.push_back(
        psd_factor(Complex(ws.prior, 0.0) * ws.state.matrix(), pol));
  }
  return s;
}

BlockMatrix build_measurement_matrix(const Povm& m, const NumericPolicy& pol) {
  BlockMatrix n;
  n.block_rows = 1;
  n.block_cols = m.size();
  n.rows_per_block = m.dim();
  n.cols_per_block = m.dim();
  n.blocks.reserve(m.size());
  for (const ComplexMatrix& op : m.operators()) {
    n.blocks.push_back(psd_factor(op, pol));
  }
  return n;
}

BlockMatrix build_A(const Povm& m, const Ensemble& e, const NumericPolicy& pol) {
  check_counts_and_dims(m, e);
  const BlockMatrix n = build_measurement_matrix(m, pol);
  const BlockMatrix s = build_state_matrix(e, pol);
  BlockMatrix a;
  a.block_rows = m.size();
  a.block_cols = e.size();
  a.rows_per_block = e.dim();
  a.cols_per_block = e.dim();
  a.blocks.reserve(a.block_rows * a.block_cols);
  for (std::size_t i = 0; i < a.block_rows; ++i) {
    const ComplexMatrix ni_adj = n.block(0, i).adjoint();
    for (std::size_t j = 0; j < a.block_cols; ++j) {
      a.blocks.push_back(ni_adj * s.block(0, j));
    }
  }
  return a;
}

double check_gram_identity(const Povm& m, const Ensemble& e, const NumericPolicy& pol) {
  check_counts_and_dims(m, e);
  const ComplexMatrix a = build_A(m, e, pol).flatten();
  const ComplexMatrix s = build_state_matrix(e, pol).flatten();
  return (a.adjoint() * a - s.adjoint() * s).frobenius_norm();
}

double block_probability_max_residual(const Povm& m, const Ensemble& e,
                                      const NumericPolicy& pol) {
  check_counts_and_dims(m, e);
  const BlockMatrix a = build_A(m, e, pol);
  double worst = 0.0;
  double total = 0.0;
  double off_diagonal = 0.0;
  for (std::size_t i = 0; i < a.block_rows; ++i) {
    for (std::size_t j = 0; j < a.block_cols; ++j) {
      const double block_sq = frobenius_sq(a.block(i, j));
      const double expected =
          e.prior(j) * trace_product(m[i], e.state(j).matrix()).real();
      worst = std::max(worst, std::abs(block_sq - expected));
      total += block_sq;
      if (i != j) off_diagonal += block_sq;
    }
  }
  worst = std::max(worst, std::abs(total - 1.0));
  worst = std::max(worst, std::abs(off_diagonal - error_probability(m, e, pol)));
  return worst;
}

double block_fidelity_max_residual(const Ensemble& e, const NumericPolicy& pol) {
  const BlockMatrix s = build_state_matrix(e, pol);
  double worst = 0.0;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const ComplexMatrix si_adj = s.block(0, i).adjoint();
    for (std::size_t j = 0; j < i; ++j) {
      const double gram_sq = trace_norm_sq(si_adj * s.block(0, j), pol);
      const double expected = e.prior(i) * e.prior(j) *
                              fidelity(e.state(i).matrix(), e.state(j).matrix(), pol);
      worst = std::max(worst, std::abs(gram_sq - expected));
    }
  }
  return worst;
}

double lemma1_slack(const ComplexMatrix& a, const ComplexMatrix& b,
                    const ComplexMatrix& c, const ComplexMatrix& d,
                    const NumericPolicy& pol) {
  const std::size_t dim = a.rows();
  auto square_of = [dim](const ComplexMatrix& m) {
    return m.is_square() && m.rows() == dim;
  };
  if (!square_of(a) || !square_of(b) || !square_of(c) || !square_of(d)) {
    throw DimensionMismatch("all four factors must be square of one dimension");
  }
  const double left = (frobenius_sq(a) + frobenius_sq(d)) *
                      (frobenius_sq(b) + frobenius_sq(c));
  return left - trace_norm_sq(a * b + c * d, pol);
}

double lemma2_slack(const std::vector<ComplexMatrix>& blocks, const NumericPolicy& pol) {
  if (blocks.empty()) throw InvalidInput("need at least one block");
  const std::size_t rows = blocks.front().rows();
  for (const ComplexMatrix& b : blocks) {
    if (b.rows() != rows) throw DimensionMismatch("blocks must share a row count");
  }
  double per_block = 0.0;
  for (const ComplexMatrix& b : blocks) per_block += trace_norm_sq(b, pol);
  return trace_norm_sq(hcat(blocks), pol) - per_block;
}

double theorem1_slack(const Povm& m, const Ensemble& e, const NumericPolicy& pol) {
  check_counts_and_dims(m, e);
  return error_probability(m, e, pol) - montanaro_lower(e, pol);
}

std::vector<RowInequalityCheck> row_inequality_checks(const Povm& m, const Ensemble& e,
                                                      const NumericPolicy& pol) {
  check_counts_and_dims(m, e);
  const std::size_t n = e.size();
  const std::size_t d = e.dim();
  const BlockMatrix a = build_A(m, e, pol);
  const ComplexMatrix a_flat = a.flatten();
  const BlockMatrix gram = BlockMatrix::slice(a_flat.adjoint() * a_flat, n, n);

  const std::size_t rest = (n - 1) * d;
  const std::size_t s = std::max(d, rest);
  std::vector<RowInequalityCheck> checks;
  checks.reserve(n);
  for (std::size_t row = 0; row < n; ++row) {
    // Bring the chosen row and column to the front; the remaining indices
    // keep their relative order.
    std::vector<std::size_t> order;
    order.reserve(n);
    order.push_back(row);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != row) order.push_back(i);
    }

    std::vector<ComplexMatrix> x_blocks, y_adj_blocks, t_blocks;
    std::vector<ComplexMatrix> z_rows;
    for (std::size_t j = 1; j < n; ++j) {
      x_blocks.push_back(a.block(order[0], order[j]));
      y_adj_blocks.push_back(a.block(order[j], order[0]).adjoint());
      t_blocks.push_back(gram.block(order[0], order[j]));
    }
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<ComplexMatrix> row_blocks;
      for (std::size_t j = 1; j < n; ++j) {
        row_blocks.push_back(a.block(order[i], order[j]));
      }
      z_rows.push_back(hcat(row_blocks));
    }

    const ComplexMatrix corner = a.block(row, row);
    const ComplexMatrix x = hcat(x_blocks);
    const ComplexMatrix y_adj = hcat(y_adj_blocks);
    ComplexMatrix z(rest, rest);
    for (std::size_t i = 0; i < n - 1; ++i) {
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < rest; ++c) z(i * d + r, c) = z_rows[i](r, c);
      }
    }

    const ComplexMatrix a_hat = pad_to(corner.adjoint(), s, s);
    const ComplexMatrix b_hat = pad_to(x, s, s);
    const ComplexMatrix c_hat = pad_to(y_adj, s, s);
    const ComplexMatrix d_hat = pad_to(z, s, s);

    const ComplexMatrix t = hcat(t_blocks);
    const double t_norm = trace_norm(t, pol);
    const double padded_norm = trace_norm(a_hat * b_hat + c_hat * d_hat, pol);

    double gram_sum = 0.0;
    double frob_sum = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
      gram_sum += trace_norm_sq(t_blocks[j - 1], pol);
      frob_sum += frobenius_sq(a.block(order[0], order[j])) +
                  frobenius_sq(a.block(order[j], order[0]));
    }

    RowInequalityCheck check;
    check.row = row;
    check.row_slack = frob_sum - gram_sum;
    check.lemma1_slack = lemma1_slack(a_hat, b_hat, c_hat, d_hat, pol);
    check.lemma2_slack = t_norm * t_norm - gram_sum;
    check.bridge_residual = std::abs(padded_norm - t_norm);
    check.norm_cap_slack = 1.0 - (frobenius_sq(corner) + frobenius_sq(z));
    checks.push_back(check);
  }
  return checks;
}

namespace {

struct TrialInstance {
  Ensemble e;
  Povm m;
};

TrialInstance random_instance(std::uint64_t seed, const NumericPolicy& pol) {
  SplitMix64 rng(seed);
  const std::size_t n = rng.uniform_index(2, 5);
  const std::size_t dim = rng.uniform_index(2, 6);
  const bool pure = rng.uniform() < 0.5;
  const PriorKind priors =
      rng.uniform() < 0.5 ? PriorKind::uniform : PriorKind::dirichlet;
  const std::uint64_t ensemble_seed = rng.next();
  const std::uint64_t povm_seed = rng.next();
  Ensemble e = pure ? random_pure_ensemble(n, dim, priors, ensemble_seed, pol)
                    : random_mixed_ensemble(n, dim, priors, ensemble_seed, pol);
  Povm m = random_povm(n, dim, povm_seed, pol);
  return {std::move(e), std::move(m)};
}

}  // namespace

double gram_identity_trial(std::uint64_t seed, const NumericPolicy& pol) {
  const TrialInstance t = random_instance(seed, pol);
  return check_gram_identity(t.m, t.e, pol);
}

double block_probability_trial(std::uint64_t seed, const NumericPolicy& pol) {
  const TrialInstance t = random_instance(seed, pol);
  return block_probability_max_residual(t.m, t.e, pol);
}

double block_fidelity_trial(std::uint64_t seed, const NumericPolicy& pol) {
  const TrialInstance t = random_instance(seed, pol);
  return block_fidelity_max_residual(t.e, pol);
}

double lemma1_trial(std::uint64_t seed, const NumericPolicy& pol) {
  SplitMix64 rng(seed);
  auto draw = [&rng] {
    ComplexMatrix m(4, 4);
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) m(r, c) = rng.complex_gaussian();
    }
    return m;
  };
  const ComplexMatrix a = draw();
  const ComplexMatrix b = draw();
  const ComplexMatrix c = draw();
  const ComplexMatrix d = draw();
  return lemma1_slack(a, b, c, d, pol);
}

double lemma2_trial(std::uint64_t seed, const NumericPolicy& pol) {
  SplitMix64 rng(seed);
  const std::size_t count = rng.uniform_index(2, 4);
  const std::size_t rows = rng.uniform_index(3, 5);
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t cols = rng.uniform_index(2, 4);
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.complex_gaussian();
    }
    blocks.push_back(std::move(m));
  }
  return lemma2_slack(blocks, pol);
}

double theorem1_trial(std::uint64_t seed, const NumericPolicy& pol) {
  const TrialInstance t = random_instance(seed, pol);
  return theorem1_slack(t.m, t.e, pol);
}

double row_inequality_trial(std::uint64_t seed, const NumericPolicy& pol) {
  const TrialInstance t = random_instance(seed, pol);
  double worst = std::numeric_limits<double>::infinity();
  for (const RowInequalityCheck& c : row_inequality_checks(t.m, t.e, pol)) {
    worst = std::min({worst, c.row_slack, c.lemma1_slack, c.lemma2_slack,
                      c.norm_cap_slack});
  }
  return worst;
}

double super_block_bridge_trial(std::uint64_t seed, const NumericPolicy& pol) {
  const TrialInstance t = random_instance(seed, pol);
  double worst = 0.0;
  for (const RowInequalityCheck& c : row_inequality_checks(t.m, t.e, pol)) {
    worst = std::max(worst, c.bridge_residual);
  }
  return worst;
}

namespace {

struct CheckSpec {
  const char* name;
  CheckKind kind;
  double (*trial)(std::uint64_t, const NumericPolicy&);
};

constexpr CheckSpec kChecks[] = {
    {"gram_identity", CheckKind::max_residual, gram_identity_trial},
    {"block_probability", CheckKind::max_residual, block_probability_trial},
    {"block_fidelity", CheckKind::max_residual, block_fidelity_trial},
    {"lemma1", CheckKind::min_slack, lemma1_trial},
    {"lemma2", CheckKind::min_slack, lemma2_trial},
    {"theorem1", CheckKind::min_slack, theorem1_trial},
    {"row_inequality", CheckKind::min_slack, row_inequality_trial},
    {"super_block_bridge", CheckKind::max_residual, super_block_bridge_trial},
};

}  // namespace

std::vector<CheckResult> run_verification(std::size_t trials, std::uint64_t seed,
                                          const NumericPolicy& pol) {
  if (trials == 0) throw InvalidInput("need at least one trial");
  std::vector<CheckResult> results;
  results.reserve(std::size(kChecks));
  for (const CheckSpec& spec : kChecks) {
    CheckResult result;
    result.name = spec.name;
    result.kind = spec.kind;
    result.trials = trials;
    result.worst_seed = seed;
    result.value = spec.trial(seed, pol);
    for (std::size_t t = 1; t < trials; ++t) {
      const std::uint64_t trial_seed = seed + t;
      const double value = spec.trial(trial_seed, pol);
      const bool worse = spec.kind == CheckKind::min_slack ? value < result.value
                                                           : value > result.value;
      if (worse) {
        result.value = value;
        result.worst_seed = trial_seed;
      }
    }
    results.push_back(std::move(result));
  }
  return results;
}

bool verification_passed(const std::vector<CheckResult>& results, double tol) {
  for (const CheckResult& r : results) {
    const bool ok =
        r.kind == CheckKind::min_slack ? r.value >= -tol : r.value <= tol;
    if (!ok) return false;
  }
  return true;
}

nlohmann::ordered_json verification_to_json(const std::vector<CheckResult>& results,
                                            double tol) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["tolerance"] = tol;
  j["super_block_padding"] =
      "all four blocks of each row's 2x2 super-block are padded square to "
      "max(dim, (n-1)*dim)";
  ordered_json checks = ordered_json::array();
  for (const CheckResult& r : results) {
    ordered_json entry;
    entry["name"] = r.name;
    entry["trials"] = r.trials;
    if (r.kind == CheckKind::min_slack) {
      entry["min_slack"] = r.value;
    } else {
      entry["max_residual"] = r.value;
    }
    entry["worst_seed"] = r.worst_seed;
    entry["passed"] = r.kind == CheckKind::min_slack ? r.value >= -tol : r.value <= tol;
    checks.push_back(std::move(entry));
  }
  j["checks"] = std::move(checks);
  j["passed"] = verification_passed(results, tol);
  return j;
}

}  // namespace qsd
