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

#include "qsd/bounds.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <utility>

#include "qsd/decomp.hpp"
#include "qsd/errors.hpp"
#include "qsd/measurement.hpp"
#include "qsd/norms.hpp"

namespace qsd {

namespace {

// Fidelity is symmetric as a function but its evaluation is not; fixing the
// argument order by a total order on the matrices makes every pair term —
// and with it every bound — exactly invariant under relabeling.
double canonical_fidelity(const ComplexMatrix& a, const ComplexMatrix& b,
                          const NumericPolicy& pol) {
  return lexicographic_compare(a, b) <= 0 ? fidelity(a, b, pol) : fidelity(b, a, pol);
}

// Order-independent accumulation: identical term multisets sum identically.
double sorted_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

std::vector<double> pair_terms(const Ensemble& e, const NumericPolicy& pol,
                               double (*term)(double, double)) {
  std::vector<double> terms;
  terms.reserve(e.size() * (e.size() - 1) / 2);
  for (std::size_t i = 1; i < e.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double f =
          canonical_fidelity(e.state(i).matrix(), e.state(j).matrix(), pol);
      terms.push_back(term(e.prior(i) * e.prior(j), f));
    }
  }
  return terms;
}

double pow_int(double base, std::size_t exponent) {
  double acc = 1.0;
  for (std::size_t k = 0; k < exponent; ++k) acc *= base;
  return acc;
}

void require_unit_interval_open(double value, const char* name) {
  if (!(value > 0.0) || !(value < 1.0)) {
    std::ostringstream os;
    os << name << " is " << value << ", expected a value strictly between 0 and 1";
    throw InvalidInput(os.str());
  }
}

}  // namespace

double montanaro_lower(const Ensemble& e, const NumericPolicy& pol) {
  return sorted_sum(
      pair_terms(e, pol, [](double pp, double f) { return pp * f; }));
}

double barnum_knill_upper_raw(const Ensemble& e, const NumericPolicy& pol) {
  return 2.0 * sorted_sum(pair_terms(e, pol, [](double pp, double f) {
           return std::sqrt(pp) * std::sqrt(f);
         }));
}

double barnum_knill_upper(const Ensemble& e, const NumericPolicy& pol) {
  return std::min(1.0, barnum_knill_upper_raw(e, pol));
}

double helstrom_exact_two(const Ensemble& e, const NumericPolicy& pol) {
  if (e.size() != 2) {
    throw NotTwoStates("the exact two-state bound needs exactly two states");
  }
  const ComplexMatrix delta = Complex(e.prior(0), 0.0) * e.state(0).matrix() -
                              Complex(e.prior(1), 0.0) * e.state(1).matrix();
  std::vector<double> magnitudes = hermitian_eig(delta, pol).eigenvalues;
  for (double& lambda : magnitudes) lambda = std::abs(lambda);
  const double trace_norm = sorted_sum(std::move(magnitudes));
  return std::max(0.0, 0.5 - 0.5 * trace_norm);
}

double multicopy_lower(const Ensemble& e, std::size_t m, const NumericPolicy& pol) {
  if (m == 0) throw InvalidInput("copy count must be at least 1");
  const std::size_t n = e.size();
  const double uniform = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(e.prior(i) - uniform) > pol.trace_tol) {
      std::ostringstream os;
      os << "prior " << i << " is " << e.prior(i) << ", expected the uniform value "
         << uniform;
      throw NonUniformPriors(os.str());
    }
  }
  std::vector<double> terms;
  terms.reserve(n * (n - 1) / 2);
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      terms.push_back(pow_int(
          canonical_fidelity(e.state(i).matrix(), e.state(j).matrix(), pol), m));
    }
  }
  return sorted_sum(std::move(terms)) /
         (static_cast<double>(n) * static_cast<double>(n));
}

double multicopy_floor_lower(std::size_t n, double fidelity_floor, std::size_t m) {
  if (n == 0) throw InvalidInput("state count must be at least 1");
  if (m == 0) throw InvalidInput("copy count must be at least 1");
  if (!(fidelity_floor >= 0.0) || !(fidelity_floor <= 1.0)) {
    std::ostringstream os;
    os << "fidelity floor is " << fidelity_floor << ", expected a value in [0, 1]";
    throw InvalidInput(os.str());
  }
  return static_cast<double>(n - 1) * pow_int(fidelity_floor, m) /
         (2.0 * static_cast<double>(n));
}

double copies_needed(double fidelity_floor, double epsilon) {
  require_unit_interval_open(fidelity_floor, "fidelity floor");
  require_unit_interval_open(epsilon, "epsilon");
  return (std::log2(1.0 / epsilon) - 2.0) / std::log2(1.0 / fidelity_floor);
}

double zhang_unambiguous_lower(const Ensemble& e, const NumericPolicy& pol) {
  const std::size_t n = e.size();
  if (n < 2) throw TooFewStates("unambiguous discrimination needs at least two states");
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<double>& eigs =
        hermitian_eig(e.state(i).matrix(), pol).eigenvalues;
    const double second = eigs.size() > 1 ? eigs[eigs.size() - 2] : 0.0;
    if (second > pol.psd_tol) {
      std::ostringstream os;
      os << "state " << i << " has second-largest eigenvalue " << second
         << ", expected rank 1";
      throw NotPureStates(os.str());
    }
  }
  const double total = sorted_sum(pair_terms(e, pol, [](double pp, double f) {
    return std::sqrt(pp) * std::sqrt(f);
  }));
  return 2.0 / static_cast<double>(n - 1) * total;
}

std::vector<std::vector<double>> pairwise_fidelities(const Ensemble& e,
                                                     const NumericPolicy& pol) {
  const std::size_t n = e.size();
  std::vector<std::vector<double>> table(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double f =
          canonical_fidelity(e.state(i).matrix(), e.state(j).matrix(), pol);
      table[i][j] = f;
      table[j][i] = f;
    }
  }
  return table;
}

BoundReport bound_report(const Ensemble& e, const BoundReportOptions& options,
                         const NumericPolicy& pol) {
  using Clock = std::chrono::steady_clock;
  BoundReport report;
  report.metadata.n = e.size();
  report.metadata.dim = e.dim();
  report.metadata.seed = options.seed;

  const auto start = Clock::now();
  auto timed = [&report](const std::string& name, auto&& fn) {
    const auto t0 = Clock::now();
    fn();
    const std::chrono::duration<double> elapsed = Clock::now() - t0;
    report.metadata.timings_seconds.emplace_back(name, elapsed.count());
  };

  timed("pairwise_fidelities",
        [&] { report.pairwise_fidelities = pairwise_fidelities(e, pol); });
  timed("montanaro_lower", [&] { report.montanaro_lower = montanaro_lower(e, pol); });
  timed("barnum_knill_upper", [&] {
    report.barnum_knill_upper_raw = barnum_knill_upper_raw(e, pol);
    report.barnum_knill_upper = std::min(1.0, report.barnum_knill_upper_raw);
  });
  if (e.size() == 2) {
    timed("helstrom_exact", [&] { report.helstrom_exact = helstrom_exact_two(e, pol); });
  }
  if (e.size() >= 2) {
    bool all_pure = true;
    for (std::size_t i = 0; i < e.size() && all_pure; ++i) {
      const std::vector<double>& eigs =
          hermitian_eig(e.state(i).matrix(), pol).eigenvalues;
      all_pure = eigs.size() < 2 || eigs[eigs.size() - 2] <= pol.psd_tol;
    }
    if (all_pure) {
      timed("zhang_unambiguous_lower",
            [&] { report.zhang_unambiguous_lower = zhang_unambiguous_lower(e, pol); });
    }
  }
  if (options.optimize) {
    timed("optimized_error", [&] {
      report.optimized_error =
          optimize_measurement(e, options.max_iters, options.cert_tol, pol)
              .error_probability;
    });
  }
  const std::chrono::duration<double> total = Clock::now() - start;
  report.metadata.timings_seconds.emplace_back("total", total.count());
  return report;
}

nlohmann::ordered_json report_to_json(const BoundReport& report) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["montanaro_lower"] = report.montanaro_lower;
  j["barnum_knill_upper"] = report.barnum_knill_upper;
  j["barnum_knill_upper_raw"] = report.barnum_knill_upper_raw;
  if (report.helstrom_exact) j["helstrom_exact"] = *report.helstrom_exact;
  if (report.optimized_error) j["optimized_error"] = *report.optimized_error;
  if (report.zhang_unambiguous_lower) {
    j["zhang_unambiguous_lower"] = *report.zhang_unambiguous_lower;
  }
  j["pairwise_fidelities"] = report.pairwise_fidelities;
  ordered_json meta;
  meta["n"] = report.metadata.n;
  meta["dim"] = report.metadata.dim;
  if (report.metadata.seed) {
    meta["seed"] = *report.metadata.seed;
  } else {
    meta["seed"] = nullptr;
  }
  ordered_json timings = ordered_json::object();
  for (const auto& [name, seconds] : report.metadata.timings_seconds) {
    timings[name] = std::round(seconds * 1000.0) / 1000.0;
  }
  meta["timings_seconds"] = std::move(timings);
  j["metadata"] = std::move(meta);
  return j;
}

}  // namespace qsd
