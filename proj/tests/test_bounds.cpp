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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "qsd/bounds.hpp"
#include "qsd/ensemble.hpp"
#include "qsd/errors.hpp"
#include "qsd/measurement.hpp"
#include "qsd/rng.hpp"

using namespace qsd;

namespace {

const Complex kOne{1.0, 0.0};
const Complex kZero{0.0, 0.0};

// |0> and |+> with equal priors: pair fidelity exactly 1/2.
Ensemble zero_plus() {
  const double r = 1.0 / std::sqrt(2.0);
  return make_ensemble({{0.5, DensityMatrix::pure({kOne, kZero})},
                        {0.5, DensityMatrix::pure({Complex(r, 0), Complex(r, 0)})}});
}

Ensemble orthogonal_pair() {
  return make_ensemble({{0.5, DensityMatrix::pure({kOne, kZero})},
                        {0.5, DensityMatrix::pure({kZero, kOne})}});
}

Ensemble identical_pair(double p, const DensityMatrix& rho) {
  return make_ensemble({{p, rho}, {1.0 - p, rho}});
}

Ensemble shuffled(const Ensemble& e, std::uint64_t seed) {
  std::vector<WeightedState> entries = e.entries();
  SplitMix64 rng(seed);
  for (std::size_t i = entries.size(); i > 1; --i) {
    const std::size_t j = rng.uniform_index(0, i - 1);
    std::swap(entries[i - 1], entries[j]);
  }
  return Ensemble::unchecked(std::move(entries));
}

}  // namespace

TEST_CASE("pair-fidelity lower bound on worked examples") {
  CHECK(std::abs(montanaro_lower(zero_plus()) - 0.125) < 1e-12);
  CHECK(montanaro_lower(orthogonal_pair()) == 0.0);

  // Identical states: the bound is exactly the product of priors.
  const DensityMatrix rho =
      DensityMatrix::unchecked(ComplexMatrix::diagonal({0.7, 0.3}));
  for (double p : {0.05, 0.15, 0.25, 0.35, 0.45}) {
    CHECK(montanaro_lower(identical_pair(p, rho)) ==
          doctest::Approx(p * (1.0 - p)).epsilon(1e-12));
  }
}

TEST_CASE("square-root-measurement upper bound on worked examples") {
  CHECK(std::abs(barnum_knill_upper_raw(zero_plus()) - std::sqrt(0.5)) < 1e-12);
  CHECK(barnum_knill_upper(zero_plus()) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

  // Three identical states: the raw sum reaches 2 and the bound clamps at 1.
  const DensityMatrix psi = DensityMatrix::pure({kOne, kZero});
  const double third = 1.0 / 3.0;
  const Ensemble id3 = make_ensemble({{third, psi}, {third, psi}, {1.0 - 2.0 * third, psi}});
  CHECK(barnum_knill_upper_raw(id3) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(barnum_knill_upper(id3) == 1.0);
}

TEST_CASE("exact two-state optimum on worked examples") {
  CHECK(std::abs(helstrom_exact_two(zero_plus()) - 0.5 * (1.0 - std::sqrt(0.5))) <
        1e-12);
  CHECK(helstrom_exact_two(orthogonal_pair()) == 0.0);

  const DensityMatrix rho =
      DensityMatrix::unchecked(ComplexMatrix::diagonal({0.6, 0.4}));
  CHECK(std::abs(helstrom_exact_two(identical_pair(0.25, rho)) - 0.25) < 1e-12);

  CHECK_THROWS_AS(helstrom_exact_two(random_pure_ensemble(3, 2, PriorKind::uniform, 1)),
                  NotTwoStates);
}

TEST_CASE("two-state tightness ratio for identical states") {
  // For identical states with priors (p, 1-p), p <= 1/2: the exact optimum is
  // p while the pair bound gives p(1-p), so their ratio is 1/(1-p), which
  // approaches 1 as p tends to 0.
  const Ensemble seedbed = random_mixed_ensemble(1, 2, PriorKind::uniform, 1234);
  const DensityMatrix& rho = seedbed.state(0);
  for (int k = 1; k <= 10; ++k) {
    const double p = 0.05 * k;
    const Ensemble e = identical_pair(p, rho);
    const double exact = helstrom_exact_two(e);
    const double lower = montanaro_lower(e);
    const double ratio = exact / lower;
    CHECK(std::abs(ratio - 1.0 / (1.0 - p)) < 1e-9);
  }
  const Ensemble near_tight = identical_pair(0.05, rho);
  const double ratio =
      helstrom_exact_two(near_tight) / montanaro_lower(near_tight);
  CHECK(std::abs(ratio - 1.0) < 0.06);
}

TEST_CASE("multicopy lower bound") {
  const Ensemble e = zero_plus();
  // One copy reproduces the pair bound exactly for uniform priors.
  CHECK(multicopy_lower(e, 1) == montanaro_lower(e));
  // Two copies square the fidelity: (1/4) * (1/2)^2.
  CHECK(std::abs(multicopy_lower(e, 2) - 0.0625) < 1e-12);

  const DensityMatrix rho =
      DensityMatrix::unchecked(ComplexMatrix::diagonal({0.8, 0.2}));
  const Ensemble skewed = make_ensemble({{0.3, rho}, {0.7, rho}});
  CHECK_THROWS_AS(multicopy_lower(skewed, 1), NonUniformPriors);
  CHECK_THROWS_AS(multicopy_lower(e, 0), InvalidInput);
}

TEST_CASE("multicopy bound matches the pair bound on the tensor power") {
  SplitMix64 seeds(4321);
  for (int t = 0; t < 12; ++t) {
    const std::uint64_t seed = seeds.next();
    const std::size_t n = 2 + t % 2;
    const Ensemble e = (t % 3 == 0)
                           ? random_pure_ensemble(n, 2, PriorKind::uniform, seed)
                           : random_mixed_ensemble(n, 2, PriorKind::uniform, seed);
    for (std::size_t m = 1; m <= 3; ++m) {
      const double direct = multicopy_lower(e, m);
      const double via_tensor = montanaro_lower(tensor_power(e, m));
      CHECK(std::abs(direct - via_tensor) < 1e-9);
    }
  }
}

TEST_CASE("closed-form floor and copy count") {
  CHECK(multicopy_floor_lower(2, 0.5, 3) == 0.03125);
  CHECK(multicopy_floor_lower(3, 0.25, 1) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK(multicopy_floor_lower(2, 0.0, 1) == 0.0);
  CHECK_THROWS_AS(multicopy_floor_lower(0, 0.5, 1), InvalidInput);
  CHECK_THROWS_AS(multicopy_floor_lower(2, 0.5, 0), InvalidInput);
  CHECK_THROWS_AS(multicopy_floor_lower(2, 1.5, 1), InvalidInput);

  CHECK(copies_needed(0.5, 0.01) ==
        doctest::Approx(std::log2(100.0) - 2.0).epsilon(1e-15));
  CHECK(copies_needed(0.5, 0.25) == 0.0);
  // Large epsilon makes the bound nonpositive; callers take the ceiling.
  CHECK(copies_needed(0.5, 0.5) < 0.0);
  CHECK_THROWS_AS(copies_needed(1.0, 0.01), InvalidInput);
  CHECK_THROWS_AS(copies_needed(0.0, 0.01), InvalidInput);
  CHECK_THROWS_AS(copies_needed(1.5, 0.01), InvalidInput);
  CHECK_THROWS_AS(copies_needed(0.5, 0.0), InvalidInput);
  CHECK_THROWS_AS(copies_needed(0.5, 1.0), InvalidInput);
}

TEST_CASE("unambiguous-discrimination lower bound") {
  const double r = 1.0 / std::sqrt(2.0);
  // |0>, |+>: (2/1) * sqrt(1/4) * sqrt(1/2) = 1/sqrt(2).
  CHECK(std::abs(zhang_unambiguous_lower(zero_plus()) - r) < 1e-12);
  CHECK(zhang_unambiguous_lower(orthogonal_pair()) == 0.0);

  // Three identical pure states, uniform priors: the bound reaches 1.
  const DensityMatrix psi = DensityMatrix::pure({kOne, kZero});
  const double third = 1.0 / 3.0;
  const Ensemble id3 = make_ensemble({{third, psi}, {third, psi}, {1.0 - 2.0 * third, psi}});
  CHECK(zhang_unambiguous_lower(id3) == doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(zhang_unambiguous_lower(random_mixed_ensemble(2, 2, PriorKind::uniform, 3)),
                  NotPureStates);
  const Ensemble single = make_ensemble({{1.0, psi}});
  CHECK_THROWS_AS(zhang_unambiguous_lower(single), TooFewStates);
}

TEST_CASE("bounds are exactly invariant under relabeling") {
  SplitMix64 seeds(98765);
  for (int t = 0; t < 20; ++t) {
    const std::uint64_t seed = seeds.next();
    const Ensemble pure = random_pure_ensemble(4, 3, PriorKind::dirichlet, seed);
    const Ensemble mixed = random_mixed_ensemble(4, 3, PriorKind::dirichlet, seed);
    for (std::uint64_t s = 1; s <= 3; ++s) {
      const Ensemble ps = shuffled(pure, seed + s);
      const Ensemble ms = shuffled(mixed, seed + s);
      CHECK(montanaro_lower(ps) == montanaro_lower(pure));
      CHECK(montanaro_lower(ms) == montanaro_lower(mixed));
      CHECK(barnum_knill_upper_raw(ps) == barnum_knill_upper_raw(pure));
      CHECK(barnum_knill_upper_raw(ms) == barnum_knill_upper_raw(mixed));
      CHECK(zhang_unambiguous_lower(ps) == zhang_unambiguous_lower(pure));
    }
  }

  // The two-state optimum is exactly swap-invariant too.
  for (int t = 0; t < 20; ++t) {
    const Ensemble e = random_mixed_ensemble(2, 3, PriorKind::dirichlet, 1000 + t);
    const Ensemble swapped =
        Ensemble::unchecked({e.entries()[1], e.entries()[0]});
    CHECK(helstrom_exact_two(e) == helstrom_exact_two(swapped));
  }
}

TEST_CASE("lower bound never exceeds the exact two-state optimum") {
  SplitMix64 seeds(555);
  for (int t = 0; t < 200; ++t) {
    const std::uint64_t seed = seeds.next();
    const Ensemble e = (t % 2 == 0)
                           ? random_pure_ensemble(2, 3, PriorKind::dirichlet, seed)
                           : random_mixed_ensemble(2, 3, PriorKind::dirichlet, seed);
    const double lower = montanaro_lower(e);
    const double exact = helstrom_exact_two(e);
    CHECK(lower <= exact + 1e-9);
    CHECK(exact <= barnum_knill_upper_raw(e) + 1e-9);
    CHECK(exact <= 0.5 + 1e-15);
    CHECK(lower >= 0.0);
  }
}

TEST_CASE("optimized error sits between the bounds") {
  SplitMix64 seeds(777);
  for (int t = 0; t < 40; ++t) {
    const std::uint64_t seed = seeds.next();
    const std::size_t n = 2 + t % 3;
    const std::size_t dim = 2 + t % 3;
    const Ensemble e =
        (t % 2 == 0) ? random_pure_ensemble(n, dim, PriorKind::dirichlet, seed)
                     : random_mixed_ensemble(n, dim, PriorKind::dirichlet, seed);
    const OptimizationResult res = optimize_measurement(e, 2000, 1e-7);
    CHECK(res.error_probability >= montanaro_lower(e) - 1e-7);
    CHECK(res.error_probability <= barnum_knill_upper(e) + 1e-7);
  }
}

TEST_CASE("pairwise fidelity table") {
  const Ensemble e = random_mixed_ensemble(4, 3, PriorKind::dirichlet, 31);
  const std::vector<std::vector<double>> table = pairwise_fidelities(e);
  REQUIRE(table.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    REQUIRE(table[i].size() == 4);
    CHECK(table[i][i] == 1.0);
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(table[i][j] == table[j][i]);
      CHECK(table[i][j] >= 0.0);
      CHECK(table[i][j] <= 1.0);
    }
  }
}

TEST_CASE("bound report applicability") {
  // Two pure states: every optional except the optimizer is applicable.
  const Ensemble pure2 = zero_plus();
  const BoundReport r1 = bound_report(pure2);
  CHECK(r1.helstrom_exact.has_value());
  CHECK(r1.zhang_unambiguous_lower.has_value());
  CHECK(!r1.optimized_error.has_value());
  CHECK(r1.metadata.n == 2);
  CHECK(r1.metadata.dim == 2);
  CHECK(!r1.metadata.seed.has_value());

  // Three mixed states: no two-state optimum, no pure-state bound.
  const Ensemble mixed3 = random_mixed_ensemble(3, 2, PriorKind::uniform, 8);
  BoundReportOptions opt;
  opt.optimize = true;
  opt.seed = 8;
  const BoundReport r2 = bound_report(mixed3, opt);
  CHECK(!r2.helstrom_exact.has_value());
  CHECK(!r2.zhang_unambiguous_lower.has_value());
  REQUIRE(r2.optimized_error.has_value());
  CHECK(*r2.optimized_error >= r2.montanaro_lower - 1e-7);
  CHECK(*r2.optimized_error <= r2.barnum_knill_upper + 1e-7);
  CHECK(r2.metadata.seed.has_value());

  // Values agree with the standalone functions.
  CHECK(r1.montanaro_lower == montanaro_lower(pure2));
  CHECK(r1.barnum_knill_upper_raw == barnum_knill_upper_raw(pure2));
  CHECK(*r1.helstrom_exact == helstrom_exact_two(pure2));

  // The total timing is recorded last.
  REQUIRE(!r1.metadata.timings_seconds.empty());
  CHECK(r1.metadata.timings_seconds.back().first == "total");
}

TEST_CASE("bound report serialization") {
  BoundReportOptions opt;
  opt.optimize = true;
  const nlohmann::ordered_json j = report_to_json(bound_report(zero_plus(), opt));

  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  const std::vector<std::string> expected = {
      "montanaro_lower",      "barnum_knill_upper", "barnum_knill_upper_raw",
      "helstrom_exact",       "optimized_error",    "zhang_unambiguous_lower",
      "pairwise_fidelities",  "metadata"};
  CHECK(keys == expected);

  CHECK(j["metadata"]["seed"].is_null());
  CHECK(j["metadata"]["n"] == 2);
  CHECK(j["metadata"]["dim"] == 2);
  // Timings are rounded to whole milliseconds.
  for (const auto& item : j["metadata"]["timings_seconds"].items()) {
    const double v = item.value().get<double>();
    CHECK(v >= 0.0);
    CHECK(std::abs(v * 1000.0 - std::round(v * 1000.0)) < 1e-9);
  }

  // A three-state mixed report omits the inapplicable optionals.
  const nlohmann::ordered_json j3 =
      report_to_json(bound_report(random_mixed_ensemble(3, 2, PriorKind::uniform, 8)));
  CHECK(!j3.contains("helstrom_exact"));
  CHECK(!j3.contains("optimized_error"));
  CHECK(!j3.contains("zhang_unambiguous_lower"));
  CHECK(j3.contains("pairwise_fidelities"));
}
