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
#include <cstdio>
#include <fstream>
#include <string>

#include "qsd/bounds.hpp"
#include "qsd/ensemble.hpp"
#include "qsd/errors.hpp"
#include "qsd/measurement.hpp"
#include "qsd/rng.hpp"

using namespace qsd;

namespace {

Ensemble orthogonal_pair() {
  return make_ensemble({{0.5, DensityMatrix::pure({Complex(1, 0), Complex(0, 0)})},
                        {0.5, DensityMatrix::pure({Complex(0, 0), Complex(1, 0)})}});
}

std::string temp_path(const char* name) {
  return std::string("/tmp/qsd_measurement_test_") + name;
}

}  // namespace

TEST_CASE("povm validation") {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  CHECK_NOTHROW(Povm({i2}));

  ComplexMatrix half = Complex(0.5, 0.0) * i2;
  CHECK_NOTHROW(Povm({half, half}));

  // Does not sum to the identity.
  CHECK_THROWS_AS(Povm({half}), ValidationError);
  // Negative operator.
  CHECK_THROWS_AS(Povm({2.0 * i2, ComplexMatrix::diagonal({-1.0, -1.0})}),
                  ValidationError);
  // Mixed dimensions.
  CHECK_THROWS_AS(Povm({i2, ComplexMatrix::identity(3)}), ValidationError);
  // Empty.
  CHECK_THROWS_AS(Povm(std::vector<ComplexMatrix>{}), ValidationError);
}

TEST_CASE("povm_from_raw repairs near-valid operators") {
  SplitMix64 rng(3);
  // Slightly perturbed halves of the identity.
  ComplexMatrix a = Complex(0.5, 0.0) * ComplexMatrix::identity(2);
  ComplexMatrix b = a;
  a(0, 1) += Complex(1e-6, 2e-6);
  const Povm fixed = povm_from_raw({a, b});
  ComplexMatrix sum(2, 2);
  for (const ComplexMatrix& op : fixed.operators()) sum += op;
  CHECK(max_abs_diff(sum, ComplexMatrix::identity(2)) < 1e-12);

  // All-zero input: everything lands on outcome 0 as the identity remainder.
  const Povm zeros = povm_from_raw({ComplexMatrix(2, 2), ComplexMatrix(2, 2)});
  CHECK(max_abs_diff(zeros[0], ComplexMatrix::identity(2)) < 1e-14);
  CHECK(zeros[1].max_abs() < 1e-14);
}

TEST_CASE("error probability of hand-built measurements") {
  const Ensemble e = orthogonal_pair();
  ComplexMatrix p0(2, 2);
  p0(0, 0) = 1.0;
  ComplexMatrix p1(2, 2);
  p1(1, 1) = 1.0;
  const Povm projective = Povm({p0, p1});
  CHECK(error_probability(projective, e) == 0.0);

  // Swapped projectors always guess wrong.
  const Povm swapped = Povm({p1, p0});
  CHECK(error_probability(swapped, e) == doctest::Approx(1.0).epsilon(1e-15));

  // Uniform guessing: P_E = 1/2 for two equiprobable states.
  ComplexMatrix half = Complex(0.5, 0.0) * ComplexMatrix::identity(2);
  CHECK(error_probability(Povm({half, half}), e) ==
        doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(error_probability(Povm({ComplexMatrix::identity(2)}), e),
                  CountMismatch);
  const Ensemble e3 = random_pure_ensemble(2, 3, PriorKind::uniform, 1);
  CHECK_THROWS_AS(error_probability(projective, e3), DimensionMismatch);
}

TEST_CASE("pretty good measurement") {
  // Perfect on orthogonal states.
  const Ensemble e = orthogonal_pair();
  const Povm pgm = pretty_good_measurement(e);
  CHECK(error_probability(pgm, e) < 1e-12);

  // Always a valid measurement, and never worse than the pairwise-overlap
  // bound it is famous for staying under.
  SplitMix64 seeds(17);
  for (int t = 0; t < 50; ++t) {
    const std::uint64_t seed = seeds.next();
    const Ensemble re = (t % 2 == 0)
                            ? random_pure_ensemble(3, 3, PriorKind::dirichlet, seed)
                            : random_mixed_ensemble(3, 3, PriorKind::dirichlet, seed);
    const Povm m = pretty_good_measurement(re);
    REQUIRE(m.size() == re.size());
    ComplexMatrix sum(3, 3);
    for (const ComplexMatrix& op : m.operators()) sum += op;
    CHECK(max_abs_diff(sum, ComplexMatrix::identity(3)) < 1e-10);
    const double pe = error_probability(m, re);
    CHECK(pe >= -1e-12);
    CHECK(pe <= barnum_knill_upper_raw(re) + 1e-9);
  }
}

TEST_CASE("helstrom measurement matches the closed-form optimum") {
  SplitMix64 seeds(23);
  for (int t = 0; t < 60; ++t) {
    const std::uint64_t seed = seeds.next();
    const Ensemble e = (t % 2 == 0)
                           ? random_pure_ensemble(2, 2, PriorKind::dirichlet, seed)
                           : random_mixed_ensemble(2, 4, PriorKind::dirichlet, seed);
    const Povm m = helstrom_measurement(e);
    const double achieved = error_probability(m, e);
    const double expected = helstrom_exact_two(e);
    CHECK(std::abs(achieved - expected) < 1e-9);
    // The optimal measurement certifies itself.
    CHECK(dual_gap(m, e) < 1e-9);
  }

  const Ensemble three = random_pure_ensemble(3, 2, PriorKind::uniform, 5);
  CHECK_THROWS_AS(helstrom_measurement(three), NotTwoStates);
}

TEST_CASE("dual gap bounds suboptimality") {
  // A deliberately bad measurement for an easy instance has a large gap; the
  // optimal one has none. The certificate dim * gap must cover the shortfall.
  const Ensemble e = orthogonal_pair();
  ComplexMatrix p0(2, 2);
  p0(0, 0) = 1.0;
  ComplexMatrix p1(2, 2);
  p1(1, 1) = 1.0;
  const Povm bad = Povm({p1, p0});
  const double gap = dual_gap(bad, e);
  const double shortfall = error_probability(bad, e) - 0.0;
  CHECK(gap >= 0.0);
  CHECK(2.0 * gap + 1e-12 >= shortfall);
}

TEST_CASE("optimizer improves on the starting measurement and certifies") {
  SplitMix64 seeds(31);
  int certified = 0;
  for (int t = 0; t < 20; ++t) {
    const Ensemble e =
        random_mixed_ensemble(3, 3, PriorKind::dirichlet, seeds.next());
    const OptimizationResult res = optimize_measurement(e, 2000, 1e-7);
    REQUIRE(!res.success_history.empty());
    // History is monotone nondecreasing (best-so-far semantics at the end).
    const double start_success = res.success_history.front();
    CHECK(1.0 - res.error_probability >= start_success - 1e-12);
    // Result is a valid measurement over the right outcome count.
    REQUIRE(res.povm.size() == e.size());
    ComplexMatrix sum(3, 3);
    for (const ComplexMatrix& op : res.povm.operators()) sum += op;
    CHECK(max_abs_diff(sum, ComplexMatrix::identity(3)) < 1e-10);
    // Reported error probability matches the returned measurement.
    CHECK(error_probability(res.povm, e) ==
          doctest::Approx(res.error_probability).epsilon(1e-10));
    CHECK(res.dual_gap >= 0.0);
    if (res.converged) {
      ++certified;
      CHECK(res.dual_gap <= 1e-7);
    }
  }
  // The fixed point converges on generic small instances.
  CHECK(certified >= 18);
}

TEST_CASE("optimizer on two states reaches the closed form") {
  SplitMix64 seeds(37);
  for (int t = 0; t < 10; ++t) {
    const Ensemble e =
        random_mixed_ensemble(2, 3, PriorKind::dirichlet, seeds.next());
    const OptimizationResult res = optimize_measurement(e, 5000, 1e-8);
    CHECK(std::abs(res.error_probability - helstrom_exact_two(e)) < 1e-6);
  }
}

TEST_CASE("random povm is deterministic and valid") {
  const Povm a = random_povm(4, 3, 11);
  const Povm b = random_povm(4, 3, 11);
  REQUIRE(a.size() == 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(bitwise_equal(a[i], b[i]));
  }
  ComplexMatrix sum(3, 3);
  for (const ComplexMatrix& op : a.operators()) sum += op;
  CHECK(max_abs_diff(sum, ComplexMatrix::identity(3)) < 1e-10);
  const Povm c = random_povm(4, 3, 12);
  CHECK(!bitwise_equal(a[0], c[0]));
}

TEST_CASE("povm save and load round-trips bitwise") {
  const Povm p = random_povm(3, 2, 19);
  const std::string path = temp_path("roundtrip.json");
  save_povm(p, path);
  const Povm back = load_povm(path);
  REQUIRE(back.size() == p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(bitwise_equal(back[i], p[i]));
  }
  std::remove(path.c_str());
}

TEST_CASE("povm load reports the offending field") {
  const std::string path = temp_path("bad.json");
  auto write_file = [&](const std::string& body) {
    std::ofstream out(path);
    out << body;
  };

  write_file("[1, 2]");
  CHECK_THROWS_AS(load_povm(path), ParseError);

  write_file("{\"dim\": 2, \"operators\": []}");
  try {
    load_povm(path);
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.field_path == "$.operators");
  }

  // Valid structure, not a measurement: sums to half the identity.
  write_file(
      "{\"dim\": 1, \"operators\": [[[[0.5, 0]]]]}");
  try {
    load_povm(path);
    FAIL("expected ValidationError");
  } catch (const ValidationError& err) {
    CHECK(err.field_path.rfind("$.operators", 0) == 0);
  }
  std::remove(path.c_str());
}
