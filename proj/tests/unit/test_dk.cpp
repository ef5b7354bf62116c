// Copyright 2026 The ipszeta Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ipszeta/dk.hpp"
#include "ipszeta/global_operator.hpp"

namespace ipszeta {
namespace {

TEST(DKParams, ValidationAndVariants) {
  EXPECT_THROW(DKParams(-0.1, 0.5), ParamOutOfRange);
  EXPECT_THROW(DKParams(0.5, 1.5), ParamOutOfRange);
  EXPECT_THROW(DKParams(std::nan(""), 0.5), ParamOutOfRange);
  EXPECT_EQ(DKParams::site(0.3).q, 0.3);
  EXPECT_DOUBLE_EQ(DKParams::bond(0.3).q, 1.0 - 0.49);
  EXPECT_TRUE(DKParams(0.3, 0.6).attractive());
  EXPECT_FALSE(DKParams(0.6, 0.3).attractive());
  const DKParams d(0.25, 0.75);
  EXPECT_EQ(d.f(0), 0.0);
  EXPECT_EQ(d.f(1), 0.25);
  EXPECT_EQ(d.f(2), 0.75);
  EXPECT_EQ(d.label(), "dk(0.25,0.75)");
}

TEST(DKOperator, WeightsAndClass) {
  const auto op = dk_local_operator({0.3, 0.8});
  EXPECT_EQ(op.weight(0, 0, 0, 0), 1.0);
  EXPECT_EQ(op.weight(0, 0, 1, 0), 0.7);
  EXPECT_EQ(op.weight(0, 1, 0, 1), 0.7);
  EXPECT_DOUBLE_EQ(op.weight(0, 1, 1, 1).real(), 0.2);
  EXPECT_EQ(op.weight(1, 0, 1, 0), 0.3);
  EXPECT_EQ(op.weight(1, 1, 0, 1), 0.3);
  EXPECT_EQ(op.weight(1, 1, 1, 1), 0.8);
  EXPECT_EQ(op.weight(1, 0, 0, 0), 0.0);
  EXPECT_THROW(DKParams::site(2.0), ParamOutOfRange);
}

TEST(DKOperator, AllDeathRoutesEverythingToZero) {
  const auto op = dk_local_operator({0.0, 0.0});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(op.weight(0, j, i, j), 1.0);
      EXPECT_EQ(op.weight(1, j, i, j), 0.0);
    }
}

TEST(DKStep, DeterministicCases) {
  std::mt19937_64 rng(41);
  LatticeState s{{0}, 0};
  const auto grown = dk_step(s, {1.0, 1.0}, rng);
  EXPECT_EQ(grown.occupied, (std::vector<long>{-1, 0}));
  EXPECT_EQ(grown.time, 1);
  EXPECT_TRUE(dk_step(s, {0.0, 0.7}, rng).empty());
  EXPECT_TRUE(dk_step(LatticeState{}, {1.0, 1.0}, rng).empty());
}

TEST(DKStep, SupportStaysInsideTheWindow) {
  std::mt19937_64 rng(42);
  LatticeState s{{0, 3}, 0};
  for (int t = 1; t <= 50 && !s.empty(); ++t) {
    s = dk_step(s, {0.7, 0.9}, rng);
    EXPECT_GE(s.occupied.front(), -t);
    EXPECT_LE(s.occupied.back(), 3);
    EXPECT_TRUE(std::is_sorted(s.occupied.begin(), s.occupied.end()));
  }
}

TEST(DKStep, PairOfParents) {
  const DKParams params(0.35, 0.6);
  std::mt19937_64 rng(43);
  constexpr int samples = 100000;
  int minus_one = 0, zero = 0, one = 0, both = 0;
  for (int k = 0; k < samples; ++k) {
    const auto next = dk_step(LatticeState{{0, 1}, 0}, params, rng);
    const bool a = std::binary_search(next.occupied.begin(), next.occupied.end(), -1L);
    const bool b = std::binary_search(next.occupied.begin(), next.occupied.end(), 0L);
    minus_one += a;
    zero += b;
    one += std::binary_search(next.occupied.begin(), next.occupied.end(), 1L);
    both += a && b;
  }
  auto within = [&](int count, double prob) {
    const double se = std::sqrt(prob * (1 - prob) / samples);
    return std::abs(static_cast<double>(count) / samples - prob) <= 3 * se;
  };
  EXPECT_TRUE(within(minus_one, 0.35));
  EXPECT_TRUE(within(zero, 0.6));
  EXPECT_TRUE(within(one, 0.35));
  EXPECT_TRUE(within(both, 0.35 * 0.6));
}

TEST(DKStep, TransitionTableFrequencies) {
  // Parent patterns (x, x+1) = 00, 01, 10, 11 occupy x with 0, p, p, q.
  const DKParams params(0.42, 0.77);
  const double expected[4] = {0.0, 0.42, 0.42, 0.77};
  std::mt19937_64 rng(44);
  constexpr int samples = 100000;
  for (int pattern = 0; pattern < 4; ++pattern) {
    std::vector<long> occ;
    if (pattern & 2) occ.push_back(0);
    if (pattern & 1) occ.push_back(1);
    int hits = 0;
    for (int k = 0; k < samples; ++k) {
      if (occ.empty()) break;
      const auto next = dk_step(LatticeState{occ, 0}, params, rng);
      hits += std::binary_search(next.occupied.begin(), next.occupied.end(), 0L);
    }
    const double prob = expected[pattern];
    const double se = std::sqrt(std::max(prob * (1 - prob), 1e-12) / samples);
    EXPECT_LE(std::abs(static_cast<double>(hits) / samples - prob), 3 * se) << "pattern " << pattern;
  }
}

TEST(DKStep, SweepMatchesTheGlobalOperatorColumn) {
  // One column of Q_n is the distribution of the pair sweep started from the
  // column's configuration. Unreachable configurations must never appear.
  std::mt19937_64 rng(45);
  constexpr int samples = 100000;
  const auto op = dk_local_operator({0.3, 0.8});
  for (int n = 2; n <= 6; ++n) {
    const Matrix q = kronecker_dense(op, n);
    for (std::uint64_t start : {std::uint64_t{1}, (std::uint64_t{1} << n) - 1}) {
      std::map<std::uint64_t, int> counts;
      for (int k = 0; k < samples; ++k) ++counts[sweep_sample(op, n, start, rng)];
      for (Eigen::Index row = 0; row < q.rows(); ++row) {
        const double prob = q(row, static_cast<Eigen::Index>(start)).real();
        const int count = counts[static_cast<std::uint64_t>(row)];
        if (prob == 0.0) {
          EXPECT_EQ(count, 0) << "n=" << n << " from " << start << " to " << row;
          continue;
        }
        const double se = std::sqrt(prob * (1 - prob) / samples);
        EXPECT_LE(std::abs(static_cast<double>(count) / samples - prob), 3 * se)
            << "n=" << n << " from " << start << " to " << row;
      }
    }
  }
}

TEST(Survival, Examples) {
  const auto sure = estimate_survival({1.0, 1.0}, {0}, 50, 100, 1);
  EXPECT_EQ(sure.estimate, 1.0);
  EXPECT_EQ(sure.survived, 100u);
  EXPECT_LT(estimate_survival({0.2, 0.2}, {0}, 100, 2000, 2).estimate, 0.01);
  const auto near = estimate_survival({0.8, 1.0}, {0}, 300, 20000, 3);
  EXPECT_NEAR(near.estimate, 0.9375, 0.015);
  EXPECT_LE(near.ci.lo, near.estimate);
  EXPECT_GE(near.ci.hi, near.estimate);
}

TEST(Survival, EmptySeedSetNeverSurvives) {
  const auto est = estimate_survival({0.9, 1.0}, {}, 10, 500, 4);
  EXPECT_EQ(est.estimate, 0.0);
  EXPECT_EQ(1.0 - est.estimate, 1.0);
}

TEST(Survival, DeterministicAndThreadIndependent) {
  const DKParams params(0.7, 0.7);
  const auto a = estimate_survival(params, {0, 2}, 80, 3000, 99, 1);
  const auto b = estimate_survival(params, {2, 0, 0}, 80, 3000, 99, 3);
  EXPECT_EQ(a.survived, b.survived);
  EXPECT_EQ(b.seed_set, (std::vector<long>{0, 2}));
  auto first = trial_stream(99, 0), other_seed = trial_stream(100, 0), other_trial = trial_stream(99, 1);
  const auto draw = first();
  EXPECT_NE(draw, other_seed());
  EXPECT_NE(draw, other_trial());
}

TEST(Survival, FastPathMatchesRepeatedSteps) {
  const DKParams params(0.66, 0.8);
  const std::vector<long> seeds{-2, 0, 1};
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    auto fast = trial_stream(5, trial), slow = trial_stream(5, trial);
    LatticeState s{seeds, 0};
    for (int t = 0; t < 40 && !s.empty(); ++t) s = dk_step(s, params, slow);
    EXPECT_EQ(detail::survives(std::span<const long>(seeds), params, 40, fast), !s.empty()) << trial;
  }
}

TEST(Survival, LongerHorizonsDoNotSurviveMore) {
  const DKParams params(0.65, 0.65);
  const auto shorter = estimate_survival(params, {0}, 50, 5000, 7);
  const auto longer = estimate_survival(params, {0}, 200, 5000, 7);
  const double se = std::hypot(shorter.standard_error(), longer.standard_error());
  EXPECT_GE(shorter.estimate, longer.estimate - 3 * se);
  // Same streams: every run alive at 200 was alive at 50.
  EXPECT_GE(shorter.survived, longer.survived);
}

TEST(Survival, ArgumentChecks) {
  EXPECT_THROW(estimate_survival({0.5, 0.5}, {0}, 0, 10, 1), std::invalid_argument);
  EXPECT_THROW(estimate_survival({0.5, 0.5}, {0}, 10, 0, 1), std::invalid_argument);
}

TEST(Wilson, Bounds) {
  const auto all = wilson_interval(100, 100);
  EXPECT_EQ(all.hi, 1.0);
  EXPECT_LT(all.lo, 1.0);
  EXPECT_GT(all.lo, 0.95);
  const auto none = wilson_interval(0, 100);
  EXPECT_EQ(none.lo, 0.0);
  const auto half = wilson_interval(50, 100);
  EXPECT_NEAR(half.lo + half.hi, 1.0, 1e-12);
}

TEST(ClosedForm, SurvivalAtQOne) {
  EXPECT_EQ(rho_q1_closed(1.0), 1.0);
  EXPECT_EQ(rho_q1_closed(0.5), 0.0);
  EXPECT_EQ(rho_q1_closed(0.3), 0.0);
  EXPECT_NEAR(rho_q1_closed(0.8), 0.9375, 1e-15);
  EXPECT_THROW(rho_q1_closed(1.2), ParamOutOfRange);
}

TEST(Scan, BracketsTheCriticalPointAtQOne) {
  std::vector<double> grid;
  for (int k = 0; k <= 6; ++k) grid.push_back(0.40 + 0.05 * k);
  const auto scan = scan_critical(1.0, grid, 200, 1000, 0.02, 11);
  ASSERT_TRUE(scan.bracket.has_value());
  EXPECT_LE(scan.bracket->first, 0.5);
  EXPECT_GE(scan.bracket->second, 0.5);
  EXPECT_EQ(scan.points.back().label, RegionLabel::Survival);
  EXPECT_EQ(scan.points.front().label, RegionLabel::Extinction);
}

TEST(Scan, HighPointIsSurvival) {
  const auto scan = scan_critical(1.0, {0.2, 0.9}, 200, 500, 0.02, 12);
  EXPECT_EQ(scan.points[1].label, RegionLabel::Survival);
}

TEST(Scan, NoBracketCarriesTheResult) {
  try {
    scan_critical(1.0, {0.0, 0.0}, 50, 100, 0.02, 13);
    FAIL() << "expected NoBracket";
  } catch (const NoBracket& e) {
    ASSERT_EQ(e.result().points.size(), 2u);
    for (const auto& pt : e.result().points) EXPECT_EQ(pt.label, RegionLabel::Extinction);
  }
  EXPECT_THROW(scan_critical(1.0, {0.6, 0.5}, 10, 10, 0.02, 1), std::invalid_argument);
  EXPECT_THROW(scan_critical(1.0, {0.6}, 10, 10, 1.5, 1), std::invalid_argument);
}

TEST(ReferenceSpectrum, ClosedForms) {
  auto near = [](const SpectrumMultiset& s, std::vector<std::complex<double>> v) {
    return match_multisets(s, SpectrumMultiset::exact(v)).equal_within(1e-14);
  };
  const std::complex<double> i(0, 1);
  EXPECT_TRUE(near(dk_reference_spectrum_n3({1.0, 0.0}), {1, 1, 1, 1, -1, -1, i, -i}));
  EXPECT_TRUE(near(dk_reference_spectrum_n3({0.5, 0.5}), {1, 1, 0.5, 0.5, 0, 0, 0.25, 0}));
  EXPECT_TRUE(near(dk_reference_spectrum_n3({0.3, 0.6}), {1, 1, 0.3, 0.3, 0.3, 0.09, 0.3, 0.09}));
}

}  // namespace
}  // namespace ipszeta
