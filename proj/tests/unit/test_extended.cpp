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

#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "ipszeta/extended.hpp"
#include "ipszeta/ipszeta.hpp"

namespace ipszeta {
namespace {

TEST(Extended, DefectiveSpectrumResolvedAtSevenSites) {
  const extended_real p = extended_real(2) / 10;
  const auto report = verify_theorem3(dk_layout<extended_real>(p, 2 * p, "dk(0.2,0.4)"), 7, 20, 1e-7);
  EXPECT_TRUE(report.pass) << report.worst_residual;
}

TEST(Extended, DoublePrecisionLosesTheSameSpectrum) {
  // The Jordan blocks spread the computed eigenvalues by about eps^(1/m).
  const auto computed = global_spectrum_detailed(dk_local_operator({0.2, 0.4}), 7).unclustered();
  EXPECT_GT(match_multisets(t_case_spectrum(0.2, 7), computed).worst_distance, 1e-7);
}

TEST(Extended, SpectralRecursionOnStochasticOperators) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    const auto op = random_pca(rng).cast<extended_real>();
    EXPECT_TRUE(verify_theorem2(op, 5, 1e-7).pass) << trial;
  }
}

TEST(Extended, QuadPowerTracesAboveQOne) {
  // q = 1.6 puts a negative weight 1 - q in the operator; double precision
  // cancels badly here and quad does not.
  const auto c = c_r_series(dk_layout<quad_real>(0.8, 1.6), 8, 30);
  for (int r = 1; r <= 30; ++r)
    EXPECT_NEAR(std::abs(to_complex(c[static_cast<std::size_t>(r - 1)]) - theorem3_c_r(0.8, 8, r)), 0.0, 1e-9) << r;
}

TEST(Extended, CastRoundTrip) {
  const auto op = dk_local_operator({0.3, 0.7});
  const auto back = op.cast<extended_real>().cast<std::complex<double>>();
  EXPECT_EQ(back.entries(), op.entries());
  std::mt19937_64 rng(62);
  EXPECT_THROW(random_qca(rng).cast<extended_real>(), std::invalid_argument);
}

}  // namespace
}  // namespace ipszeta
