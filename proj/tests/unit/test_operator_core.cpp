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

#include <array>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ipszeta/configuration.hpp"
#include "ipszeta/dk.hpp"
#include "ipszeta/global_operator.hpp"
#include "ipszeta/local_operator.hpp"
#include "ipszeta/random_operators.hpp"
#include "ipszeta/traces.hpp"

namespace ipszeta {
namespace {

using cd = std::complex<double>;

LocalOperator::Table allowed_ones() {
  LocalOperator::Table t{};
  for (int row = 0; row < 4; ++row)
    for (int col = 0; col < 4; ++col)
      if ((row & 1) == (col & 1)) t[static_cast<std::size_t>(4 * row + col)] = 1.0;
  return t;
}

Eigen::VectorXcd basis(std::size_t dim, std::size_t i) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(i)) = 1.0;
  return v;
}

std::vector<cd> to_vec(const Eigen::VectorXcd& v) { return {v.data(), v.data() + v.size()}; }

TEST(LocalOperator, AcceptsTheEightAllowedSlots) {
  const auto op = LocalOperator::from_table(allowed_ones());
  int nonzero = 0;
  for (const auto& a : op.entries()) nonzero += a != cd(0.0) ? 1 : 0;
  EXPECT_EQ(nonzero, 8);
}

TEST(LocalOperator, RejectsForbiddenSlotWithIndex) {
  auto t = allowed_ones();
  t[static_cast<std::size_t>(4 * pair_code(0, 0) + pair_code(0, 1))] = 0.5;
  try {
    make_local_operator(std::span<const cd, 16>(t));
    FAIL() << "expected SparsityViolation";
  } catch (const SparsityViolation& e) {
    EXPECT_EQ(e.row(), 0);
    EXPECT_EQ(e.col(), 1);
  }
}

TEST(LocalOperator, DkTableMatchesDisplayedWeights) {
  const auto op = dk_local_operator({0.5, 0.5});
  EXPECT_EQ(op.weight(0, 0, 0, 0), cd(1.0));
  EXPECT_EQ(op.weight(0, 0, 1, 0), cd(0.5));
  EXPECT_EQ(op.weight(0, 1, 0, 1), cd(0.5));
  EXPECT_EQ(op.weight(0, 1, 1, 1), cd(0.5));
  EXPECT_EQ(op.weight(1, 0, 1, 0), cd(0.5));
  EXPECT_EQ(op.weight(1, 1, 0, 1), cd(0.5));
  EXPECT_EQ(op.weight(1, 1, 1, 1), cd(0.5));
  EXPECT_EQ(op.weight(1, 0, 0, 0), cd(0.0));
  EXPECT_EQ(classify(op).kind, OperatorClass::PCA);
}

TEST(Classify, ExamplesFromEachClass) {
  EXPECT_EQ(classify(dk_local_operator({1.0, 0.0})).kind, OperatorClass::CA);
  EXPECT_EQ(classify(dk_local_operator({0.5, 0.5})).kind, OperatorClass::PCA);
  EXPECT_EQ(classify(qca_rotation(std::numbers::pi / 3)).kind, OperatorClass::QCA);
  std::mt19937_64 rng(1);
  EXPECT_EQ(classify(random_general(rng)).kind, OperatorClass::General);
}

TEST(Classify, StochasticDeterministicRuleReportsCA) {
  // Every CA column holds a single 1, so it is also stochastic.
  EXPECT_EQ(classify(LocalOperator::identity()).kind, OperatorClass::CA);
}

TEST(Classify, RandomFamiliesLandInTheirClass) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(classify(random_pca(rng)).kind, OperatorClass::PCA);
    EXPECT_EQ(classify(random_qca(rng), 1e-12).kind, OperatorClass::QCA);
  }
}

TEST(Classify, ToleranceIsRecorded) {
  EXPECT_DOUBLE_EQ(classify(LocalOperator::identity(), 1e-6).tolerance, 1e-6);
}

TEST(Configuration, IndexBitsRoundTrip) {
  const auto c = Configuration::from_bits({0, 1, 0});
  EXPECT_EQ(c.index(), 2u);
  for (std::uint64_t i = 0; i < 32; ++i) {
    const Configuration d(5, i);
    EXPECT_EQ(Configuration::from_bits(d.bits()).index(), i);
  }
  EXPECT_THROW(Configuration(3, 8), std::out_of_range);
}

TEST(GlobalOperator, SingleSiteIsIdentity) {
  const auto op = dk_local_operator({0.3, 0.7});
  EXPECT_TRUE(kronecker_dense(op, 1).isApprox(Matrix::Identity(2, 2)));
  EXPECT_TRUE(recursive_dense(op, 1).isApprox(Matrix::Identity(2, 2)));
  const std::vector<cd> state{cd(0.2, 1.0), cd(-3.0, 0.5)};
  EXPECT_EQ(apply_matrix_free(op, 1, std::span<const cd>(state)), state);
}

TEST(GlobalOperator, TwoSitesEqualsLocal) {
  std::mt19937_64 rng(3);
  const auto op = random_general(rng);
  EXPECT_EQ(kronecker_dense(op, 2), Matrix(op.matrix()));
  EXPECT_EQ(recursive_dense(op, 2), Matrix(op.matrix()));
}

TEST(GlobalOperator, ThreeSiteColumnOfConfiguration001) {
  const auto op = dk_local_operator({0.3, 0.8});
  const Matrix q = kronecker_dense(op, 3);
  const auto col = static_cast<Eigen::Index>(Configuration::from_bits({0, 0, 1}).index());
  auto idx = [](std::vector<int> bits) { return static_cast<Eigen::Index>(Configuration::from_bits(bits).index()); };
  const cd a0000 = op.weight(0, 0, 0, 0), a0101 = op.weight(0, 1, 0, 1), a1101 = op.weight(1, 1, 0, 1),
           a1000 = op.weight(1, 0, 0, 0);
  EXPECT_EQ(q(idx({0, 0, 1}), col), a0000 * a0101);
  EXPECT_EQ(q(idx({0, 1, 1}), col), a0000 * a1101);
  EXPECT_EQ(q(idx({1, 0, 1}), col), a1000 * a0101);
  EXPECT_EQ(q(idx({1, 1, 1}), col), a1000 * a1101);
  for (auto r : {idx({0, 0, 0}), idx({0, 1, 0}), idx({1, 0, 0}), idx({1, 1, 0})}) EXPECT_EQ(q(r, col), cd(0.0));
}

TEST(GlobalOperator, RuleSendsConfiguration001To011) {
  const auto op = dk_local_operator({1.0, 0.0});
  const auto from = Configuration::from_bits({0, 0, 1}).index();
  const auto out = apply_matrix_free(op, 3, std::span<const cd>(to_vec(basis(8, from))));
  const auto to = Configuration::from_bits({0, 1, 1}).index();
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(out[i], i == to ? cd(1.0) : cd(0.0)) << i;
}

TEST(GlobalOperator, RecursiveMatchesKroneckerForDkHalfHalf) {
  const auto op = dk_local_operator({0.5, 0.5});
  EXPECT_LE(relative_max_diff(kronecker_dense(op, 3), recursive_dense(op, 3)), 1e-12);
}

TEST(GlobalOperator, ConstructionEquivalenceAcrossClasses) {
  std::mt19937_64 rng(4);
  for (RandomFamily family : {RandomFamily::PCA, RandomFamily::QCA, RandomFamily::General}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto op = random_local(family, rng);
      for (int n = 1; n <= 8; ++n) {
        const Matrix kron = kronecker_dense(op, n);
        EXPECT_LE(relative_max_diff(kron, recursive_dense(op, n)), 1e-12) << to_string(family) << " n=" << n;
        const std::size_t dim = std::size_t{1} << n;
        double worst = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
          const auto col = apply_matrix_free(op, n, std::span<const cd>(to_vec(basis(dim, c))));
          for (std::size_t r = 0; r < dim; ++r)
            worst = std::max(worst, std::abs(col[r] - kron(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))));
        }
        EXPECT_LE(worst, 1e-12 * std::max(1.0, kron.cwiseAbs().maxCoeff()));
      }
    }
  }
}

TEST(GlobalOperator, MatrixFreeMatchesDenseOnRandomState) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  const auto op = random_pca(rng);
  Eigen::VectorXcd v(32);
  for (auto& x : v) x = cd(g(rng), g(rng));
  const Eigen::VectorXcd dense = kronecker_dense(op, 5) * v;
  const auto free = apply_matrix_free(op, 5, std::span<const cd>(to_vec(v)));
  for (int i = 0; i < 32; ++i) EXPECT_NEAR(std::abs(free[static_cast<std::size_t>(i)] - dense(i)), 0.0, 1e-12);
}

TEST(GlobalOperator, LastSiteIsNeverChanged) {
  std::mt19937_64 rng(6);
  const Matrix q = kronecker_dense(random_general(rng), 4);
  for (Eigen::Index r = 0; r < q.rows(); ++r)
    for (Eigen::Index c = 0; c < q.cols(); ++c)
      if ((r & 1) != (c & 1)) EXPECT_EQ(q(r, c), cd(0.0));
}

TEST(GlobalOperator, LengthAndCapErrors) {
  const auto op = dk_local_operator({0.5, 0.5});
  const std::vector<cd> wrong(7);
  EXPECT_THROW(apply_matrix_free(op, 3, std::span<const cd>(wrong)), LengthMismatch);
  Caps small;
  small.dense = 4;
  EXPECT_THROW(kronecker_dense(op, 5, small), SizeCapExceeded);
  EXPECT_THROW(recursive_dense(op, 5, small), SizeCapExceeded);
  EXPECT_THROW(GlobalOperator::matrix_free(op, 4).dense(), DenseUnavailable);
  EXPECT_THROW(block_views(GlobalOperator::matrix_free(op, 4)), DenseUnavailable);
}

TEST(BlockViews, TwoSiteDkTopLeft) {
  const double p = 0.35;
  const auto g = build_global_kronecker(dk_local_operator({p, 0.6}), 2);
  const auto b = g.blocks();
  EXPECT_EQ(b.E(0, 0), cd(1.0));
  EXPECT_EQ(b.E(0, 1), cd(0.0));
  EXPECT_EQ(b.E(1, 0), cd(0.0));
  EXPECT_EQ(b.E(1, 1), cd(1.0 - p));
}

TEST(BlockViews, SingleSite) {
  const auto g = build_global_recursive(dk_local_operator({0.2, 0.1}), 1);
  const auto b = g.blocks();
  EXPECT_EQ(b.E(0, 0), cd(1.0));
  EXPECT_EQ(b.H(0, 0), cd(1.0));
  EXPECT_EQ(b.F(0, 0), cd(0.0));
  EXPECT_EQ(b.G(0, 0), cd(0.0));
}

TEST(BlockViews, BlockSumsReproduceSmallerOperatorForStochasticLocals) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto op = random_pca(rng);
    for (int n = 2; n <= 6; ++n) {
      const Matrix q = kronecker_dense(op, n);
      const Matrix smaller = kronecker_dense(op, n - 1);
      const auto b = quadrants(q);
      EXPECT_LE(relative_max_diff(Matrix(b.E + b.G), smaller), 1e-12);
      EXPECT_LE(relative_max_diff(Matrix(b.F + b.H), smaller), 1e-12);
    }
  }
}

TEST(BlockViews, BlockSumsCarryColumnSumsInGeneral) {
  // E+G = Q_{n-1} diag(s00, s01) and F+H = Q_{n-1} diag(s10, s11), with s the
  // local column sums, for any local operator.
  std::mt19937_64 rng(8);
  const auto op = random_general(rng);
  auto column_sum = [&](int i, int j) {
    cd s = 0.0;
    for (int k = 0; k < 2; ++k) s += op.weight(k, j, i, j);
    return s;
  };
  for (int n = 2; n <= 5; ++n) {
    const Matrix q = kronecker_dense(op, n), smaller = kronecker_dense(op, n - 1);
    const Eigen::Index h = smaller.rows() / 2;
    Matrix left = smaller, right = smaller;
    left.leftCols(h) *= column_sum(0, 0);
    left.rightCols(h) *= column_sum(0, 1);
    right.leftCols(h) *= column_sum(1, 0);
    right.rightCols(h) *= column_sum(1, 1);
    const auto b = quadrants(q);
    EXPECT_LE(relative_max_diff(Matrix(b.E + b.G), left), 1e-12);
    EXPECT_LE(relative_max_diff(Matrix(b.F + b.H), right), 1e-12);
  }
}

TEST(BlockViews, TraceRecursions) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto op = random_local(static_cast<RandomFamily>(trial % 3), rng);
    for (int n = 2; n <= 8; ++n) {
      const Matrix now_m = kronecker_dense(op, n);
      const auto now = quadrants(now_m);
      const Matrix prev_m = kronecker_dense(op, n - 1);
      const auto prev = quadrants(prev_m);
      const cd te = op.stay(0, 0) * prev.E.trace() + op.stay(0, 1) * prev.H.trace();
      const cd th = op.stay(1, 0) * prev.E.trace() + op.stay(1, 1) * prev.H.trace();
      const double scale = std::max(1.0, trace_scale(op, n));
      EXPECT_LE(std::abs(now.E.trace() - te), 1e-12 * scale);
      EXPECT_LE(std::abs(now.H.trace() - th), 1e-12 * scale);
    }
  }
}

TEST(Preservation, StochasticColumnsStayStochastic) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix q = kronecker_dense(random_pca(rng), 7);
    const Eigen::RowVectorXcd sums = q.colwise().sum();
    for (Eigen::Index c = 0; c < sums.size(); ++c) EXPECT_NEAR(std::abs(sums(c) - 1.0), 0.0, 1e-10);
  }
}

TEST(Preservation, UnitaryLocalGivesUnitaryGlobal) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix q = kronecker_dense(random_qca(rng), 7);
    const Matrix defect = q.adjoint() * q - Matrix::Identity(q.rows(), q.cols());
    EXPECT_LE(defect.cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(SweepDense, MatchesKroneckerInAnotherScalar) {
  const auto op = dk_layout<double>(0.3, 0.6);
  const auto real = sweep_dense(op, 5);
  const Matrix kron = kronecker_dense(dk_local_operator({0.3, 0.6}), 5);
  EXPECT_LE(relative_max_diff(Matrix(real.cast<cd>()), kron), 1e-14);
}

}  // namespace
}  // namespace ipszeta
