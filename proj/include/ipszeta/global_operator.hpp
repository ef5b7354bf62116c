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

#ifndef IPSZETA_GLOBAL_OPERATOR_HPP
#define IPSZETA_GLOBAL_OPERATOR_HPP

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include "ipszeta/errors.hpp"
#include "ipszeta/local_operator.hpp"

namespace ipszeta {

/// Size limits, in number of sites.
struct Caps {
  int dense = 14;        // dense 2^n x 2^n storage
  int eigen = 10;        // dense eigensolves (override up to eigen_hard)
  int eigen_hard = 12;
  int matrix_free = 26;  // state vectors of length 2^n
};

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Matrix = DenseMatrix<std::complex<double>>;

namespace detail {

inline void check_sites(int n) {
  if (n < 1) throw std::invalid_argument("number of sites must be >= 1");
}

inline void check_dense_cap(int n, const Caps& caps) {
  check_sites(n);
  if (n > caps.dense) throw SizeCapExceeded("dense global operator", n, caps.dense);
}

inline std::size_t dimension(int n) { return std::size_t{1} << n; }

}  // namespace detail

/// Apply Q_n^(g) to `state` in place by sweeping the local operator over the
/// pairs (0,1), (1,2), ..., (n-2,n-1) in that order.
template <class Scalar>
void apply_in_place(const BasicLocalOperator<Scalar>& local, int n, std::span<Scalar> state) {
  detail::check_sites(n);
  if (state.size() != detail::dimension(n)) throw LengthMismatch(detail::dimension(n), state.size());
  const Scalar a00 = local(0, 0), a02 = local(0, 2), a20 = local(2, 0), a22 = local(2, 2);
  const Scalar a11 = local(1, 1), a13 = local(1, 3), a31 = local(3, 1), a33 = local(3, 3);
  for (int x = 0; x + 1 < n; ++x) {
    const int left_bit = n - 1 - x;
    const int right_bit = n - 2 - x;
    const std::size_t lmask = std::size_t{1} << left_bit;
    const std::size_t rmask = std::size_t{1} << right_bit;
    const std::size_t highs = std::size_t{1} << x;
    const std::size_t lows = rmask;
    for (std::size_t hi = 0; hi < highs; ++hi) {
      for (std::size_t lo = 0; lo < lows; ++lo) {
        const std::size_t s00 = (hi << (left_bit + 1)) | lo;
        const std::size_t s01 = s00 | rmask, s10 = s00 | lmask, s11 = s00 | lmask | rmask;
        const Scalar v00 = state[s00], v01 = state[s01], v10 = state[s10], v11 = state[s11];
        state[s00] = a00 * v00 + a02 * v10;
        state[s10] = a20 * v00 + a22 * v10;
        state[s01] = a11 * v01 + a13 * v11;
        state[s11] = a31 * v01 + a33 * v11;
      }
    }
  }
}

/// Q_n^(g) * state without forming the matrix.
template <class Scalar>
std::vector<Scalar> apply_matrix_free(const BasicLocalOperator<Scalar>& local, int n,
                                      std::span<const Scalar> state, const Caps& caps = {}) {
  detail::check_sites(n);
  if (n > caps.matrix_free) throw SizeCapExceeded("matrix-free application", n, caps.matrix_free);
  std::vector<Scalar> out(state.begin(), state.end());
  apply_in_place(local, n, std::span<Scalar>(out));
  return out;
}

/// Dense Q_n^(g) as the ordered product of Kronecker factors
/// (I_{2^(n-2)} (x) Q) ... (I_2 (x) Q (x) I_{2^(n-3)}) (Q (x) I_{2^(n-2)}).
template <class Scalar>
DenseMatrix<Scalar> kronecker_dense(const BasicLocalOperator<Scalar>& local, int n, const Caps& caps = {}) {
  detail::check_dense_cap(n, caps);
  using Sparse = Eigen::SparseMatrix<Scalar>;
  const auto dim = static_cast<Eigen::Index>(detail::dimension(n));
  DenseMatrix<Scalar> result = DenseMatrix<Scalar>::Identity(dim, dim);
  if (n == 1) return result;
  Sparse q(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (!is_zero(local(r, c))) q.insert(r, c) = local(r, c);
  q.makeCompressed();
  for (int x = 0; x + 1 < n; ++x) {
    Sparse left(Eigen::Index{1} << x, Eigen::Index{1} << x);
    left.setIdentity();
    Sparse right(Eigen::Index{1} << (n - 2 - x), Eigen::Index{1} << (n - 2 - x));
    right.setIdentity();
    Sparse inner = Eigen::kroneckerProduct(left, q).eval();
    Sparse factor = Eigen::kroneckerProduct(inner, right).eval();
    result = (factor * result).eval();
  }
  return result;
}

/// Dense Q_n^(g) assembled level by level from the quadrants of Q_{m}^(g):
/// block (R,C) of Q_{m+1} is a_{k j}^{i j} times quadrant (R&1, C&1) of Q_m,
/// with k = R>>1, i = C>>1, j = C&1.
template <class Scalar>
DenseMatrix<Scalar> recursive_dense(const BasicLocalOperator<Scalar>& local, int n, const Caps& caps = {}) {
  detail::check_dense_cap(n, caps);
  DenseMatrix<Scalar> current = DenseMatrix<Scalar>::Identity(2, 2);
  for (int m = 1; m < n; ++m) {
    const Eigen::Index quad = Eigen::Index{1} << (m - 1);
    DenseMatrix<Scalar> next(4 * quad, 4 * quad);
    next.setZero();
    for (int R = 0; R < 4; ++R) {
      for (int C = 0; C < 4; ++C) {
        const int k = R >> 1, i = C >> 1, j = C & 1;
        const Scalar w = local.weight(k, j, i, j);
        next.block(R * quad, C * quad, quad, quad) =
            w * current.block((R & 1) * quad, (C & 1) * quad, quad, quad);
      }
    }
    current.swap(next);
  }
  return current;
}

/// Read-only quadrant views E (top-left), F (top-right), G (bottom-left),
/// H (bottom-right) of a dense global operator.
/// Dense form assembled column by column from the pair sweep. Works for any
/// scalar type, including extended precision reals.
template <class Scalar>
DenseMatrix<Scalar> sweep_dense(const BasicLocalOperator<Scalar>& local, int n, const Caps& caps = {}) {
  detail::check_dense_cap(n, caps);
  const auto dim = static_cast<Eigen::Index>(detail::dimension(n));
  DenseMatrix<Scalar> result(dim, dim);
  std::vector<Scalar> column(static_cast<std::size_t>(dim));
  for (Eigen::Index c = 0; c < dim; ++c) {
    std::fill(column.begin(), column.end(), Scalar(0));
    column[static_cast<std::size_t>(c)] = Scalar(1);
    apply_in_place(local, n, std::span<Scalar>(column));
    for (Eigen::Index r = 0; r < dim; ++r) result(r, c) = column[static_cast<std::size_t>(r)];
  }
  return result;
}

template <class Scalar>
struct BlockViews {
  using View = Eigen::Block<const DenseMatrix<Scalar>>;
  View E, F, G, H;
};

template <class Scalar>
BlockViews<Scalar> quadrants(const DenseMatrix<Scalar>& m) {
  const Eigen::Index h = m.rows() / 2;
  return {m.block(0, 0, h, h), m.block(0, h, h, h), m.block(h, 0, h, h), m.block(h, h, h, h)};
}

/// Q_N^(g) on the path of N sites, matrix-free or with a dense form.
template <class Scalar>
class BasicGlobalOperator {
 public:
  using local_type = BasicLocalOperator<Scalar>;
  using matrix_type = DenseMatrix<Scalar>;

  static BasicGlobalOperator matrix_free(local_type local, int n, const Caps& caps = {}) {
    detail::check_sites(n);
    if (n > caps.matrix_free) throw SizeCapExceeded("matrix-free global operator", n, caps.matrix_free);
    return BasicGlobalOperator(std::move(local), n, std::nullopt);
  }

  static BasicGlobalOperator kronecker(local_type local, int n, const Caps& caps = {}) {
    auto dense = kronecker_dense(local, n, caps);
    return BasicGlobalOperator(std::move(local), n, std::move(dense));
  }

  static BasicGlobalOperator recursive(local_type local, int n, const Caps& caps = {}) {
    auto dense = recursive_dense(local, n, caps);
    return BasicGlobalOperator(std::move(local), n, std::move(dense));
  }

  int n_sites() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return detail::dimension(n_); }
  const local_type& local() const noexcept { return local_; }
  bool has_dense() const noexcept { return dense_.has_value(); }

  const matrix_type& dense() const {
    if (!dense_) throw DenseUnavailable();
    return *dense_;
  }

  BlockViews<Scalar> blocks() const { return quadrants(dense()); }

  std::vector<Scalar> apply(std::span<const Scalar> state) const {
    if (state.size() != dimension()) throw LengthMismatch(dimension(), state.size());
    std::vector<Scalar> out(state.begin(), state.end());
    apply_in_place(local_, n_, std::span<Scalar>(out));
    return out;
  }

 private:
  BasicGlobalOperator(local_type local, int n, std::optional<matrix_type> dense)
      : local_(std::move(local)), n_(n), dense_(std::move(dense)) {}

  local_type local_;
  int n_;
  std::optional<matrix_type> dense_;
};

using GlobalOperator = BasicGlobalOperator<std::complex<double>>;

template <class Scalar>
BasicGlobalOperator<Scalar> build_global_kronecker(const BasicLocalOperator<Scalar>& local, int n,
                                                   const Caps& caps = {}) {
  return BasicGlobalOperator<Scalar>::kronecker(local, n, caps);
}

template <class Scalar>
BasicGlobalOperator<Scalar> build_global_recursive(const BasicLocalOperator<Scalar>& local, int n,
                                                   const Caps& caps = {}) {
  return BasicGlobalOperator<Scalar>::recursive(local, n, caps);
}

template <class Scalar>
BlockViews<Scalar> block_views(const BasicGlobalOperator<Scalar>& g) {
  return g.blocks();
}

/// Largest entry magnitude of a - b, divided by the largest entry magnitude of
/// either operand (1 if both vanish).
template <class Derived1, class Derived2>
double relative_max_diff(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  double scale = 0.0, diff = 0.0;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      scale = std::max({scale, magnitude(a(r, c)), magnitude(b(r, c))});
      diff = std::max(diff, magnitude(a(r, c) - b(r, c)));
    }
  }
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace ipszeta

#endif  // IPSZETA_GLOBAL_OPERATOR_HPP
