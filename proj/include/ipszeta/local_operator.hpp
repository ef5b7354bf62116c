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

#ifndef IPSZETA_LOCAL_OPERATOR_HPP
#define IPSZETA_LOCAL_OPERATOR_HPP

#include <array>
#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Core>

#include "ipszeta/errors.hpp"
#include "ipszeta/scalar.hpp"

namespace ipszeta {

/// Pair states are coded as 2*left + right, so 0=(0,0), 1=(0,1), 2=(1,0), 3=(1,1).
constexpr int pair_code(int left, int right) noexcept { return 2 * left + right; }

/// The eight admissible transition weights of a nearest-neighbour pair
/// update. Field fromIJ_toKL holds the weight of (i,j) -> (k,l); the right
/// site never changes, so only j == l appears.
template <class Scalar>
struct PairWeights {
  Scalar from00_to00{}, from10_to00{}, from00_to10{}, from10_to10{};
  Scalar from01_to01{}, from11_to01{}, from01_to11{}, from11_to11{};
};

/// 4x4 transition-weight table on an adjacent site pair.
///
/// Row index is the target pair (k,l), column index the source pair (i,j),
/// so a probabilistic operator is column-stochastic. Construction rejects any
/// nonzero weight with j != l.
template <class Scalar>
class BasicLocalOperator {
 public:
  using scalar_type = Scalar;
  using Table = std::array<Scalar, 16>;

  BasicLocalOperator() = default;

  /// Entries in row-major (k,l) x (i,j) order. Throws SparsityViolation.
  static BasicLocalOperator from_table(const Table& entries, std::string label = {}) {
    for (int row = 0; row < 4; ++row) {
      for (int col = 0; col < 4; ++col) {
        if ((row & 1) != (col & 1) && !is_zero(entries[static_cast<std::size_t>(4 * row + col)])) {
          throw SparsityViolation(row, col);
        }
      }
    }
    BasicLocalOperator op;
    op.entries_ = entries;
    op.label_ = std::move(label);
    return op;
  }

  static BasicLocalOperator from_weights(const PairWeights<Scalar>& w, std::string label = {}) {
    Table t{};
    t[index(0, 0)] = w.from00_to00;
    t[index(0, 2)] = w.from10_to00;
    t[index(2, 0)] = w.from00_to10;
    t[index(2, 2)] = w.from10_to10;
    t[index(1, 1)] = w.from01_to01;
    t[index(1, 3)] = w.from11_to01;
    t[index(3, 1)] = w.from01_to11;
    t[index(3, 3)] = w.from11_to11;
    BasicLocalOperator op;
    op.entries_ = t;
    op.label_ = std::move(label);
    return op;
  }

  static BasicLocalOperator identity(std::string label = "identity") {
    PairWeights<Scalar> w;
    w.from00_to00 = w.from10_to10 = w.from01_to01 = w.from11_to11 = Scalar(1);
    return from_weights(w, std::move(label));
  }

  /// Entry at (target pair code, source pair code).
  const Scalar& operator()(int to, int from) const { return entries_[index(to, from)]; }

  /// The weight a_{kl}^{ij} of (i,j) -> (k,l).
  const Scalar& weight(int k, int l, int i, int j) const {
    return (*this)(pair_code(k, l), pair_code(i, j));
  }

  /// Diagonal weight of staying in pair state (i,j); the path-sum trace is
  /// built from these.
  const Scalar& stay(int i, int j) const { return weight(i, j, i, j); }

  PairWeights<Scalar> weights() const {
    return {weight(0, 0, 0, 0), weight(0, 0, 1, 0), weight(1, 0, 0, 0), weight(1, 0, 1, 0),
            weight(0, 1, 0, 1), weight(0, 1, 1, 1), weight(1, 1, 0, 1), weight(1, 1, 1, 1)};
  }

  const Table& entries() const noexcept { return entries_; }
  const std::string& label() const noexcept { return label_; }

  Eigen::Matrix<Scalar, 4, 4> matrix() const {
    Eigen::Matrix<Scalar, 4, 4> m;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m(r, c) = (*this)(r, c);
    return m;
  }

  /// True when every imaginary part is exactly zero.
  bool is_real() const {
    if constexpr (is_complex_v<Scalar>) {
      for (const auto& a : entries_)
        if (a.imag() != 0) return false;
    }
    return true;
  }

  /// Convert to another scalar type. Converting a complex operator to a real
  /// scalar requires is_real().
  template <class T>
  BasicLocalOperator<T> cast() const {
    typename BasicLocalOperator<T>::Table t{};
    for (std::size_t k = 0; k < 16; ++k) {
      if constexpr (is_complex_v<Scalar> && !is_complex_v<T>) {
        if (entries_[k].imag() != 0) throw std::invalid_argument("cast: operator has complex entries");
        t[k] = T(entries_[k].real());
      } else if constexpr (!is_complex_v<Scalar> && is_complex_v<T>) {
        t[k] = T(static_cast<typename T::value_type>(entries_[k]));
      } else {
        t[k] = T(entries_[k]);
      }
    }
    return BasicLocalOperator<T>::from_table(t, label_);
  }

 private:
  static constexpr std::size_t index(int row, int col) noexcept {
    return static_cast<std::size_t>(4 * row + col);
  }

  Table entries_{};
  std::string label_;
};

using LocalOperator = BasicLocalOperator<std::complex<double>>;

/// Validate 16 complex entries in row-major (k,l) x (i,j) order.
inline LocalOperator make_local_operator(std::span<const std::complex<double>, 16> entries,
                                         std::string label = {}) {
  LocalOperator::Table t;
  std::copy(entries.begin(), entries.end(), t.begin());
  return LocalOperator::from_table(t, std::move(label));
}

enum class OperatorClass { CA, PCA, QCA, General };

constexpr std::string_view to_string(OperatorClass c) noexcept {
  switch (c) {
    case OperatorClass::CA: return "CA";
    case OperatorClass::PCA: return "PCA";
    case OperatorClass::QCA: return "QCA";
    case OperatorClass::General: return "GENERAL";
  }
  return "GENERAL";
}

struct Classification {
  OperatorClass kind = OperatorClass::General;
  double tolerance = 0.0;
};

namespace detail {

inline bool near(std::complex<double> a, std::complex<double> b, double tol) {
  return std::abs(a - b) <= tol;
}

// The operator is block diagonal in the right site: each value of l gives a
// 2x2 block over the left site, rows (0,l),(1,l) and columns (0,l),(1,l).
template <class Scalar>
Eigen::Matrix2cd column_block(const BasicLocalOperator<Scalar>& op, int l) {
  Eigen::Matrix2cd b;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i) b(k, i) = to_complex(op.weight(k, l, i, l));
  return b;
}

}  // namespace detail

template <class Scalar>
bool is_cellular_automaton(const BasicLocalOperator<Scalar>& op, double tol) {
  for (const auto& a : op.entries()) {
    auto z = to_complex(a);
    if (!detail::near(z, 0.0, tol) && !detail::near(z, 1.0, tol)) return false;
  }
  return true;
}

/// Real entries in [0,1] and every column summing to one.
template <class Scalar>
bool is_stochastic(const BasicLocalOperator<Scalar>& op, double tol) {
  for (const auto& a : op.entries()) {
    auto z = to_complex(a);
    if (std::abs(z.imag()) > tol || z.real() < -tol || z.real() > 1.0 + tol) return false;
  }
  for (int from = 0; from < 4; ++from) {
    std::complex<double> sum = 0.0;
    for (int to = 0; to < 4; ++to) sum += to_complex(op(to, from));
    if (!detail::near(sum, 1.0, tol)) return false;
  }
  return true;
}

template <class Scalar>
bool is_unitary(const BasicLocalOperator<Scalar>& op, double tol) {
  for (int l = 0; l < 2; ++l) {
    Eigen::Matrix2cd b = detail::column_block(op, l);
    Eigen::Matrix2cd defect = b.adjoint() * b - Eigen::Matrix2cd::Identity();
    if (defect.cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

/// CA takes precedence over PCA, which takes precedence over QCA.
template <class Scalar>
Classification classify(const BasicLocalOperator<Scalar>& op, double tol = 1e-12) {
  Classification c;
  c.tolerance = tol;
  if (is_cellular_automaton(op, tol)) {
    c.kind = OperatorClass::CA;
  } else if (is_stochastic(op, tol)) {
    c.kind = OperatorClass::PCA;
  } else if (is_unitary(op, tol)) {
    c.kind = OperatorClass::QCA;
  } else {
    c.kind = OperatorClass::General;
  }
  return c;
}

/// The local rotation operator with angle xi on both column blocks.
template <class Scalar = std::complex<double>>
BasicLocalOperator<Scalar> qca_rotation(double xi) {
  PairWeights<Scalar> w;
  const Scalar c(std::cos(xi)), s(std::sin(xi));
  w.from00_to00 = c;
  w.from10_to00 = -s;
  w.from00_to10 = s;
  w.from10_to10 = c;
  w.from01_to01 = c;
  w.from11_to01 = -s;
  w.from01_to11 = s;
  w.from11_to11 = c;
  return BasicLocalOperator<Scalar>::from_weights(w, "qca(" + shortest(xi) + ")");
}

}  // namespace ipszeta

#endif  // IPSZETA_LOCAL_OPERATOR_HPP
