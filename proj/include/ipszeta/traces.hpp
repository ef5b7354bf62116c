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

#ifndef IPSZETA_TRACES_HPP
#define IPSZETA_TRACES_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Core>

#include "ipszeta/local_operator.hpp"
#include "ipszeta/scalar.hpp"

namespace ipszeta {

/// The 2x2 matrix of stay weights, T(i, j) = weight of (i,j) -> (i,j).
template <class Scalar>
Eigen::Matrix<Scalar, 2, 2> stay_matrix(const BasicLocalOperator<Scalar>& local) {
  Eigen::Matrix<Scalar, 2, 2> t;
  t << local.stay(0, 0), local.stay(0, 1), local.stay(1, 0), local.stay(1, 1);
  return t;
}

/// tr Q_n as a sum over closed paths: the grand sum of T^(n-1).
///
/// A configuration is fixed by the global operator's diagonal only if every
/// pair along the path stays put, so the trace factorizes over neighbouring
/// pairs into a transfer-matrix product.
template <class Scalar>
Scalar trace_path_sum(const BasicLocalOperator<Scalar>& local, int n) {
  if (n < 1) throw std::invalid_argument("trace_path_sum: n must be >= 1");
  const Eigen::Matrix<Scalar, 2, 2> t = stay_matrix(local);
  Eigen::Matrix<Scalar, 2, 2> power = Eigen::Matrix<Scalar, 2, 2>::Identity();
  for (int step = 1; step < n; ++step) power = (power * t).eval();
  return power.sum();
}

/// Grand sum of |T|^(n-1): the natural magnitude for relative trace errors.
template <class Scalar>
double trace_scale(const BasicLocalOperator<Scalar>& local, int n) {
  Eigen::Matrix2d t;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) t(i, j) = magnitude(local.stay(i, j));
  Eigen::Matrix2d power = Eigen::Matrix2d::Identity();
  for (int step = 1; step < n; ++step) power = (power * t).eval();
  return power.sum();
}

struct ClosedFormTrace {
  std::complex<double> x_plus, x_minus;
  std::complex<double> cap_plus, cap_minus;
  bool degenerate = false;
};

inline constexpr double kDegeneracyTol = 1e-12;

/// Roots x_+/- of x^2 - (a00 + a11) x - (a01 a10 - a00 a11) = 0, where aij is
/// the stay weight of (i,j), and the two amplitudes
///   L_+/- = (a01 - a00 + x_+/-)(a00 + a01 - x_-/+).
template <class Scalar>
ClosedFormTrace closed_form_roots(const BasicLocalOperator<Scalar>& local) {
  const std::complex<double> a00 = to_complex(local.stay(0, 0)), a01 = to_complex(local.stay(0, 1)),
                             a10 = to_complex(local.stay(1, 0)), a11 = to_complex(local.stay(1, 1));
  ClosedFormTrace cf;
  const std::complex<double> sum = a00 + a11;
  const std::complex<double> disc = std::sqrt(sum * sum + 4.0 * (a01 * a10 - a00 * a11));
  cf.x_plus = 0.5 * (sum + disc);
  cf.x_minus = 0.5 * (sum - disc);
  cf.cap_plus = (a01 - a00 + cf.x_plus) * (a00 + a01 - cf.x_minus);
  cf.cap_minus = (a01 - a00 + cf.x_minus) * (a00 + a01 - cf.x_plus);
  cf.degenerate = std::abs(a01) <= kDegeneracyTol || std::abs(cf.x_plus - cf.x_minus) <= kDegeneracyTol;
  return cf;
}

struct TraceEvaluation {
  std::complex<double> value;
  bool degenerate = false;  // value came from the path sum
};

/// tr Q_n = (x_+^(n-1) L_+ - x_-^(n-1) L_-) / (a01 (x_+ - x_-)).
///
/// When a01 or x_+ - x_- is numerically zero the formula divides by zero; the
/// path sum is returned instead and the result is flagged.
template <class Scalar>
TraceEvaluation trace_closed_form(const BasicLocalOperator<Scalar>& local, int n) {
  if (n < 1) throw std::invalid_argument("trace_closed_form: n must be >= 1");
  const ClosedFormTrace cf = closed_form_roots(local);
  if (cf.degenerate) return {to_complex(trace_path_sum(local, n)), true};
  const std::complex<double> a01 = to_complex(local.stay(0, 1));
  const std::complex<double> num =
      std::pow(cf.x_plus, n - 1) * cf.cap_plus - std::pow(cf.x_minus, n - 1) * cf.cap_minus;
  return {num / (a01 * (cf.x_plus - cf.x_minus)), false};
}

}  // namespace ipszeta

#endif  // IPSZETA_TRACES_HPP
