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

#ifndef IPSZETA_RANDOM_OPERATORS_HPP
#define IPSZETA_RANDOM_OPERATORS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include "ipszeta/local_operator.hpp"

namespace ipszeta {

enum class RandomFamily { PCA, QCA, General };

inline std::string_view to_string(RandomFamily f) noexcept {
  switch (f) {
    case RandomFamily::PCA: return "pca";
    case RandomFamily::QCA: return "qca";
    case RandomFamily::General: return "general";
  }
  return "general";
}

/// Random column-stochastic local operator. Weights lie on the grid
/// k / 2^52, so each column sums to exactly 1 in binary floating point and
/// stays exact when converted to a wider type.
template <class URBG>
LocalOperator random_pca(URBG& rng) {
  auto column = [&](std::complex<double>& to_left0, std::complex<double>& to_left1) {
    const double u = static_cast<double>(rng() >> 12) * 0x1.0p-52;
    to_left1 = u;
    to_left0 = 1.0 - u;
  };
  PairWeights<std::complex<double>> w;
  column(w.from00_to00, w.from00_to10);
  column(w.from10_to00, w.from10_to10);
  column(w.from01_to01, w.from01_to11);
  column(w.from11_to01, w.from11_to11);
  return LocalOperator::from_weights(w, "random-pca");
}

template <class URBG>
Eigen::Matrix2cd random_unitary2(URBG& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::complex<double> a(gauss(rng), gauss(rng)), b(gauss(rng), gauss(rng));
  const double norm = std::sqrt(std::norm(a) + std::norm(b));
  a /= norm;
  b /= norm;
  const std::complex<double> e = std::polar(1.0, phase(rng));
  Eigen::Matrix2cd u;
  u << e * a, -e * std::conj(b), e * b, e * std::conj(a);
  return u;
}

template <class URBG>
LocalOperator random_qca(URBG& rng) {
  const Eigen::Matrix2cd u0 = random_unitary2(rng);
  const Eigen::Matrix2cd u1 = random_unitary2(rng);
  PairWeights<std::complex<double>> w;
  w.from00_to00 = u0(0, 0);
  w.from10_to00 = u0(0, 1);
  w.from00_to10 = u0(1, 0);
  w.from10_to10 = u0(1, 1);
  w.from01_to01 = u1(0, 0);
  w.from11_to01 = u1(0, 1);
  w.from01_to11 = u1(1, 0);
  w.from11_to11 = u1(1, 1);
  return LocalOperator::from_weights(w, "random-qca");
}

/// Standard complex Gaussian weights (E|a|^2 = 1) in the eight admissible slots.
template <class URBG>
LocalOperator random_general(URBG& rng) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  auto draw = [&] { return std::complex<double>(gauss(rng), gauss(rng)); };
  PairWeights<std::complex<double>> w;
  w.from00_to00 = draw();
  w.from10_to00 = draw();
  w.from00_to10 = draw();
  w.from10_to10 = draw();
  w.from01_to01 = draw();
  w.from11_to01 = draw();
  w.from01_to11 = draw();
  w.from11_to11 = draw();
  return LocalOperator::from_weights(w, "random-general");
}

template <class URBG>
LocalOperator random_local(RandomFamily family, URBG& rng) {
  switch (family) {
    case RandomFamily::PCA: return random_pca(rng);
    case RandomFamily::QCA: return random_qca(rng);
    case RandomFamily::General: return random_general(rng);
  }
  return random_general(rng);
}

/// Stochastic operator with a_{10}^{10} - a_{10}^{00} = a_{11}^{11} - a_{11}^{01} = t.
///
/// All weights lie on the dyadic grid k / 2^20, so unit column sums and the
/// equality of the two differences hold exactly in binary floating point.
/// The resulting spectra are highly degenerate; any rounding in the weights
/// would split them.
template <class URBG>
LocalOperator random_t_condition(URBG& rng) {
  constexpr long grid = 1L << 20;
  std::uniform_int_distribution<long> tdist(-grid + 1, grid - 1);
  const long t = tdist(rng);
  auto pick = [&] {
    // birth weight b with b and b + t both in [0, 1]
    std::uniform_int_distribution<long> d(std::max(0L, -t), std::min(grid, grid - t));
    return d(rng);
  };
  const long alpha = pick(), beta = pick();
  auto v = [](long k) { return std::complex<double>(static_cast<double>(k) / grid, 0.0); };
  PairWeights<std::complex<double>> w;
  w.from00_to10 = v(alpha);
  w.from00_to00 = v(grid - alpha);
  w.from10_to10 = v(alpha + t);
  w.from10_to00 = v(grid - alpha - t);
  w.from01_to11 = v(beta);
  w.from01_to01 = v(grid - beta);
  w.from11_to11 = v(beta + t);
  w.from11_to01 = v(grid - beta - t);
  return LocalOperator::from_weights(w, "random-t");
}

/// t = a_{10}^{10} - a_{10}^{00} when it equals a_{11}^{11} - a_{11}^{01}
/// within tol.
template <class Scalar>
std::optional<Scalar> t_parameter(const BasicLocalOperator<Scalar>& op, double tol = 1e-12) {
  const Scalar t0 = op.weight(1, 0, 1, 0) - op.weight(1, 0, 0, 0);
  const Scalar t1 = op.weight(1, 1, 1, 1) - op.weight(1, 1, 0, 1);
  if (magnitude(t0 - t1) > tol) return std::nullopt;
  return t0;
}

}  // namespace ipszeta

#endif  // IPSZETA_RANDOM_OPERATORS_HPP
