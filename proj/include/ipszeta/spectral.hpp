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

#ifndef IPSZETA_SPECTRAL_HPP
#define IPSZETA_SPECTRAL_HPP

#include <algorithm>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ipszeta/eigensolver.hpp"
#include "ipszeta/global_operator.hpp"
#include "ipszeta/local_operator.hpp"
#include "ipszeta/report.hpp"
#include "ipszeta/spectrum.hpp"

namespace ipszeta {

/// Spectrum of Q_n built in the local operator's own scalar type.
template <class Scalar>
EigResult global_spectrum_detailed(const BasicLocalOperator<Scalar>& local, int n, const EigOptions& opt = {}) {
  detail::check_sites(n);
  if (n > opt.max_log2_dimension) {
    if (opt.max_log2_dimension > kEigenHardCap)
      throw SizeCapExceeded("eigen cap override", opt.max_log2_dimension, kEigenHardCap);
    throw SizeCapExceeded("dense eigensolve", n, opt.max_log2_dimension);
  }
  Caps caps;
  caps.dense = std::max(caps.dense, n);
  return eig_dense_detailed(sweep_dense(local, n, caps), opt);
}

template <class Scalar>
SpectrumMultiset global_spectrum(const BasicLocalOperator<Scalar>& local, int n, const EigOptions& opt = {}) {
  return global_spectrum_detailed(local, n, opt).spectrum;
}

/// C(n, k) for n <= 62.
inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return c;
}

/// {t^k with multiplicity 2 C(n-1, k) : k = 0..n-1}. Coinciding powers
/// (t = 0, 1 or -1) are merged.
inline SpectrumMultiset t_case_spectrum(std::complex<double> t, int n) {
  if (n < 1) throw std::invalid_argument("t_case_spectrum: n must be >= 1");
  if (n > 30) throw SizeCapExceeded("t_case_spectrum", n, 30);
  std::vector<SpectrumEntry> entries;
  std::complex<double> power = 1.0;
  for (int k = 0; k < n; ++k) {
    const int mult = static_cast<int>(2 * binomial(n - 1, k));
    auto same = std::find_if(entries.begin(), entries.end(), [&](const SpectrumEntry& e) { return e.value == power; });
    if (same == entries.end()) {
      entries.push_back({power, mult});
    } else {
      same->multiplicity += mult;
    }
    power *= t;
  }
  return SpectrumMultiset(std::move(entries), std::size_t{1} << n);
}

/// Diagonal scaling used by the spectral recursion:
/// diag(s0 I, s1 I) with s0 = a10^10 - a10^00 and s1 = a11^11 - a11^01.
template <class Scalar>
DenseMatrix<Scalar> recursion_scaling(const BasicLocalOperator<Scalar>& local, int n) {
  const auto half = static_cast<Eigen::Index>(std::size_t{1} << (n - 1));
  DenseMatrix<Scalar> d = DenseMatrix<Scalar>::Zero(2 * half, 2 * half);
  const Scalar s0 = local.weight(1, 0, 1, 0) - local.weight(1, 0, 0, 0);
  const Scalar s1 = local.weight(1, 1, 1, 1) - local.weight(1, 1, 0, 1);
  for (Eigen::Index i = 0; i < half; ++i) {
    d(i, i) = s0;
    d(half + i, half + i) = s1;
  }
  return d;
}

/// Largest column-sum defect max |sigma - 1| over the two column blocks of
/// the local operator. The spectral recursion and the block-sum relations
/// are exact identities when this is zero.
template <class Scalar>
double column_sum_defect(const BasicLocalOperator<Scalar>& local) {
  double worst = 0.0;
  for (int from = 0; from < 4; ++from) {
    std::complex<double> sum = 0.0;
    for (int to = 0; to < 4; ++to) sum += to_complex(local(to, from));
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

/// Checks Spec(Q_{n+1}) = Spec(Q_n) u Spec(Q_n D) as multisets. The residual
/// is the worst matched distance between unclustered eigenvalues divided by
/// max(1, spectral radius); a size mismatch reports infinity.
template <class Scalar>
VerificationReport verify_theorem2(const BasicLocalOperator<Scalar>& local, int n, double tol = 1e-7,
                                   const EigOptions& opt = {}) {
  detail::check_sites(n);
  VerificationReport report;
  report.claim = "theorem2";
  report.n = n;
  report.tol = tol;
  Caps caps;
  caps.dense = std::max(caps.dense, n + 1);
  const EigResult larger = global_spectrum_detailed(local, n + 1, opt);
  const DenseMatrix<Scalar> base = sweep_dense(local, n, caps);
  const EigResult left = eig_dense_detailed(base, opt);
  const DenseMatrix<Scalar> scaled = (base * recursion_scaling(local, n)).eval();
  const EigResult right = eig_dense_detailed(scaled, opt);
  std::vector<std::complex<double>> joined = left.values;
  joined.insert(joined.end(), right.values.begin(), right.values.end());
  const SpectrumMultiset lhs = larger.unclustered(), rhs = SpectrumMultiset::exact(joined);
  const double radius = std::max({1.0, lhs.spectral_radius(), rhs.spectral_radius()});
  const MultisetMatch m = match_multisets(lhs, rhs);
  const double residual = m.same_size ? m.worst_distance / radius : std::numeric_limits<double>::infinity();
  report.record(residual, local.label());
  if (column_sum_defect(local) > 1e-12)
    report.note("local operator columns do not sum to 1; the recursion is only guaranteed for unit column sums");
  return report;
}

}  // namespace ipszeta

#endif  // IPSZETA_SPECTRAL_HPP
