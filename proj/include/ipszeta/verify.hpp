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

#ifndef IPSZETA_VERIFY_HPP
#define IPSZETA_VERIFY_HPP

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

#include "ipszeta/global_operator.hpp"
#include "ipszeta/local_operator.hpp"
#include "ipszeta/random_operators.hpp"
#include "ipszeta/report.hpp"
#include "ipszeta/spectral.hpp"
#include "ipszeta/traces.hpp"
#include "ipszeta/zeta.hpp"

namespace ipszeta {

/// Kronecker, block-recursive and matrix-free builds of Q_n agree.
inline VerificationReport verify_lemma1(const LocalOperator& local, int n, double tol = 1e-12,
                                        const Caps& caps = {}) {
  VerificationReport report;
  report.claim = "lemma1";
  report.n = n;
  report.tol = tol;
  const Matrix kron = kronecker_dense(local, n, caps);
  const Matrix rec = recursive_dense(local, n, caps);
  report.record(relative_max_diff(kron, rec), local.label() + " recursive");
  report.record(relative_max_diff(kron, sweep_dense(local, n, caps)), local.label() + " matrix-free");
  return report;
}

/// E_n + G_n = F_n + H_n = Q_{n-1}, entrywise relative to max |Q_{n-1}|.
inline VerificationReport verify_corollary(const LocalOperator& local, int n, double tol = 1e-12,
                                           const Caps& caps = {}) {
  if (n < 2) throw std::invalid_argument("verify_corollary: n must be >= 2");
  VerificationReport report;
  report.claim = "corollary";
  report.n = n;
  report.tol = tol;
  const Matrix full = kronecker_dense(local, n, caps);
  const Matrix smaller = kronecker_dense(local, n - 1, caps);
  const auto b = quadrants(full);
  const Matrix left = b.E + b.G, right = b.F + b.H;
  report.record(relative_max_diff(left, smaller), local.label() + " E+G");
  report.record(relative_max_diff(right, smaller), local.label() + " F+H");
  if (column_sum_defect(local) > 1e-12)
    report.note("local operator columns do not sum to 1; the block sums then equal Q_{n-1} times the column sums");
  return report;
}

/// Path-sum trace against the dense trace. The dense matrix comes from the
/// block recursion, which is much cheaper than the factor product at n = 10;
/// the two builds are compared by verify_lemma1.
inline VerificationReport verify_prop1(const LocalOperator& local, int n, double tol = 1e-10,
                                       const Caps& caps = {}) {
  VerificationReport report;
  report.claim = "prop1";
  report.n = n;
  report.tol = tol;
  const std::complex<double> dense = recursive_dense(local, n, caps).trace();
  const std::complex<double> path = trace_path_sum(local, n);
  report.record(std::abs(path - dense) / std::max(1e-300, trace_scale(local, n)), local.label());
  return report;
}

/// Closed-form trace (with its path-sum fallback) against the dense trace.
inline VerificationReport verify_prop2(const LocalOperator& local, int n, double tol = 1e-10,
                                       const Caps& caps = {}) {
  VerificationReport report;
  report.claim = "prop2";
  report.n = n;
  report.tol = tol;
  const std::complex<double> dense = recursive_dense(local, n, caps).trace();
  const TraceEvaluation closed = trace_closed_form(local, n);
  const double scale = std::max({trace_scale(local, n), std::abs(local.stay(0, 0)), std::abs(local.stay(0, 1))});
  report.record(std::abs(closed.value - dense) / std::max(1e-300, scale), local.label());
  if (closed.degenerate) report.note("degenerate closed form: value taken from the path sum");
  return report;
}

/// Under the t condition: the spectrum is {t^k : 2 C(n-1, k)} and
/// C_r = ((1 + t^r)/2)^(n-1) for r <= r_max. Spectra are matched with the
/// residual scaled by max(1, spectral radius); C_r errors are absolute.
///
/// These operators are far from normal, and both checks lose many digits to
/// cancellation in double precision once n grows. Pass an extended-precision
/// operator for n above about 5.
template <class Scalar>
VerificationReport verify_theorem3(const BasicLocalOperator<Scalar>& local, int n, int r_max, double tol = 1e-7,
                                   const EigOptions& eig = {}, const PowerTraceOptions& pt = {}) {
  VerificationReport report;
  report.claim = "theorem3";
  report.n = n;
  report.tol = tol;
  const std::complex<double> s0 = to_complex(local.weight(1, 0, 1, 0) - local.weight(1, 0, 0, 0));
  const std::complex<double> s1 = to_complex(local.weight(1, 1, 1, 1) - local.weight(1, 1, 0, 1));
  if (std::abs(s0 - s1) > 1e-12) {
    report.note("local operator does not satisfy the t condition");
    report.record(std::abs(s0 - s1), local.label() + " t condition");
    return report;
  }
  const SpectrumMultiset expected = t_case_spectrum(s0, n);
  const SpectrumMultiset computed = global_spectrum_detailed(local, n, eig).unclustered();
  const MultisetMatch m = match_multisets(expected, computed);
  const double radius = std::max(1.0, expected.spectral_radius());
  report.record(m.same_size ? m.worst_distance / radius : std::numeric_limits<double>::infinity(),
                local.label() + " spectrum");
  const auto coeffs = c_r_series(local, n, r_max, pt);
  double worst = 0.0;
  for (int r = 1; r <= r_max; ++r)
    worst = std::max(worst, std::abs(to_complex(coeffs[static_cast<std::size_t>(r - 1)]) - theorem3_c_r(s0, n, r)));
  report.record(worst, local.label() + " C_r");
  return report;
}

}  // namespace ipszeta

#endif  // IPSZETA_VERIFY_HPP
