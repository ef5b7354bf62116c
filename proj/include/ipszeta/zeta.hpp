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

#ifndef IPSZETA_ZETA_HPP
#define IPSZETA_ZETA_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ipszeta/eigensolver.hpp"
#include "ipszeta/errors.hpp"
#include "ipszeta/global_operator.hpp"
#include "ipszeta/local_operator.hpp"
#include "ipszeta/parallel.hpp"
#include "ipszeta/report.hpp"
#include "ipszeta/spectral.hpp"
#include "ipszeta/spectrum.hpp"
#include "ipszeta/traces.hpp"

namespace ipszeta {

struct PowerTraceOptions {
  Caps caps;
  int threads = 1;  // 0 = all cores
};

namespace detail {
inline constexpr std::size_t kBasisChunk = 64;
}

/// C_1..C_{r_max} with C_r = tr(Q_n^r) / 2^n.
///
/// Each basis vector is pushed through r_max matrix-free applications and the
/// diagonal entry is read off after every step, so no dense power is stored.
/// Work is split into fixed chunks of basis vectors whose partial sums are
/// added in order, which keeps results identical for any thread count.
template <class Scalar>
std::vector<Scalar> c_r_series(const BasicLocalOperator<Scalar>& local, int n, int r_max,
                               const PowerTraceOptions& opt = {}) {
  detail::check_dense_cap(n, opt.caps);
  if (r_max < 1) throw std::invalid_argument("c_r_series: r_max must be >= 1");
  const std::size_t dim = detail::dimension(n);
  const std::size_t chunks = (dim + detail::kBasisChunk - 1) / detail::kBasisChunk;
  const auto rs = static_cast<std::size_t>(r_max);
  std::vector<Scalar> partial(chunks * rs, Scalar(0));
  parallel_for(chunks, opt.threads, [&](std::size_t chunk) {
    std::vector<Scalar> state(dim);
    Scalar* sums = partial.data() + chunk * rs;
    const std::size_t end = std::min(dim, (chunk + 1) * detail::kBasisChunk);
    for (std::size_t c = chunk * detail::kBasisChunk; c < end; ++c) {
      std::fill(state.begin(), state.end(), Scalar(0));
      state[c] = Scalar(1);
      for (std::size_t r = 0; r < rs; ++r) {
        apply_in_place(local, n, std::span<Scalar>(state));
        sums[r] += state[c];
      }
    }
  });
  std::vector<Scalar> coeffs(rs, Scalar(0));
  for (std::size_t chunk = 0; chunk < chunks; ++chunk)
    for (std::size_t r = 0; r < rs; ++r) coeffs[r] += partial[chunk * rs + r];
  const Scalar inv_dim = Scalar(1) / Scalar(static_cast<double>(dim));
  for (auto& c : coeffs) c *= inv_dim;
  return coeffs;
}

template <class Scalar>
Scalar c_r(const BasicLocalOperator<Scalar>& local, int n, int r, const PowerTraceOptions& opt = {}) {
  if (r < 1) throw std::invalid_argument("c_r: r must be >= 1");
  return c_r_series(local, n, r, opt).back();
}

/// Spectral-radius estimate: the mean growth rate over the second half of 50
/// normalized power-iteration steps from a fixed pseudo-random start, times a
/// 1.1 safety factor. Returns 0 if the iterate vanishes.
template <class Scalar>
double spectral_radius_estimate(const BasicLocalOperator<Scalar>& local, int n, const Caps& caps = {}) {
  detail::check_sites(n);
  if (n > caps.matrix_free) throw SizeCapExceeded("matrix-free application", n, caps.matrix_free);
  constexpr int steps = 50;
  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> gauss;
  std::vector<std::complex<double>> state(detail::dimension(n));
  for (auto& s : state) s = {gauss(rng), gauss(rng)};
  const auto local_c = local.template cast<std::complex<double>>();
  auto norm = [&] {
    double s = 0.0;
    for (const auto& v : state) s += std::norm(v);
    return std::sqrt(s);
  };
  double first = norm(), log_growth = 0.0;
  for (auto& v : state) v /= first;
  for (int step = 1; step <= steps; ++step) {
    apply_in_place(local_c, n, std::span<std::complex<double>>(state));
    const double g = norm();
    if (!(g > 0.0) || !std::isfinite(g)) return 0.0;
    if (step > steps / 2) log_growth += std::log(g);
    for (auto& v : state) v /= g;
  }
  return 1.1 * std::exp(log_growth / (steps - steps / 2));
}

struct ZetaEvaluation {
  std::complex<double> u;
  std::complex<double> log_zeta;
  std::complex<double> zeta;
  /// Bound on the dropped tail, or +infinity when rho_hat |u| >= 1.
  double truncation_bound = std::numeric_limits<double>::infinity();
};

/// Truncated log zeta series sum_{r <= R} C_r u^r / r.
class ZetaSeries {
 public:
  ZetaSeries(int n_sites, std::vector<std::complex<double>> coeffs, double spectral_radius_hat)
      : n_sites_(n_sites), coeffs_(std::move(coeffs)), rho_hat_(spectral_radius_hat) {}

  int n_sites() const noexcept { return n_sites_; }
  int r_max() const noexcept { return static_cast<int>(coeffs_.size()); }
  const std::vector<std::complex<double>>& coeffs() const noexcept { return coeffs_; }
  std::complex<double> coeff(int r) const { return coeffs_.at(static_cast<std::size_t>(r - 1)); }
  double spectral_radius_hat() const noexcept { return rho_hat_; }
  /// 1 / rho_hat, the radius inside which the series is trusted.
  double radius_hint() const noexcept {
    return rho_hat_ > 0.0 ? 1.0 / rho_hat_ : std::numeric_limits<double>::infinity();
  }

  ZetaEvaluation evaluate(std::complex<double> u) const {
    ZetaEvaluation ev;
    ev.u = u;
    std::complex<double> power = 1.0;
    for (std::size_t r = 0; r < coeffs_.size(); ++r) {
      power *= u;
      ev.log_zeta += coeffs_[r] * power / static_cast<double>(r + 1);
    }
    ev.zeta = std::exp(ev.log_zeta);
    const double x = rho_hat_ * std::abs(u);
    if (x < 1.0) {
      const double next = static_cast<double>(coeffs_.size() + 1);
      ev.truncation_bound = std::pow(x, next) / (next * (1.0 - x));
    }
    return ev;
  }

 private:
  int n_sites_;
  std::vector<std::complex<double>> coeffs_;
  double rho_hat_;
};

template <class Scalar>
ZetaSeries zeta_log_series(const BasicLocalOperator<Scalar>& local, int n, int r_max,
                           const PowerTraceOptions& opt = {}) {
  const auto raw = c_r_series(local, n, r_max, opt);
  std::vector<std::complex<double>> coeffs;
  coeffs.reserve(raw.size());
  for (const auto& c : raw) coeffs.push_back(to_complex(c));
  return ZetaSeries(n, std::move(coeffs), spectral_radius_estimate(local, n, opt.caps));
}

struct ZetaDeterminant {
  std::complex<double> zeta;
  std::complex<double> log_zeta;
  bool branch_ambiguous = false;  // |u| >= 1 / spectral radius
};

/// exp(-(1/dim) sum_j m_j Log(1 - lambda_j u)) with principal logarithms.
inline ZetaDeterminant zeta_det(const SpectrumMultiset& spectrum, std::complex<double> u) {
  ZetaDeterminant out;
  const double dim = static_cast<double>(spectrum.source_dimension());
  for (const auto& e : spectrum.entries()) {
    const std::complex<double> factor = 1.0 - e.value * u;
    if (std::abs(factor) <= 1e-15) throw SingularFactor("zeta_det: 1 - lambda u vanishes for lambda = " +
                                                        std::to_string(e.value.real()) + "+" +
                                                        std::to_string(e.value.imag()) + "i");
    out.log_zeta -= static_cast<double>(e.multiplicity) * std::log(factor) / dim;
  }
  out.zeta = std::exp(out.log_zeta);
  out.branch_ambiguous = spectrum.spectral_radius() * std::abs(u) >= 1.0;
  return out;
}

template <class Scalar>
ZetaDeterminant zeta_det(const BasicLocalOperator<Scalar>& local, int n, std::complex<double> u,
                         const EigOptions& opt = {}) {
  return zeta_det(global_spectrum(local, n, opt), u);
}

/// P(X_n = k) = C(n, k) / 2^n for the symmetric binomial X_n.
struct BinomialWeights {
  int n = 0;
  std::vector<double> weights;

  explicit BinomialWeights(int n_) : n(n_) {
    if (n < 0 || n > 62) throw std::invalid_argument("BinomialWeights: n must be in [0, 62]");
    const double scale = std::ldexp(1.0, -n);
    for (int k = 0; k <= n; ++k) weights.push_back(static_cast<double>(binomial(n, k)) * scale);
  }

  /// S_n = 2k - n, the signed displacement paired with weights[k].
  int signed_value(int k) const { return 2 * k - n; }
};

/// ((1 + t^r) / 2)^(n-1).
inline std::complex<double> theorem3_c_r(std::complex<double> t, int n, int r) {
  if (n < 1) throw std::invalid_argument("theorem3_c_r: n must be >= 1");
  return std::pow(0.5 * (1.0 + std::pow(t, r)), n - 1);
}

/// -E[Log(1 - t^X u)] with X ~ Binomial(n-1, 1/2).
inline std::complex<double> theorem3_log_zeta(std::complex<double> t, int n, std::complex<double> u) {
  if (n < 1) throw std::invalid_argument("theorem3_log_zeta: n must be >= 1");
  const BinomialWeights w(n - 1);
  std::complex<double> sum = 0.0, power = 1.0;
  for (int k = 0; k < n; ++k) {
    const std::complex<double> factor = 1.0 - power * u;
    if (std::abs(factor) <= 1e-15) throw SingularFactor("theorem3_log_zeta: 1 - t^k u vanishes at k = " + std::to_string(k));
    sum -= w.weights[static_cast<std::size_t>(k)] * std::log(factor);
    power *= t;
  }
  return sum;
}

/// Compares C_r of the rotation walk with angle xi against (cos r xi)^(n-1)
/// for r = 1..r_max. The residual is the largest absolute difference.
inline VerificationReport qca_remark_check(double xi, int n, int r_max, double tol = 1e-9,
                                           const PowerTraceOptions& opt = {}) {
  VerificationReport report;
  report.claim = "remark";
  report.n = n;
  report.tol = tol;
  const auto coeffs = c_r_series(qca_rotation(xi), n, r_max, opt);
  for (int r = 1; r <= r_max; ++r) {
    const double expected = std::pow(std::cos(r * xi), n - 1);
    report.record(std::abs(coeffs[static_cast<std::size_t>(r - 1)] - expected), "r=" + std::to_string(r));
  }
  return report;
}

}  // namespace ipszeta

#endif  // IPSZETA_ZETA_HPP
