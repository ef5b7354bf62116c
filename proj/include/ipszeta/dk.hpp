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

#ifndef IPSZETA_DK_HPP
#define IPSZETA_DK_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ipszeta/errors.hpp"
#include "ipszeta/local_operator.hpp"
#include "ipszeta/parallel.hpp"
#include "ipszeta/scalar.hpp"
#include "ipszeta/spectrum.hpp"

namespace ipszeta {

/// Birth probabilities of the Domany-Kinzel model: a site is occupied at the
/// next time step with probability f(c), c the number of occupied sites among
/// {x, x+1}, with f(0) = 0, f(1) = p, f(2) = q.
struct DKParams {
  double p = 0.5;
  double q = 0.5;

  DKParams() = default;
  DKParams(double p_, double q_) : p(p_), q(q_) {
    auto check = [](double v, const char* name) {
      if (!(v >= 0.0 && v <= 1.0))
        throw ParamOutOfRange(std::string("DK parameter ") + name + " = " + std::to_string(v) + " is outside [0, 1]");
    };
    check(p, "p");
    check(q, "q");
  }

  /// Oriented site percolation, q = p.
  static DKParams site(double p) { return {p, p}; }
  /// Oriented bond percolation, q = 1 - (1 - p)^2.
  static DKParams bond(double p) { return {p, 1.0 - (1.0 - p) * (1.0 - p)}; }

  bool attractive() const noexcept { return p <= q; }

  double f(int occupied_parents) const noexcept {
    return occupied_parents <= 0 ? 0.0 : (occupied_parents == 1 ? p : q);
  }

  std::string label() const {
    return "dk(" + shortest(p) + "," + shortest(q) + ")";
  }
};

/// The DK weight table for any scalar type, with no range check. Useful for
/// parameter pairs outside [0, 1]^2 whose algebra is still of interest, and
/// for building the table exactly in extended precision.
template <class Scalar>
BasicLocalOperator<Scalar> dk_layout(const Scalar& p, const Scalar& q, std::string label = {}) {
  PairWeights<Scalar> w;
  w.from00_to00 = Scalar(1);
  w.from00_to10 = Scalar(0);
  w.from10_to00 = Scalar(1) - p;
  w.from10_to10 = p;
  w.from01_to01 = Scalar(1) - p;
  w.from01_to11 = p;
  w.from11_to01 = Scalar(1) - q;
  w.from11_to11 = q;
  return BasicLocalOperator<Scalar>::from_weights(w, std::move(label));
}

inline LocalOperator dk_local_operator(const DKParams& params) {
  const DKParams checked(params.p, params.q);
  return dk_layout<std::complex<double>>(checked.p, checked.q, checked.label());
}

/// Occupied sites at one time step, sorted ascending.
struct LatticeState {
  std::vector<long> occupied;
  long time = 0;

  bool empty() const noexcept { return occupied.empty(); }
};

/// Uniform double in [0, 1) from the top 53 bits of one 64-bit draw.
template <class URBG>
double uniform01(URBG& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// One synchronous update. Sites are visited left to right over
/// [min - 1, max] and a draw is made only where at least one parent is
/// occupied.
template <class URBG>
LatticeState dk_step(const LatticeState& state, const DKParams& params, URBG& rng) {
  LatticeState next;
  next.time = state.time + 1;
  if (state.empty()) return next;
  const auto& occ = state.occupied;
  auto has = [&](long x) { return std::binary_search(occ.begin(), occ.end(), x); };
  for (long x = occ.front() - 1; x <= occ.back(); ++x) {
    const int parents = static_cast<int>(has(x)) + static_cast<int>(has(x + 1));
    if (parents == 0) continue;
    if (uniform01(rng) < params.f(parents)) next.occupied.push_back(x);
  }
  return next;
}

/// Generator for trial `trial` of a run seeded with `base_seed`.
inline std::mt19937_64 trial_stream(std::uint64_t base_seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(base_seed), static_cast<std::uint32_t>(base_seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

inline constexpr const char* kGeneratorName = "mt19937_64 seeded by seed_seq(base_seed, trial)";

namespace detail {

/// Evolves from `seed_set` for up to `horizon` steps on a flat window and
/// reports whether anything is left. Consumes the generator exactly as
/// repeated dk_step calls would.
template <class URBG>
bool survives(std::span<const long> seed_set, const DKParams& params, long horizon, URBG& rng) {
  if (seed_set.empty()) return false;
  const long origin = seed_set.front() - horizon - 1;
  const std::size_t width = static_cast<std::size_t>(seed_set.back() - origin + 2);
  std::vector<unsigned char> cur(width, 0), nxt(width, 0);
  for (long x : seed_set) cur[static_cast<std::size_t>(x - origin)] = 1;
  std::size_t lo = static_cast<std::size_t>(seed_set.front() - origin);
  std::size_t hi = static_cast<std::size_t>(seed_set.back() - origin);
  const double f1 = params.p, f2 = params.q;
  for (long t = 0; t < horizon; ++t) {
    std::size_t new_lo = width, new_hi = 0;
    for (std::size_t x = lo - 1; x <= hi; ++x) {
      const int parents = cur[x] + cur[x + 1];
      unsigned char born = 0;
      if (parents != 0) born = uniform01(rng) < (parents == 1 ? f1 : f2);
      nxt[x] = born;
      if (born) {
        new_lo = std::min(new_lo, x);
        new_hi = x;
      }
    }
    for (std::size_t x = lo; x <= hi + 1; ++x) cur[x] = 0;
    if (new_lo == width) return false;
    for (std::size_t x = new_lo; x <= new_hi; ++x) {
      cur[x] = nxt[x];
      nxt[x] = 0;
    }
    lo = new_lo;
    hi = new_hi;
  }
  return true;
}

}  // namespace detail

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

inline constexpr double kZ95 = 1.959963984540054;

inline WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (phat + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, std::min(centre - half, phat)), std::min(1.0, std::max(centre + half, phat))};
}

struct SurvivalEstimate {
  double p = 0.0, q = 0.0;
  std::vector<long> seed_set;
  long horizon = 0;
  std::uint64_t trials = 0;
  std::uint64_t survived = 0;
  double estimate = 0.0;
  WilsonInterval ci;
  std::uint64_t seed = 0;

  /// Binomial standard error of the estimate.
  double standard_error() const {
    return trials == 0 ? 0.0 : std::sqrt(estimate * (1 - estimate) / static_cast<double>(trials));
  }
};

/// Fraction of `trials` independent runs from `seed_set` still alive at time
/// `horizon`. Trial i uses trial_stream(base_seed, i), so the result does not
/// depend on the thread count.
inline SurvivalEstimate estimate_survival(const DKParams& params, std::vector<long> seed_set, long horizon,
                                          std::uint64_t trials, std::uint64_t base_seed, int threads = 1) {
  if (horizon < 1) throw std::invalid_argument("estimate_survival: horizon must be >= 1");
  if (trials < 1) throw std::invalid_argument("estimate_survival: trials must be >= 1");
  const DKParams checked(params.p, params.q);
  std::sort(seed_set.begin(), seed_set.end());
  seed_set.erase(std::unique(seed_set.begin(), seed_set.end()), seed_set.end());
  constexpr std::uint64_t chunk = 256;
  const std::uint64_t chunks = (trials + chunk - 1) / chunk;
  std::vector<std::uint64_t> alive(static_cast<std::size_t>(chunks), 0);
  parallel_for(static_cast<std::size_t>(chunks), threads, [&](std::size_t c) {
    const std::uint64_t end = std::min<std::uint64_t>(trials, (c + 1) * chunk);
    for (std::uint64_t trial = c * chunk; trial < end; ++trial) {
      auto rng = trial_stream(base_seed, trial);
      alive[c] += detail::survives(std::span<const long>(seed_set), checked, horizon, rng) ? 1 : 0;
    }
  });
  SurvivalEstimate est;
  est.p = checked.p;
  est.q = checked.q;
  est.seed_set = std::move(seed_set);
  est.horizon = horizon;
  est.trials = trials;
  for (auto a : alive) est.survived += a;
  est.estimate = static_cast<double>(est.survived) / static_cast<double>(trials);
  est.ci = wilson_interval(est.survived, trials);
  est.seed = base_seed;
  return est;
}

/// Survival probability from the origin at q = 1:
/// 1 - (1-p)^2 / p^2 for p >= 1/2, else 0.
inline double rho_q1_closed(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParamOutOfRange("rho_q1_closed: p = " + std::to_string(p) + " is outside [0, 1]");
  if (p <= 0.5) return 0.0;
  const double r = (1.0 - p) / p;
  return 1.0 - r * r;
}

enum class RegionLabel { Extinction, Survival };

inline std::string_view to_string(RegionLabel l) noexcept {
  return l == RegionLabel::Extinction ? "extinction" : "survival";
}

struct ScanPoint {
  double p = 0.0;
  SurvivalEstimate estimate;
  RegionLabel label = RegionLabel::Extinction;
};

struct CriticalScanResult {
  double q = 0.0;
  double threshold = 0.02;
  long horizon = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<ScanPoint> points;
  std::optional<std::pair<double, double>> bracket;
};

class NoBracket : public Error {
 public:
  explicit NoBracket(CriticalScanResult result)
      : Error("scan_critical: the estimate never crosses the threshold on this grid"), result_(std::move(result)) {}
  const CriticalScanResult& result() const noexcept { return result_; }

 private:
  CriticalScanResult result_;
};

/// Survival estimate at each grid point (grid point i uses base seed
/// seed + i), labelled extinction when below `threshold`. The bracket is the
/// first adjacent pair whose labels differ.
inline CriticalScanResult scan_critical(double q, std::vector<double> p_grid, long horizon, std::uint64_t trials,
                                        double threshold, std::uint64_t seed, int threads = 1) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw std::invalid_argument("scan_critical: threshold must be in (0, 1)");
  if (p_grid.empty()) throw std::invalid_argument("scan_critical: empty grid");
  if (!std::is_sorted(p_grid.begin(), p_grid.end())) throw std::invalid_argument("scan_critical: grid must be sorted");
  CriticalScanResult result;
  result.q = q;
  result.threshold = threshold;
  result.horizon = horizon;
  result.trials = trials;
  result.seed = seed;
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    ScanPoint pt;
    pt.p = p_grid[i];
    pt.estimate = estimate_survival(DKParams(p_grid[i], q), {0}, horizon, trials, seed + i, threads);
    pt.label = pt.estimate.estimate < threshold ? RegionLabel::Extinction : RegionLabel::Survival;
    result.points.push_back(std::move(pt));
  }
  for (std::size_t i = 0; i + 1 < result.points.size(); ++i) {
    if (result.points[i].label != result.points[i + 1].label && result.points[i].p < result.points[i + 1].p) {
      result.bracket = std::make_pair(result.points[i].p, result.points[i + 1].p);
      break;
    }
  }
  if (!result.bracket) throw NoBracket(std::move(result));
  return result;
}

/// The eight eigenvalues of the three-site DK operator in closed form:
/// 1, 1, p, p, q - p, p(q - p) and the roots of x^2 + k x + p (p - q)^2 with
/// k = p^2 - q^2 + pq - p.
inline SpectrumMultiset dk_reference_spectrum_n3(const DKParams& params) {
  const DKParams checked(params.p, params.q);
  const double p = checked.p, q = checked.q;
  const double k = p * p - q * q + p * q - p;
  const std::complex<double> root = std::sqrt(std::complex<double>(k * k - 4.0 * p * (p - q) * (p - q)));
  const std::complex<double> plus = 0.5 * (-k + root), minus = 0.5 * (-k - root);
  const std::vector<std::complex<double>> values{1.0, 1.0, p, p, q - p, p * (q - p), plus, minus};
  return SpectrumMultiset::from_values(values, 0.0, values.size());
}

/// One sample of the pair sweep on n sites from basis configuration
/// `config`: pairs (0,1), (1,2), ... are visited in order and the left site
/// of each becomes 1 with the probability the local operator assigns to it.
/// Requires a real, column-stochastic local operator.
template <class URBG>
std::uint64_t sweep_sample(const LocalOperator& local, int n, std::uint64_t config, URBG& rng) {
  for (int x = 0; x + 1 < n; ++x) {
    const int left_bit = n - 1 - x, right_bit = n - 2 - x;
    const int i = static_cast<int>((config >> left_bit) & 1U), j = static_cast<int>((config >> right_bit) & 1U);
    const double to_one = local.weight(1, j, i, j).real();
    const bool k = uniform01(rng) < to_one;
    config = (config & ~(std::uint64_t{1} << left_bit)) | (static_cast<std::uint64_t>(k) << left_bit);
  }
  return config;
}

}  // namespace ipszeta

#endif  // IPSZETA_DK_HPP
