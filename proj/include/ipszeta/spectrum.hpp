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

#ifndef IPSZETA_SPECTRUM_HPP
#define IPSZETA_SPECTRUM_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ipszeta {

struct SpectrumEntry {
  std::complex<double> value;
  int multiplicity = 1;
};

/// Eigenvalues with multiplicities, Spec(A) = {[l_1]^{m_1}, ..., [l_k]^{m_k}}.
class SpectrumMultiset {
 public:
  SpectrumMultiset() = default;

  explicit SpectrumMultiset(std::vector<SpectrumEntry> entries, std::size_t source_dimension = 0)
      : entries_(std::move(entries)) {
    for (const auto& e : entries_)
      if (e.multiplicity < 1) throw std::invalid_argument("SpectrumMultiset: multiplicity must be >= 1");
    source_dimension_ = source_dimension == 0 ? total() : source_dimension;
  }

  /// Group raw eigenvalues into clusters of radius `cluster_tol`; each
  /// cluster is represented by its centroid.
  static SpectrumMultiset from_values(std::span<const std::complex<double>> values, double cluster_tol,
                                      std::size_t source_dimension = 0) {
    std::vector<std::complex<double>> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end(), [](auto a, auto b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::vector<std::complex<double>> sums;
    std::vector<int> counts;
    for (const auto& z : sorted) {
      std::size_t best = sums.size();
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < sums.size(); ++c) {
        const double d = std::abs(z - sums[c] / static_cast<double>(counts[c]));
        if (d <= cluster_tol && d < best_dist) {
          best = c;
          best_dist = d;
        }
      }
      if (best == sums.size()) {
        sums.push_back(z);
        counts.push_back(1);
      } else {
        sums[best] += z;
        ++counts[best];
      }
    }
    std::vector<SpectrumEntry> entries;
    entries.reserve(sums.size());
    for (std::size_t c = 0; c < sums.size(); ++c)
      entries.push_back({sums[c] / static_cast<double>(counts[c]), counts[c]});
    return SpectrumMultiset(std::move(entries), source_dimension == 0 ? values.size() : source_dimension);
  }

  /// Every value with multiplicity one.
  static SpectrumMultiset exact(std::span<const std::complex<double>> values) {
    std::vector<SpectrumEntry> entries;
    for (const auto& z : values) entries.push_back({z, 1});
    return SpectrumMultiset(std::move(entries), values.size());
  }

  const std::vector<SpectrumEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t source_dimension() const noexcept { return source_dimension_; }

  std::size_t total() const {
    return std::accumulate(entries_.begin(), entries_.end(), std::size_t{0},
                           [](std::size_t s, const SpectrumEntry& e) { return s + static_cast<std::size_t>(e.multiplicity); });
  }

  /// Each eigenvalue repeated by its multiplicity.
  std::vector<std::complex<double>> flatten() const {
    std::vector<std::complex<double>> out;
    out.reserve(total());
    for (const auto& e : entries_) out.insert(out.end(), static_cast<std::size_t>(e.multiplicity), e.value);
    return out;
  }

  double spectral_radius() const {
    double r = 0.0;
    for (const auto& e : entries_) r = std::max(r, std::abs(e.value));
    return r;
  }

  /// sum_j m_j lambda_j^r, i.e. tr(A^r).
  std::complex<double> power_sum(int r) const {
    std::complex<double> s = 0.0;
    for (const auto& e : entries_) s += static_cast<double>(e.multiplicity) * std::pow(e.value, r);
    return s;
  }

  /// Total multiplicity of eigenvalues within tol of z.
  int multiplicity_near(std::complex<double> z, double tol) const {
    int m = 0;
    for (const auto& e : entries_)
      if (std::abs(e.value - z) <= tol) m += e.multiplicity;
    return m;
  }

 private:
  std::vector<SpectrumEntry> entries_;
  std::size_t source_dimension_ = 0;
};

/// Outcome of pairing two multisets element by element.
struct MultisetMatch {
  bool same_size = false;
  double worst_distance = 0.0;  // over matched pairs
  std::size_t matched = 0;

  bool equal_within(double tol) const { return same_size && worst_distance <= tol; }
};

/// Pair the flattened multisets greedily, closest pair first.
inline MultisetMatch match_multisets(const SpectrumMultiset& a, const SpectrumMultiset& b) {
  const auto fa = a.flatten();
  const auto fb = b.flatten();
  MultisetMatch m;
  m.same_size = fa.size() == fb.size();
  struct Pair {
    double dist;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(fa.size() * fb.size());
  for (std::size_t i = 0; i < fa.size(); ++i)
    for (std::size_t j = 0; j < fb.size(); ++j) pairs.push_back({std::abs(fa[i] - fb[j]), i, j});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    return x.dist != y.dist ? x.dist < y.dist : (x.i != y.i ? x.i < y.i : x.j < y.j);
  });
  std::vector<bool> used_a(fa.size()), used_b(fb.size());
  for (const auto& p : pairs) {
    if (used_a[p.i] || used_b[p.j]) continue;
    used_a[p.i] = used_b[p.j] = true;
    m.worst_distance = std::max(m.worst_distance, p.dist);
    ++m.matched;
  }
  return m;
}

/// Multiset union: multiplicities of matched eigenvalues add, the rest are
/// appended. Each entry of b goes to the nearest not-yet-matched entry of a
/// within tol.
inline SpectrumMultiset spec_union(const SpectrumMultiset& a, const SpectrumMultiset& b, double tol) {
  std::vector<SpectrumEntry> out = a.entries();
  const std::size_t from_a = out.size();
  std::vector<bool> taken(from_a, false);
  for (const auto& e : b.entries()) {
    std::size_t best = from_a;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < from_a; ++i) {
      const double d = std::abs(out[i].value - e.value);
      if (!taken[i] && d <= tol && d < best_dist) {
        best = i;
        best_dist = d;
      }
    }
    if (best == from_a) {
      out.push_back(e);
    } else {
      taken[best] = true;
      out[best].multiplicity += e.multiplicity;
    }
  }
  return SpectrumMultiset(std::move(out), a.source_dimension() + b.source_dimension());
}

/// Eigenvalue counts on a square grid over [low, high]^2 of the complex plane.
struct HistogramGrid {
  double bin_size = 0.05;
  double low = -1.0;
  double high = 1.0;
  int bins_per_axis = 40;
  std::vector<long> counts;  // counts[re_bin * bins_per_axis + im_bin]
  long overflow = 0;

  long count(int re_bin, int im_bin) const {
    return counts.at(static_cast<std::size_t>(re_bin) * static_cast<std::size_t>(bins_per_axis) +
                     static_cast<std::size_t>(im_bin));
  }
  double bin_low(int bin) const { return low + bin * bin_size; }
  long in_range() const { return std::accumulate(counts.begin(), counts.end(), 0L); }
};

namespace detail {

// Bin index for coordinate x, or -1 when x lies outside [low, high] by more
// than `slack`. Bins are half-open [b, b + bin) except the last, which is
// closed. The 1e-9 nudge places decimal edges such as 0.95 in the bin they
// open despite binary rounding.
inline int axis_bin(double x, double low, double high, double bin, int bins, double slack) {
  if (x < low - slack || x > high + slack) return -1;
  x = std::clamp(x, low, high);
  int idx = static_cast<int>(std::floor((x - low) / bin + 1e-9));
  return std::clamp(idx, 0, bins - 1);
}

}  // namespace detail

/// Bin the spectrum. `edge_slack` admits eigenvalues that exceed the range
/// only by rounding (e.g. 1 + 2e-16) into the edge bins.
inline HistogramGrid histogram(const SpectrumMultiset& spec, double bin = 0.05, double low = -1.0,
                               double high = 1.0, double edge_slack = 1e-9) {
  if (!(bin > 0.0)) throw std::invalid_argument("histogram: bin size must be positive");
  if (!(high > low)) throw std::invalid_argument("histogram: empty range");
  HistogramGrid h;
  h.bin_size = bin;
  h.low = low;
  h.high = high;
  h.bins_per_axis = static_cast<int>(std::ceil((high - low) / bin - 1e-9));
  h.counts.assign(static_cast<std::size_t>(h.bins_per_axis) * static_cast<std::size_t>(h.bins_per_axis), 0);
  for (const auto& e : spec.entries()) {
    const int rb = detail::axis_bin(e.value.real(), low, high, bin, h.bins_per_axis, edge_slack);
    const int ib = detail::axis_bin(e.value.imag(), low, high, bin, h.bins_per_axis, edge_slack);
    if (rb < 0 || ib < 0) {
      h.overflow += e.multiplicity;
    } else {
      h.counts[static_cast<std::size_t>(rb) * static_cast<std::size_t>(h.bins_per_axis) +
               static_cast<std::size_t>(ib)] += e.multiplicity;
    }
  }
  return h;
}

}  // namespace ipszeta

#endif  // IPSZETA_SPECTRUM_HPP
