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

#ifndef IPSZETA_CONFIGURATION_HPP
#define IPSZETA_CONFIGURATION_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ipszeta {

/// An occupation pattern eta(0..N-1) on the path of N sites.
///
/// Basis convention shared by every module: site 0 is the most significant
/// bit, index = sum_x eta(x) * 2^(N-1-x). This is the order of the tensor
/// product |eta(0)> (x) |eta(1)> (x) ... (x) |eta(N-1)>, so (0,1,0) has index 2.
class Configuration {
 public:
  Configuration(int n_sites, std::uint64_t index) : n_sites_(n_sites), index_(index) {
    if (n_sites < 1 || n_sites > 63) throw std::invalid_argument("Configuration: n_sites must be in [1, 63]");
    if (index >= (std::uint64_t{1} << n_sites)) throw std::out_of_range("Configuration: index >= 2^n");
  }

  static Configuration from_bits(const std::vector<int>& bits) {
    if (bits.empty()) throw std::invalid_argument("Configuration: empty bit pattern");
    std::uint64_t index = 0;
    for (int b : bits) {
      if (b != 0 && b != 1) throw std::invalid_argument("Configuration: bits must be 0 or 1");
      index = (index << 1) | static_cast<std::uint64_t>(b);
    }
    return Configuration(static_cast<int>(bits.size()), index);
  }

  int n_sites() const noexcept { return n_sites_; }
  std::uint64_t index() const noexcept { return index_; }

  int occupation(int site) const {
    if (site < 0 || site >= n_sites_) throw std::out_of_range("Configuration: site out of range");
    return static_cast<int>((index_ >> (n_sites_ - 1 - site)) & 1U);
  }

  std::vector<int> bits() const {
    std::vector<int> out(static_cast<std::size_t>(n_sites_));
    for (int x = 0; x < n_sites_; ++x) out[static_cast<std::size_t>(x)] = occupation(x);
    return out;
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  int n_sites_;
  std::uint64_t index_;
};

}  // namespace ipszeta

#endif  // IPSZETA_CONFIGURATION_HPP
