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

#ifndef IPSZETA_REPORT_HPP
#define IPSZETA_REPORT_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ipszeta {

/// Outcome of checking one identity. `worst_residual` is the largest error
/// seen, in the units the claim's tolerance is stated in.
struct VerificationReport {
  std::string claim;
  int n = 0;
  double tol = 0.0;
  bool pass = true;
  double worst_residual = 0.0;
  std::size_t cases = 0;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> notes;
  std::optional<std::string> failing_case;

  /// Fold in one case; the first failing case is remembered.
  void record(double residual, const std::string& case_label = {}) {
    ++cases;
    const bool ok = residual <= tol;  // NaN fails
    if (!(residual <= worst_residual)) worst_residual = residual;
    if (!ok) {
      if (pass && !case_label.empty()) failing_case = case_label;
      pass = false;
    }
  }

  void note(const std::string& text) {
    for (const auto& existing : notes)
      if (existing == text) return;
    notes.push_back(text);
  }

  /// Merge another report on the same claim.
  void absorb(const VerificationReport& other) {
    cases += other.cases;
    if (!(other.worst_residual <= worst_residual)) worst_residual = other.worst_residual;
    if (!other.pass && pass) failing_case = other.failing_case;
    pass = pass && other.pass;
    n = std::max(n, other.n);
    for (const auto& text : other.notes) note(text);
  }
};

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j{{"claim", r.claim}, {"n", r.n}, {"tol", r.tol}, {"pass", r.pass},
                   {"worst_residual", r.worst_residual}, {"cases", r.cases}};
  if (r.seed) j["seed"] = *r.seed;
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (r.failing_case) j["failing_case"] = *r.failing_case;
  return j;
}

}  // namespace ipszeta

#endif  // IPSZETA_REPORT_HPP
