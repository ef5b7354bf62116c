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

#ifndef IPSZETA_IO_HPP
#define IPSZETA_IO_HPP

#include <cmath>
#include <complex>
#include <iomanip>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ipszeta/dk.hpp"
#include "ipszeta/global_operator.hpp"
#include "ipszeta/local_operator.hpp"
#include "ipszeta/spectrum.hpp"
#include "ipszeta/zeta.hpp"

namespace ipszeta {

/// Ordered key/value pairs written ahead of the data section.
using Metadata = std::vector<std::pair<std::string, std::string>>;

inline void write_metadata(std::ostream& os, const Metadata& meta) {
  for (const auto& [key, value] : meta) os << "# " << key << ": " << value << '\n';
}

inline nlohmann::json metadata_json(const Metadata& meta) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : meta) j[key] = value;
  return j;
}

inline nlohmann::json complex_json(std::complex<double> z) { return nlohmann::json::array({z.real(), z.imag()}); }

// Operators.

inline nlohmann::json operator_to_json(const LocalOperator& local, int n) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& a : local.entries()) entries.push_back(complex_json(a));
  return {{"n", n}, {"local", {{"a_kl_ij", entries}}}, {"label", local.label()}};
}

struct OperatorSpec {
  LocalOperator local;
  int n = 0;
};

/// Parses the operator JSON layout; throws SparsityViolation on a forbidden
/// nonzero and nlohmann::json::exception on malformed input.
inline OperatorSpec operator_from_json(const nlohmann::json& j) {
  const auto& arr = j.at("local").at("a_kl_ij");
  if (!arr.is_array() || arr.size() != 16)
    throw std::invalid_argument("operator JSON: a_kl_ij must hold 16 [re, im] pairs");
  LocalOperator::Table t;
  for (std::size_t k = 0; k < 16; ++k) {
    const auto& z = arr.at(k);
    if (z.is_number()) {
      t[k] = {z.get<double>(), 0.0};
    } else {
      t[k] = {z.at(0).get<double>(), z.at(1).get<double>()};
    }
  }
  OperatorSpec spec;
  spec.local = LocalOperator::from_table(t, j.value("label", std::string{}));
  spec.n = j.value("n", 0);
  return spec;
}

// CSV writers. Every file starts with '#' metadata lines, then a header row.

inline void write_dense_csv(std::ostream& os, const Matrix& m, const Metadata& meta = {}) {
  write_metadata(os, meta);
  os << "row,col,re,im\n" << std::setprecision(17);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (m(r, c) != std::complex<double>(0.0))
        os << r << ',' << c << ',' << m(r, c).real() << ',' << m(r, c).imag() << '\n';
}

inline void write_spectrum_csv(std::ostream& os, const SpectrumMultiset& spec, const Metadata& meta = {}) {
  write_metadata(os, meta);
  os << "re,im,multiplicity\n" << std::setprecision(17);
  for (const auto& e : spec.entries()) os << e.value.real() << ',' << e.value.imag() << ',' << e.multiplicity << '\n';
}

inline void write_histogram_csv(std::ostream& os, const HistogramGrid& h, const Metadata& meta = {}) {
  write_metadata(os, meta);
  os << "# bin_size: " << h.bin_size << '\n'
     << "# range: [" << h.low << ", " << h.high << "]\n"
     << "# bins_per_axis: " << h.bins_per_axis << '\n'
     << "# overflow: " << h.overflow << '\n'
     << "re_low,im_low,count\n";
  os << std::fixed << std::setprecision(2);
  for (int rb = 0; rb < h.bins_per_axis; ++rb)
    for (int ib = 0; ib < h.bins_per_axis; ++ib) {
      double re = h.bin_low(rb), im = h.bin_low(ib);
      if (std::abs(re) < 1e-12) re = 0.0;
      if (std::abs(im) < 1e-12) im = 0.0;
      os << re << ',' << im << ',' << h.count(rb, ib) << '\n';
    }
  os << std::defaultfloat;
}

inline void write_coefficients_csv(std::ostream& os, const std::vector<std::complex<double>>& coeffs,
                                   const Metadata& meta = {}) {
  write_metadata(os, meta);
  os << "r,C_r_re,C_r_im\n" << std::setprecision(17);
  for (std::size_t r = 0; r < coeffs.size(); ++r)
    os << r + 1 << ',' << coeffs[r].real() << ',' << coeffs[r].imag() << '\n';
}

inline void write_scan_csv(std::ostream& os, const CriticalScanResult& scan, const Metadata& meta = {}) {
  write_metadata(os, meta);
  if (scan.bracket) {
    os << "# bracket: [" << std::setprecision(17) << scan.bracket->first << ", " << scan.bracket->second << "]\n";
  } else {
    os << "# bracket: none\n";
  }
  os << "p,estimate,ci_lo,ci_hi,label\n" << std::setprecision(17);
  for (const auto& pt : scan.points)
    os << pt.p << ',' << pt.estimate.estimate << ',' << pt.estimate.ci.lo << ',' << pt.estimate.ci.hi << ','
       << to_string(pt.label) << '\n';
}

// JSON documents.

inline nlohmann::json zeta_json(int n, const ZetaEvaluation& ev) {
  nlohmann::json j{{"n", n}, {"u", complex_json(ev.u)}, {"log_zeta", complex_json(ev.log_zeta)},
                   {"zeta", complex_json(ev.zeta)}};
  j["truncation_bound"] = std::isfinite(ev.truncation_bound) ? nlohmann::json(ev.truncation_bound) : nlohmann::json();
  return j;
}

inline nlohmann::json survival_json(const SurvivalEstimate& est) {
  return {{"p", est.p},
          {"q", est.q},
          {"A", est.seed_set},
          {"T", est.horizon},
          {"trials", est.trials},
          {"seed", est.seed},
          {"survived", est.survived},
          {"estimate", est.estimate},
          {"ci", {est.ci.lo, est.ci.hi}}};
}

inline nlohmann::json scan_json(const CriticalScanResult& scan) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& pt : scan.points)
    points.push_back({{"p", pt.p},
                      {"estimate", pt.estimate.estimate},
                      {"ci", {pt.estimate.ci.lo, pt.estimate.ci.hi}},
                      {"label", std::string(to_string(pt.label))}});
  nlohmann::json j{{"q", scan.q}, {"threshold", scan.threshold}, {"T", scan.horizon},
                   {"trials", scan.trials}, {"seed", scan.seed}, {"points", points}};
  j["bracket"] = scan.bracket ? nlohmann::json::array({scan.bracket->first, scan.bracket->second}) : nlohmann::json();
  return j;
}

inline nlohmann::json spectrum_json(const SpectrumMultiset& spec) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : spec.entries()) entries.push_back({{"value", complex_json(e.value)}, {"multiplicity", e.multiplicity}});
  return {{"dimension", spec.source_dimension()}, {"eigenvalues", entries}};
}

}  // namespace ipszeta

#endif  // IPSZETA_IO_HPP
