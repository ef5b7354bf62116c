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

// Command-line front end: operator export, spectra and histograms, zeta
// coefficients and values, identity checks, and DK survival runs.

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ipszeta/extended.hpp"
#include "ipszeta/ipszeta.hpp"

namespace {

using namespace ipszeta;

enum Exit { kOk = 0, kVerificationFailed = 1, kUsage = 2, kResource = 3 };

struct RunConfig {
  std::string command;
  // model
  std::string model = "dk";
  double p = 0.5;
  double q = 0.5;
  double xi = 0.0;
  std::string file;
  int n = 3;
  // zeta
  int r_max = 0;
  std::optional<double> u_re;
  double u_im = 0.0;
  // spectrum
  std::string hist_path;
  double bin = 0.05;
  // verify
  std::string claim;
  std::string random_family;
  int trials = 1;
  std::optional<double> tol;
  // dk
  long horizon = 0;
  std::uint64_t mc_trials = 0;
  std::vector<long> seed_set{0};
  double p_from = 0.40, p_to = 0.70, p_step = 0.05;
  double threshold = 0.02;
  // common
  std::string format;
  std::string out;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string precision = "auto";
  int eigen_cap = 10;
  int dense_cap = 14;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) { return shortest(x); }

// Output -------------------------------------------------------------------

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void write_json(const std::string& path, const nlohmann::json& j) {
  Output out(path);
  out.stream() << j.dump(2) << '\n';
}

// Models -------------------------------------------------------------------

LocalOperator build_model(const RunConfig& cfg) {
  if (cfg.model == "dk") return dk_local_operator(DKParams(cfg.p, cfg.q));
  if (cfg.model == "site") return dk_local_operator(DKParams::site(cfg.p));
  if (cfg.model == "bond") return dk_local_operator(DKParams::bond(cfg.p));
  if (cfg.model == "qca") return qca_rotation(cfg.xi);
  if (cfg.model == "custom") {
    if (cfg.file.empty()) throw UsageError("--model custom needs --file");
    std::ifstream in(cfg.file);
    if (!in) throw UsageError("cannot read " + cfg.file);
    return operator_from_json(nlohmann::json::parse(in)).local;
  }
  throw UsageError("unknown model '" + cfg.model + "'");
}

/// The same model with weights formed in extended precision from the
/// parameters, so identities such as unit column sums hold exactly.
BasicLocalOperator<extended_real> build_model_extended(const RunConfig& cfg, const LocalOperator& local) {
  if (cfg.model == "dk") return dk_layout<extended_real>(extended_real(cfg.p), extended_real(cfg.q), local.label());
  if (cfg.model == "site") return dk_layout<extended_real>(extended_real(cfg.p), extended_real(cfg.p), local.label());
  if (cfg.model == "bond") {
    const extended_real p(cfg.p), one(1);
    return dk_layout<extended_real>(p, one - (one - p) * (one - p), local.label());
  }
  if (!local.is_real()) throw UsageError("--precision extended needs a real-valued model");
  return local.cast<extended_real>();
}

Metadata base_metadata(const RunConfig& cfg) {
  Metadata meta{{"tool", std::string("ipszeta ") + kVersion}, {"command", cfg.command}};
  return meta;
}

void add_model_metadata(Metadata& meta, const RunConfig& cfg, const LocalOperator& local) {
  meta.emplace_back("model", cfg.model);
  meta.emplace_back("label", local.label());
  if (cfg.model == "dk" || cfg.model == "site" || cfg.model == "bond") {
    meta.emplace_back("p", fmt(cfg.p));
    meta.emplace_back("q", fmt(cfg.model == "dk" ? cfg.q : to_complex(local.weight(1, 1, 1, 1)).real()));
  }
  if (cfg.model == "qca") meta.emplace_back("xi", fmt(cfg.xi));
  if (cfg.model == "custom") meta.emplace_back("file", cfg.file);
  meta.emplace_back("class", std::string(to_string(classify(local).kind)));
  meta.emplace_back("n", std::to_string(cfg.n));
}

EigOptions eig_options(const RunConfig& cfg) {
  EigOptions opt;
  if (cfg.eigen_cap > kEigenHardCap) throw SizeCapExceeded("eigen cap override", cfg.eigen_cap, kEigenHardCap);
  opt.max_log2_dimension = cfg.eigen_cap;
  return opt;
}

Caps caps_of(const RunConfig& cfg) {
  Caps caps;
  caps.dense = cfg.dense_cap;
  caps.eigen = cfg.eigen_cap;
  return caps;
}

SpectrumMultiset model_spectrum(const RunConfig& cfg, const LocalOperator& local) {
  if (cfg.n > cfg.dense_cap) throw SizeCapExceeded("dense global operator", cfg.n, cfg.dense_cap);
  if (cfg.precision == "extended") return global_spectrum(build_model_extended(cfg, local), cfg.n, eig_options(cfg));
  return global_spectrum(local, cfg.n, eig_options(cfg));
}

// Subcommands ----------------------------------------------------------------

int cmd_op_build(const RunConfig& cfg) {
  const LocalOperator local = build_model(cfg);
  Metadata meta = base_metadata(cfg);
  add_model_metadata(meta, cfg, local);
  if (cfg.format == "csv") {
    Output out(cfg.out);
    write_dense_csv(out.stream(), kronecker_dense(local, cfg.n, caps_of(cfg)), meta);
  } else {
    nlohmann::json j = operator_to_json(local, cfg.n);
    j["meta"] = metadata_json(meta);
    write_json(cfg.out, j);
  }
  return kOk;
}

int cmd_spectrum(const RunConfig& cfg) {
  const LocalOperator local = build_model(cfg);
  Metadata meta = base_metadata(cfg);
  add_model_metadata(meta, cfg, local);
  meta.emplace_back("precision", cfg.precision == "extended" ? "extended" : "double");
  const SpectrumMultiset spec = model_spectrum(cfg, local);
  meta.emplace_back("eigenvalues", std::to_string(spec.total()));
  meta.emplace_back("spectral_radius", fmt(spec.spectral_radius()));
  if (cfg.format == "json") {
    nlohmann::json j = spectrum_json(spec);
    j["meta"] = metadata_json(meta);
    write_json(cfg.out, j);
  } else {
    Output out(cfg.out);
    write_spectrum_csv(out.stream(), spec, meta);
  }
  if (!cfg.hist_path.empty()) {
    Output hist(cfg.hist_path);
    write_histogram_csv(hist.stream(), histogram(spec, cfg.bin), meta);
  }
  return kOk;
}

int cmd_zeta(const RunConfig& cfg) {
  const LocalOperator local = build_model(cfg);
  Metadata meta = base_metadata(cfg);
  add_model_metadata(meta, cfg, local);
  PowerTraceOptions pt;
  pt.caps = caps_of(cfg);
  pt.threads = cfg.threads;
  if (cfg.u_re) {
    const std::complex<double> u(*cfg.u_re, cfg.u_im);
    const int r_max = cfg.r_max > 0 ? cfg.r_max : 60;
    meta.emplace_back("r_max", std::to_string(r_max));
    const ZetaSeries series = zeta_log_series(local, cfg.n, r_max, pt);
    nlohmann::json j = zeta_json(cfg.n, series.evaluate(u));
    j["r_max"] = r_max;
    j["radius_hint"] = std::isfinite(series.radius_hint()) ? nlohmann::json(series.radius_hint()) : nlohmann::json();
    if (cfg.n <= cfg.eigen_cap) {
      const ZetaDeterminant det = zeta_det(model_spectrum(cfg, local), u);
      j["determinant"] = {{"zeta", complex_json(det.zeta)},
                          {"log_zeta", complex_json(det.log_zeta)},
                          {"branch_ambiguous", det.branch_ambiguous}};
    }
    j["meta"] = metadata_json(meta);
    write_json(cfg.out, j);
    return kOk;
  }
  const int r_max = cfg.r_max > 0 ? cfg.r_max : 10;
  meta.emplace_back("r_max", std::to_string(r_max));
  const ZetaSeries series = zeta_log_series(local, cfg.n, r_max, pt);
  if (cfg.format == "json") {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : series.coeffs()) coeffs.push_back(complex_json(c));
    write_json(cfg.out, {{"meta", metadata_json(meta)}, {"n", cfg.n}, {"C_r", coeffs}});
  } else {
    Output out(cfg.out);
    write_coefficients_csv(out.stream(), series.coeffs(), meta);
  }
  return kOk;
}

const std::set<std::string> kClaims{"lemma1", "corollary", "prop1", "prop2", "theorem2", "theorem3", "remark"};

VerificationReport verify_one(const RunConfig& cfg, const LocalOperator& local, int r_max) {
  const Caps caps = caps_of(cfg);
  const std::string& c = cfg.claim;
  if (c == "lemma1") return verify_lemma1(local, cfg.n, cfg.tol.value_or(1e-12), caps);
  if (c == "corollary") return verify_corollary(local, cfg.n, cfg.tol.value_or(1e-12), caps);
  if (c == "prop1") return verify_prop1(local, cfg.n, cfg.tol.value_or(1e-10), caps);
  if (c == "prop2") return verify_prop2(local, cfg.n, cfg.tol.value_or(1e-10), caps);
  const double tol = cfg.tol.value_or(1e-7);
  PowerTraceOptions pt;
  pt.caps = caps;
  pt.threads = cfg.threads;
  const bool extended = cfg.precision == "extended" || (cfg.precision == "auto" && local.is_real());
  if (extended) {
    if (!local.is_real()) throw UsageError("--precision extended needs a real-valued model");
    const auto ext = cfg.random_family.empty() ? build_model_extended(cfg, local) : local.cast<extended_real>();
    VerificationReport report = c == "theorem2" ? verify_theorem2(ext, cfg.n, tol, eig_options(cfg))
                                                : verify_theorem3(ext, cfg.n, r_max, tol, eig_options(cfg), pt);
    report.note("computed in 128-digit arithmetic");
    return report;
  }
  if (c == "theorem2") return verify_theorem2(local, cfg.n, tol, eig_options(cfg));
  return verify_theorem3(local, cfg.n, r_max, tol, eig_options(cfg), pt);
}

int cmd_verify(const RunConfig& cfg) {
  if (!kClaims.count(cfg.claim)) throw UsageError("unknown claim '" + cfg.claim + "'");
  Metadata meta = base_metadata(cfg);
  meta.emplace_back("claim", cfg.claim);
  VerificationReport report;
  report.claim = cfg.claim;
  const int r_max = cfg.r_max > 0 ? cfg.r_max : 30;
  if (cfg.claim == "remark") {
    PowerTraceOptions pt;
    pt.caps = caps_of(cfg);
    pt.threads = cfg.threads;
    report = qca_remark_check(cfg.xi, cfg.n, cfg.r_max > 0 ? cfg.r_max : 20, cfg.tol.value_or(1e-9), pt);
    meta.emplace_back("xi", fmt(cfg.xi));
    meta.emplace_back("n", std::to_string(cfg.n));
  } else if (!cfg.random_family.empty()) {
    meta.emplace_back("random", cfg.random_family);
    meta.emplace_back("trials", std::to_string(cfg.trials));
    meta.emplace_back("n", std::to_string(cfg.n));
    meta.emplace_back("seed", std::to_string(cfg.seed));
    std::mt19937_64 rng(cfg.seed);
    bool first = true;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      LocalOperator local;
      if (cfg.random_family == "pca") local = random_pca(rng);
      else if (cfg.random_family == "qca") local = random_qca(rng);
      else if (cfg.random_family == "general") local = random_general(rng);
      else if (cfg.random_family == "t") local = random_t_condition(rng);
      else throw UsageError("unknown random family '" + cfg.random_family + "'");
      VerificationReport one = verify_one(cfg, local, r_max);
      if (!one.pass && !one.failing_case) one.failing_case = "trial " + std::to_string(trial);
      else if (!one.pass) one.failing_case = "trial " + std::to_string(trial) + ": " + *one.failing_case;
      if (first) {
        report = one;
        first = false;
      } else {
        report.absorb(one);
      }
    }
    report.seed = cfg.seed;
  } else {
    const LocalOperator local = build_model(cfg);
    add_model_metadata(meta, cfg, local);
    report = verify_one(cfg, local, r_max);
  }
  nlohmann::json j = to_json(report);
  j["meta"] = metadata_json(meta);
  write_json(cfg.out, j);
  if (!report.pass) {
    std::cerr << "verification failed: " << report.claim << ", worst residual " << report.worst_residual
              << " > tol " << report.tol;
    if (report.failing_case) std::cerr << " (" << *report.failing_case << ")";
    std::cerr << ", seed " << cfg.seed << '\n';
    return kVerificationFailed;
  }
  return kOk;
}

Metadata dk_metadata(const RunConfig& cfg) {
  Metadata meta = base_metadata(cfg);
  meta.emplace_back("seed", std::to_string(cfg.seed));
  meta.emplace_back("generator", kGeneratorName);
  return meta;
}

int cmd_dk_survive(const RunConfig& cfg) {
  const long horizon = cfg.horizon > 0 ? cfg.horizon : 100;
  const std::uint64_t trials = cfg.mc_trials > 0 ? cfg.mc_trials : 1000;
  const SurvivalEstimate est =
      estimate_survival(DKParams(cfg.p, cfg.q), cfg.seed_set, horizon, trials, cfg.seed, cfg.threads);
  Metadata meta = dk_metadata(cfg);
  if (cfg.format == "csv") {
    Output out(cfg.out);
    write_metadata(out.stream(), meta);
    out.stream() << "p,q,T,trials,survived,estimate,ci_lo,ci_hi\n"
                 << std::setprecision(17) << est.p << ',' << est.q << ',' << est.horizon << ',' << est.trials << ','
                 << est.survived << ',' << est.estimate << ',' << est.ci.lo << ',' << est.ci.hi << '\n';
  } else {
    nlohmann::json j = survival_json(est);
    j["meta"] = metadata_json(meta);
    write_json(cfg.out, j);
  }
  return kOk;
}

int cmd_dk_scan(const RunConfig& cfg) {
  if (!(cfg.p_step > 0.0)) throw UsageError("--p-step must be positive");
  std::vector<double> grid;
  const long count = std::lround(std::floor((cfg.p_to - cfg.p_from) / cfg.p_step + 1e-9)) + 1;
  for (long i = 0; i < count; ++i) grid.push_back(std::round((cfg.p_from + static_cast<double>(i) * cfg.p_step) * 1e12) / 1e12);
  const long horizon = cfg.horizon > 0 ? cfg.horizon : 200;
  const std::uint64_t trials = cfg.mc_trials > 0 ? cfg.mc_trials : 1000;
  Metadata meta = dk_metadata(cfg);
  meta.emplace_back("q", fmt(cfg.q));
  meta.emplace_back("T", std::to_string(horizon));
  meta.emplace_back("trials", std::to_string(trials));
  meta.emplace_back("threshold", fmt(cfg.threshold));
  int code = kOk;
  CriticalScanResult scan;
  try {
    scan = scan_critical(cfg.q, grid, horizon, trials, cfg.threshold, cfg.seed, cfg.threads);
  } catch (const NoBracket& e) {
    scan = e.result();
    std::cerr << e.what() << '\n';
    code = kVerificationFailed;
  }
  if (cfg.format == "json") {
    nlohmann::json j = scan_json(scan);
    j["meta"] = metadata_json(meta);
    write_json(cfg.out, j);
  } else {
    Output out(cfg.out);
    write_scan_csv(out.stream(), scan, meta);
  }
  return code;
}

// Option wiring ----------------------------------------------------------------

void add_common(CLI::App* app, RunConfig& cfg, const std::string& default_format) {
  cfg.format = default_format;
  app->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", cfg.out, "Output path (default stdout)");
  app->add_option("--seed", cfg.seed, "Random seed");
  app->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
}

void add_model(CLI::App* app, RunConfig& cfg) {
  app->add_option("--model", cfg.model, "dk | site | bond | qca | custom")
      ->check(CLI::IsMember({"dk", "site", "bond", "qca", "custom"}));
  app->add_option("--p", cfg.p, "DK single-parent birth probability");
  app->add_option("--q", cfg.q, "DK two-parent birth probability");
  app->add_option("--xi", cfg.xi, "Rotation angle for --model qca (radians)");
  app->add_option("--file", cfg.file, "Operator JSON for --model custom");
  app->add_option("--n", cfg.n, "Number of sites")->check(CLI::PositiveNumber);
  app->add_option("--precision", cfg.precision,
                  "Eigensolver arithmetic: double, extended (128-digit), or auto (extended for the spectral "
                  "identity checks on real operators, double elsewhere)")
      ->check(CLI::IsMember({"auto", "double", "extended"}));
  app->add_option("--eigen-cap", cfg.eigen_cap, "Largest n for dense eigensolves (at most 12)");
  app->add_option("--dense-cap", cfg.dense_cap, "Largest n for dense storage");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interacting-particle-system operators, spectra, zeta functions and DK simulation"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  RunConfig cfg;

  auto* op = app.add_subcommand("op", "Local and global operators");
  op->require_subcommand(1);
  auto* op_build = op->add_subcommand("build", "Write the operator as JSON or its dense global form as CSV");
  add_model(op_build, cfg);
  add_common(op_build, cfg, "json");

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the global operator");
  add_model(spectrum, cfg);
  add_common(spectrum, cfg, "csv");
  spectrum->add_option("--hist", cfg.hist_path, "Also write a histogram CSV here");
  spectrum->add_option("--bin", cfg.bin, "Histogram bin size")->check(CLI::PositiveNumber);

  auto* zeta = app.add_subcommand("zeta", "Coefficients C_r or the zeta value at u");
  add_model(zeta, cfg);
  add_common(zeta, cfg, "csv");
  zeta->add_option("--rmax", cfg.r_max, "Number of coefficients")->check(CLI::PositiveNumber);
  zeta->add_option("--u", cfg.u_re, "Evaluate at u (real part)");
  zeta->add_option("--u-im", cfg.u_im, "Imaginary part of u");

  auto* verify = app.add_subcommand("verify", "Check an identity on a model or on random operators");
  add_model(verify, cfg);
  add_common(verify, cfg, "json");
  verify->add_option("claim", cfg.claim, "lemma1 | corollary | prop1 | prop2 | theorem2 | theorem3 | remark")
      ->required()
      ->check(CLI::IsMember(kClaims));
  verify->add_option("--random", cfg.random_family, "Random family: pca | qca | general | t")
      ->check(CLI::IsMember({"pca", "qca", "general", "t"}));
  verify->add_option("--trials", cfg.trials, "Random operators to draw")->check(CLI::PositiveNumber);
  verify->add_option("--tol", cfg.tol, "Tolerance override");
  verify->add_option("--rmax", cfg.r_max, "Largest r for coefficient checks")->check(CLI::PositiveNumber);

  auto* dk = app.add_subcommand("dk", "Domany-Kinzel Monte Carlo");
  dk->require_subcommand(1);
  auto* survive = dk->add_subcommand("survive", "Estimate the survival probability at a finite horizon");
  auto* scan = dk->add_subcommand("scan", "Scan p at fixed q for the extinction/survival crossover");
  for (auto* sub : {survive, scan}) {
    sub->add_option("--q", cfg.q, "Two-parent birth probability");
    sub->add_option("--t", cfg.horizon, "Horizon T")->check(CLI::PositiveNumber);
    sub->add_option("--trials", cfg.mc_trials, "Independent runs per point")->check(CLI::PositiveNumber);
  }
  survive->add_option("--p", cfg.p, "Single-parent birth probability");
  survive->add_option("--A", cfg.seed_set, "Initially occupied sites")->delimiter(',');
  add_common(survive, cfg, "json");
  scan->add_option("--p-from", cfg.p_from, "First grid point");
  scan->add_option("--p-to", cfg.p_to, "Last grid point");
  scan->add_option("--p-step", cfg.p_step, "Grid spacing");
  scan->add_option("--eps", cfg.threshold, "Extinction threshold")->check(CLI::Range(0.0, 1.0));
  add_common(scan, cfg, "csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  std::ostringstream command;
  for (int i = 1; i < argc; ++i) command << (i > 1 ? " " : "") << argv[i];
  cfg.command = command.str();

  try {
    if (op_build->parsed()) return cmd_op_build(cfg);
    if (spectrum->parsed()) return cmd_spectrum(cfg);
    if (zeta->parsed()) return cmd_zeta(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (survive->parsed()) return cmd_dk_survive(cfg);
    if (scan->parsed()) return cmd_dk_scan(cfg);
  } catch (const SizeCapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResource;
  } catch (const NoConvergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kResource;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParamOutOfRange& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SparsityViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed operator JSON: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
