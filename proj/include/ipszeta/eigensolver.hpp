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

#ifndef IPSZETA_EIGENSOLVER_HPP
#define IPSZETA_EIGENSOLVER_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "ipszeta/errors.hpp"
#include "ipszeta/scalar.hpp"
#include "ipszeta/spectrum.hpp"

namespace ipszeta {

struct EigOptions {
  double residual_tol = 1e-8;      // sampled ||Av - lv|| <= residual_tol * ||A||_1
  int residual_samples = 8;
  double cluster_rel = 1e-6;       // multiplicity radius, times max(1, spectral radius)
  double trace_tol = 1e-8;         // |sum l - tr A| <= trace_tol * dim * max(1, ||A||_1)
  int max_log2_dimension = 10;     // default eigen cap; may be raised to 12
  int iterations_per_row = 40;
  bool permute = true;             // split into irreducible diagonal blocks first
  bool balance = true;
};

inline constexpr int kEigenHardCap = 12;

struct EigDiagnostics {
  double matrix_norm = 0.0;
  double max_residual = 0.0;  // worst sampled residual, absolute
  double trace_error = 0.0;
  std::size_t sampled = 0;
  std::size_t blocks = 0;
  std::size_t largest_block = 0;
};

struct EigResult {
  SpectrumMultiset spectrum;
  std::vector<std::complex<double>> values;  // unclustered
  EigDiagnostics diagnostics;

  /// Every computed eigenvalue with multiplicity one. Prefer this for
  /// matching: clustering replaces nearby values by their centroid, which
  /// can move an eigenvalue by up to the cluster radius.
  SpectrumMultiset unclustered() const { return SpectrumMultiset::exact(values); }
};

namespace detail {

/// Strongly connected components of the directed graph with an edge c -> r
/// whenever A(r, c) != 0. Permuting A so the components are contiguous makes
/// it block triangular, and the spectrum is the union of the diagonal blocks'.
template <class Derived>
std::vector<std::vector<Eigen::Index>> irreducible_blocks(const Eigen::MatrixBase<Derived>& a) {
  const Eigen::Index n = a.rows();
  std::vector<std::vector<Eigen::Index>> adj(static_cast<std::size_t>(n));
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r)
      if (r != c && !is_zero(a(r, c))) adj[static_cast<std::size_t>(c)].push_back(r);

  // Iterative Tarjan.
  constexpr Eigen::Index unvisited = -1;
  std::vector<Eigen::Index> index(static_cast<std::size_t>(n), unvisited), low(static_cast<std::size_t>(n));
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<Eigen::Index> stack;
  std::vector<std::pair<Eigen::Index, std::size_t>> call;
  std::vector<std::vector<Eigen::Index>> components;
  Eigen::Index counter = 0;
  for (Eigen::Index root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != unvisited) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& [v, next] = call.back();
      const auto vs = static_cast<std::size_t>(v);
      if (next == 0 && index[vs] == unvisited) {
        index[vs] = low[vs] = counter++;
        stack.push_back(v);
        on_stack[vs] = true;
      }
      if (next < adj[vs].size()) {
        const Eigen::Index w = adj[vs][next++];
        const auto ws = static_cast<std::size_t>(w);
        if (index[ws] == unvisited) {
          call.push_back({w, 0});
        } else if (on_stack[ws]) {
          low[vs] = std::min(low[vs], index[ws]);
        }
        continue;
      }
      if (low[vs] == index[vs]) {
        std::vector<Eigen::Index> comp;
        Eigen::Index w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
      const Eigen::Index finished = v;
      call.pop_back();
      if (!call.empty()) {
        const auto ps = static_cast<std::size_t>(call.back().first);
        low[ps] = std::min(low[ps], low[static_cast<std::size_t>(finished)]);
      }
    }
  }
  return components;
}

/// Radix-2 diagonal similarity scaling (Parlett-Reinsch). Exact in binary
/// arithmetic, so eigenvalues are unchanged.
template <class Scalar>
void balance(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a) {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using std::abs;
  const Eigen::Index n = a.rows();
  const Real radix(2), sqr_radix(4);
  bool done = false;
  for (int sweep = 0; !done && sweep < 100; ++sweep) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      Real c(0), r(0);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += abs(a(j, i));
        r += abs(a(i, j));
      }
      if (c == Real(0) || r == Real(0)) continue;
      Real g = r / radix, f(1);
      const Real s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqr_radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqr_radix;
      }
      if ((c + r) / f < Real(0.95) * s) {
        done = false;
        a.row(i) *= Scalar(Real(1) / f);
        a.col(i) *= Scalar(f);
      }
    }
  }
}

template <class Real>
void real_block_eigenvalues(const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& b, const EigOptions& opt,
                            std::size_t block_id, std::vector<std::complex<double>>& out) {
  Eigen::EigenSolver<Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>> es;
  es.setMaxIterations(opt.iterations_per_row * b.rows());
  es.compute(b, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw NoConvergence("eigensolver: QR iteration did not converge in block " + std::to_string(block_id) +
                            " of size " + std::to_string(b.rows()),
                        block_id);
  for (Eigen::Index i = 0; i < b.rows(); ++i) out.push_back(to_complex(es.eigenvalues()[i]));
}

template <class Scalar>
void block_eigenvalues(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> b, const EigOptions& opt,
                       std::size_t block_id, std::vector<std::complex<double>>& out) {
  if (b.rows() == 1) {
    out.push_back(to_complex(b(0, 0)));
    return;
  }
  if (opt.balance) balance(b);
  if constexpr (is_complex_v<Scalar>) {
    if ((b.imag().array() == 0).all()) {
      using Real = typename Scalar::value_type;
      const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> re = b.real();
      real_block_eigenvalues(re, opt, block_id, out);
      return;
    }
    Eigen::ComplexEigenSolver<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> es;
    es.setMaxIterations(opt.iterations_per_row * b.rows());
    es.compute(b, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
      throw NoConvergence("eigensolver: QR iteration did not converge in block " + std::to_string(block_id) +
                              " of size " + std::to_string(b.rows()),
                          block_id);
    for (Eigen::Index i = 0; i < b.rows(); ++i) out.push_back(to_complex(es.eigenvalues()[i]));
  } else {
    real_block_eigenvalues(b, opt, block_id, out);
  }
}

inline double norm1(const Eigen::MatrixXcd& a) {
  return a.rows() == 0 ? 0.0 : a.cwiseAbs().colwise().sum().maxCoeff();
}

/// Residual ||(A - l)x|| for a unit vector x close to minimizing it, found by
/// inverse iteration with a shift offset from l by 1e-12 ||A||.
inline double eigenpair_residual(const Eigen::MatrixXcd& a, std::complex<double> lambda, double norm) {
  const Eigen::Index n = a.rows();
  const double offset = 1e-12 * std::max(norm, 1e-300);
  const std::complex<double> mu = lambda + std::complex<double>(offset, offset) / std::sqrt(2.0);
  Eigen::MatrixXcd shifted = a;
  shifted.diagonal().array() -= mu;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
  // Fixed pseudo-random start: structured vectors such as all-ones are often
  // invariant and carry no component along the wanted eigenvector.
  Eigen::VectorXcd x(n);
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (Eigen::Index i = 0; i < n; ++i) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    const double re = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    const double im = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
    x(i) = {re, im};
  }
  x.normalize();
  // Inverse iteration on B^H B with B = A - mu converges to the right
  // singular vector of the smallest singular value, which stays well defined
  // when the eigenvalue is defective or has several independent eigenvectors.
  for (int it = 0; it < 4; ++it) {
    x = lu.solve(lu.adjoint().solve(x));
    const double nx = x.norm();
    if (!std::isfinite(nx) || nx == 0.0) return 0.0;  // exactly singular: l is exact
    x /= nx;
  }
  return (a * x - lambda * x).norm();
}

}  // namespace detail

/// All eigenvalues of a square matrix with multiplicities and diagnostics.
///
/// The matrix is first permuted into irreducible diagonal blocks (exact),
/// each block is balanced and reduced by Hessenberg + shifted QR in the
/// matrix's own scalar type, and multiplicities are assigned by clustering
/// within cluster_rel * max(1, spectral radius). A sample of eigenpairs is
/// checked against the residual contract in double precision.
template <class Derived>
EigResult eig_dense_detailed(const Eigen::MatrixBase<Derived>& a, const EigOptions& opt = {}) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (a.rows() != a.cols()) throw std::invalid_argument("eig_dense: matrix must be square");
  if (opt.max_log2_dimension > kEigenHardCap)
    throw SizeCapExceeded("eigen cap override", opt.max_log2_dimension, kEigenHardCap);
  const Eigen::Index n = a.rows();
  if (n > (Eigen::Index{1} << opt.max_log2_dimension)) {
    int log2n = 0;
    while ((Eigen::Index{1} << log2n) < n) ++log2n;
    throw SizeCapExceeded("dense eigensolve", log2n, opt.max_log2_dimension);
  }

  EigResult result;
  std::vector<std::vector<Eigen::Index>> blocks;
  if (opt.permute) {
    blocks = detail::irreducible_blocks(a);
  } else if (n > 0) {
    blocks.emplace_back(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) blocks.back()[static_cast<std::size_t>(i)] = i;
  }
  result.values.reserve(static_cast<std::size_t>(n));
  for (std::size_t id = 0; id < blocks.size(); ++id) {
    const auto& idx = blocks[id];
    const auto m = static_cast<Eigen::Index>(idx.size());
    Mat b(m, m);
    for (Eigen::Index c = 0; c < m; ++c)
      for (Eigen::Index r = 0; r < m; ++r) b(r, c) = a(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
    detail::block_eigenvalues<Scalar>(std::move(b), opt, id, result.values);
    result.diagnostics.largest_block = std::max(result.diagnostics.largest_block, idx.size());
  }
  result.diagnostics.blocks = blocks.size();

  double radius = 0.0;
  for (const auto& z : result.values) radius = std::max(radius, std::abs(z));
  result.spectrum = SpectrumMultiset::from_values(result.values, opt.cluster_rel * std::max(1.0, radius),
                                                  static_cast<std::size_t>(n));
  if (n == 0) return result;

  Eigen::MatrixXcd ad(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) ad(r, c) = to_complex(a(r, c));
  const double norm = detail::norm1(ad);
  result.diagnostics.matrix_norm = norm;

  std::complex<double> sum = 0.0;
  for (const auto& z : result.values) sum += z;
  result.diagnostics.trace_error = std::abs(sum - ad.trace());
  if (result.diagnostics.trace_error > opt.trace_tol * static_cast<double>(n) * std::max(1.0, norm))
    throw NoConvergence("eigensolver: eigenvalue sum misses the trace by " +
                            std::to_string(result.diagnostics.trace_error),
                        0);

  std::vector<std::complex<double>> sorted = result.values;
  std::sort(sorted.begin(), sorted.end(), [](auto x, auto y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  const std::size_t samples = std::min<std::size_t>(static_cast<std::size_t>(std::max(opt.residual_samples, 0)), sorted.size());
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t pick = samples == 1 ? 0 : s * (sorted.size() - 1) / (samples - 1);
    const double res = detail::eigenpair_residual(ad, sorted[pick], norm);
    result.diagnostics.max_residual = std::max(result.diagnostics.max_residual, res);
  }
  result.diagnostics.sampled = samples;
  if (result.diagnostics.max_residual > opt.residual_tol * std::max(norm, 1e-300))
    throw NoConvergence("eigensolver: sampled residual " + std::to_string(result.diagnostics.max_residual) +
                            " exceeds contract",
                        0);
  return result;
}

template <class Derived>
SpectrumMultiset eig_dense(const Eigen::MatrixBase<Derived>& a, const EigOptions& opt = {}) {
  return eig_dense_detailed(a, opt).spectrum;
}

}  // namespace ipszeta

#endif  // IPSZETA_EIGENSOLVER_HPP
