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

#ifndef IPSZETA_ERRORS_HPP
#define IPSZETA_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ipszeta {

/// Base class of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A local operator has a nonzero weight in a slot where the right site changes.
class SparsityViolation : public Error {
 public:
  SparsityViolation(int row, int col)
      : Error("local operator entry (" + std::to_string(row) + "," + std::to_string(col) +
              ") must be zero: the right site of a pair cannot change"),
        row_(row),
        col_(col) {}

  int row() const noexcept { return row_; }
  int col() const noexcept { return col_; }

 private:
  int row_;
  int col_;
};

/// Requested size exceeds the configured dense / eigen / matrix-free cap.
class SizeCapExceeded : public Error {
 public:
  SizeCapExceeded(const std::string& what, int requested, int cap)
      : Error(what + ": n=" + std::to_string(requested) + " exceeds cap " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}

  int requested() const noexcept { return requested_; }
  int cap() const noexcept { return cap_; }

 private:
  int requested_;
  int cap_;
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t expected, std::size_t actual)
      : Error("state length " + std::to_string(actual) + " does not match 2^n = " +
              std::to_string(expected)) {}
};

class DenseUnavailable : public Error {
 public:
  DenseUnavailable() : Error("global operator was built matrix-free; no dense form available") {}
};

/// The eigensolver ran out of iterations (or failed its residual contract).
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& msg, std::size_t block) : Error(msg), block_(block) {}
  std::size_t block() const noexcept { return block_; }

 private:
  std::size_t block_;
};

/// 1 - lambda*u vanished in a determinant or logarithm.
class SingularFactor : public Error {
 public:
  using Error::Error;
};

class ParamOutOfRange : public Error {
 public:
  using Error::Error;
};

}  // namespace ipszeta

#endif  // IPSZETA_ERRORS_HPP
