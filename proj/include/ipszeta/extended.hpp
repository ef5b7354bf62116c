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

#ifndef IPSZETA_EXTENDED_HPP
#define IPSZETA_EXTENDED_HPP

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace ipszeta {

/// 128-decimal-digit MPFR real.
///
/// Spectra satisfying the t condition are highly degenerate and defective;
/// a rounding of size e moves an eigenvalue with a Jordan chain of length m
/// by about e^(1/m). At N = 8 the chains are long enough that double
/// precision misses by up to 0.5, while 128 digits keeps the error below 1e-8.
/// Build the operator in this type from exact parameters, not by converting
/// rounded double weights.
using extended_real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<128, boost::multiprecision::allocate_stack>,
    boost::multiprecision::et_off>;

#if defined(__SIZEOF_FLOAT128__)
/// IEEE binary128 (113-bit significand), done in software by the compiler
/// runtime. Enough to absorb the cancellation in long matrix-free power
/// sequences of non-normal operators, and much cheaper than MPFR.
using quad_real = __float128;
#define IPSZETA_HAS_QUAD_REAL 1
#endif

}  // namespace ipszeta

#endif  // IPSZETA_EXTENDED_HPP
