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

#ifndef IPSZETA_SCALAR_HPP
#define IPSZETA_SCALAR_HPP

#include <charconv>
#include <cmath>
#include <complex>
#include <string>
#include <type_traits>

namespace ipszeta {

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};
template <class T>
inline constexpr bool is_complex_v = is_complex<T>::value;

/// Round any supported scalar (double, complex<double>, multiprecision real)
/// to complex<double>.
template <class T>
std::complex<double> to_complex(const T& x) {
  if constexpr (is_complex_v<T>) {
    return {static_cast<double>(x.real()), static_cast<double>(x.imag())};
  } else {
    return {static_cast<double>(x), 0.0};
  }
}

template <class T>
double magnitude(const T& x) {
  using std::abs;
  return static_cast<double>(abs(x));
}

template <class T>
bool is_zero(const T& x) {
  return x == T(0);
}

/// Shortest decimal text that reads back to the same double.
inline std::string shortest(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace ipszeta

#endif  // IPSZETA_SCALAR_HPP
