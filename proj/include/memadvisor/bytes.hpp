/*
 * Copyright 2026 The memadvisor Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MEMADVISOR_BYTES_HPP
#define MEMADVISOR_BYTES_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>

namespace memadvisor {

/// All persisted and computed sizes are whole bytes; MiB only at the CLI rim.
using Bytes = std::uint64_t;

using u128 = unsigned __int128;

inline constexpr Bytes kMiB = 1024ULL * 1024ULL;

constexpr Bytes mib(std::uint64_t n) { return n * kMiB; }

/// Bytes -> whole MiB, rounded up (capacity advice must never round down).
constexpr std::uint64_t to_mib_ceil(Bytes b) { return (b + kMiB - 1) / kMiB; }

constexpr double to_mib(Bytes b) {
  return static_cast<double>(b) / static_cast<double>(kMiB);
}

/// Ceiling division on 128-bit intermediates; result must fit in 64 bits.
inline Bytes ceil_div_u128(u128 num, u128 den) {
  if (den == 0) throw std::invalid_argument("ceil_div_u128: zero divisor");
  u128 q = (num + den - 1) / den;
  if (q > std::numeric_limits<Bytes>::max())
    throw std::overflow_error("byte count exceeds 64-bit range");
  return static_cast<Bytes>(q);
}

constexpr Bytes ceil_div(Bytes num, Bytes den) {
  return num == 0 ? 0 : (num - 1) / den + 1;
}

inline Bytes checked_add(Bytes a, Bytes b) {
  if (a > std::numeric_limits<Bytes>::max() - b)
    throw std::overflow_error("byte count addition overflow");
  return a + b;
}

inline Bytes checked_mul(Bytes a, Bytes b) {
  if (b != 0 && a > std::numeric_limits<Bytes>::max() / b)
    throw std::overflow_error("byte count multiplication overflow");
  return a * b;
}

}  // namespace memadvisor

#endif  // MEMADVISOR_BYTES_HPP
