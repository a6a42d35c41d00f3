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

// Test-only exact rational on 64-bit terms, for oracle recomputation of the
// expansion metrics. Keep test data below 2^53 so the double conversion of a
// reduced fraction is the correctly rounded quotient.

#ifndef MEMADVISOR_TESTS_EXACT_RATIO_HPP
#define MEMADVISOR_TESTS_EXACT_RATIO_HPP

#include <cstdint>
#include <numeric>

namespace exact_ratio {

struct Frac {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};

inline Frac make(std::uint64_t num, std::uint64_t den) {
  std::uint64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  return Frac{num / g, den / g};
}

inline bool equal(const Frac& a, const Frac& b) {
  return static_cast<unsigned __int128>(a.num) * b.den ==
         static_cast<unsigned __int128>(b.num) * a.den;
}

inline double to_double(const Frac& f) {
  return static_cast<double>(f.num) / static_cast<double>(f.den);
}

}  // namespace exact_ratio

#endif  // MEMADVISOR_TESTS_EXACT_RATIO_HPP
