// Copyright 2026 The egz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "egz/modmath.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace egz {

InverseTable batch_inverses(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("batch_inverses: modulus must be >= 2");
  InverseTable table;
  table.n = n;
  table.inv.assign(static_cast<std::size_t>(n), 0);
  if (n == 2) {
    table.inv[1] = 1;
    return table;
  }
  table.inv[1] = 1;
  for (std::int64_t i = 2; i < n; ++i) {
    const std::int64_t r = n % i;
    if (r == 0) {
      throw std::invalid_argument("batch_inverses: modulus " + std::to_string(n) +
                                  " is divisible by " + std::to_string(i));
    }
    // n = i*(n/i) + r, so i * (-(n/i) * inv[r]) == 1 (mod n).
    const std::int64_t v = n - (n / i) * table.inv[static_cast<std::size_t>(r)] % n;
    table.inv[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(v == n ? 0 : v);
  }
  return table;
}

ExtGcd ext_gcd(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0) throw std::invalid_argument("ext_gcd: arguments must be nonnegative");
  if (a == 0 && b == 0) throw std::invalid_argument("ext_gcd: gcd(0, 0) is undefined");
  std::int64_t old_r = a, r = b;
  std::int64_t old_x = 1, x = 0;
  std::int64_t old_y = 0, y = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_x - q * x;
    old_x = x;
    x = t;
    t = old_y - q * y;
    old_y = y;
    y = t;
  }
  return {old_r, old_x, old_y};
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t smallest_prime_factor(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("smallest_prime_factor: n must be >= 2");
  if (n % 2 == 0) return 2;
  for (std::int64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return d;
  }
  return n;
}

bool is_prime(std::int64_t n) { return n >= 2 && smallest_prime_factor(n) == n; }

std::int64_t next_prime(std::int64_t n) {
  if (n <= 2) return 2;
  while (!is_prime(n)) ++n;
  return n;
}

std::vector<std::size_t> counting_sort_permutation(std::span<const std::int64_t> values,
                                                   std::int64_t bound) {
  if (bound < 0) throw std::invalid_argument("counting_sort_permutation: negative bound");
  std::vector<std::size_t> start(static_cast<std::size_t>(bound) + 1, 0);
  for (std::size_t k = 0; k < values.size(); ++k) {
    const std::int64_t v = values[k];
    if (v < 0 || v >= bound) {
      throw std::invalid_argument("counting_sort_permutation: value " + std::to_string(v) +
                                  " at position " + std::to_string(k) + " outside [0, " +
                                  std::to_string(bound) + ")");
    }
    ++start[static_cast<std::size_t>(v) + 1];
  }
  for (std::size_t v = 1; v < start.size(); ++v) start[v] += start[v - 1];
  std::vector<std::size_t> perm(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    perm[start[static_cast<std::size_t>(values[k])]++] = k;
  }
  return perm;
}

std::uint64_t icbrt(unsigned __int128 x) {
  if (x == 0) return 0;
  // Newton iteration from above; 2^43 exceeds cbrt(2^128).
  unsigned __int128 y = static_cast<unsigned __int128>(1) << 43;
  while (true) {
    const unsigned __int128 next = (2 * y + x / (y * y)) / 3;
    if (next >= y) break;
    y = next;
  }
  constexpr unsigned __int128 kTop = 6981463658331;  // floor(cbrt(2^128 - 1))
  while (y > kTop || y * y * y > x) --y;
  while (y < kTop && (y + 1) * (y + 1) * (y + 1) <= x) ++y;
  return static_cast<std::uint64_t>(y);
}

std::int64_t pow_third(std::int64_t k, int num) {
  if (k < 0 || num < 0 || num > 5) throw std::invalid_argument("pow_third: unsupported arguments");
  unsigned __int128 p = 1;
  const unsigned __int128 limit = ~static_cast<unsigned __int128>(0);
  for (int e = 0; e < num; ++e) {
    if (k != 0 && p > limit / static_cast<unsigned __int128>(k)) {
      throw std::overflow_error("pow_third: k^num exceeds 128 bits");
    }
    p *= static_cast<unsigned __int128>(k);
  }
  return static_cast<std::int64_t>(icbrt(p));
}

int floor_log2(std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("floor_log2: zero");
  return 63 - std::countl_zero(x);
}

int ceil_log2(std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("ceil_log2: zero");
  return x == 1 ? 0 : floor_log2(x - 1) + 1;
}

}  // namespace egz
