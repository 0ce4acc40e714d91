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

#pragma once

// Number-theoretic primitives shared by the solver modules.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "egz/huge_pages.hpp"

namespace egz {

/// An element of Z_n stored in [0, n). The modulus travels with the context.
using Residue = std::int64_t;

/// Largest modulus the solver accepts. Products of two residues then fit in
/// a signed 64-bit integer, which keeps the marking and packing loops free
/// of 128-bit arithmetic.
inline constexpr std::int64_t kMaxModulus = (std::int64_t{1} << 31) - 1;

inline Residue mod_norm(std::int64_t x, std::int64_t n) {
  const std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

inline Residue mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  const __int128 r = static_cast<__int128>(a) * b % n;
  return static_cast<Residue>(r < 0 ? r + n : r);
}

/// inv[i] is the multiplicative inverse of i modulo a prime n; inv[0] = 0 is
/// an unused sentinel.
struct InverseTable {
  std::int64_t n = 0;
  HugeVector<std::int32_t> inv;

  std::int64_t operator[](std::int64_t i) const { return inv[static_cast<std::size_t>(i)]; }
};

/// All inverses modulo a prime in O(n) via inv[i] = -(n / i) * inv[n % i].
/// Throws std::invalid_argument for n < 2, and when the recurrence exposes a
/// divisor of n (so composite moduli are usually caught for free).
InverseTable batch_inverses(std::int64_t n);

struct ExtGcd {
  std::int64_t g;
  std::int64_t x;
  std::int64_t y;
};

/// a*x + b*y = g = gcd(a, b) for nonnegative a, b, not both zero.
ExtGcd ext_gcd(std::int64_t a, std::int64_t b);

std::int64_t gcd(std::int64_t a, std::int64_t b);

/// Trial division up to sqrt(n). Throws for n < 2.
std::int64_t smallest_prime_factor(std::int64_t n);

bool is_prime(std::int64_t n);

/// Least prime >= n (n <= 2 gives 2).
std::int64_t next_prime(std::int64_t n);

/// Stable permutation sorting values in [0, bound) non-decreasingly.
/// Runs in O(values.size() + bound). Throws on an out-of-range value.
std::vector<std::size_t> counting_sort_permutation(std::span<const std::int64_t> values,
                                                   std::int64_t bound);

/// floor(cbrt(x)).
std::uint64_t icbrt(unsigned __int128 x);

/// floor(k^(num/3)) for num in {1, 4, 5}: the growth-step thresholds.
std::int64_t pow_third(std::int64_t k, int num);

int floor_log2(std::uint64_t x);
int ceil_log2(std::uint64_t x);

}  // namespace egz
