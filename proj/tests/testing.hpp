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

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "egz/modmath.hpp"

namespace egz::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool coin() { return (rng_() & 1) != 0; }

  /// count nonzero residues mod p, uniform.
  std::vector<std::int64_t> nonzero(std::int64_t p, std::int64_t count) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(count));
    for (auto& x : v) x = range(1, p - 1);
    return v;
  }

  /// Nonzero residues drawn from a pool of `distinct` values.
  std::vector<std::int64_t> few_distinct(std::int64_t p, std::int64_t count, std::int64_t distinct) {
    std::vector<std::int64_t> pool = nonzero(p, distinct);
    std::vector<std::int64_t> v(static_cast<std::size_t>(count));
    for (auto& x : v) x = pool[static_cast<std::size_t>(range(0, distinct - 1))];
    return v;
  }

  /// Alternates the two shapes above so small cases also see heavy repetition.
  std::vector<std::int64_t> lemma_values(std::int64_t p) {
    if (p > 3 && coin()) return few_distinct(p, p - 1, range(1, 3));
    return nonzero(p, p - 1);
  }

  std::vector<std::int64_t> integers(std::int64_t count, std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(count));
    for (auto& x : v) x = range(lo, hi);
    return v;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<std::int64_t> primes_up_to(std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 2; q <= hi; ++q) {
    bool prime = true;
    for (std::int64_t d = 2; d * d <= q; ++d) prime = prime && q % d != 0;
    if (prime) out.push_back(q);
  }
  return out;
}

/// A few-distinct Lemma instance that survives enrichment and trimming to
/// phase k without a special case. Family f uses the prime m_f > k: alpha
/// copies of m_f and beta copies of r*m_f, where r*m_f stays just under p/k.
/// Families overlap nowhere below phase k, and each family's total span
/// alpha + r*beta stays below p - 1.
inline std::vector<std::int64_t> family_instance(std::int64_t p, std::int64_t k, int families) {
  std::vector<std::int64_t> ms;
  for (std::int64_t m = k + 1; static_cast<int>(ms.size()) < families; ++m) {
    if (is_prime(m)) ms.push_back(m);
  }
  std::vector<std::int64_t> values;
  values.reserve(static_cast<std::size_t>(p - 1));
  const std::int64_t per = (p - 1) / families;
  for (int f = 0; f < families; ++f) {
    const std::int64_t m = ms[static_cast<std::size_t>(f)];
    const std::int64_t r = (p / k - 1) / m;
    if (r < 2) throw std::invalid_argument("family_instance: p too small for k");
    const std::int64_t quota = per + (f == 0 ? (p - 1) - per * families : 0);
    const std::int64_t beta = std::min(quota - r, (p - 2 - quota) / (r - 1));
    const std::int64_t alpha = quota - beta;
    values.insert(values.end(), static_cast<std::size_t>(alpha), m);
    values.insert(values.end(), static_cast<std::size_t>(beta), r * m);
  }
  return values;
}

}  // namespace egz::testing
