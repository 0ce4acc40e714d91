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

#include "egz/egz.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "egz/errors.hpp"
#include "egz/oracle.hpp"

namespace egz {

namespace {

void check_count(std::int64_t n, std::span<const std::int64_t> values) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (static_cast<std::int64_t>(values.size()) != 2 * n - 1) {
    throw std::invalid_argument("expected " + std::to_string(2 * n - 1) + " values, got " +
                                std::to_string(values.size()));
  }
}

}  // namespace

LemmaMethod parse_lemma_method(const std::string& name) {
  if (name == "auto") return LemmaMethod::Auto;
  if (name == "dp") return LemmaMethod::Dp;
  if (name == "nlogn") return LemmaMethod::Nlogn;
  if (name == "practical") return LemmaMethod::Practical;
  if (name == "theoretical") return LemmaMethod::Theoretical;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

LemmaMethod resolve_method(std::int64_t p, const EgzOptions& options) {
  if (options.method != LemmaMethod::Auto) return options.method;
  if (p < 64) return LemmaMethod::Dp;
  if (options.allow_theoretical && p >= (std::int64_t{1} << 20)) return LemmaMethod::Theoretical;
  return LemmaMethod::Practical;
}

ConstructionResult solve_lemma2(std::int64_t p, std::span<const std::int64_t> values, Residue target,
                                const EgzOptions& options) {
  validate_lemma_instance(p, values);
  if (target < 0 || target >= p) {
    throw std::invalid_argument("target " + std::to_string(target) + " outside [0, " +
                                std::to_string(p - 1) + "]");
  }
  switch (resolve_method(p, options)) {
    case LemmaMethod::Dp: {
      auto res = dp_subset_solve(p, values, target);
      EGZ_CHECK(res.has_value(), "p - 1 nonzero residues miss target " + std::to_string(target));
      return *res;
    }
    case LemmaMethod::Nlogn: return solve_lemma2_nlogn(p, values, target);
    case LemmaMethod::Theoretical: return solve_lemma2_theoretical(p, values, target, options.solve);
    case LemmaMethod::Practical:
    case LemmaMethod::Auto: break;
  }
  return solve_lemma2_practical(p, values, target, options.solve);
}

std::vector<std::size_t> solve_prime(std::int64_t p, std::span<const std::int64_t> values,
                                     const EgzOptions& options) {
  check_count(p, values);
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  std::vector<std::int64_t> reduced(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) reduced[k] = mod_norm(values[k], p);
  const std::vector<std::size_t> order = counting_sort_permutation(reduced, p);
  auto a = [&](std::int64_t k) { return reduced[order[static_cast<std::size_t>(k)]]; };

  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(p));
  for (std::int64_t i = 0; i + p < 2 * p - 1; ++i) {
    if (a(i) == a(i + p)) {
      for (std::int64_t k = i; k < i + p; ++k) out.push_back(order[static_cast<std::size_t>(k)]);
      std::sort(out.begin(), out.end());
      return out;
    }
  }

  std::vector<std::int64_t> b(static_cast<std::size_t>(p - 1));
  std::int64_t base = 0;
  for (std::int64_t i = 0; i < p - 1; ++i) {
    b[static_cast<std::size_t>(i)] = a(i + p) - a(i);
    base = (base + a(i)) % p;
  }
  base = (base + a(p - 1)) % p;
  const ConstructionResult lemma = solve_lemma2(p, b, mod_norm(-base, p), options);

  std::vector<std::uint8_t> upper(static_cast<std::size_t>(p - 1), 0);
  for (std::size_t i : lemma.indices) upper[i] = 1;
  for (std::int64_t i = 0; i < p - 1; ++i) {
    out.push_back(order[static_cast<std::size_t>(upper[static_cast<std::size_t>(i)] ? i + p : i)]);
  }
  out.push_back(order[static_cast<std::size_t>(p - 1)]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> solve_general(std::int64_t n, std::span<const std::int64_t> values,
                                       const EgzOptions& options) {
  check_count(n, values);
  if (n == 1) return {0};
  std::vector<std::int64_t> reduced(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) reduced[k] = mod_norm(values[k], n);
  if (is_prime(n)) return solve_prime(n, reduced, options);

  const std::int64_t p = smallest_prime_factor(n);
  const std::int64_t a = n / p;
  std::vector<std::size_t> pool;
  std::size_t next = 0;
  auto refill = [&] {
    while (static_cast<std::int64_t>(pool.size()) < 2 * p - 1 && next < reduced.size()) {
      pool.push_back(next++);
    }
  };

  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::int64_t> quotients;
  std::vector<std::int64_t> local(static_cast<std::size_t>(2 * p - 1));
  for (std::int64_t round = 0; round < 2 * a - 1; ++round) {
    refill();
    EGZ_CHECK(static_cast<std::int64_t>(pool.size()) == 2 * p - 1,
              "pool holds " + std::to_string(pool.size()) + " values, expected 2p - 1");
    for (std::size_t k = 0; k < pool.size(); ++k) local[k] = reduced[pool[k]];
    const std::vector<std::size_t> pick = solve_prime(p, local, options);
    std::vector<std::uint8_t> taken(pool.size(), 0);
    std::vector<std::size_t> group;
    std::int64_t x = 0;
    for (std::size_t k : pick) {
      taken[k] = 1;
      group.push_back(pool[k]);
      x += reduced[pool[k]];
    }
    EGZ_CHECK(x % p == 0, "prime-case subset sum not divisible by p");
    groups.push_back(std::move(group));
    quotients.push_back(x / p);
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < pool.size(); ++k) {
      if (!taken[k]) rest.push_back(pool[k]);
    }
    pool.swap(rest);
  }
  EGZ_CHECK(next == reduced.size(), "composite reduction left values unread");

  const std::vector<std::size_t> chosen = solve_general(a, quotients, options);
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::size_t g : chosen) out.insert(out.end(), groups[g].begin(), groups[g].end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace egz
