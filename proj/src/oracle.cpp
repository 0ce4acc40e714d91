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

#include "egz/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "egz/errors.hpp"

namespace egz {

std::optional<ConstructionResult> dp_subset_solve(std::int64_t p, std::span<const std::int64_t> values,
                                                  Residue target) {
  if (p < 2) throw std::invalid_argument("dp_subset_solve: modulus must be >= 2");
  if (target < 0 || target >= p) throw std::invalid_argument("dp_subset_solve: target out of range");
  const auto n = static_cast<std::size_t>(p);
  std::vector<std::int64_t> parent(n, -1);
  std::vector<std::uint8_t> reached(n, 0);
  std::vector<Residue> frontier{0};
  reached[0] = 1;
  for (std::size_t k = 0; k < values.size() && frontier.size() < n; ++k) {
    const Residue v = mod_norm(values[k], p);
    const std::size_t before = frontier.size();
    for (std::size_t r = 0; r < before; ++r) {
      const Residue nx = (frontier[r] + v) % p;
      if (reached[static_cast<std::size_t>(nx)]) continue;
      reached[static_cast<std::size_t>(nx)] = 1;
      parent[static_cast<std::size_t>(nx)] = static_cast<std::int64_t>(k);
      frontier.push_back(nx);
    }
  }
  if (!reached[static_cast<std::size_t>(target)]) return std::nullopt;

  ConstructionResult res;
  res.target = target;
  res.algorithm = Algorithm::Dp;
  Residue cur = target;
  while (cur != 0) {
    const std::int64_t k = parent[static_cast<std::size_t>(cur)];
    res.indices.push_back(static_cast<std::size_t>(k));
    cur = mod_norm(cur - values[static_cast<std::size_t>(k)], p);
  }
  std::sort(res.indices.begin(), res.indices.end());
  std::int64_t sum = 0;
  for (std::size_t k : res.indices) sum = mod_norm(sum + values[k], p);
  res.value_sum = sum;
  return res;
}

std::vector<std::uint8_t> dp_reachable(std::int64_t p, std::span<const std::int64_t> values) {
  std::vector<std::uint8_t> reach(static_cast<std::size_t>(p), 0), next;
  reach[0] = 1;
  for (std::int64_t raw : values) {
    const Residue v = mod_norm(raw, p);
    next = reach;
    for (Residue r = 0; r < p; ++r) {
      if (reach[static_cast<std::size_t>(r)]) next[static_cast<std::size_t>((r + v) % p)] = 1;
    }
    reach.swap(next);
  }
  return reach;
}

std::vector<std::uint8_t> brute_sumset(std::span<const std::pair<Residue, std::int64_t>> aps,
                                       std::int64_t n) {
  if (n < 1) throw std::invalid_argument("brute_sumset: modulus must be >= 1");
  std::int64_t total = 0;
  for (const auto& [a, k] : aps) {
    if (k < 0) throw std::invalid_argument("brute_sumset: negative length");
    total += k;
  }
  if (total > 10000) throw std::invalid_argument("brute_sumset: total length above 10^4");
  std::vector<std::uint8_t> cur(static_cast<std::size_t>(n), 0), next;
  cur[0] = 1;
  for (const auto& [a, k] : aps) {
    next.assign(static_cast<std::size_t>(n), 0);
    const Residue step = mod_norm(a, n);
    for (Residue x = 0; x < n; ++x) {
      if (!cur[static_cast<std::size_t>(x)]) continue;
      Residue y = x;
      for (std::int64_t e = 0; e <= k; ++e) {
        next[static_cast<std::size_t>(y)] = 1;
        y = (y + step) % n;
      }
    }
    cur.swap(next);
  }
  return cur;
}

std::vector<std::size_t> egz_brute(std::int64_t n, std::span<const std::int64_t> values) {
  if (n < 1 || n > 12) throw std::invalid_argument("egz_brute: n must be in [1, 12]");
  if (static_cast<std::int64_t>(values.size()) != 2 * n - 1) {
    throw std::invalid_argument("egz_brute: expected 2n - 1 values");
  }
  const auto m = values.size();
  const auto cnt = static_cast<std::size_t>(n) + 1;
  const auto mod = static_cast<std::size_t>(n);
  // take[k][c][s]: reachable using the first k values, c of them, sum s.
  std::vector<std::uint8_t> reach((m + 1) * cnt * mod, 0);
  auto at = [&](std::size_t k, std::size_t c, std::size_t s) -> std::uint8_t& {
    return reach[(k * cnt + c) * mod + s];
  };
  at(0, 0, 0) = 1;
  for (std::size_t k = 0; k < m; ++k) {
    const auto v = static_cast<std::size_t>(mod_norm(values[k], n));
    for (std::size_t c = 0; c < cnt; ++c) {
      for (std::size_t s = 0; s < mod; ++s) {
        if (!at(k, c, s)) continue;
        at(k + 1, c, s) = 1;
        if (c + 1 < cnt) at(k + 1, c + 1, (s + v) % mod) = 1;
      }
    }
  }
  EGZ_CHECK(at(m, mod, 0), "no zero-sum n-subset; contradicts Erdos-Ginzburg-Ziv");
  std::vector<std::size_t> out;
  std::size_t c = mod, s = 0;
  for (std::size_t k = m; k-- > 0;) {
    if (at(k, c, s)) continue;
    const auto v = static_cast<std::size_t>(mod_norm(values[k], n));
    out.push_back(k);
    --c;
    s = (s + mod - v) % mod;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace egz
