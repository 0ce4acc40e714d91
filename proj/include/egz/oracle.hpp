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

// Brute-force references: slow, simple, and independent of the transform
// and packing machinery.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "egz/solver.hpp"

namespace egz {

/// Reachability DP over Z_p with first-reach parent links. O(|values| * p).
/// Returns nullopt when target is not a subset sum.
std::optional<ConstructionResult> dp_subset_solve(std::int64_t p, std::span<const std::int64_t> values,
                                                  Residue target);

/// All residues reachable as subset sums (as a membership vector).
std::vector<std::uint8_t> dp_reachable(std::int64_t p, std::span<const std::int64_t> values);

/// Exact sumset of AP(a, k) = {0, a, ..., k*a} over Z_n by iterated
/// convolution. Throws std::invalid_argument when the total length
/// exceeds 10^4.
std::vector<std::uint8_t> brute_sumset(std::span<const std::pair<Residue, std::int64_t>> aps,
                                       std::int64_t n);

/// An n-subset of values summing to 0 mod n, by DP over (count, sum).
/// Requires 1 <= n <= 12 and 2n - 1 values.
std::vector<std::size_t> egz_brute(std::int64_t n, std::span<const std::int64_t> values);

}  // namespace egz
