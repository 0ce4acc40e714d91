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

// Erdos-Ginzburg-Ziv: among any 2n - 1 integers, n of them sum to 0 mod n.

#include <cstdint>
#include <span>
#include <vector>

#include "egz/solver.hpp"

namespace egz {

enum class LemmaMethod { Auto, Dp, Nlogn, Practical, Theoretical };

/// Parses "auto", "dp", "nlogn", "practical" or "theoretical".
LemmaMethod parse_lemma_method(const std::string& name);

struct EgzOptions {
  LemmaMethod method = LemmaMethod::Auto;
  /// Lets Auto pick the theoretical pipeline for p >= 2^20.
  bool allow_theoretical = false;
  SolveOptions solve;
};

/// Auto resolves per modulus: dp below 64, theoretical at or above 2^20 when
/// allowed, practical otherwise.
LemmaMethod resolve_method(std::int64_t p, const EgzOptions& options);

/// The prime-case lemma through the chosen method (validated instance, target in [0, p)).
ConstructionResult solve_lemma2(std::int64_t p, std::span<const std::int64_t> values, Residue target,
                                const EgzOptions& options = {});

/// p prime, 2p - 1 integers (reduced mod p). Returns p increasing positions.
std::vector<std::size_t> solve_prime(std::int64_t p, std::span<const std::int64_t> values,
                                     const EgzOptions& options = {});

/// n >= 1, 2n - 1 integers. Returns n increasing positions whose values sum
/// to 0 mod n.
std::vector<std::size_t> solve_general(std::int64_t n, std::span<const std::int64_t> values,
                                       const EgzOptions& options = {});

}  // namespace egz
