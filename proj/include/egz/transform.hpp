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

// Transformation phase: Operations 1 and 2 and the three marking processes
// (trim, enrichment, growth) that rewrite sum_i AP(i, A[i]) into an
// equivalent sumset with fewer, longer progressions.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "egz/modmath.hpp"
#include "egz/sumset_state.hpp"

namespace egz {

/// Counts checks and violations of the marking claims, numbered 2..9:
///   2  colliding multipliers are coprime
///   3  an operation never lowers W (Operation 2 strictly raises it)
///   4  a mark is only placed on an empty cell
///   5  at most n - 1 cells are marked
///   6  trimming marks in nondecreasing multiplier order, so a collision
///      always meets a smaller multiplier
///   7  Operation 1 lengthens the candidate and shortens the marked one
///   8  after unmarking, A[j] = C[j] for the shortened difference j
///   9  a finished difference never becomes a candidate again and keeps A = C
/// Attach one through TransformOptions to instrument a run.
class ClaimMonitor {
 public:
  static constexpr int kClaims = 11;

  template <class Describe>
  void check(int claim, bool ok, Describe&& describe) {
    ++checks_[static_cast<std::size_t>(claim)];
    if (ok) return;
    ++violations_[static_cast<std::size_t>(claim)];
    if (reports_.size() < 16) reports_.push_back("claim " + std::to_string(claim) + ": " + describe());
  }

  std::int64_t checks(int claim) const { return checks_[static_cast<std::size_t>(claim)]; }
  std::int64_t violations(int claim) const { return violations_[static_cast<std::size_t>(claim)]; }
  std::int64_t total_violations() const;
  const std::vector<std::string>& reports() const { return reports_; }

 private:
  std::array<std::int64_t, kClaims> checks_{};
  std::array<std::int64_t, kClaims> violations_{};
  std::vector<std::string> reports_;
};

struct TransformOptions {
  ClaimMonitor* monitor = nullptr;
  /// Re-verify cached W/s and the mark-table invariants after every phase
  /// (trim) or collision (enrichment). O(n) per check; tests only.
  bool verify_each_step = false;
  /// Lower bound on k accepted by growth_step.
  std::int64_t growth_min_k = 1000;
};

enum class Outcome { PhaseComplete, TargetReached, Grown, SpecialCaseI, SpecialCaseII };

const char* to_string(Outcome o);

struct TrimReport {
  std::int64_t phase_reached = 0;
  Outcome outcome = Outcome::PhaseComplete;
  Residue special_index = -1;
  std::int64_t cells_marked = 0;
  std::int64_t collisions = 0;
};

struct EnrichReport {
  std::int64_t target_multiple = 0;
  Outcome outcome = Outcome::TargetReached;
  Residue special_index = -1;
  std::int64_t final_weight = 0;
  std::int64_t cells_marked = 0;
  std::int64_t collisions = 0;
};

struct GrowthReport {
  Outcome outcome = Outcome::Grown;
  std::int64_t k_in = 0;
  std::int64_t k_out = 0;
  bool long_ap_shortcut = false;
  std::int64_t collision_target = 0;
  std::int64_t collisions = 0;
  std::int64_t min_new_length = 0;
  std::int64_t markable_cells = 0;
  std::int64_t cells_marked = 0;
  std::int64_t diversity_after = 0;
  Residue special_index = -1;
  /// Filled when an inner step ends in Special Case II.
  std::optional<MarkTable> special_marks;
  EnrichReport enrich;
  TrimReport trim;
};

/// Operation 1 at a collision of (c, i) with the mark (d, j), c > d:
/// y = floor(A[j]/d) applications move y*d copies of j into y*c copies of i.
/// Marks (e, j) with e > new A[j] are removed and C[j] = A[j].
void apply_op1(ResidueState& state, MarkTable& marks, OpLog& log, Residue i, Residue j,
               std::int64_t c, std::int64_t d);

struct CoinSplit {
  std::int64_t first;   // copies of the w-coin, <= t
  std::int64_t second;  // copies of the v-coin, <= s
};

/// Solves first*w + second*v = target with 0 <= first <= t, 0 <= second <= s
/// for coprime w, v, t >= v, s >= w and target inside the window
/// [F, t*w + s*v - F], F = (w-1)(v-1). O(log min(w, v)).
CoinSplit two_coin_solve(std::int64_t w, std::int64_t v, std::int64_t t, std::int64_t s,
                         std::int64_t target);

/// Operation 2 at a collision of (c, i) with the mark (d, j): replaces
/// AP(i, A[i]) + AP(j, A[j]) by the shifted AP(z, u), z = i/d, and returns z.
/// With cleanup = false the mark table is left stale (the enrichment
/// early-exit path).
Residue apply_op2(ResidueState& state, MarkTable& marks, OpLog& log, const InverseTable& inv,
                  Residue i, Residue j, std::int64_t c, std::int64_t d, bool cleanup = true);

struct NoncoprimeResult {
  Residue z;
  std::int64_t length;
};

/// Collision a*i = b*j with A[i] >= 2a, A[j] >= 2b: Operation 2 on the
/// reduced coprime pair (a/g, b/g). The new AP(z, length) is credited to the
/// accumulator `next` instead of the state; length >= 2ab/gcd(a, b).
NoncoprimeResult resolve_collision_noncoprime(ResidueState& state, std::vector<std::int64_t>& next,
                                              OpLog& log, const InverseTable& inv, Residue i,
                                              Residue j, std::int64_t a, std::int64_t b);

/// Phase-ordered marking with Operation 1 up to phase k_target. Requires an
/// empty mark table.
TrimReport trim_step(ResidueState& state, MarkTable& marks, OpLog& log, std::int64_t k_target,
                     const TransformOptions& options = {});

/// Marking with Operation 2 until W >= r_target * n. Requires W >= n - 1.
EnrichReport enrichment_step(ResidueState& state, MarkTable& marks, OpLog& log,
                             const InverseTable& inv, std::int64_t r_target,
                             const TransformOptions& options = {});

/// One growth step from k: enrichment to 10n, trim to phase k, then either
/// keep the long progressions or collide mid-range multiples into a fresh
/// generation. On Outcome::Grown, at most n/k_out differences remain and
/// their total length is at least n.
GrowthReport growth_step(ResidueState& state, OpLog& log, const InverseTable& inv, std::int64_t k,
                         const TransformOptions& options = {});

/// The mid-range half of a growth step, for a trimmed state without enough
/// long progressions: caps lengths at k^(4/3), marks multiples in
/// [k/2, A[i]/2] and resolves collisions until the new generation totals n.
/// Fills the collision fields of `report` and sets k_out = k^(4/3).
void grow_by_collisions(ResidueState& state, OpLog& log, const InverseTable& inv, std::int64_t k,
                        GrowthReport& report);

/// Operation 0 on the shortest progressions: keeps the longest ones, ties
/// broken by smaller difference, until their total reaches `need`.
void keep_longest(ResidueState& state, std::int64_t need);

struct SpecialCase {
  enum class Kind { None, CaseI, CaseII };
  Kind kind = Kind::None;
  Residue index = -1;
};

/// Case I: some A[i] >= n - 1. Case II: A[i] = C[i] for every i.
SpecialCase detect_special_case(const ResidueState& state, const MarkTable& marks);

}  // namespace egz
