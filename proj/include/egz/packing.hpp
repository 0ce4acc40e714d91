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

// Packing phase: grow a covered set S of Z_n one progression at a time.

#include <cstdint>
#include <vector>

#include "egz/modmath.hpp"
#include "egz/sumset_state.hpp"

namespace egz {

/// Boolean membership array over Z_n with a monotone cursor for finding
/// non-members. 0 is a member from construction on; S only grows.
class CoverageSet {
 public:
  explicit CoverageSet(std::int64_t n);

  std::int64_t modulus() const { return n_; }
  std::int64_t size() const { return size_; }
  bool full() const { return size_ == n_; }
  bool contains(Residue x) const { return member_[static_cast<std::size_t>(x)] != 0; }

  /// Returns false if x was already a member.
  bool insert(Residue x);

  Residue any_member() const { return 0; }
  /// Requires !full().
  Residue any_nonmember();

 private:
  std::int64_t n_;
  HugeVector<std::uint8_t> member_;
  std::int64_t size_ = 0;
  std::int64_t cursor_ = 0;
};

/// Binary search for c not in S with c - b in S. S is left unchanged.
/// Throws std::invalid_argument when S is full or b = 0.
Residue add_single(CoverageSet& s, Residue b, const InverseTable& inv);

struct FillgapResult {
  std::int64_t added = 0;
  /// Number of fillgap invocations, top-level and nested.
  std::int64_t calls = 0;
  /// Deepest nesting below a top-level call.
  std::int64_t max_depth = 0;
};

/// Adds min(k, n - |S|) cells to S, each t with t - b already in S at the
/// moment it is added, and appends PackRecord(t, b) for each to the log.
FillgapResult fillgap_add_ap(CoverageSet& s, Residue b, std::int64_t k, const InverseTable& inv,
                             OpLog& log);

/// S = {0} plus every marked cell, with a BaseRecord per member.
CoverageSet seed_from_marks(const MarkTable& marks, OpLog& log);

}  // namespace egz
