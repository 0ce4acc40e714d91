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

// Mutable representation of a sumset of arithmetic progressions
// sum_i AP(i, A[i]) over Z_n, plus the marking bookkeeping and the journal
// of transformations needed to turn a construction for the final sumset back
// into one for the input.

#include <cstdint>
#include <span>
#include <vector>

#include "egz/huge_pages.hpp"
#include "egz/modmath.hpp"

namespace egz {

/// Multiplicity array A over Z_n with cached weight W = sum A[i], diversity
/// s = #{i : A[i] > 0} and the accumulated global shift g.
class ResidueState {
 public:
  explicit ResidueState(std::int64_t n);

  /// A[i] = multiplicity of i among p - 1 nonzero input values.
  /// Throws std::invalid_argument naming the offending index.
  static ResidueState from_input(std::int64_t p, std::span<const std::int64_t> values);
  /// A[i] = counts[i] for an already validated histogram with counts[0] = 0.
  static ResidueState from_counts(std::int64_t n, std::span<const std::int32_t> counts);

  std::int64_t modulus() const { return n_; }
  std::int64_t count(Residue i) const { return a_[static_cast<std::size_t>(i)]; }
  std::int64_t weight() const { return weight_; }
  std::int64_t diversity() const { return diversity_; }
  Residue shift() const { return shift_; }
  std::span<const std::int64_t> counts() const { return a_; }

  /// A[i] += delta; the result must stay nonnegative.
  void add(Residue i, std::int64_t delta);
  /// Operation 0-Drop: lower A[i] to new_count in [0, A[i]].
  void drop(Residue i, std::int64_t new_count);
  void add_shift(Residue delta) { shift_ = mod_norm(shift_ + delta, n_); }
  void prefetch(Residue i) const { __builtin_prefetch(a_.data() + i); }

  /// Recomputes W and s from A and throws InvariantError on a mismatch.
  void verify_cache() const;

 private:
  std::int64_t n_;
  HugeVector<std::int64_t> a_;
  std::int64_t weight_ = 0;
  std::int64_t diversity_ = 0;
  Residue shift_ = 0;
};

/// mark[m] = (c, i) with m = c*i, c = 0 as the empty sentinel, plus the
/// per-difference counters C[i].
class MarkTable {
 public:
  explicit MarkTable(std::int64_t n);

  std::int64_t modulus() const { return n_; }
  bool empty(Residue cell) const { return cells_[static_cast<std::size_t>(cell)].c == 0; }
  std::int64_t mult(Residue cell) const { return cells_[static_cast<std::size_t>(cell)].c; }
  Residue diff(Residue cell) const { return cells_[static_cast<std::size_t>(cell)].i; }

  void set(Residue cell, std::int64_t c, Residue i);
  void clear(Residue cell);

  std::int64_t counter(Residue i) const { return c_[static_cast<std::size_t>(i)]; }
  void set_counter(Residue i, std::int64_t v) { c_[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(v); }
  void prefetch_cell(Residue cell) const { __builtin_prefetch(cells_.data() + cell); }
  void prefetch_counter(Residue i) const { __builtin_prefetch(c_.data() + i); }

  /// Number of non-empty cells.
  std::int64_t occupied() const { return occupied_; }

  /// Removes marks (e, i) for e in (keep, C[i]] and sets C[i] = keep.
  /// Returns the number of cells unmarked.
  std::int64_t truncate(Residue i, std::int64_t keep);

 private:
  struct Mark {
    std::int32_t c;
    std::int32_t i;
  };

  std::int64_t n_;
  HugeVector<Mark> cells_;
  HugeVector<std::int32_t> c_;
  std::int64_t occupied_ = 0;
};

/// Operation 1: y applications of AP(i,c) + AP(j,d) -> AP(i,2c), c*i = d*j.
/// Only trimming applies it, where every length is below n - 1.
struct Op1Record {
  std::int32_t i, j;
  std::int32_t c, d;
  std::int32_t y;
  std::int32_t a_i_before, a_j_before;
};

/// Operation 2: AP(i,t) + AP(j,s) contains z*F + AP(z,u) where c*i = d*j,
/// z = i/d = j/c, F = (c-1)(d-1), u = t*d + s*c - 2F. base_z is the
/// multiplicity of z after removing both consumed progressions and before
/// crediting u; recovery attributes copies of z above base_z to this record.
struct Op2Record {
  Residue i, j;
  std::int64_t c, d;
  std::int64_t t, s;
  Residue z;
  std::int64_t u;
  std::int64_t base_z;
  std::int64_t frobenius;  // F; the shift added to g is z*F.
};

struct PackRecord {
  std::int32_t cell;
  std::int32_t b;
};

struct BaseRecord {
  std::int32_t cell;
  std::int32_t c;
  std::int32_t i;
};

/// Append-only journal. Transformation records precede all packing records.
class OpLog {
 public:
  void append(const Op1Record& r) {
    op1_.push_back(r);
    kinds_.push_back(0);
  }
  void append(const Op2Record& r) {
    op2_.push_back(r);
    kinds_.push_back(1);
  }
  void append(const PackRecord& r) { packs_.push_back(r); }
  void append(const BaseRecord& r) { bases_.push_back(r); }

  std::size_t transform_count() const { return kinds_.size(); }
  std::span<const Op1Record> op1_records() const { return op1_; }
  std::span<const Op2Record> op2_records() const { return op2_; }
  std::span<const PackRecord> packs() const { return packs_; }
  std::span<const BaseRecord> bases() const { return bases_; }

  /// Calls on_op1(pos, r) or on_op2(pos, r) for every transformation record,
  /// newest first; pos is the record's position in the journal.
  template <class F1, class F2>
  void visit_transforms_reverse(F1&& on_op1, F2&& on_op2) const {
    std::size_t n1 = op1_.size(), n2 = op2_.size();
    for (std::size_t pos = kinds_.size(); pos-- > 0;) {
      if (kinds_[pos] == 0) {
        on_op1(pos, op1_[--n1]);
      } else {
        on_op2(pos, op2_[--n2]);
      }
    }
  }

  void reserve_packing(std::size_t n) { packs_.reserve(n); }

 private:
  HugeVector<Op1Record> op1_;
  HugeVector<Op2Record> op2_;
  HugeVector<std::uint8_t> kinds_;
  HugeVector<PackRecord> packs_;
  HugeVector<BaseRecord> bases_;
};

/// Candidate indices in FIFO order with an in-collection flag, so an index is
/// never held twice and insert/pop are O(1).
class Worklist {
 public:
  explicit Worklist(std::int64_t n);

  void push(Residue i);
  Residue pop();
  bool empty() const { return size_ == 0; }
  bool contains(Residue i) const { return queued_[static_cast<std::size_t>(i)] != 0; }
  std::size_t size() const { return size_; }

 private:
  HugeVector<Residue> ring_;
  HugeVector<std::uint8_t> queued_;
  std::size_t head_ = 0;
  std::size_t size_ = 0;
};

/// Checks the cached W and s, A[0] = 0, and the mark-table invariants:
/// every mark (k, a) sits on cell k*a with k <= C[a] <= A[a]; each (c, i)
/// with c <= C[i] is marked; sum C = number of marked cells <= n - 1.
/// Throws InvariantError naming the invariant and cell.
void assert_invariants(const ResidueState& state, const MarkTable& marks);

}  // namespace egz
