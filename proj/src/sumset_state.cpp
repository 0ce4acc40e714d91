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

#include "egz/sumset_state.hpp"

#include <stdexcept>
#include <string>

#include "egz/errors.hpp"

namespace egz {

ResidueState::ResidueState(std::int64_t n) : n_(n) {
  if (n < 2 || n > kMaxModulus) {
    throw std::invalid_argument("modulus " + std::to_string(n) + " outside [2, 2^31)");
  }
  a_.assign(static_cast<std::size_t>(n), 0);
}

ResidueState ResidueState::from_input(std::int64_t p, std::span<const std::int64_t> values) {
  ResidueState state(p);
  if (static_cast<std::int64_t>(values.size()) != p - 1) {
    throw std::invalid_argument("expected " + std::to_string(p - 1) + " values, got " +
                                std::to_string(values.size()));
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    const std::int64_t v = values[k];
    if (v <= 0 || v >= p) {
      throw std::invalid_argument("value at index " + std::to_string(k) + " is " +
                                  std::to_string(v) + ", expected a residue in [1, " +
                                  std::to_string(p - 1) + "]");
    }
    state.add(v, 1);
  }
  return state;
}

ResidueState ResidueState::from_counts(std::int64_t n, std::span<const std::int32_t> counts) {
  ResidueState state(n);
  EGZ_CHECK(static_cast<std::int64_t>(counts.size()) == n && counts[0] == 0, "histogram does not fit Z_n");
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > 0) state.add(static_cast<Residue>(i), counts[i]);
  }
  return state;
}

void ResidueState::add(Residue i, std::int64_t delta) {
  auto& slot = a_[static_cast<std::size_t>(i)];
  const std::int64_t next = slot + delta;
  EGZ_CHECK(next >= 0, "A[" + std::to_string(i) + "] would become negative");
  EGZ_CHECK(i != 0 || next == 0, "A[0] must stay 0");
  if (slot == 0 && next > 0) ++diversity_;
  if (slot > 0 && next == 0) --diversity_;
  weight_ += delta;
  slot = next;
}

void ResidueState::drop(Residue i, std::int64_t new_count) {
  const std::int64_t cur = count(i);
  if (new_count < 0 || new_count > cur) {
    throw std::invalid_argument("drop: new count " + std::to_string(new_count) + " for A[" +
                                std::to_string(i) + "] outside [0, " + std::to_string(cur) + "]");
  }
  add(i, new_count - cur);
}

void ResidueState::verify_cache() const {
  std::int64_t w = 0, s = 0;
  for (std::int64_t v : a_) {
    w += v;
    s += v > 0 ? 1 : 0;
  }
  EGZ_CHECK(w == weight_, "cached W " + std::to_string(weight_) + " != recomputed " + std::to_string(w));
  EGZ_CHECK(s == diversity_,
            "cached s " + std::to_string(diversity_) + " != recomputed " + std::to_string(s));
}

MarkTable::MarkTable(std::int64_t n)
    : n_(n),
      cells_(static_cast<std::size_t>(n), Mark{0, 0}),
      c_(static_cast<std::size_t>(n), 0) {}

void MarkTable::set(Residue cell, std::int64_t c, Residue i) {
  auto& m = cells_[static_cast<std::size_t>(cell)];
  EGZ_CHECK(m.c == 0, "cell " + std::to_string(cell) + " already marked");
  EGZ_CHECK(c >= 1, "mark multiplier must be >= 1");
  m = Mark{static_cast<std::int32_t>(c), static_cast<std::int32_t>(i)};
  ++occupied_;
}

void MarkTable::clear(Residue cell) {
  auto& m = cells_[static_cast<std::size_t>(cell)];
  if (m.c != 0) {
    m.c = 0;
    --occupied_;
  }
}

std::int64_t MarkTable::truncate(Residue i, std::int64_t keep) {
  const std::int64_t top = counter(i);
  std::int64_t removed = 0;
  for (std::int64_t e = keep + 1; e <= top; ++e) {
    const Residue cell = e * i % n_;
    EGZ_CHECK(mult(cell) == e && diff(cell) == i,
              "cell " + std::to_string(cell) + " does not carry mark (" + std::to_string(e) + "," +
                  std::to_string(i) + ")");
    clear(cell);
    ++removed;
  }
  if (keep < top) set_counter(i, keep);
  return removed;
}

Worklist::Worklist(std::int64_t n)
    : ring_(static_cast<std::size_t>(n)), queued_(static_cast<std::size_t>(n), 0) {}

void Worklist::push(Residue i) {
  auto& flag = queued_[static_cast<std::size_t>(i)];
  if (flag) return;
  flag = 1;
  ring_[(head_ + size_) % ring_.size()] = i;
  ++size_;
}

Residue Worklist::pop() {
  EGZ_CHECK(size_ > 0, "pop from empty worklist");
  const Residue i = ring_[head_];
  head_ = (head_ + 1) % ring_.size();
  --size_;
  queued_[static_cast<std::size_t>(i)] = 0;
  return i;
}

void assert_invariants(const ResidueState& state, const MarkTable& marks) {
  const std::int64_t n = state.modulus();
  EGZ_CHECK(marks.modulus() == n, "state and mark table disagree on the modulus");
  state.verify_cache();
  EGZ_CHECK(state.count(0) == 0, "A[0] = 0 violated");
  std::int64_t sum_c = 0;
  for (Residue i = 0; i < n; ++i) {
    const std::int64_t ci = marks.counter(i);
    EGZ_CHECK(ci <= state.count(i), "C[i]<=A[i] violated at i=" + std::to_string(i) + " (C=" +
                                        std::to_string(ci) + ", A=" +
                                        std::to_string(state.count(i)) + ")");
    for (std::int64_t c = 1; c <= ci; ++c) {
      const Residue cell = c * i % n;
      EGZ_CHECK(marks.mult(cell) == c && marks.diff(cell) == i,
                "prefix marking violated: (" + std::to_string(c) + "," + std::to_string(i) +
                    ") missing from cell " + std::to_string(cell));
    }
    sum_c += ci;
  }
  std::int64_t occupied = 0;
  for (Residue m = 0; m < n; ++m) {
    if (marks.empty(m)) continue;
    ++occupied;
    const std::int64_t k = marks.mult(m);
    const Residue a = marks.diff(m);
    EGZ_CHECK(k * a % n == m, "mark cell mismatch at cell " + std::to_string(m));
    EGZ_CHECK(k <= state.count(a), "mark (k,a) with k<=A[a] violated at cell " + std::to_string(m));
    EGZ_CHECK(k <= marks.counter(a), "stale mark beyond C[a] at cell " + std::to_string(m));
  }
  EGZ_CHECK(occupied == marks.occupied(), "occupied-cell counter out of sync");
  EGZ_CHECK(sum_c == occupied, "sum of C != number of marked cells");
  EGZ_CHECK(sum_c <= n - 1, "sum of C <= n-1 violated");
}

}  // namespace egz
