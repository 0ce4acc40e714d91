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

#include "egz/packing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "egz/errors.hpp"

namespace egz {

CoverageSet::CoverageSet(std::int64_t n) : n_(n) {
  if (n < 1 || n > kMaxModulus) {
    throw std::invalid_argument("CoverageSet: modulus " + std::to_string(n) + " out of range");
  }
  member_.assign(static_cast<std::size_t>(n), 0);
  insert(0);
}

bool CoverageSet::insert(Residue x) {
  auto& m = member_[static_cast<std::size_t>(x)];
  if (m) return false;
  m = 1;
  ++size_;
  return true;
}

Residue CoverageSet::any_nonmember() {
  EGZ_CHECK(!full(), "no non-member in a full set");
  while (member_[static_cast<std::size_t>(cursor_)]) ++cursor_;
  return cursor_;
}

Residue add_single(CoverageSet& s, Residue b, const InverseTable& inv) {
  const std::int64_t n = s.modulus();
  if (s.full()) throw std::invalid_argument("add_single: S is already all of Z_n");
  if (b <= 0 || b >= n) throw std::invalid_argument("add_single: difference must be in [1, n)");
  // Positions are rescaled by b^-1: position v stands for cell v*b.
  std::int64_t x = 0;
  std::int64_t y = s.any_nonmember() * inv[b] % n;
  while (y - x > 1) {
    const std::int64_t mid = x + (y - x) / 2;
    if (s.contains(mid * b % n)) {
      x = mid;
    } else {
      y = mid;
    }
  }
  return y * b % n;
}

namespace {

struct Frame {
  std::int64_t x;
  std::int64_t y;  // lifted so that x < y <= x + n
  std::int64_t mid;
  int stage;
};

}  // namespace

FillgapResult fillgap_add_ap(CoverageSet& s, Residue b, std::int64_t k, const InverseTable& inv,
                             OpLog& log) {
  const std::int64_t n = s.modulus();
  if (b <= 0 || b >= n) throw std::invalid_argument("fillgap_add_ap: difference must be in [1, n)");
  if (k < 1) throw std::invalid_argument("fillgap_add_ap: length must be >= 1");
  FillgapResult res;
  const std::int64_t goal = std::min(k, n - s.size());
  if (goal == 0) return res;

  const std::int64_t depth_limit = ceil_log2(static_cast<std::uint64_t>(n));
  auto cell = [&](std::int64_t pos) { return (pos % n) * b % n; };
  auto in_s = [&](std::int64_t pos) { return s.contains(cell(pos)); };
  auto add = [&](std::int64_t pos) {
    const Residue c = cell(pos);
    EGZ_CHECK(!s.contains(c), "fillgap adds a cell already in S");
    EGZ_CHECK(s.contains(mod_norm(c - b, n)), "fillgap adds a cell whose predecessor is not in S");
    s.insert(c);
    log.append(PackRecord{static_cast<std::int32_t>(c), static_cast<std::int32_t>(b)});
    ++res.added;
  };

  std::vector<Frame> stack;
  stack.reserve(static_cast<std::size_t>(depth_limit) + 2);
  while (res.added < goal) {
    const std::int64_t y0 = s.any_nonmember() * inv[b] % n;
    // x = 0 is always in S; lift y so that 0 < y.
    stack.push_back({0, y0, 0, 0});
    ++res.calls;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const std::int64_t depth = static_cast<std::int64_t>(stack.size()) - 1;
      res.max_depth = std::max(res.max_depth, depth);
      EGZ_CHECK(depth <= depth_limit, "fillgap recursion deeper than ceil(log2 n)");
      if (f.stage == 0) {
        if (res.added >= goal) {
          stack.pop_back();
          continue;
        }
        if (f.y == f.x + 1) {
          add(f.y);
          stack.pop_back();
          continue;
        }
        f.mid = (f.x + f.y) / 2;
        f.stage = 1;
        if (!in_s(f.mid)) {
          const Frame child{f.x, f.mid, 0, 0};
          stack.push_back(child);
          ++res.calls;
        }
      } else if (f.stage == 1) {
        f.stage = 2;
        if (!in_s(f.y - 1)) {
          const Frame child{f.mid, f.y - 1, 0, 0};
          stack.push_back(child);
          ++res.calls;
        }
      } else {
        if (res.added < goal) add(f.y);
        stack.pop_back();
      }
    }
  }
  return res;
}

CoverageSet seed_from_marks(const MarkTable& marks, OpLog& log) {
  const std::int64_t n = marks.modulus();
  CoverageSet s(n);
  log.append(BaseRecord{0, 0, 0});
  for (Residue cell = 1; cell < n; ++cell) {
    if (marks.empty(cell)) continue;
    s.insert(cell);
    log.append(BaseRecord{static_cast<std::int32_t>(cell), static_cast<std::int32_t>(marks.mult(cell)),
                          static_cast<std::int32_t>(marks.diff(cell))});
  }
  return s;
}

}  // namespace egz
