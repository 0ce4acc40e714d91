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

#include "egz/transform.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "egz/errors.hpp"

namespace egz {

namespace {

std::string pair_str(std::int64_t c, Residue i) {
  return "(" + std::to_string(c) + "," + std::to_string(i) + ")";
}

// Fits u = t*d + s*c - 2F in a signed 64-bit value or throws.
std::int64_t op2_length(std::int64_t t, std::int64_t s, std::int64_t c, std::int64_t d) {
  const __int128 f = static_cast<__int128>(c - 1) * (d - 1);
  const __int128 u = static_cast<__int128>(t) * d + static_cast<__int128>(s) * c - 2 * f;
  EGZ_CHECK(u >= 0 && u <= static_cast<__int128>(INT64_MAX), "Operation 2 length overflows");
  return static_cast<std::int64_t>(u);
}

Residue find_long(const ResidueState& state) {
  const std::int64_t n = state.modulus();
  const auto a = state.counts();
  for (Residue i = 1; i < n; ++i) {
    if (a[static_cast<std::size_t>(i)] >= n - 1) return i;
  }
  return -1;
}

}  // namespace

std::int64_t ClaimMonitor::total_violations() const {
  return std::accumulate(violations_.begin(), violations_.end(), std::int64_t{0});
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::PhaseComplete: return "PhaseComplete";
    case Outcome::TargetReached: return "TargetReached";
    case Outcome::Grown: return "Grown";
    case Outcome::SpecialCaseI: return "SpecialCaseI";
    case Outcome::SpecialCaseII: return "SpecialCaseII";
  }
  return "?";
}

void apply_op1(ResidueState& state, MarkTable& marks, OpLog& log, Residue i, Residue j,
               std::int64_t c, std::int64_t d) {
  const std::int64_t n = state.modulus();
  EGZ_CHECK(i != j, "Operation 1 needs distinct differences");
  EGZ_CHECK(c > d && d >= 1, "Operation 1 needs c > d >= 1, got c=" + std::to_string(c) +
                                 " d=" + std::to_string(d));
  EGZ_CHECK(c * i % n == d * j % n, "c*i != d*j for " + pair_str(c, i) + " " + pair_str(d, j));
  EGZ_CHECK(gcd(c, d) == 1, "gcd(c,d) != 1 for " + pair_str(c, i) + " " + pair_str(d, j));
  EGZ_CHECK(state.count(i) >= c && state.count(j) >= d, "Operation 1 lengths too short");
  const Residue cell = d * j % n;
  EGZ_CHECK(marks.mult(cell) == d && marks.diff(cell) == j, "mark " + pair_str(d, j) + " missing");

  EGZ_CHECK(state.count(i) < n - 1, "Operation 1 on a progression of length >= n - 1");
  const std::int64_t y = state.count(j) / d;
  log.append(Op1Record{static_cast<std::int32_t>(i), static_cast<std::int32_t>(j),
                       static_cast<std::int32_t>(c), static_cast<std::int32_t>(d),
                       static_cast<std::int32_t>(y), static_cast<std::int32_t>(state.count(i)),
                       static_cast<std::int32_t>(state.count(j))});
  state.add(i, y * c);
  state.add(j, -y * d);
  if (marks.counter(j) > state.count(j)) marks.truncate(j, state.count(j));
}

CoinSplit two_coin_solve(std::int64_t w, std::int64_t v, std::int64_t t, std::int64_t s,
                         std::int64_t target) {
  if (w < 1 || v < 1) throw std::invalid_argument("two_coin_solve: coins must be positive");
  if (t < v || s < w) throw std::invalid_argument("two_coin_solve: need t >= v and s >= w");
  const ExtGcd eg = ext_gcd(w, v);
  if (eg.g != 1) throw std::invalid_argument("two_coin_solve: coins must be coprime");
  const __int128 frob = static_cast<__int128>(w - 1) * (v - 1);
  const __int128 top = static_cast<__int128>(t) * w + static_cast<__int128>(s) * v - frob;
  if (target < frob || target > top) {
    throw std::invalid_argument("two_coin_solve: target " + std::to_string(target) +
                                " outside the representable window");
  }
  // Smallest first >= 0 with first*w == target (mod v); then second is maximal.
  std::int64_t first = static_cast<std::int64_t>(
      mod_norm(static_cast<std::int64_t>(static_cast<__int128>(mod_norm(target, v)) *
                                         mod_norm(eg.x, v) % v),
               v));
  __int128 second = (static_cast<__int128>(target) - static_cast<__int128>(first) * w) / v;
  if (second > s) {
    // Trade w-coins of v for v-coins of w until second lands in (s - w, s].
    const __int128 steps = (second - s + w - 1) / w;
    second -= steps * w;
    first += static_cast<std::int64_t>(steps * v);
  }
  EGZ_CHECK(first >= 0 && first <= t && second >= 0 && second <= s,
            "coin split out of bounds for target " + std::to_string(target));
  EGZ_CHECK(static_cast<__int128>(first) * w + second * v == target, "coin split does not sum");
  return {first, static_cast<std::int64_t>(second)};
}

Residue apply_op2(ResidueState& state, MarkTable& marks, OpLog& log, const InverseTable& inv,
                  Residue i, Residue j, std::int64_t c, std::int64_t d, bool cleanup) {
  const std::int64_t n = state.modulus();
  EGZ_CHECK(i != j, "Operation 2 needs distinct differences");
  EGZ_CHECK(c >= 1 && d >= 1 && !(c == 1 && d == 1), "Operation 2 needs (c,d) != (1,1)");
  EGZ_CHECK(c * i % n == d * j % n, "c*i != d*j for " + pair_str(c, i) + " " + pair_str(d, j));
  EGZ_CHECK(gcd(c, d) == 1, "gcd(c,d) != 1 for " + pair_str(c, i) + " " + pair_str(d, j));
  const std::int64_t t = state.count(i);
  const std::int64_t s = state.count(j);
  EGZ_CHECK(t >= c && s >= d, "Operation 2 lengths too short");

  const std::int64_t frob = (c - 1) * (d - 1);
  const std::int64_t u = op2_length(t, s, c, d);
  const Residue z = i * inv[d] % n;
  EGZ_CHECK(z == j * inv[c] % n, "i/d != j/c");

  if (cleanup) {
    marks.truncate(i, 0);
    marks.truncate(j, 0);
  }
  state.add(i, -t);
  state.add(j, -s);
  const std::int64_t base_z = state.count(z);
  state.add(z, u);
  state.add_shift(mul_mod(z, frob, n));
  log.append(Op2Record{i, j, c, d, t, s, z, u, base_z, frob});
  return z;
}

NoncoprimeResult resolve_collision_noncoprime(ResidueState& state, std::vector<std::int64_t>& next,
                                              OpLog& log, const InverseTable& inv, Residue i,
                                              Residue j, std::int64_t a, std::int64_t b) {
  const std::int64_t n = state.modulus();
  EGZ_CHECK(i != j, "collision needs distinct differences");
  EGZ_CHECK(a * i % n == b * j % n, "a*i != b*j for " + pair_str(a, i) + " " + pair_str(b, j));
  const std::int64_t t = state.count(i);
  const std::int64_t s = state.count(j);
  EGZ_CHECK(t >= 2 * a && s >= 2 * b, "collision needs A[i] >= 2a and A[j] >= 2b");
  const std::int64_t g = gcd(a, b);
  const std::int64_t c = a / g;
  const std::int64_t d = b / g;
  EGZ_CHECK(!(c == 1 && d == 1), "reduced pair (1,1) implies i = j");

  const std::int64_t frob = (c - 1) * (d - 1);
  const std::int64_t u = op2_length(t, s, c, d);
  const Residue z = i * inv[d] % n;
  EGZ_CHECK(z == j * inv[c] % n, "i/d != j/c");

  state.add(i, -t);
  state.add(j, -s);
  const std::int64_t base_z = state.count(z) + next[static_cast<std::size_t>(z)];
  next[static_cast<std::size_t>(z)] += u;
  state.add_shift(mul_mod(z, frob, n));
  log.append(Op2Record{i, j, c, d, t, s, z, u, base_z, frob});
  return {z, u};
}

TrimReport trim_step(ResidueState& state, MarkTable& marks, OpLog& log, std::int64_t k_target,
                     const TransformOptions& options) {
  if (k_target < 1) throw std::invalid_argument("trim_step: target phase must be >= 1");
  EGZ_CHECK(marks.occupied() == 0, "trim_step expects an empty mark table");
  const std::int64_t n = state.modulus();
  ClaimMonitor* mon = options.monitor;
  TrimReport report;

  if (const Residue big = find_long(state); big >= 0) {
    report.outcome = Outcome::SpecialCaseI;
    report.special_index = big;
    return report;
  }

  std::vector<Residue> active;
  for (Residue i = 1; i < n; ++i) {
    if (state.count(i) > 0) active.push_back(i);
  }
  std::vector<Residue> next;
  std::vector<std::uint8_t> finished;
  if (mon) finished.assign(static_cast<std::size_t>(n), 0);
  std::int64_t last_c = 0;

  // Lookahead distances for the two dependent loads of a collision: the cell
  // k*i, then A[j] and C[j] of the difference j marked there.
  constexpr std::size_t kCellAhead = 16;
  constexpr std::size_t kOwnerAhead = 8;
  for (std::int64_t k = 1; k <= k_target && !active.empty(); ++k) {
    next.clear();
    for (std::size_t pos = 0; pos < active.size(); ++pos) {
      if (pos + kCellAhead < active.size()) marks.prefetch_cell(k * active[pos + kCellAhead] % n);
      if (pos + kOwnerAhead < active.size()) {
        const Residue ahead = k * active[pos + kOwnerAhead] % n;
        if (!marks.empty(ahead)) {
          state.prefetch(marks.diff(ahead));
          marks.prefetch_counter(marks.diff(ahead));
        }
      }
      const Residue i = active[pos];
      if (marks.counter(i) != k - 1 || state.count(i) < k) {
        if (mon) finished[static_cast<std::size_t>(i)] = 1;
        continue;
      }
      if (mon) {
        mon->check(9, !finished[static_cast<std::size_t>(i)],
                   [&] { return "finished index " + std::to_string(i) + " became a candidate"; });
        mon->check(6, k >= last_c, [&] { return "marking " + pair_str(k, i) + " after c=" + std::to_string(last_c); });
        last_c = k;
      }
      const Residue cell = k * i % n;
      if (!marks.empty(cell)) {
        const std::int64_t d = marks.mult(cell);
        const Residue j = marks.diff(cell);
        const std::int64_t w_before = state.weight();
        const std::int64_t ai = state.count(i);
        const std::int64_t aj = state.count(j);
        if (mon) {
          mon->check(2, gcd(k, d) == 1, [&] { return pair_str(k, i) + " vs " + pair_str(d, j); });
          mon->check(6, k > d, [&] { return pair_str(k, i) + " collides with larger " + pair_str(d, j); });
        }
        apply_op1(state, marks, log, i, j, k, d);
        ++report.collisions;
        if (mon) {
          mon->check(3, state.weight() >= w_before, [&] { return std::string("W decreased in Operation 1"); });
          mon->check(7, state.count(i) > ai && state.count(j) < aj,
                     [&] { return "Operation 1 on target " + std::to_string(i) + " moved the wrong way"; });
          mon->check(8, state.count(j) == marks.counter(j),
                     [&] { return "after unmarking, A[" + std::to_string(j) + "] != C[" + std::to_string(j) + "]"; });
          finished[static_cast<std::size_t>(j)] = 1;
        }
        if (state.count(i) >= n - 1) {
          report.outcome = Outcome::SpecialCaseI;
          report.special_index = i;
          report.phase_reached = k - 1;
          return report;
        }
      }
      if (mon) mon->check(4, marks.empty(cell), [&] { return "cell " + std::to_string(cell) + " still occupied"; });
      marks.set(cell, k, i);
      marks.set_counter(i, k);
      ++report.cells_marked;
      if (mon) mon->check(5, marks.occupied() <= n - 1, [&] { return std::string("more than n-1 marked cells"); });
      if (state.count(i) > k) {
        next.push_back(i);
      } else if (mon) {
        finished[static_cast<std::size_t>(i)] = 1;
      }
    }
    active.swap(next);
    report.phase_reached = k;
    if (options.verify_each_step) {
      assert_invariants(state, marks);
      if (mon) {
        for (Residue i = 1; i < n; ++i) {
          if (finished[static_cast<std::size_t>(i)]) {
            mon->check(9, state.count(i) == marks.counter(i),
                       [&] { return "finished index " + std::to_string(i) + " has A != C"; });
          }
        }
      }
    }
  }

  const bool any_open = std::any_of(active.begin(), active.end(), [&](Residue i) {
    return state.count(i) > marks.counter(i);
  });
  report.outcome = any_open ? Outcome::PhaseComplete : Outcome::SpecialCaseII;
  return report;
}

EnrichReport enrichment_step(ResidueState& state, MarkTable& marks, OpLog& log,
                             const InverseTable& inv, std::int64_t r_target,
                             const TransformOptions& options) {
  if (r_target < 1) throw std::invalid_argument("enrichment_step: target multiple must be >= 1");
  const std::int64_t n = state.modulus();
  ClaimMonitor* mon = options.monitor;
  EnrichReport report;
  report.target_multiple = r_target;
  const std::int64_t target_w = r_target * n;

  auto finish = [&](Outcome o, Residue idx) {
    report.outcome = o;
    report.special_index = idx;
    report.final_weight = state.weight();
    return report;
  };

  if (state.weight() >= target_w) return finish(Outcome::TargetReached, -1);
  if (state.weight() < n - 1) throw std::invalid_argument("enrichment_step: needs W >= n - 1");
  if (const Residue big = find_long(state); big >= 0) return finish(Outcome::SpecialCaseI, big);

  Worklist work(n);
  for (Residue i = 1; i < n; ++i) {
    if (state.count(i) > marks.counter(i)) work.push(i);
  }

  while (!work.empty()) {
    const Residue i = work.pop();
    const std::int64_t ci = marks.counter(i);
    if (ci >= state.count(i)) continue;
    const std::int64_t c = ci + 1;
    const Residue cell = c * i % n;
    if (marks.empty(cell)) {
      marks.set(cell, c, i);
      marks.set_counter(i, c);
      ++report.cells_marked;
      if (mon) mon->check(5, marks.occupied() <= n - 1, [&] { return std::string("more than n-1 marked cells"); });
      if (state.count(i) > c) work.push(i);
      continue;
    }

    const std::int64_t d = marks.mult(cell);
    const Residue j = marks.diff(cell);
    if (mon) mon->check(2, gcd(c, d) == 1, [&] { return pair_str(c, i) + " vs " + pair_str(d, j); });
    const std::int64_t w_before = state.weight();
    const std::int64_t gain = op2_length(state.count(i), state.count(j), c, d) - state.count(i) -
                              state.count(j);
    const bool reaches_target = w_before + gain >= target_w;
    const Residue z = apply_op2(state, marks, log, inv, i, j, c, d, /*cleanup=*/!reaches_target);
    ++report.collisions;
    if (mon) mon->check(3, state.weight() > w_before, [&] { return std::string("W did not grow in Operation 2"); });
    if (state.count(z) >= n - 1) return finish(Outcome::SpecialCaseI, z);
    if (reaches_target) return finish(Outcome::TargetReached, -1);
    work.push(z);
    if (options.verify_each_step) assert_invariants(state, marks);
  }

  const SpecialCase sc = detect_special_case(state, marks);
  EGZ_CHECK(sc.kind == SpecialCase::Kind::CaseII, "enrichment stalled without Special Case II");
  return finish(Outcome::SpecialCaseII, -1);
}

GrowthReport growth_step(ResidueState& state, OpLog& log, const InverseTable& inv, std::int64_t k,
                         const TransformOptions& options) {
  const std::int64_t n = state.modulus();
  if (k < options.growth_min_k) {
    throw std::invalid_argument("growth_step: k must be >= " + std::to_string(options.growth_min_k));
  }
  if (state.weight() < n || state.diversity() > (n + k - 1) / k) {
    throw std::invalid_argument("growth_step: needs W >= n with at most ceil(n/k) differences");
  }
  GrowthReport report;
  report.k_in = k;

  {
    MarkTable marks(n);
    report.enrich = enrichment_step(state, marks, log, inv, 10, options);
    if (report.enrich.outcome == Outcome::SpecialCaseI || report.enrich.outcome == Outcome::SpecialCaseII) {
      report.outcome = report.enrich.outcome;
      report.special_index = report.enrich.special_index;
      if (report.outcome == Outcome::SpecialCaseII) report.special_marks = std::move(marks);
      return report;
    }
  }
  {
    MarkTable marks(n);
    report.trim = trim_step(state, marks, log, k, options);
    if (report.trim.outcome == Outcome::SpecialCaseI || report.trim.outcome == Outcome::SpecialCaseII) {
      report.outcome = report.trim.outcome;
      report.special_index = report.trim.special_index;
      if (report.outcome == Outcome::SpecialCaseII) report.special_marks = std::move(marks);
      return report;
    }
  }

  const std::int64_t cap = pow_third(k, 4);
  report.k_out = cap;

  std::int64_t long_total = 0;
  for (Residue i = 1; i < n; ++i) {
    if (state.count(i) >= cap) long_total += state.count(i);
  }
  if (long_total >= n) {
    for (Residue i = 1; i < n; ++i) {
      if (state.count(i) > 0 && state.count(i) < cap) state.drop(i, 0);
    }
    keep_longest(state, n);
    report.long_ap_shortcut = true;
    report.diversity_after = state.diversity();
    EGZ_CHECK(state.weight() >= n, "long-AP selection lost weight");
    return report;
  }

  grow_by_collisions(state, log, inv, k, report);
  return report;
}

void grow_by_collisions(ResidueState& state, OpLog& log, const InverseTable& inv, std::int64_t k,
                        GrowthReport& report) {
  const std::int64_t n = state.modulus();
  const std::int64_t cap = pow_third(k, 4);
  report.k_out = cap;
  for (Residue i = 1; i < n; ++i) {
    if (state.count(i) > cap) state.drop(i, cap);
  }
  EGZ_CHECK(state.weight() >= 9 * n, "W < 9n after capping at k^(4/3)");

  const std::int64_t low = (k + 1) / 2;
  const std::int64_t min_len = pow_third(k, 5) / 4;
  report.min_new_length = min_len;
  report.collision_target = (n + min_len - 1) / min_len;

  std::vector<std::int64_t> next_mult(static_cast<std::size_t>(n), low);
  std::vector<std::int64_t> next(static_cast<std::size_t>(n), 0);
  MarkTable marks(n);
  Worklist work(n);
  for (Residue i = 1; i < n; ++i) {
    const std::int64_t high = state.count(i) / 2;
    if (high >= low) {
      report.markable_cells += high - low + 1;
      work.push(i);
    }
  }
  EGZ_CHECK(report.markable_cells >= 2 * n, "fewer than 2n markable cells at growth entry");

  auto unmark_all = [&](Residue x) {
    const std::int64_t top = next_mult[static_cast<std::size_t>(x)];
    for (std::int64_t e = low; e < top; ++e) marks.clear(e * x % n);
    next_mult[static_cast<std::size_t>(x)] = low;
  };

  while (report.collisions < report.collision_target) {
    EGZ_CHECK(!work.empty(), "growth step ran out of markable cells after " +
                                 std::to_string(report.collisions) + " collisions");
    const Residue x = work.pop();
    const std::int64_t a = next_mult[static_cast<std::size_t>(x)];
    if (a > state.count(x) / 2) continue;
    const Residue cell = a * x % n;
    if (marks.empty(cell)) {
      marks.set(cell, a, x);
      ++next_mult[static_cast<std::size_t>(x)];
      ++report.cells_marked;
      if (a + 1 <= state.count(x) / 2) work.push(x);
      continue;
    }
    const std::int64_t b = marks.mult(cell);
    const Residue y = marks.diff(cell);
    const std::int64_t g = gcd(a, b);
    // A common factor this large would give a short collision that trimming removed.
    EGZ_CHECK(a / g > k || b / g > k, "short collision " + pair_str(a / g, x) + " " +
                                          pair_str(b / g, y) + " survived trimming");
    unmark_all(x);
    unmark_all(y);
    const NoncoprimeResult res = resolve_collision_noncoprime(state, next, log, inv, x, y, a, b);
    EGZ_CHECK(res.length >= min_len, "collision produced a progression shorter than k^(5/3)/4");
    ++report.collisions;
  }

  for (Residue i = 1; i < n; ++i) {
    if (state.count(i) > 0) state.drop(i, 0);
  }
  for (Residue z = 1; z < n; ++z) {
    if (next[static_cast<std::size_t>(z)] > 0) state.add(z, next[static_cast<std::size_t>(z)]);
  }
  EGZ_CHECK(state.weight() >= n, "new generation shorter than n");
  keep_longest(state, n);
  report.diversity_after = state.diversity();
}

void keep_longest(ResidueState& state, std::int64_t need) {
  const std::int64_t n = state.modulus();
  std::vector<Residue> live;
  for (Residue i = 1; i < n; ++i) {
    if (state.count(i) > 0) live.push_back(i);
  }
  std::sort(live.begin(), live.end(), [&](Residue x, Residue y) {
    return state.count(x) != state.count(y) ? state.count(x) > state.count(y) : x < y;
  });
  std::int64_t total = 0;
  for (Residue i : live) {
    if (total >= need) {
      state.drop(i, 0);
    } else {
      total += state.count(i);
    }
  }
}

SpecialCase detect_special_case(const ResidueState& state, const MarkTable& marks) {
  const std::int64_t n = state.modulus();
  if (const Residue big = find_long(state); big >= 0) return {SpecialCase::Kind::CaseI, big};
  for (Residue i = 1; i < n; ++i) {
    if (state.count(i) != marks.counter(i)) return {};
  }
  return {SpecialCase::Kind::CaseII, -1};
}

}  // namespace egz
