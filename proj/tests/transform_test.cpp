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

#include <gtest/gtest.h>

#include <stdexcept>
#include <utility>

#include "egz/errors.hpp"
#include "egz/oracle.hpp"
#include "egz/solver.hpp"
#include "testing.hpp"

namespace egz {
namespace {

using Aps = std::vector<std::pair<Residue, std::int64_t>>;

bool contains_all(const std::vector<std::uint8_t>& big, const std::vector<std::uint8_t>& small) {
  for (std::size_t x = 0; x < small.size(); ++x) {
    if (small[x] && !big[x]) return false;
  }
  return true;
}

/// shift + AP(z, u) as a membership vector over Z_n.
std::vector<std::uint8_t> shifted_ap(std::int64_t n, Residue shift, Residue z, std::int64_t u) {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(n), 0);
  for (std::int64_t e = 0; e <= u; ++e) out[static_cast<std::size_t>((shift + e % n * z) % n)] = 1;
  return out;
}

/// Draws a demand on `now`, replays the journal and checks the result is a
/// demand on `before` with the right sum.
void expect_replay_sound(const ResidueState& before, const ResidueState& now, const OpLog& log,
                         testing::Gen& gen) {
  const std::int64_t n = now.modulus();
  DemandVector d(static_cast<std::size_t>(n), 0);
  Residue sum = 0;
  for (Residue x = 1; x < n; ++x) {
    if (now.count(x) == 0) continue;
    d[static_cast<std::size_t>(x)] = gen.range(0, now.count(x));
    sum = (sum + mul_mod(d[static_cast<std::size_t>(x)], x, n)) % n;
  }
  const Residue target = (sum + now.shift()) % n;
  replay_transforms(n, log, d, target, now.shift());
  Residue back = 0;
  for (Residue x = 1; x < n; ++x) {
    ASSERT_GE(d[static_cast<std::size_t>(x)], 0);
    ASSERT_LE(d[static_cast<std::size_t>(x)], before.count(x)) << "x=" << x;
    back = (back + mul_mod(d[static_cast<std::size_t>(x)], x, n)) % n;
  }
  EXPECT_EQ(back, target);
}

TEST(Op1, MovesWholeChunks) {
  ResidueState s(7);
  s.add(2, 3);
  s.add(3, 2);
  MarkTable m(7);
  m.set(3, 1, 3);
  m.set(6, 2, 3);
  m.set_counter(3, 2);
  OpLog log;
  apply_op1(s, m, log, 2, 3, 3, 2);
  EXPECT_EQ(s.count(2), 6);
  EXPECT_EQ(s.count(3), 0);
  EXPECT_EQ(m.counter(3), 0);
  EXPECT_EQ(m.occupied(), 0);
  ASSERT_EQ(log.op1_records().size(), 1u);
  EXPECT_EQ(log.op1_records()[0].y, 1);
  const Aps before{{2, 3}, {3, 2}};
  const Aps after{{2, 6}};
  EXPECT_TRUE(contains_all(brute_sumset(before, 7), brute_sumset(after, 7)));
}

TEST(Op1, UnitRatioDrainsTheSmallerDifference) {
  ResidueState s(11);
  s.add(1, 2);
  s.add(2, 5);
  MarkTable m(11);
  m.set(2, 1, 2);
  m.set_counter(2, 1);
  OpLog log;
  apply_op1(s, m, log, 1, 2, 2, 1);
  EXPECT_EQ(s.count(1), 12);
  EXPECT_EQ(s.count(2), 0);
  const Aps before{{1, 2}, {2, 5}};
  const Aps after{{1, 12}};
  EXPECT_TRUE(contains_all(brute_sumset(before, 11), brute_sumset(after, 11)));
}

TEST(Op1, SingleCopyGainsExactlyOne) {
  ResidueState s(11);
  s.add(1, 2);
  s.add(2, 1);
  MarkTable m(11);
  m.set(2, 1, 2);
  m.set_counter(2, 1);
  OpLog log;
  const std::int64_t w = s.weight();
  apply_op1(s, m, log, 1, 2, 2, 1);
  EXPECT_EQ(s.weight(), w + 1);
}

TEST(Op1, RejectsMalformedCollisions) {
  ResidueState s(7);
  s.add(2, 3);
  s.add(3, 2);
  MarkTable m(7);
  OpLog log;
  EXPECT_THROW(apply_op1(s, m, log, 2, 3, 3, 2), InvariantError);
  EXPECT_THROW(apply_op1(s, m, log, 2, 3, 2, 3), InvariantError);
  EXPECT_THROW(apply_op1(s, m, log, 2, 2, 3, 2), InvariantError);
}

TEST(Op1, SumsetNeverShrinksOnRandomCollisions) {
  testing::Gen gen(7);
  for (int it = 0; it < 300; ++it) {
    const std::int64_t n = testing::primes_up_to(200)[static_cast<std::size_t>(gen.range(10, 45))];
    std::int64_t c = gen.range(2, 6), d = gen.range(1, c - 1);
    while (gcd(c, d) != 1) d = gen.range(1, c - 1);
    const Residue i = gen.range(1, n - 1);
    const Residue j = c * i % n * batch_inverses(n)[d] % n;
    if (i == j) continue;
    ResidueState s(n);
    s.add(i, gen.range(c, 3 * c));
    s.add(j, gen.range(d, 4 * d));
    const Aps before{{i, s.count(i)}, {j, s.count(j)}};
    MarkTable m(n);
    for (std::int64_t e = 1; e <= d; ++e) m.set(e * j % n, e, j);
    m.set_counter(j, d);
    OpLog log;
    apply_op1(s, m, log, i, j, c, d);
    const Aps after{{i, s.count(i)}, {j, s.count(j)}};
    ASSERT_TRUE(contains_all(brute_sumset(before, n), brute_sumset(after, n)))
        << "n=" << n << " c=" << c << " d=" << d;
    ASSERT_LT(s.count(j), d);
  }
}

TEST(TwoCoin, Examples) {
  const CoinSplit a = two_coin_solve(2, 3, 3, 2, 2);
  EXPECT_EQ(a.first, 1);
  EXPECT_EQ(a.second, 0);
  const CoinSplit b = two_coin_solve(2, 3, 3, 2, 10);
  EXPECT_EQ(b.first, 2);
  EXPECT_EQ(b.second, 2);
  const CoinSplit c = two_coin_solve(1, 1, 4, 4, 5);
  EXPECT_EQ(c.first + c.second, 5);
  EXPECT_LE(c.first, 4);
  EXPECT_LE(c.second, 4);
}

TEST(TwoCoin, ExhaustiveWindow) {
  for (std::int64_t w = 1; w <= 9; ++w) {
    for (std::int64_t v = 1; v <= 9; ++v) {
      if (gcd(w, v) != 1) continue;
      for (std::int64_t t = v; t <= 3 * v; ++t) {
        for (std::int64_t s = w; s <= 3 * w; ++s) {
          const std::int64_t f = (w - 1) * (v - 1);
          for (std::int64_t x = f; x <= t * w + s * v - f; ++x) {
            const CoinSplit r = two_coin_solve(w, v, t, s, x);
            ASSERT_TRUE(r.first >= 0 && r.first <= t && r.second >= 0 && r.second <= s);
            ASSERT_EQ(r.first * w + r.second * v, x);
          }
        }
      }
    }
  }
}

TEST(TwoCoin, RejectsOutsideWindow) {
  EXPECT_THROW(two_coin_solve(2, 3, 3, 2, 1), std::invalid_argument);
  EXPECT_THROW(two_coin_solve(2, 3, 3, 2, 11), std::invalid_argument);
  EXPECT_THROW(two_coin_solve(2, 4, 4, 2, 6), std::invalid_argument);
  EXPECT_THROW(two_coin_solve(2, 3, 2, 2, 4), std::invalid_argument);
}

TEST(Op2, SmallExample) {
  ResidueState s(7);
  s.add(2, 3);
  s.add(3, 2);
  MarkTable m(7);
  OpLog log;
  const InverseTable inv = batch_inverses(7);
  const Residue z = apply_op2(s, m, log, inv, 2, 3, 3, 2);
  EXPECT_EQ(z, 1);
  EXPECT_EQ(s.count(1), 8);
  EXPECT_EQ(s.count(2), 0);
  EXPECT_EQ(s.count(3), 0);
  EXPECT_EQ(s.shift(), 2);
  const Aps before{{2, 3}, {3, 2}};
  EXPECT_TRUE(contains_all(brute_sumset(before, 7), shifted_ap(7, 2, 1, 8)));
}

TEST(Op2, ShiftIsZTimesFrobenius) {
  ResidueState s(13);
  s.add(4, 3);
  s.add(6, 2);
  MarkTable m(13);
  OpLog log;
  const InverseTable inv = batch_inverses(13);
  const Residue z = apply_op2(s, m, log, inv, 4, 6, 3, 2);
  EXPECT_EQ(z, 2);
  EXPECT_EQ(s.count(2), 8);
  EXPECT_EQ(s.shift(), 4);
  const Aps before{{4, 3}, {6, 2}};
  EXPECT_TRUE(contains_all(brute_sumset(before, 13), shifted_ap(13, 4, 2, 8)));
  ASSERT_EQ(log.op2_records().size(), 1u);
  EXPECT_EQ(log.op2_records()[0].base_z, 0);
  EXPECT_EQ(log.op2_records()[0].frobenius, 2);
}

TEST(Op2, WindowHoldsOnRandomCollisions) {
  testing::Gen gen(8);
  const auto primes = testing::primes_up_to(300);
  for (int it = 0; it < 400; ++it) {
    const std::int64_t n = primes[static_cast<std::size_t>(gen.range(5, 60))];
    const InverseTable inv = batch_inverses(n);
    const std::int64_t c = gen.range(1, 7);
    const std::int64_t d = gen.range(1, 7);
    if (gcd(c, d) != 1 || (c == 1 && d == 1)) continue;
    const Residue i = gen.range(1, n - 1);
    const Residue j = c * i % n * inv[d] % n;
    if (i == j) continue;
    ResidueState s(n);
    s.add(i, gen.range(c, 4 * c));
    s.add(j, gen.range(d, 4 * d));
    const ResidueState before = s;
    const Aps aps{{i, s.count(i)}, {j, s.count(j)}};
    MarkTable m(n);
    OpLog log;
    const Residue z = apply_op2(s, m, log, inv, i, j, c, d);
    ASSERT_TRUE(contains_all(brute_sumset(aps, n), shifted_ap(n, s.shift(), z, s.count(z))))
        << "n=" << n << " c=" << c << " d=" << d;
    expect_replay_sound(before, s, log, gen);
  }
}

TEST(Noncoprime, ReducedPairExample) {
  ResidueState s(101);
  s.add(5, 4);
  s.add(2, 10);
  std::vector<std::int64_t> next(101, 0);
  OpLog log;
  const InverseTable inv = batch_inverses(101);
  const ResidueState before = s;
  const NoncoprimeResult r = resolve_collision_noncoprime(s, next, log, inv, 5, 2, 2, 5);
  EXPECT_EQ(r.z, 1);
  EXPECT_GE(r.length, 20);
  EXPECT_EQ(next[1], r.length);
  EXPECT_EQ(s.weight(), 0);
  const Aps aps{{5, 4}, {2, 10}};
  EXPECT_TRUE(contains_all(brute_sumset(aps, 101), shifted_ap(101, s.shift(), r.z, r.length)));
}

TEST(Noncoprime, CommonFactorLength) {
  ResidueState s(101);
  s.add(3, 8);
  s.add(2, 12);
  std::vector<std::int64_t> next(101, 0);
  OpLog log;
  const InverseTable inv = batch_inverses(101);
  const NoncoprimeResult r = resolve_collision_noncoprime(s, next, log, inv, 3, 2, 4, 6);
  EXPECT_GE(r.length, 24);
  const Aps aps{{3, 8}, {2, 12}};
  EXPECT_TRUE(contains_all(brute_sumset(aps, 101), shifted_ap(101, s.shift(), r.z, r.length)));

  ResidueState t(101);
  t.add(3, 7);
  t.add(2, 12);
  std::vector<std::int64_t> next2(101, 0);
  EXPECT_THROW(resolve_collision_noncoprime(t, next2, log, inv, 3, 2, 4, 6), InvariantError);
}

TEST(Noncoprime, RandomCollisionsReplay) {
  testing::Gen gen(9);
  const auto primes = testing::primes_up_to(400);
  for (int it = 0; it < 300; ++it) {
    const std::int64_t n = primes[static_cast<std::size_t>(gen.range(10, 70))];
    const InverseTable inv = batch_inverses(n);
    const std::int64_t a = gen.range(1, 6), b = gen.range(1, 6);
    const Residue i = gen.range(1, n - 1);
    const Residue j = a * i % n * inv[b] % n;
    if (i == j) continue;
    ResidueState s(n);
    s.add(i, gen.range(2 * a, 3 * a));
    s.add(j, gen.range(2 * b, 3 * b));
    const ResidueState before = s;
    const Aps aps{{i, s.count(i)}, {j, s.count(j)}};
    std::vector<std::int64_t> next(static_cast<std::size_t>(n), 0);
    OpLog log;
    const NoncoprimeResult r = resolve_collision_noncoprime(s, next, log, inv, i, j, a, b);
    ASSERT_GE(r.length, 2 * a * b / gcd(a, b));
    ASSERT_TRUE(contains_all(brute_sumset(aps, n), shifted_ap(n, s.shift(), r.z, r.length)));
    s.add(r.z, r.length);
    expect_replay_sound(before, s, log, gen);
  }
}

TEST(Trim, MarksASingleDifference) {
  ResidueState s(11);
  s.add(1, 4);
  s.add(5, 1);
  MarkTable m(11);
  OpLog log;
  const TrimReport r = trim_step(s, m, log, 4);
  EXPECT_EQ(r.collisions, 0);
  for (Residue cell : {1, 2, 3, 4}) EXPECT_EQ(m.diff(cell), 1) << cell;
  EXPECT_EQ(m.diff(5), 5);
  EXPECT_TRUE(m.empty(0));
  EXPECT_EQ(m.occupied(), 5);
}

TEST(Trim, CollisionReachesSpecialCaseI) {
  ResidueState s(5);
  s.add(1, 2);
  s.add(2, 2);
  MarkTable m(5);
  OpLog log;
  const TrimReport r = trim_step(s, m, log, 2);
  EXPECT_EQ(r.outcome, Outcome::SpecialCaseI);
  EXPECT_EQ(r.special_index, 1);
  EXPECT_EQ(s.count(1), 6);
  EXPECT_EQ(s.count(2), 0);
  EXPECT_EQ(r.collisions, 1);
}

TEST(Trim, LongProgressionShortCircuits) {
  ResidueState s(7);
  s.add(3, 6);
  MarkTable m(7);
  OpLog log;
  const TrimReport r = trim_step(s, m, log, 3);
  EXPECT_EQ(r.outcome, Outcome::SpecialCaseI);
  EXPECT_EQ(r.special_index, 3);
  EXPECT_EQ(m.occupied(), 0);

  ResidueState q(5);
  q.add(1, 4);
  MarkTable mq(5);
  EXPECT_EQ(trim_step(q, mq, log, 4).outcome, Outcome::SpecialCaseI);
}

TEST(Trim, ClaimsAndWorkBoundOnRandomInputs) {
  testing::Gen gen(21);
  for (std::int64_t p : {101, 1009}) {
    for (int it = 0; it < 40; ++it) {
      const auto values = gen.lemma_values(p);
      ResidueState s = ResidueState::from_input(p, values);
      const ResidueState before = s;
      MarkTable m(p);
      OpLog log;
      ClaimMonitor mon;
      TransformOptions opt;
      opt.monitor = &mon;
      opt.verify_each_step = true;
      const std::int64_t k = floor_log2(static_cast<std::uint64_t>(p));
      const TrimReport r = trim_step(s, m, log, k, opt);
      ASSERT_EQ(mon.total_violations(), 0) << (mon.reports().empty() ? "" : mon.reports()[0]);
      double h = 0;
      for (std::int64_t c = 1; c <= k; ++c) h += 1.0 / static_cast<double>(c);
      ASSERT_LE(static_cast<double>(r.cells_marked), static_cast<double>(p) * h + static_cast<double>(p));
      ASSERT_GE(s.weight(), p - 1);
      if (r.outcome != Outcome::SpecialCaseI) {
        ASSERT_NO_THROW(assert_invariants(s, m));
      }
      expect_replay_sound(before, s, log, gen);
    }
  }
}

TEST(Enrichment, SingleDifferenceIsSpecialCaseI) {
  ResidueState s(5);
  s.add(1, 4);
  MarkTable m(5);
  OpLog log;
  const EnrichReport r = enrichment_step(s, m, log, batch_inverses(5), 2);
  EXPECT_EQ(r.outcome, Outcome::SpecialCaseI);
  EXPECT_EQ(r.special_index, 1);
}

TEST(Enrichment, CollisionBuildsLongProgression) {
  ResidueState s(7);
  s.add(2, 3);
  s.add(3, 3);
  MarkTable m(7);
  OpLog log;
  const EnrichReport r = enrichment_step(s, m, log, batch_inverses(7), 2);
  EXPECT_EQ(r.outcome, Outcome::SpecialCaseI);
  EXPECT_EQ(r.special_index, 1);
  EXPECT_EQ(s.count(1), 11);
  EXPECT_EQ(r.collisions, 1);
}

TEST(Enrichment, AlreadyHeavyIsUntouched) {
  ResidueState s(7);
  s.add(2, 5);
  s.add(3, 5);
  s.add(4, 5);
  MarkTable m(7);
  OpLog log;
  const EnrichReport r = enrichment_step(s, m, log, batch_inverses(7), 2);
  EXPECT_EQ(r.outcome, Outcome::TargetReached);
  EXPECT_EQ(s.weight(), 15);
  EXPECT_EQ(log.transform_count(), 0u);
  EXPECT_EQ(m.occupied(), 0);
}

TEST(Enrichment, RejectsLightStates) {
  ResidueState s(7);
  s.add(2, 2);
  MarkTable m(7);
  OpLog log;
  EXPECT_THROW(enrichment_step(s, m, log, batch_inverses(7), 2), std::invalid_argument);
}

TEST(Enrichment, ClaimsOnRandomInputs) {
  testing::Gen gen(22);
  for (std::int64_t p : {101, 1009, 10007}) {
    for (int it = 0; it < 20; ++it) {
      const auto values = gen.lemma_values(p);
      ResidueState s = ResidueState::from_input(p, values);
      const ResidueState before = s;
      MarkTable m(p);
      OpLog log;
      ClaimMonitor mon;
      TransformOptions opt;
      opt.monitor = &mon;
      opt.verify_each_step = p < 2000;
      const EnrichReport r = enrichment_step(s, m, log, batch_inverses(p), 2, opt);
      ASSERT_EQ(mon.total_violations(), 0) << (mon.reports().empty() ? "" : mon.reports()[0]);
      if (r.outcome == Outcome::TargetReached) {
        ASSERT_GE(s.weight(), 2 * p);
      }
      if (r.outcome == Outcome::SpecialCaseII) {
        ASSERT_NO_THROW(assert_invariants(s, m));
      }
      expect_replay_sound(before, s, log, gen);
    }
  }
}

TEST(SpecialCases, Detection) {
  ResidueState s(7);
  s.add(4, 6);
  MarkTable m(7);
  SpecialCase sc = detect_special_case(s, m);
  EXPECT_EQ(sc.kind, SpecialCase::Kind::CaseI);
  EXPECT_EQ(sc.index, 4);

  ResidueState t(5);
  t.add(1, 2);
  t.add(2, 1);
  t.add(3, 1);
  MarkTable mt(5);
  EXPECT_EQ(detect_special_case(t, mt).kind, SpecialCase::Kind::None);
  mt.set(1, 1, 1);
  mt.set(2, 2, 1);
  mt.set_counter(1, 2);
  mt.set(4, 1, 2);
  mt.set_counter(2, 1);
  mt.set(3, 1, 3);
  mt.set_counter(3, 1);
  EXPECT_EQ(detect_special_case(t, mt).kind, SpecialCase::Kind::CaseII);
}

TEST(KeepLongest, PrefersLengthThenSmallerDifference) {
  ResidueState s(101);
  s.add(7, 40);
  s.add(3, 30);
  s.add(5, 30);
  s.add(9, 10);
  keep_longest(s, 70);
  EXPECT_EQ(s.count(7), 40);
  EXPECT_EQ(s.count(3), 30);
  EXPECT_EQ(s.count(5), 0);
  EXPECT_EQ(s.count(9), 0);
  keep_longest(s, 1000);
  EXPECT_EQ(s.weight(), 70);
}

TEST(Growth, Preconditions) {
  ResidueState s(1009);
  for (Residue i = 1; i <= 20; ++i) s.add(i, 60);
  OpLog log;
  const InverseTable inv = batch_inverses(1009);
  EXPECT_THROW(growth_step(s, log, inv, 999), std::invalid_argument);
  TransformOptions opt;
  opt.growth_min_k = 1;
  EXPECT_THROW(growth_step(s, log, inv, 100, opt), std::invalid_argument);

  GrowthReport rep;
  EXPECT_THROW(grow_by_collisions(s, log, inv, 8, rep), InvariantError);
}

TEST(Growth, LongProgressionShortcutReplays) {
  testing::Gen gen(31);
  int grown = 0;
  for (std::int64_t p : {1009, 10007}) {
    for (std::int64_t k : {4, 8, 16, 27}) {
      for (int it = 0; it < 10; ++it) {
        ResidueState s(p);
        for (std::int64_t e = 0; e < p / k; ++e) {
          Residue i = gen.range(1, p - 1);
          while (s.count(i) > 0) i = gen.range(1, p - 1);
          s.add(i, k + gen.range(0, 2));
        }
        const ResidueState before = s;
        OpLog log;
        ClaimMonitor mon;
        TransformOptions opt;
        opt.growth_min_k = 1;
        opt.monitor = &mon;
        const GrowthReport r = growth_step(s, log, batch_inverses(p), k, opt);
        ASSERT_EQ(mon.total_violations(), 0);
        if (r.outcome == Outcome::Grown) {
          ++grown;
          ASSERT_EQ(r.k_out, pow_third(k, 4));
          ASSERT_GE(s.weight(), p);
          ASSERT_LE(s.diversity(), p / r.k_out);
        }
        expect_replay_sound(before, s, log, gen);
      }
    }
  }
  EXPECT_GT(grown, 0);
}

TEST(ClaimMonitor, CountsChecksAndViolations) {
  ClaimMonitor mon;
  mon.check(2, true, [] { return std::string("unused"); });
  mon.check(2, false, [] { return std::string("bad pair"); });
  EXPECT_EQ(mon.checks(2), 2);
  EXPECT_EQ(mon.violations(2), 1);
  EXPECT_EQ(mon.total_violations(), 1);
  ASSERT_EQ(mon.reports().size(), 1u);
  EXPECT_EQ(mon.reports()[0], "claim 2: bad pair");
}

}  // namespace
}  // namespace egz
