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

#include "egz/egz.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

#include "egz/oracle.hpp"
#include "testing.hpp"

namespace egz {
namespace {

void expect_zero_sum(std::int64_t n, std::span<const std::int64_t> values,
                     const std::vector<std::size_t>& idx) {
  ASSERT_EQ(static_cast<std::int64_t>(idx.size()), n);
  ASSERT_TRUE(std::is_sorted(idx.begin(), idx.end()));
  ASSERT_EQ(std::adjacent_find(idx.begin(), idx.end()), idx.end());
  std::int64_t s = 0;
  for (std::size_t i : idx) {
    ASSERT_LT(i, values.size());
    s = mod_norm(s + values[i], n);
  }
  ASSERT_EQ(s, 0) << "n=" << n;
}

TEST(Methods, ParseAndResolve) {
  EXPECT_EQ(parse_lemma_method("dp"), LemmaMethod::Dp);
  EXPECT_EQ(parse_lemma_method("theoretical"), LemmaMethod::Theoretical);
  EXPECT_THROW(parse_lemma_method("fast"), std::invalid_argument);
  EgzOptions opt;
  EXPECT_EQ(resolve_method(61, opt), LemmaMethod::Dp);
  EXPECT_EQ(resolve_method(67, opt), LemmaMethod::Practical);
  EXPECT_EQ(resolve_method(1 << 21, opt), LemmaMethod::Practical);
  opt.allow_theoretical = true;
  EXPECT_EQ(resolve_method(1 << 21, opt), LemmaMethod::Theoretical);
  opt.method = LemmaMethod::Nlogn;
  EXPECT_EQ(resolve_method(5, opt), LemmaMethod::Nlogn);
}

TEST(Lemma, EveryMethodAgreesOnValidity) {
  testing::Gen gen(71);
  for (LemmaMethod m : {LemmaMethod::Auto, LemmaMethod::Dp, LemmaMethod::Nlogn, LemmaMethod::Practical,
                        LemmaMethod::Theoretical}) {
    EgzOptions opt;
    opt.method = m;
    for (std::int64_t p : {2, 5, 67, 263}) {
      const auto values = gen.lemma_values(p);
      for (Residue t = 0; t < p; t += 3) {
        const ConstructionResult r = solve_lemma2(p, values, t, opt);
        ASSERT_EQ(check_subset(p, values, r.indices, t), "");
      }
    }
  }
}

TEST(Lemma, RejectsBadTargets) {
  const std::vector<std::int64_t> v{1, 2, 3, 4};
  EXPECT_THROW(solve_lemma2(5, v, 5), std::invalid_argument);
  EXPECT_THROW(solve_lemma2(5, v, -1), std::invalid_argument);
}

TEST(Prime, EqualBlockShortcut) {
  const std::vector<std::int64_t> v{4, 4, 1, 4, 4, 2, 4, 0, 4};
  const auto idx = solve_prime(5, v);
  EXPECT_EQ(idx, (std::vector<std::size_t>{0, 1, 3, 4, 6}));
}

TEST(Prime, SortedDifferencesPath) {
  testing::Gen gen(72);
  for (std::int64_t p : {2, 3, 7, 61, 101, 1009, 10007}) {
    for (int it = 0; it < 20; ++it) {
      const auto values = gen.integers(2 * p - 1, -5 * p, 5 * p);
      expect_zero_sum(p, values, solve_prime(p, values));
    }
  }
  EXPECT_THROW(solve_prime(6, std::vector<std::int64_t>(11, 1)), std::invalid_argument);
  EXPECT_THROW(solve_prime(5, std::vector<std::int64_t>(8, 1)), std::invalid_argument);
}

TEST(General, MatchesBruteForceFeasibilityForSmallN) {
  testing::Gen gen(73);
  for (std::int64_t n = 1; n <= 10; ++n) {
    for (int it = 0; it < 200; ++it) {
      const auto values = gen.integers(2 * n - 1, -100, 100);
      expect_zero_sum(n, values, egz_brute(n, values));
      expect_zero_sum(n, values, solve_general(n, values));
    }
  }
}

TEST(General, CompositeAndPrimePowerModuli) {
  testing::Gen gen(74);
  for (std::int64_t n : {12, 16, 27, 30, 64, 81, 100, 210, 256, 1000, 1024, 4096, 10007 * 2}) {
    for (int it = 0; it < 5; ++it) {
      const auto values = gen.integers(2 * n - 1, 0, 1'000'000'000'000LL);
      expect_zero_sum(n, values, solve_general(n, values));
    }
  }
}

TEST(General, RepeatedValuesAndOptions) {
  testing::Gen gen(75);
  EgzOptions opt;
  opt.method = LemmaMethod::Nlogn;
  for (std::int64_t n : {6, 49, 97, 120}) {
    const auto values = gen.integers(2 * n - 1, 0, 2);
    expect_zero_sum(n, values, solve_general(n, values, opt));
    expect_zero_sum(n, values, solve_general(n, values));
  }
  EXPECT_THROW(solve_general(0, std::vector<std::int64_t>{}), std::invalid_argument);
  EXPECT_THROW(solve_general(3, std::vector<std::int64_t>{1, 2}), std::invalid_argument);
}

}  // namespace
}  // namespace egz
