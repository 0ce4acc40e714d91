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

#include "egz/solver.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>

#include "egz/errors.hpp"
#include "egz/packing.hpp"

namespace egz {

namespace {

std::string record_str(std::size_t pos, const Op1Record& r) {
  return "log[" + std::to_string(pos) + "] Op1(i=" + std::to_string(r.i) +
         " j=" + std::to_string(r.j) + " c=" + std::to_string(r.c) + " d=" + std::to_string(r.d) +
         " y=" + std::to_string(r.y) + ")";
}

std::string record_str(std::size_t pos, const Op2Record& r) {
  return "log[" + std::to_string(pos) + "] Op2(i=" + std::to_string(r.i) +
         " j=" + std::to_string(r.j) + " c=" + std::to_string(r.c) + " d=" + std::to_string(r.d) +
         " t=" + std::to_string(r.t) + " s=" + std::to_string(r.s) + " z=" + std::to_string(r.z) +
         " u=" + std::to_string(r.u) + " base_z=" + std::to_string(r.base_z) + ")";
}

void add_fillgap_stats(PipelineStats& stats, const FillgapResult& r) {
  stats.pack_records += r.added;
  stats.fillgap_calls += r.calls;
  stats.fillgap_max_depth = std::max(stats.fillgap_max_depth, r.max_depth);
}

}  // namespace

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Dp: return "dp";
    case Algorithm::Nlogn: return "nlogn";
    case Algorithm::Practical: return "practical";
    case Algorithm::Theoretical: return "theoretical";
    case Algorithm::SpecialI: return "special_I";
    case Algorithm::SpecialII: return "special_II";
  }
  return "?";
}

void validate_lemma_instance(std::int64_t p, std::span<const std::int64_t> values) {
  if (p < 2 || p > kMaxModulus || !is_prime(p)) {
    throw std::invalid_argument("modulus " + std::to_string(p) + " is not a prime below 2^31");
  }
  if (static_cast<std::int64_t>(values.size()) != p - 1) {
    throw std::invalid_argument("expected " + std::to_string(p - 1) + " values, got " +
                                std::to_string(values.size()));
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] <= 0 || values[k] >= p) {
      throw std::invalid_argument("value at index " + std::to_string(k) + " is " +
                                  std::to_string(values[k]) + ", expected a residue in [1, " +
                                  std::to_string(p - 1) + "]");
    }
  }
}

LemmaCertificate::LemmaCertificate(std::int64_t p, std::span<const std::int64_t> values)
    : p_(p), values_(values.begin(), values.end()) {
  multiplicity_.assign(static_cast<std::size_t>(p), 0);
  for (std::int64_t v : values_) ++multiplicity_[static_cast<std::size_t>(v)];
}

void LemmaCertificate::finish_packing() {
  origin_.assign(static_cast<std::size_t>(p_), INT32_MIN);
  const auto bases = log_.bases();
  for (std::size_t r = 0; r < bases.size(); ++r) {
    origin_[static_cast<std::size_t>(bases[r].cell)] = -1 - static_cast<std::int32_t>(r);
  }
  const auto packs = log_.packs();
  for (std::size_t r = 0; r < packs.size(); ++r) {
    auto& o = origin_[static_cast<std::size_t>(packs[r].cell)];
    EGZ_CHECK(o == INT32_MIN, "cell " + std::to_string(packs[r].cell) + " packed twice");
    o = static_cast<std::int32_t>(r);
  }
  for (Residue x = 0; x < p_; ++x) {
    EGZ_CHECK(origin_[static_cast<std::size_t>(x)] != INT32_MIN,
              "cell " + std::to_string(x) + " not covered after packing");
  }
  // Packs are journaled in insertion order, so a cell's predecessor is
  // always resolved before the cell itself.
  run_.assign(static_cast<std::size_t>(p_), 0);
  for (const PackRecord& r : packs) {
    const Residue prev = mod_norm(r.cell - r.b, p_);
    const std::int32_t o = origin_[static_cast<std::size_t>(prev)];
    const bool same = o >= 0 && packs[static_cast<std::size_t>(o)].b == r.b;
    run_[static_cast<std::size_t>(r.cell)] = 1 + (same ? run_[static_cast<std::size_t>(prev)] : 0);
  }
}

void LemmaCertificate::ensure_inverses() {
  if (inv_.n == 0) inv_ = batch_inverses(p_);
}

void LemmaCertificate::finish_special(const SpecialCase& sc, std::optional<MarkTable> marks,
                                      Residue shift) {
  shift_ = shift;
  if (sc.kind == SpecialCase::Kind::CaseI) {
    algorithm_ = Algorithm::SpecialI;
    special_index_ = sc.index;
    special_inverse_ = mod_norm(ext_gcd(sc.index, p_).x, p_);
  } else {
    EGZ_CHECK(sc.kind == SpecialCase::Kind::CaseII && marks.has_value(),
              "special ending without a case");
    algorithm_ = Algorithm::SpecialII;
    special_marks_ = std::move(marks);
  }
}

DemandVector LemmaCertificate::terminal_demand(Residue target) const {
  if (target < 0 || target >= p_) {
    throw std::invalid_argument("target " + std::to_string(target) + " outside [0, " +
                                std::to_string(p_ - 1) + "]");
  }
  if (algorithm_ == Algorithm::SpecialI) {
    DemandVector d(static_cast<std::size_t>(p_), 0);
    d[static_cast<std::size_t>(special_index_)] = mul_mod(mod_norm(target - shift_, p_), special_inverse_, p_);
    return d;
  }
  if (algorithm_ == Algorithm::SpecialII) {
    return special_construct_II(*special_marks_, target, shift_);
  }
  DemandVector d(static_cast<std::size_t>(p_), 0);
  const auto packs = log_.packs();
  const auto bases = log_.bases();
  Residue cur = mod_norm(target - shift_, p_);
  for (std::int64_t steps = 0;; ++steps) {
    EGZ_CHECK(steps <= p_, "packing chain does not terminate");
    const std::int32_t o = origin_[static_cast<std::size_t>(cur)];
    if (o < 0) {
      const BaseRecord& b = bases[static_cast<std::size_t>(-1 - o)];
      d[static_cast<std::size_t>(b.i)] += b.c;
      break;
    }
    const PackRecord& r = packs[static_cast<std::size_t>(o)];
    const std::int64_t len = run_[static_cast<std::size_t>(cur)];
    d[static_cast<std::size_t>(r.b)] += len;
    steps += len - 1;
    cur = mod_norm(cur - mul_mod(len, r.b, p_), p_);
  }
  return d;
}

ConstructionResult LemmaCertificate::recover(Residue target) const {
  DemandVector d = terminal_demand(target);
  replay_transforms(p_, log_, d, target, shift_);
  HugeVector<std::int32_t> left(static_cast<std::size_t>(p_));
  std::int64_t total = 0;
  for (Residue x = 0; x < p_; ++x) {
    const std::int64_t want = d[static_cast<std::size_t>(x)];
    EGZ_CHECK(want <= multiplicity_[static_cast<std::size_t>(x)],
              "demand for value " + std::to_string(x) + " exceeds its multiplicity");
    left[static_cast<std::size_t>(x)] = static_cast<std::int32_t>(want);
    total += want;
  }
  ConstructionResult res;
  res.target = target;
  res.algorithm = algorithm_;
  res.indices.reserve(static_cast<std::size_t>(total));
  // The first copies of each value in input order, so indices come out sorted.
  std::int64_t sum = 0;
  for (std::size_t k = 0; k < values_.size() && static_cast<std::int64_t>(res.indices.size()) < total; ++k) {
    auto& l = left[static_cast<std::size_t>(values_[k])];
    if (l > 0) {
      --l;
      res.indices.push_back(k);
      sum = (sum + values_[k]) % p_;
    }
  }
  res.value_sum = sum;
  EGZ_CHECK(sum == target, "recovered subset sums to " + std::to_string(sum) + ", not " +
                               std::to_string(target));
  return res;
}

DemandVector special_construct_I(std::int64_t p, Residue i, Residue target, Residue g,
                                 const InverseTable& inv) {
  DemandVector d(static_cast<std::size_t>(p), 0);
  d[static_cast<std::size_t>(i)] = mul_mod(mod_norm(target - g, p), inv[i], p);
  return d;
}

DemandVector special_construct_II(const MarkTable& marks, Residue target, Residue g) {
  const std::int64_t p = marks.modulus();
  DemandVector d(static_cast<std::size_t>(p), 0);
  const Residue cell = mod_norm(target - g, p);
  if (cell == 0) return d;
  EGZ_CHECK(!marks.empty(cell), "Special Case II leaves cell " + std::to_string(cell) + " unmarked");
  d[static_cast<std::size_t>(marks.diff(cell))] = marks.mult(cell);
  return d;
}

void replay_transforms(std::int64_t p, const OpLog& log, DemandVector& demand, Residue target,
                       Residue g) {
  auto at = [&](Residue x) -> std::int64_t& { return demand[static_cast<std::size_t>(x)]; };
  Residue acc = 0;
  for (Residue x = 1; x < p; ++x) {
    if (at(x) != 0) acc = (acc + mul_mod(at(x), x, p)) % p;
  }
  EGZ_CHECK(acc == mod_norm(target - g, p), "terminal demand misses target - g");

  Residue g_cur = g;
  log.visit_transforms_reverse(
      [&](std::size_t pos, const Op1Record& r) {
        const std::int64_t excess = at(r.i) - r.a_i_before;
        if (excess > 0) {
          const std::int64_t chunks = (excess + r.c - 1) / r.c;
          EGZ_CHECK(chunks <= r.y, record_str(pos, r) + ": needs " + std::to_string(chunks) + " chunks");
          at(r.i) -= chunks * r.c;
          at(r.j) += chunks * r.d;
          acc = mod_norm(acc + mul_mod(chunks, mod_norm(mul_mod(r.d, r.j, p) - mul_mod(r.c, r.i, p), p), p), p);
        }
        EGZ_CHECK(at(r.j) <= r.a_j_before, record_str(pos, r) + ": D[j] exceeds A[j]");
        EGZ_CHECK(acc == mod_norm(target - g_cur, p), record_str(pos, r) + ": sum D[x]*x != target - g");
      },
      [&](std::size_t pos, const Op2Record& r) {
        const std::int64_t m = std::max<std::int64_t>(0, at(r.z) - r.base_z);
        EGZ_CHECK(m <= r.u, record_str(pos, r) + ": attributed " + std::to_string(m) + " copies of z");
        const CoinSplit split = two_coin_solve(r.d, r.c, r.t, r.s, r.frobenius + m);
        at(r.z) -= m;
        at(r.i) += split.first;
        at(r.j) += split.second;
        acc = mod_norm(acc - mul_mod(m, r.z, p) + mul_mod(split.first, r.i, p) +
                           mul_mod(split.second, r.j, p),
                       p);
        g_cur = mod_norm(g_cur - mul_mod(r.z, r.frobenius, p), p);
        EGZ_CHECK(acc == mod_norm(target - g_cur, p), record_str(pos, r) + ": sum D[x]*x != target - g");
      });
  EGZ_CHECK(g_cur == 0, "shift not fully unwound: " + std::to_string(g_cur));
}

std::vector<std::size_t> demand_to_indices(std::span<const std::int64_t> values,
                                           const DemandVector& demand) {
  const auto bound = static_cast<std::int64_t>(demand.size());
  const std::vector<std::size_t> order = counting_sort_permutation(values, bound);
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  for (Residue x = 0; x < bound; ++x) {
    std::int64_t want = demand[static_cast<std::size_t>(x)];
    while (pos < order.size() && values[order[pos]] == x) {
      if (want > 0) {
        out.push_back(order[pos]);
        --want;
      }
      ++pos;
    }
    EGZ_CHECK(want == 0, "not enough copies of value " + std::to_string(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string check_subset(std::int64_t p, std::span<const std::int64_t> values,
                         std::span<const std::size_t> indices, Residue target) {
  std::vector<std::uint8_t> seen(values.size(), 0);
  std::int64_t sum = 0;
  for (std::size_t k : indices) {
    if (k >= values.size()) return "index out of range";
    if (seen[k]) return "duplicate index";
    seen[k] = 1;
    sum = mod_norm(sum + mod_norm(values[k], p), p);
  }
  if (sum != mod_norm(target, p)) return "sum mismatch";
  return {};
}

LemmaCertificate prepare_practical(std::int64_t p, std::span<const std::int64_t> values,
                                   const SolveOptions& options) {
  validate_lemma_instance(p, values);
  LemmaCertificate cert(p, values);
  cert.algorithm_ = Algorithm::Practical;
  ResidueState state = ResidueState::from_counts(p, cert.multiplicity_);
  MarkTable marks(p);
  const std::int64_t k = std::max(2, floor_log2(static_cast<std::uint64_t>(p)));
  const TrimReport trim = trim_step(state, marks, cert.log_, k, options.transform);
  cert.stats_.trim = trim;
  if (trim.outcome == Outcome::SpecialCaseI) {
    cert.finish_special({SpecialCase::Kind::CaseI, trim.special_index}, std::nullopt, state.shift());
    return cert;
  }
  if (trim.outcome == Outcome::SpecialCaseII) {
    const SpecialCase sc = detect_special_case(state, marks);
    EGZ_CHECK(sc.kind == SpecialCase::Kind::CaseII, "trim reported Special Case II wrongly");
    cert.finish_special(sc, std::move(marks), state.shift());
    return cert;
  }

  cert.ensure_inverses();
  CoverageSet s = seed_from_marks(marks, cert.log_);
  cert.log_.reserve_packing(static_cast<std::size_t>(p - s.size()));
  for (Residue i = 1; i < p && !s.full(); ++i) {
    const std::int64_t extra = state.count(i) - marks.counter(i);
    if (extra > 0) add_fillgap_stats(cert.stats_, fillgap_add_ap(s, i, extra, cert.inv_, cert.log_));
  }
  EGZ_CHECK(s.full(), "packing left " + std::to_string(p - s.size()) + " cells uncovered");
  cert.shift_ = state.shift();
  cert.finish_packing();
  return cert;
}

LemmaCertificate prepare_theoretical(std::int64_t p, std::span<const std::int64_t> values,
                                     const SolveOptions& options) {
  if (p < options.growth_min_modulus) return prepare_practical(p, values, options);
  validate_lemma_instance(p, values);
  LemmaCertificate cert(p, values);
  cert.algorithm_ = Algorithm::Theoretical;
  ResidueState state = ResidueState::from_counts(p, cert.multiplicity_);
  const TransformOptions& topt = options.transform;
  cert.ensure_inverses();

  {
    MarkTable marks(p);
    const EnrichReport er = enrichment_step(state, marks, cert.log_, cert.inv_, 2, topt);
    cert.stats_.enrich = er;
    if (er.outcome == Outcome::SpecialCaseI || er.outcome == Outcome::SpecialCaseII) {
      const SpecialCase sc = er.outcome == Outcome::SpecialCaseI
                                 ? SpecialCase{SpecialCase::Kind::CaseI, er.special_index}
                                 : SpecialCase{SpecialCase::Kind::CaseII, -1};
      cert.finish_special(sc, std::move(marks), state.shift());
      return cert;
    }
  }
  std::int64_t k = options.growth_start_k;
  {
    MarkTable marks(p);
    const TrimReport tr = trim_step(state, marks, cert.log_, k, topt);
    cert.stats_.trim = tr;
    if (tr.outcome == Outcome::SpecialCaseI || tr.outcome == Outcome::SpecialCaseII) {
      const SpecialCase sc = tr.outcome == Outcome::SpecialCaseI
                                 ? SpecialCase{SpecialCase::Kind::CaseI, tr.special_index}
                                 : SpecialCase{SpecialCase::Kind::CaseII, -1};
      cert.finish_special(sc, std::move(marks), state.shift());
      return cert;
    }
  }
  for (Residue i = 1; i < p; ++i) {
    if (state.count(i) > 0 && state.count(i) < k) state.drop(i, 0);
  }
  EGZ_CHECK(state.weight() >= p, "short progressions carried more than n - 1 length");
  cert.stats_.diversity_before_growth = state.diversity();

  const int log_p = floor_log2(static_cast<std::uint64_t>(p));
  do {
    GrowthReport gr = growth_step(state, cert.log_, cert.inv_, k, topt);
    const Outcome outcome = gr.outcome;
    const Residue idx = gr.special_index;
    std::optional<MarkTable> marks = std::move(gr.special_marks);
    gr.special_marks.reset();
    cert.stats_.growth.push_back(std::move(gr));
    if (outcome == Outcome::SpecialCaseI) {
      cert.finish_special({SpecialCase::Kind::CaseI, idx}, std::nullopt, state.shift());
      return cert;
    }
    if (outcome == Outcome::SpecialCaseII) {
      cert.finish_special({SpecialCase::Kind::CaseII, -1}, std::move(marks), state.shift());
      return cert;
    }
    k = cert.stats_.growth.back().k_out;
  } while (k < log_p);
  cert.stats_.diversity_after_growth = state.diversity();

  keep_longest(state, p - 1);
  std::int64_t excess = state.weight() - (p - 1);
  if (excess > 0) {
    Residue shortest = -1;
    for (Residue i = 1; i < p; ++i) {
      if (state.count(i) > 0 && (shortest < 0 || state.count(i) < state.count(shortest))) shortest = i;
    }
    state.drop(shortest, state.count(shortest) - excess);
  }

  CoverageSet s(p);
  cert.log_.append(BaseRecord{0, 0, 0});
  cert.log_.reserve_packing(static_cast<std::size_t>(p - 1));
  for (Residue i = 1; i < p && !s.full(); ++i) {
    if (state.count(i) > 0) {
      add_fillgap_stats(cert.stats_, fillgap_add_ap(s, i, state.count(i), cert.inv_, cert.log_));
    }
  }
  EGZ_CHECK(s.full(), "packing left " + std::to_string(p - s.size()) + " cells uncovered");
  cert.shift_ = state.shift();
  cert.finish_packing();
  return cert;
}

LemmaCertificate prepare_nlogn(std::int64_t p, std::span<const std::int64_t> values) {
  validate_lemma_instance(p, values);
  LemmaCertificate cert(p, values);
  cert.algorithm_ = Algorithm::Nlogn;
  cert.ensure_inverses();
  CoverageSet s(p);
  cert.log_.append(BaseRecord{0, 0, 0});
  cert.log_.reserve_packing(static_cast<std::size_t>(p - 1));
  for (std::int64_t v : values) {
    if (s.full()) break;
    const Residue c = add_single(s, v, cert.inv_);
    s.insert(c);
    cert.log_.append(PackRecord{static_cast<std::int32_t>(c), static_cast<std::int32_t>(v)});
  }
  cert.stats_.pack_records = static_cast<std::int64_t>(cert.log_.packs().size());
  EGZ_CHECK(s.full(), "binary-search packing left cells uncovered");
  cert.finish_packing();
  return cert;
}

ConstructionResult solve_lemma2_practical(std::int64_t p, std::span<const std::int64_t> values,
                                          Residue target, const SolveOptions& options) {
  return prepare_practical(p, values, options).recover(target);
}

ConstructionResult solve_lemma2_theoretical(std::int64_t p, std::span<const std::int64_t> values,
                                            Residue target, const SolveOptions& options) {
  return prepare_theoretical(p, values, options).recover(target);
}

ConstructionResult solve_lemma2_nlogn(std::int64_t p, std::span<const std::int64_t> values,
                                      Residue target) {
  return prepare_nlogn(p, values).recover(target);
}

}  // namespace egz
