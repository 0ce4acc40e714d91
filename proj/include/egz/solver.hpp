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

// Prime-case pipelines: every target in Z_p as a subset sum of p - 1 nonzero
// residues. A pipeline runs once per instance and yields a certificate that
// recovers an explicit subset for any target.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "egz/modmath.hpp"
#include "egz/sumset_state.hpp"
#include "egz/transform.hpp"

namespace egz {

enum class Algorithm { Dp, Nlogn, Practical, Theoretical, SpecialI, SpecialII };

const char* to_string(Algorithm a);

struct ConstructionResult {
  Residue target = 0;
  /// Distinct 0-based input positions, increasing.
  std::vector<std::size_t> indices;
  Residue value_sum = 0;
  Algorithm algorithm = Algorithm::Practical;
};

/// D[x] = copies of difference x demanded, dense over Z_p.
using DemandVector = std::vector<std::int64_t>;

struct SolveOptions {
  TransformOptions transform;
  /// The theoretical pipeline hands smaller moduli to the practical one.
  std::int64_t growth_min_modulus = std::int64_t{1} << 20;
  /// Starting phase for the growth loop.
  std::int64_t growth_start_k = 1000;
};

struct PipelineStats {
  std::optional<EnrichReport> enrich;
  std::optional<TrimReport> trim;
  std::vector<GrowthReport> growth;
  std::int64_t diversity_before_growth = 0;
  std::int64_t diversity_after_growth = 0;
  std::int64_t pack_records = 0;
  std::int64_t fillgap_calls = 0;
  std::int64_t fillgap_max_depth = 0;
};

/// Everything needed to answer any target for one instance.
class LemmaCertificate {
 public:
  std::int64_t modulus() const { return p_; }
  Algorithm algorithm() const { return algorithm_; }
  const OpLog& log() const { return log_; }
  const PipelineStats& stats() const { return stats_; }
  /// Global shift g at the end of the transformation phase.
  Residue shift() const { return shift_; }

  /// Demand vector for `target` on the final sumset, before reverse replay.
  DemandVector terminal_demand(Residue target) const;
  ConstructionResult recover(Residue target) const;

 private:
  friend LemmaCertificate prepare_practical(std::int64_t, std::span<const std::int64_t>,
                                            const SolveOptions&);
  friend LemmaCertificate prepare_theoretical(std::int64_t, std::span<const std::int64_t>,
                                              const SolveOptions&);
  friend LemmaCertificate prepare_nlogn(std::int64_t, std::span<const std::int64_t>);

  LemmaCertificate(std::int64_t p, std::span<const std::int64_t> values);
  void finish_packing();
  void finish_special(const SpecialCase& sc, std::optional<MarkTable> marks, Residue shift);
  /// The inverse table is only built by paths that pack or run Operation 2.
  void ensure_inverses();

  std::int64_t p_;
  Algorithm algorithm_ = Algorithm::Practical;
  InverseTable inv_;
  std::vector<std::int64_t> values_;
  HugeVector<std::int32_t> multiplicity_;
  OpLog log_;
  Residue shift_ = 0;
  PipelineStats stats_;
  /// Packed ending: origin[cell] >= 0 indexes packs, -1 - r indexes bases.
  HugeVector<std::int32_t> origin_;
  /// run[cell]: how many consecutive chain steps from cell use its difference.
  HugeVector<std::int32_t> run_;
  Residue special_index_ = -1;
  Residue special_inverse_ = 0;
  std::optional<MarkTable> special_marks_;
};

/// Throws std::invalid_argument unless p is prime and values are p - 1
/// residues in [1, p - 1].
void validate_lemma_instance(std::int64_t p, std::span<const std::int64_t> values);

LemmaCertificate prepare_practical(std::int64_t p, std::span<const std::int64_t> values,
                                   const SolveOptions& options = {});
LemmaCertificate prepare_theoretical(std::int64_t p, std::span<const std::int64_t> values,
                                     const SolveOptions& options = {});
/// Baseline: S = {0}, then one binary-search insertion per input element.
LemmaCertificate prepare_nlogn(std::int64_t p, std::span<const std::int64_t> values);

ConstructionResult solve_lemma2_practical(std::int64_t p, std::span<const std::int64_t> values,
                                          Residue target, const SolveOptions& options = {});
ConstructionResult solve_lemma2_theoretical(std::int64_t p, std::span<const std::int64_t> values,
                                            Residue target, const SolveOptions& options = {});
ConstructionResult solve_lemma2_nlogn(std::int64_t p, std::span<const std::int64_t> values,
                                      Residue target);

/// D[i] = (target - g) / i lifted to [0, p - 1].
DemandVector special_construct_I(std::int64_t p, Residue i, Residue target, Residue g,
                                 const InverseTable& inv);
/// D[i] = k for the mark (k, i) on cell target - g; empty when that cell is 0.
DemandVector special_construct_II(const MarkTable& marks, Residue target, Residue g);

/// Undoes the transformation journal on `demand`, newest record first,
/// checking sum D[x]*x = target - g_remaining after every step. On return
/// `demand` is a demand on the input multiset and the remaining shift is 0.
void replay_transforms(std::int64_t p, const OpLog& log, DemandVector& demand, Residue target,
                       Residue g);

/// Maps demand onto distinct positions (lowest positions of each value first).
std::vector<std::size_t> demand_to_indices(std::span<const std::int64_t> values,
                                           const DemandVector& demand);

/// Empty string when `indices` is a valid subset of `values` summing to
/// target mod p; otherwise a one-line reason.
std::string check_subset(std::int64_t p, std::span<const std::int64_t> values,
                         std::span<const std::size_t> indices, Residue target);

}  // namespace egz
