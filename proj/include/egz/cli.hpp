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

// Command-line front end. Each command reads and writes the given streams
// and returns the process exit code: 0 ok, 1 invalid solution, 2 malformed
// input, 3 internal invariant failure.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "egz/egz.hpp"

namespace egz::cli {

enum class Mode { Egz, Lemma };

Mode parse_mode(const std::string& name);

/// Input: egz mode "n" then 2n - 1 integers; lemma mode "p k" then p - 1
/// values. Output: count, 1-based indices, sum mod n, one per line.
int cmd_solve(Mode mode, const EgzOptions& options, std::istream& in, std::ostream& out,
              std::ostream& err);

/// Input: an instance followed by a solution in cmd_solve's format.
int cmd_verify(Mode mode, std::istream& in, std::ostream& out, std::ostream& err);

/// distribution: "uniform", "few-distinct:d" or "adversarial-equal". Lemma
/// mode rounds n up to a prime and draws a random target.
int cmd_gen(Mode mode, std::int64_t n, std::uint64_t seed, const std::string& distribution,
            std::ostream& out, std::ostream& err);

struct BenchConfig {
  std::vector<std::int64_t> sizes;
  std::vector<std::string> algorithms;
  std::uint64_t seed = 1;
  std::int64_t seeds = 1;
  std::int64_t reps = 1;
  std::string distribution = "uniform";
  bool allow_theoretical = false;
};

/// CSV "n,algorithm,seed,rep,micros,verified" over lemma instances.
int cmd_bench(const BenchConfig& config, std::ostream& out, std::ostream& err);

/// Lemma instance generator shared by gen and bench: p - 1 values in [1, p).
std::vector<std::int64_t> generate_lemma_values(std::int64_t p, std::uint64_t seed,
                                                const std::string& distribution);

int run(int argc, char** argv);

}  // namespace egz::cli
