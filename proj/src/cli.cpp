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

#include "egz/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <unordered_set>

#include <CLI11.hpp>

#include "egz/errors.hpp"

namespace egz::cli {

namespace {

struct Token {
  std::string_view text;
  int line;
  int col;
};

class InputError : public std::runtime_error {
 public:
  InputError(int line, int col, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(col) +
                           ": " + what) {}
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t k = 0;
  while (k < s.size()) {
    const char ch = s[k];
    if (ch == '\n') {
      ++line;
      col = 1;
      ++k;
    } else if (ch == ' ' || ch == '\t' || ch == '\r') {
      ++col;
      ++k;
    } else {
      const std::size_t start = k;
      const int start_col = col;
      while (k < s.size() && s[k] != ' ' && s[k] != '\t' && s[k] != '\r' && s[k] != '\n') {
        ++k;
        ++col;
      }
      out.push_back({s.substr(start, k - start), line, start_col});
    }
  }
  return out;
}

class TokenReader {
 public:
  explicit TokenReader(std::string text) : text_(std::move(text)), tokens_(tokenize(text_)) {}

  bool done() const { return pos_ == tokens_.size(); }
  std::size_t remaining() const { return tokens_.size() - pos_; }
  const Token& peek() const { return tokens_[pos_]; }

  std::int64_t next_int(const char* what) {
    if (done()) {
      const auto [line, col] = end_position();
      throw InputError(line, col, std::string("unexpected end of input, expected ") + what);
    }
    const Token& t = tokens_[pos_++];
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      throw InputError(t.line, t.col, std::string("expected ") + what + ", got '" +
                                          std::string(t.text) + "'");
    }
    last_ = &t;
    return v;
  }

  const Token& last() const { return *last_; }

  std::pair<int, int> end_position() const {
    int line = 1, col = 1;
    for (char ch : text_) {
      if (ch == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

 private:
  std::string text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Token* last_ = nullptr;
};

struct Instance {
  std::int64_t n = 0;
  Residue target = 0;
  std::vector<std::int64_t> values;  // reduced mod n
  std::size_t expected_count = 0;    // indices a solution must have (0: any)
};

constexpr std::int64_t kMaxEgzN = std::int64_t{1} << 30;

Instance read_instance(Mode mode, TokenReader& r) {
  Instance inst;
  if (mode == Mode::Egz) {
    inst.n = r.next_int("n");
    if (inst.n < 1 || inst.n > kMaxEgzN) {
      throw InputError(r.last().line, r.last().col, "n must be in [1, 2^30]");
    }
    inst.expected_count = static_cast<std::size_t>(inst.n);
    inst.values.resize(static_cast<std::size_t>(2 * inst.n - 1));
    for (auto& v : inst.values) v = mod_norm(r.next_int("an integer value"), inst.n);
    return inst;
  }
  inst.n = r.next_int("the prime p");
  if (inst.n < 2 || inst.n > kMaxModulus || !is_prime(inst.n)) {
    throw InputError(r.last().line, r.last().col, "p must be a prime below 2^31");
  }
  inst.target = r.next_int("the target k");
  if (inst.target < 0 || inst.target >= inst.n) {
    throw InputError(r.last().line, r.last().col, "target must be in [0, p - 1]");
  }
  inst.values.resize(static_cast<std::size_t>(inst.n - 1));
  for (auto& v : inst.values) {
    v = mod_norm(r.next_int("a nonzero value"), inst.n);
    if (v == 0) throw InputError(r.last().line, r.last().col, "values must be nonzero mod p");
  }
  return inst;
}

std::string slurp(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
}

std::vector<std::int64_t> draw_values(std::size_t count, std::int64_t lo, std::int64_t hi,
                                      std::mt19937_64& rng, const std::string& distribution) {
  std::uniform_int_distribution<std::int64_t> any(lo, hi);
  std::vector<std::int64_t> out(count);
  if (distribution == "uniform") {
    for (auto& v : out) v = any(rng);
    return out;
  }
  if (distribution.rfind("few-distinct:", 0) == 0) {
    const std::string arg = distribution.substr(13);
    std::int64_t d = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), d);
    if (ec != std::errc() || ptr != arg.data() + arg.size() || d < 1) {
      throw std::invalid_argument("few-distinct needs a positive count, got '" + arg + "'");
    }
    d = std::min(d, hi - lo + 1);
    std::vector<std::int64_t> pool;
    std::unordered_set<std::int64_t> seen;
    while (static_cast<std::int64_t>(pool.size()) < d) {
      const std::int64_t v = any(rng);
      if (seen.insert(v).second) pool.push_back(v);
    }
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (auto& v : out) v = pool[pick(rng)];
    return out;
  }
  if (distribution == "adversarial-equal") {
    const std::int64_t v = any(rng);
    for (auto& x : out) x = any(rng);
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(count / 2), v);
    std::shuffle(out.begin(), out.end(), rng);
    return out;
  }
  throw std::invalid_argument("unknown distribution '" + distribution + "'");
}

}  // namespace

Mode parse_mode(const std::string& name) {
  if (name == "egz") return Mode::Egz;
  if (name == "lemma") return Mode::Lemma;
  throw std::invalid_argument("unknown mode '" + name + "'");
}

int cmd_solve(Mode mode, const EgzOptions& options, std::istream& in, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    TokenReader r(slurp(in));
    const Instance inst = read_instance(mode, r);
    if (!r.done()) throw InputError(r.peek().line, r.peek().col, "unexpected trailing input");
    std::vector<std::size_t> indices;
    if (mode == Mode::Egz) {
      indices = solve_general(inst.n, inst.values, options);
    } else {
      indices = solve_lemma2(inst.n, inst.values, inst.target, options).indices;
    }
    std::int64_t sum = 0;
    for (std::size_t k : indices) sum = (sum + inst.values[k]) % inst.n;
    std::ostringstream line;
    for (std::size_t k = 0; k < indices.size(); ++k) line << (k ? " " : "") << indices[k] + 1;
    out << indices.size() << '\n' << line.str() << '\n' << sum << '\n';
    return 0;
  });
}

int cmd_verify(Mode mode, std::istream& in, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    TokenReader r(slurp(in));
    const Instance inst = read_instance(mode, r);
    if (r.remaining() < 2) {
      const auto [line, col] = r.done() ? r.end_position() : std::pair{r.peek().line, r.peek().col};
      throw InputError(line, col, "expected a solution: count, indices, checksum");
    }
    const std::int64_t count = r.next_int("the index count");
    std::vector<std::int64_t> raw;
    while (r.remaining() > 1) raw.push_back(r.next_int("an index"));
    const std::int64_t checksum = r.next_int("the checksum");

    auto reject = [&](const char* reason) {
      out << reason << '\n';
      return 1;
    };
    const auto m = static_cast<std::int64_t>(inst.values.size());
    std::vector<std::size_t> indices;
    for (std::int64_t k : raw) {
      if (k < 1 || k > m) return reject("index out of range");
      indices.push_back(static_cast<std::size_t>(k - 1));
    }
    std::vector<std::uint8_t> seen(inst.values.size(), 0);
    for (std::size_t k : indices) {
      if (seen[k]) return reject("duplicate index");
      seen[k] = 1;
    }
    if (count != static_cast<std::int64_t>(indices.size()) ||
        (inst.expected_count != 0 && indices.size() != inst.expected_count)) {
      return reject("count mismatch");
    }
    if (!check_subset(inst.n, inst.values, indices, inst.target).empty() ||
        mod_norm(checksum, inst.n) != inst.target || checksum < 0 || checksum >= inst.n) {
      return reject("sum mismatch");
    }
    out << "ok\n";
    return 0;
  });
}

std::vector<std::int64_t> generate_lemma_values(std::int64_t p, std::uint64_t seed,
                                                const std::string& distribution) {
  std::mt19937_64 rng(seed);
  return draw_values(static_cast<std::size_t>(p - 1), 1, p - 1, rng, distribution);
}

int cmd_gen(Mode mode, std::int64_t n, std::uint64_t seed, const std::string& distribution,
            std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> values;
    std::ostringstream text;
    if (mode == Mode::Egz) {
      if (n > kMaxEgzN) throw std::invalid_argument("n must be <= 2^30");
      values = draw_values(static_cast<std::size_t>(2 * n - 1), 0, n - 1, rng, distribution);
      text << n << '\n';
    } else {
      const std::int64_t p = next_prime(std::max<std::int64_t>(n, 2));
      if (p > kMaxModulus) throw std::invalid_argument("n must stay below 2^31");
      values = draw_values(static_cast<std::size_t>(p - 1), 1, p - 1, rng, distribution);
      text << p << ' ' << std::uniform_int_distribution<std::int64_t>(0, p - 1)(rng) << '\n';
    }
    for (std::size_t k = 0; k < values.size(); ++k) text << (k ? " " : "") << values[k];
    out << text.str() << '\n';
    return 0;
  });
}

int cmd_bench(const BenchConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<LemmaMethod> methods;
    for (const auto& name : config.algorithms) methods.push_back(parse_lemma_method(name));
    out << "n,algorithm,seed,rep,micros,verified\n";
    for (std::int64_t size : config.sizes) {
      const std::int64_t p = next_prime(std::max<std::int64_t>(size, 2));
      if (p > kMaxModulus) throw std::invalid_argument("bench size must stay below 2^31");
      for (std::size_t a = 0; a < methods.size(); ++a) {
        EgzOptions options;
        options.method = methods[a];
        options.allow_theoretical = config.allow_theoretical;
        for (std::int64_t s = 0; s < config.seeds; ++s) {
          const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(s);
          const std::vector<std::int64_t> values = generate_lemma_values(p, seed, config.distribution);
          std::mt19937_64 trng(seed ^ 0x9e3779b97f4a7c15ULL);
          const Residue target = std::uniform_int_distribution<std::int64_t>(0, p - 1)(trng);
          for (std::int64_t rep = 0; rep < config.reps; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            const ConstructionResult res = solve_lemma2(p, values, target, options);
            const auto t1 = std::chrono::steady_clock::now();
            const bool ok = check_subset(p, values, res.indices, target).empty();
            const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
            out << p << ',' << config.algorithms[a] << ',' << seed << ',' << rep << ',' << micros
                << ',' << (ok ? "true" : "false") << '\n';
          }
        }
      }
    }
    return 0;
  });
}

int run(int argc, char** argv) {
  CLI::App app{"Zero-sum subsequences (Erdos-Ginzburg-Ziv) and prime subset sums"};
  app.require_subcommand(1);

  std::string mode = "egz";
  std::string algorithm = "auto";
  std::string input = "-";
  bool allow_theoretical = false;
  const auto modes = CLI::IsMember({"egz", "lemma"});
  const auto algorithms = CLI::IsMember({"auto", "dp", "nlogn", "practical", "theoretical"});

  auto* solve = app.add_subcommand("solve", "Solve one instance read from stdin");
  solve->add_option("--mode", mode, "egz or lemma")->check(modes);
  solve->add_option("--algorithm", algorithm, "Lemma solver")->check(algorithms);
  solve->add_flag("--allow-theoretical", allow_theoretical, "Let auto use the growth pipeline");
  solve->add_option("--input", input, "Input file, - for stdin");

  auto* verify = app.add_subcommand("verify", "Check an instance followed by a solution");
  verify->add_option("--mode", mode, "egz or lemma")->check(modes);
  verify->add_option("--input", input, "Input file, - for stdin");

  std::int64_t n = 0;
  std::uint64_t seed = 1;
  std::string dist = "uniform";
  auto* gen = app.add_subcommand("gen", "Generate a deterministic instance");
  gen->add_option("--mode", mode, "egz or lemma")->check(modes);
  gen->add_option("--n", n, "Size (lemma mode rounds up to a prime)")->required();
  gen->add_option("--seed", seed, "64-bit seed");
  gen->add_option("--dist", dist, "uniform | few-distinct:d | adversarial-equal");

  BenchConfig bench_cfg;
  std::string sizes = "1009";
  std::string algos = "practical";
  auto* bench = app.add_subcommand("bench", "Time lemma solvers, CSV on stdout");
  bench->add_option("--sizes", sizes, "Comma-separated sizes, rounded up to primes");
  bench->add_option("--algorithms", algos, "Comma-separated solvers");
  bench->add_option("--seed", bench_cfg.seed, "First seed");
  bench->add_option("--seeds", bench_cfg.seeds, "Number of seeds");
  bench->add_option("--reps", bench_cfg.reps, "Repetitions per instance");
  bench->add_option("--dist", bench_cfg.distribution, "Instance distribution");
  bench->add_flag("--allow-theoretical", bench_cfg.allow_theoretical, "Let auto use the growth pipeline");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  auto with_input = [&](auto&& fn) {
    if (input == "-") return fn(std::cin);
    std::ifstream file(input);
    if (!file) {
      std::cerr << "error: cannot open " << input << '\n';
      return 2;
    }
    return fn(file);
  };

  if (*solve) {
    EgzOptions options;
    options.method = parse_lemma_method(algorithm);
    options.allow_theoretical = allow_theoretical;
    return with_input([&](std::istream& in) {
      return cmd_solve(parse_mode(mode), options, in, std::cout, std::cerr);
    });
  }
  if (*verify) {
    return with_input([&](std::istream& in) {
      return cmd_verify(parse_mode(mode), in, std::cout, std::cerr);
    });
  }
  if (*gen) return cmd_gen(parse_mode(mode), n, seed, dist, std::cout, std::cerr);

  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
      if (!item.empty()) parts.push_back(item);
    }
    return parts;
  };
  return guarded(std::cerr, [&] {
    for (const auto& s : split(sizes)) {
      std::int64_t v = 0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size() || v < 1) {
        throw std::invalid_argument("bad size '" + s + "'");
      }
      bench_cfg.sizes.push_back(v);
    }
    bench_cfg.algorithms = split(algos);
    return cmd_bench(bench_cfg, std::cout, std::cerr);
  });
}

}  // namespace egz::cli
