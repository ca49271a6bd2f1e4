// Copyright 2026 The Morphlab Authors
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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <iterator>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "morphlab/error.hpp"
#include "morphlab/specification.hpp"

namespace morphlab {

enum class Strategy {
  kFirstOrderComplete,
  kKthOrderComplete,
  kCombinatorialComplete,
  kPermutationComplete,
};

constexpr std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kFirstOrderComplete: return "FirstOrderComplete";
    case Strategy::kKthOrderComplete: return "KthOrderComplete";
    case Strategy::kCombinatorialComplete: return "CombinatorialComplete";
    case Strategy::kPermutationComplete: return "PermutationComplete";
  }
  return "";
}

/// Accepts both the CamelCase names and the CLI spellings (first-order,
/// kth-order, combinatorial, permutation).
inline std::optional<Strategy> parse_strategy(std::string_view s) {
  if (s == "FirstOrderComplete" || s == "first-order") return Strategy::kFirstOrderComplete;
  if (s == "KthOrderComplete" || s == "kth-order") return Strategy::kKthOrderComplete;
  if (s == "CombinatorialComplete" || s == "combinatorial") {
    return Strategy::kCombinatorialComplete;
  }
  if (s == "PermutationComplete" || s == "permutation") return Strategy::kPermutationComplete;
  return std::nullopt;
}

struct StrategyRequest {
  Strategy strategy = Strategy::kFirstOrderComplete;
  std::vector<std::string> datamorphisms;
  int k = 1;  // KthOrderComplete only
};

struct StrategyOptions {
  std::size_t max_cases = 1'000'000;
  unsigned workers = 1;
};

/// A datamorphism raised on one tuple. The tuple is skipped.
struct GenerationFailure {
  std::string datamorphism;
  std::vector<TestCaseId> tuple;
  std::string reason;
};

struct StrategyOutcome {
  std::size_t created = 0;
  std::vector<std::size_t> created_per_round;
  std::vector<GenerationFailure> failures;
};

namespace detail {

inline std::size_t saturating_pow(std::size_t base, int exp) {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && out > kMax / base) return kMax;
    out *= base;
  }
  return out;
}

inline std::size_t saturating_add(std::size_t a, std::size_t b) {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  return a > kMax - b ? kMax : a + b;
}

/// Number of k-tuples over [0, total) with at least one index >= frontier.
inline std::size_t fresh_tuple_count(std::size_t total, std::size_t frontier, int k) {
  return saturating_pow(total, k) - saturating_pow(frontier, k);
}

/// Lexicographic k-tuples of positions in [0, total) with at least one
/// position >= frontier.
inline std::vector<std::vector<std::size_t>> fresh_tuples(std::size_t total,
                                                          std::size_t frontier, int k) {
  std::vector<std::vector<std::size_t>> out;
  if (total == 0 || frontier >= total) return out;
  std::vector<std::size_t> digits(static_cast<std::size_t>(k), 0);
  while (true) {
    if (std::any_of(digits.begin(), digits.end(),
                    [&](std::size_t d) { return d >= frontier; })) {
      out.push_back(digits);
    }
    int pos = k - 1;
    while (pos >= 0 && ++digits[static_cast<std::size_t>(pos)] == total) {
      digits[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

template <typename In, typename Out>
std::vector<const Morphism<In, Out>*> resolve_datamorphisms(
    const TestSpecification<In, Out>& spec, std::span<const std::string> names) {
  std::vector<const Morphism<In, Out>*> out;
  for (const auto& name : names) {
    out.push_back(&spec.get(MorphismKind::kDatamorphism, name));
  }
  return out;
}

/// Applies `d` to every tuple (positions into `pool`) and returns the new
/// mutants in tuple order. Evaluation may fan out over `workers` threads;
/// ids are assigned afterwards in canonical order.
template <typename In, typename Out>
std::vector<TestCase<In, Out>> apply_datamorphism(
    TestSpecification<In, Out>& spec, const Morphism<In, Out>& d,
    const std::vector<std::vector<std::size_t>>& tuples, unsigned workers,
    std::vector<GenerationFailure>& failures) {
  using case_type = TestCase<In, Out>;
  const auto& pool = spec.pool();
  const auto& fn = std::get<typename Morphism<In, Out>::DatamorphismFn>(d.fn);

  std::vector<std::optional<In>> inputs(tuples.size());
  std::vector<std::string> errors(tuples.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<const case_type*> args;
    for (std::size_t t = begin; t < end; ++t) {
      args.clear();
      for (auto pos : tuples[t]) args.push_back(&pool[pos]);
      try {
        inputs[t] = fn(std::span<const case_type* const>(args));
      } catch (const std::exception& e) {
        errors[t] = e.what();
      } catch (...) {
        errors[t] = "unknown exception";
      }
    }
  };
  const std::size_t n = tuples.size();
  if (workers <= 1 || n < 64) {
    work(0, n);
  } else {
    std::vector<std::jthread> threads;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t b = 0; b < n; b += chunk) {
      threads.emplace_back(work, b, std::min(n, b + chunk));
    }
  }

  std::vector<case_type> made;
  made.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<TestCaseId> origin_ids;
    for (auto pos : tuples[t]) origin_ids.push_back(pool[pos].id);
    if (!inputs[t]) {
      failures.push_back({d.info.name, std::move(origin_ids),
                          errors[t].empty() ? "no value" : errors[t]});
      continue;
    }
    case_type tc;
    tc.id = spec.new_id();
    tc.input = std::move(*inputs[t]);
    tc.feature = Feature::kMutant;
    tc.type = d.info.name;
    tc.origins = std::move(origin_ids);
    made.push_back(std::move(tc));
  }
  return made;
}

inline void guard(std::size_t projected, const StrategyOptions& opts) {
  if (projected > opts.max_cases) {
    throw Error(ErrorCode::kSizeGuardExceeded,
                "projected pool size " + std::to_string(projected) +
                    " exceeds the cap of " + std::to_string(opts.max_cases));
  }
}

/// K rounds of first-order generation. Round r draws tuples from the whole
/// pool but only those containing at least one case created in round r-1
/// (the initial pool counts as round 0), so no (datamorphism, tuple) pair is
/// generated twice.
template <typename In, typename Out>
StrategyOutcome iterate_rounds(TestSpecification<In, Out>& spec,
                               const std::vector<const Morphism<In, Out>*>& ds, int rounds,
                               const StrategyOptions& opts) {
  std::size_t total = spec.pool().size();
  std::size_t frontier = 0;
  for (int r = 0; r < rounds; ++r) {
    std::size_t grow = 0;
    for (const auto* d : ds) {
      grow = saturating_add(grow, fresh_tuple_count(total, frontier, d->info.arity));
    }
    frontier = total;
    total = saturating_add(total, grow);
    guard(total, opts);
  }

  StrategyOutcome outcome;
  frontier = 0;
  for (int r = 0; r < rounds; ++r) {
    const std::size_t source = spec.pool().size();
    std::vector<TestCase<In, Out>> round;
    for (const auto* d : ds) {
      auto made = apply_datamorphism(spec, *d, fresh_tuples(source, frontier, d->info.arity),
                                     opts.workers, outcome.failures);
      std::move(made.begin(), made.end(), std::back_inserter(round));
    }
    for (auto& tc : round) spec.pool().add(std::move(tc));
    outcome.created_per_round.push_back(round.size());
    outcome.created += round.size();
    frontier = source;
  }
  return outcome;
}

}  // namespace detail

/// Appends every first-order mutant of the current pool: for each selected
/// k-ary datamorphism, in order, one mutant per ordered k-tuple (with
/// repetition) of the cases present when the run starts.
template <typename In, typename Out>
StrategyOutcome first_order_complete(TestSpecification<In, Out>& spec,
                                     std::span<const std::string> datamorphisms,
                                     const StrategyOptions& opts = {}) {
  const auto ds = detail::resolve_datamorphisms(spec, datamorphisms);
  return detail::iterate_rounds(spec, ds, 1, opts);
}

/// K successive first-order rounds, each taking the previous output as its
/// input. The result holds every mutant of order <= K exactly once.
template <typename In, typename Out>
StrategyOutcome kth_order_complete(TestSpecification<In, Out>& spec,
                                   std::span<const std::string> datamorphisms, int k,
                                   const StrategyOptions& opts = {}) {
  if (k < 1) {
    throw Error(ErrorCode::kInvalidArgument, "K must be at least 1, got " + std::to_string(k));
  }
  const auto ds = detail::resolve_datamorphisms(spec, datamorphisms);
  return detail::iterate_rounds(spec, ds, k, opts);
}

/// N'th order completeness for N selected datamorphisms: every application
/// order of the selection is present.
template <typename In, typename Out>
StrategyOutcome permutation_complete(TestSpecification<In, Out>& spec,
                                     std::span<const std::string> datamorphisms,
                                     const StrategyOptions& opts = {}) {
  const auto ds = detail::resolve_datamorphisms(spec, datamorphisms);
  return detail::iterate_rounds(spec, ds, static_cast<int>(ds.size()), opts);
}

/// Accumulating generation: for each datamorphism d in the given order, the
/// pool grows by d applied to every tuple of the pool as it stands. Every
/// subset of the selection then appears as some case's combination
/// signature. The order of `datamorphisms` matters.
template <typename In, typename Out>
StrategyOutcome combinatorial_complete(TestSpecification<In, Out>& spec,
                                       std::span<const std::string> datamorphisms,
                                       const StrategyOptions& opts = {}) {
  const auto ds = detail::resolve_datamorphisms(spec, datamorphisms);
  std::size_t projected = spec.pool().size();
  for (const auto* d : ds) {
    projected = detail::saturating_add(projected,
                                       detail::saturating_pow(projected, d->info.arity));
  }
  detail::guard(projected, opts);

  StrategyOutcome outcome;
  for (const auto* d : ds) {
    auto made = detail::apply_datamorphism(
        spec, *d, detail::fresh_tuples(spec.pool().size(), 0, d->info.arity), opts.workers,
        outcome.failures);
    outcome.created_per_round.push_back(made.size());
    outcome.created += made.size();
    for (auto& tc : made) spec.pool().add(std::move(tc));
  }
  return outcome;
}

template <typename In, typename Out>
StrategyOutcome run_strategy(TestSpecification<In, Out>& spec, const StrategyRequest& req,
                             const StrategyOptions& opts = {}) {
  switch (req.strategy) {
    case Strategy::kFirstOrderComplete:
      return first_order_complete(spec, std::span<const std::string>(req.datamorphisms), opts);
    case Strategy::kKthOrderComplete:
      return kth_order_complete(spec, std::span<const std::string>(req.datamorphisms), req.k,
                                opts);
    case Strategy::kCombinatorialComplete:
      return combinatorial_complete(spec, std::span<const std::string>(req.datamorphisms),
                                    opts);
    case Strategy::kPermutationComplete:
      return permutation_complete(spec, std::span<const std::string>(req.datamorphisms), opts);
  }
  return {};
}

}  // namespace morphlab
