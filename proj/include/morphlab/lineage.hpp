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
#include <functional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "morphlab/error.hpp"
#include "morphlab/test_pool.hpp"

namespace morphlab {

namespace detail {

template <typename In, typename Out>
const TestCase<In, Out>& resolve_origin(const TestPool<In, Out>& pool,
                                        const TestCase<In, Out>& tc,
                                        const TestCaseId& origin) {
  const auto* found = pool.find(origin);
  if (!found) {
    throw Error(ErrorCode::kDetachedOrigin,
                "origin " + origin.str() + " of " + tc.id.str() + " is not in the pool");
  }
  return *found;
}

template <typename In, typename Out>
std::size_t order_of(const TestCase<In, Out>& tc, const TestPool<In, Out>& pool,
                     std::unordered_map<TestCaseId, std::size_t>& memo) {
  if (tc.origins.empty()) return 0;
  if (auto it = memo.find(tc.id); it != memo.end()) return it->second;
  std::size_t deepest = 0;
  for (const auto& origin : tc.origins) {
    deepest = std::max(deepest, order_of(resolve_origin(pool, tc, origin), pool, memo));
  }
  memo.emplace(tc.id, deepest + 1);
  return deepest + 1;
}

}  // namespace detail

/// Height of the case's generation tree: 0 for seeds, 1 + the largest
/// origin order for mutants.
template <typename In, typename Out>
std::size_t mutant_order(const TestCase<In, Out>& tc, const TestPool<In, Out>& pool) {
  std::unordered_map<TestCaseId, std::size_t> memo;
  return detail::order_of(tc, pool, memo);
}

/// Set of datamorphism names used anywhere in the case's ancestry.
template <typename In, typename Out>
std::set<std::string> combination_signature(const TestCase<In, Out>& tc,
                                            const TestPool<In, Out>& pool) {
  std::set<std::string> names;
  std::vector<const TestCase<In, Out>*> stack{&tc};
  std::set<TestCaseId> seen;
  while (!stack.empty()) {
    const auto* cur = stack.back();
    stack.pop_back();
    if (cur->is_seed() || !seen.insert(cur->id).second) continue;
    names.insert(cur->type);
    for (const auto& origin : cur->origins) {
      stack.push_back(&detail::resolve_origin(pool, *cur, origin));
    }
  }
  return names;
}

/// Renders the generation tree as an expression, e.g. `sum(negate(s0),s1)`.
/// Seeds are rendered with `leaf`.
template <typename In, typename Out>
std::string tree_expression(
    const TestCase<In, Out>& tc, const TestPool<In, Out>& pool,
    const std::function<std::string(const TestCase<In, Out>&)>& leaf) {
  if (tc.is_seed()) return leaf(tc);
  std::string out = tc.type + "(";
  for (std::size_t i = 0; i < tc.origins.size(); ++i) {
    if (i) out += ',';
    out += tree_expression(detail::resolve_origin(pool, tc, tc.origins[i]), pool, leaf);
  }
  return out + ")";
}

/// Type plus pool positions of the origins. Two pools built by the same
/// deterministic steps have equal sequences of these even when ids differ.
struct GenerationSignature {
  std::string type;
  std::vector<std::size_t> origin_positions;

  friend bool operator==(const GenerationSignature&, const GenerationSignature&) = default;
  friend auto operator<=>(const GenerationSignature&, const GenerationSignature&) = default;
};

template <typename In, typename Out>
std::vector<GenerationSignature> generation_signatures(const TestPool<In, Out>& pool) {
  std::vector<GenerationSignature> out;
  out.reserve(pool.size());
  for (const auto& tc : pool) {
    GenerationSignature sig{tc.type, {}};
    for (const auto& origin : tc.origins) {
      sig.origin_positions.push_back(pool.contains(origin) ? pool.position_of(origin)
                                                           : static_cast<std::size_t>(-1));
    }
    out.push_back(std::move(sig));
  }
  return out;
}

}  // namespace morphlab
