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

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "morphlab/test_case.hpp"
#include "morphlab/test_pool.hpp"

namespace morphlab {

/// The nine kinds of test morphism. The order matches the alternatives of
/// Morphism::Callable.
enum class MorphismKind {
  kSeedMaker,
  kDatamorphism,
  kMetamorphism,
  kTestCaseMetric,
  kTestCaseFilter,
  kTestSetMetric,
  kTestSetFilter,
  kTestExecuter,
  kAnalyser,
};

inline constexpr std::array<MorphismKind, 9> kAllMorphismKinds = {
    MorphismKind::kSeedMaker,      MorphismKind::kDatamorphism,
    MorphismKind::kMetamorphism,   MorphismKind::kTestCaseMetric,
    MorphismKind::kTestCaseFilter, MorphismKind::kTestSetMetric,
    MorphismKind::kTestSetFilter,  MorphismKind::kTestExecuter,
    MorphismKind::kAnalyser,
};

constexpr std::string_view to_string(MorphismKind kind) {
  switch (kind) {
    case MorphismKind::kSeedMaker: return "SeedMaker";
    case MorphismKind::kDatamorphism: return "Datamorphism";
    case MorphismKind::kMetamorphism: return "Metamorphism";
    case MorphismKind::kTestCaseMetric: return "TestCaseMetric";
    case MorphismKind::kTestCaseFilter: return "TestCaseFilter";
    case MorphismKind::kTestSetMetric: return "TestSetMetric";
    case MorphismKind::kTestSetFilter: return "TestSetFilter";
    case MorphismKind::kTestExecuter: return "TestExecuter";
    case MorphismKind::kAnalyser: return "Analyser";
  }
  return "";
}

inline std::optional<MorphismKind> parse_morphism_kind(std::string_view s) {
  for (auto kind : kAllMorphismKinds) {
    if (to_string(kind) == s) return kind;
  }
  return std::nullopt;
}

/// Metadata shared by every kind. `arity` is non-zero only for
/// datamorphisms; the applicability fields and `message` only matter for
/// metamorphisms; `pure` marks executers that may run concurrently.
struct MorphismInfo {
  std::string name;
  MorphismKind kind = MorphismKind::kSeedMaker;
  int arity = 0;
  std::optional<Feature> applicable_feature;
  std::optional<std::string> applicable_datamorphism;
  std::string message;
  bool pure = true;
};

template <typename In, typename Out>
class SeedContext;

/// Read-only view handed to metamorphisms.
template <typename In, typename Out>
class CheckContext {
 public:
  using pool_type = TestPool<In, Out>;
  using case_type = TestCase<In, Out>;

  CheckContext(const pool_type& pool, const std::map<std::string, pool_type>& aux)
      : pool_(pool), aux_(aux) {}

  const pool_type& pool() const { return pool_; }

  const pool_type* aux_pool(const std::string& name) const {
    auto it = aux_.find(name);
    return it == aux_.end() ? nullptr : &it->second;
  }

  /// The i'th origin of `tc`, looked up in the main pool.
  const case_type& origin(const case_type& tc, std::size_t i = 0) const {
    if (i >= tc.origins.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  tc.id.str() + " has no origin #" + std::to_string(i));
    }
    return pool_.get(tc.origins[i]);
  }

 private:
  const pool_type& pool_;
  const std::map<std::string, pool_type>& aux_;
};

template <typename In, typename Out>
struct Morphism {
  using case_type = TestCase<In, Out>;
  using pool_type = TestPool<In, Out>;

  using SeedMakerFn = std::function<void(SeedContext<In, Out>&)>;
  using DatamorphismFn = std::function<In(std::span<const case_type* const>)>;
  using MetamorphismFn =
      std::function<bool(const case_type&, const CheckContext<In, Out>&)>;
  using TestCaseMetricFn = std::function<double(const case_type&, const pool_type&)>;
  using TestCaseFilterFn = std::function<bool(const case_type&, const pool_type&)>;
  using TestSetMetricFn = std::function<double(const pool_type&)>;
  using TestSetFilterFn = std::function<pool_type(const pool_type&)>;
  using ExecuterFn = std::function<Out(const In&)>;
  using AnalyserFn = std::function<std::string(const pool_type&)>;

  using Callable =
      std::variant<SeedMakerFn, DatamorphismFn, MetamorphismFn, TestCaseMetricFn,
                   TestCaseFilterFn, TestSetMetricFn, TestSetFilterFn,
                   ExecuterFn, AnalyserFn>;

  MorphismInfo info;
  Callable fn;
};

/// Adapts a one-argument mapping into a unary datamorphism callable.
template <typename In, typename Out, typename F>
typename Morphism<In, Out>::DatamorphismFn unary(F f) {
  return [f = std::move(f)](std::span<const TestCase<In, Out>* const> args) {
    return f(args[0]->input);
  };
}

template <typename In, typename Out, typename F>
typename Morphism<In, Out>::DatamorphismFn binary(F f) {
  return [f = std::move(f)](std::span<const TestCase<In, Out>* const> args) {
    return f(args[0]->input, args[1]->input);
  };
}

}  // namespace morphlab
