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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "morphlab/activity.hpp"
#include "morphlab/error.hpp"
#include "morphlab/lineage.hpp"
#include "morphlab/persistence.hpp"
#include "morphlab/specification.hpp"
#include "morphlab/strategy.hpp"

namespace morphlab {

/// Text view of one test case, independent of the domain types.
struct CaseView {
  TestCaseId id;
  std::string input;
  std::optional<std::string> output;
  Feature feature = Feature::kOriginal;
  std::string type;
  std::vector<TestCaseId> origins;
  std::string correctness;
  bool detached = false;
};

/// Domain-erased handle on a loaded test specification. Sessions, scripts,
/// the CLI and the HTTP service work through this interface.
class SpecRuntime {
 public:
  virtual ~SpecRuntime() = default;

  virtual const std::string& name() const = 0;
  virtual const std::string& domain() const = 0;
  virtual std::vector<MorphismInfo> inventory() const = 0;
  virtual bool has(MorphismKind kind, const std::string& name) const = 0;

  virtual std::size_t pool_size() const = 0;
  virtual std::vector<CaseView> cases() const = 0;
  virtual std::string display_case(const TestCaseId& id) const = 0;
  virtual std::vector<GenerationSignature> signatures() const = 0;
  virtual std::size_t order_of(const TestCaseId& id) const = 0;
  virtual std::set<std::string> combination_of(const TestCaseId& id) const = 0;

  virtual ActivityReport seed(std::span<const std::string> names) = 0;
  virtual ActivityReport mutate(std::span<const std::string> names,
                                const StrategyOptions& opts) = 0;
  virtual ActivityReport strategy(const StrategyRequest& req, const StrategyOptions& opts) = 0;
  virtual ActivityReport filter(std::span<const std::string> names) = 0;
  virtual Measurements measure(std::span<const std::string> names) const = 0;
  virtual std::vector<CaseMeasurements> measure_cases(
      std::span<const std::string> names) const = 0;
  virtual std::vector<TestCaseId> select(const std::string& filter) const = 0;
  virtual ActivityReport execute(const std::string& executer, unsigned workers) = 0;
  virtual CheckResult check(std::span<const std::string> names, unsigned workers) = 0;
  virtual std::vector<AnalysisReport> analyse(std::span<const std::string> names) const = 0;

  virtual void remove(std::span<const TestCaseId> ids) = 0;
  virtual void clear() = 0;

  virtual nlohmann::json pool_json() const = 0;
  virtual void load_pool_json(const nlohmann::json& doc) = 0;
  virtual nlohmann::json aux_pools_json() const = 0;
  virtual void load_aux_pools_json(const nlohmann::json& doc) = 0;
  virtual void save_pool(const std::filesystem::path& path) const = 0;
  virtual void load_pool(const std::filesystem::path& path) = 0;

  virtual void reseed(std::uint64_t seed) = 0;
  virtual std::optional<std::uint64_t> random_seed() const = 0;
  virtual Parameters& parameters() = 0;
};

template <typename In, typename Out>
class BoundSpec final : public SpecRuntime {
 public:
  explicit BoundSpec(TestSpecification<In, Out> spec) : spec_(std::move(spec)) {}

  TestSpecification<In, Out>& spec() { return spec_; }
  const TestSpecification<In, Out>& spec() const { return spec_; }

  const std::string& name() const override { return spec_.name(); }
  const std::string& domain() const override { return spec_.domain(); }
  std::vector<MorphismInfo> inventory() const override { return spec_.inventory(); }
  bool has(MorphismKind kind, const std::string& name) const override {
    return spec_.find(kind, name) != nullptr;
  }

  std::size_t pool_size() const override { return spec_.pool().size(); }

  std::vector<CaseView> cases() const override {
    std::vector<CaseView> out;
    out.reserve(spec_.pool().size());
    const auto& codec = spec_.codec();
    for (const auto& tc : spec_.pool()) {
      CaseView v;
      v.id = tc.id;
      v.input = codec.input_to_text(tc.input);
      if (tc.output) v.output = codec.output_to_text(*tc.output);
      v.feature = tc.feature;
      v.type = tc.type;
      v.origins = tc.origins;
      v.correctness = tc.correctness.str();
      v.detached = spec_.pool().is_detached(tc.id);
      out.push_back(std::move(v));
    }
    return out;
  }

  std::string display_case(const TestCaseId& id) const override {
    return display(spec_.pool().get(id), spec_.codec());
  }
  std::vector<GenerationSignature> signatures() const override {
    return generation_signatures(spec_.pool());
  }
  std::size_t order_of(const TestCaseId& id) const override {
    return mutant_order(spec_.pool().get(id), spec_.pool());
  }
  std::set<std::string> combination_of(const TestCaseId& id) const override {
    return combination_signature(spec_.pool().get(id), spec_.pool());
  }

  ActivityReport seed(std::span<const std::string> names) override {
    return run_seed_makers(spec_, names);
  }
  ActivityReport mutate(std::span<const std::string> names,
                        const StrategyOptions& opts) override {
    return run_datamorphisms(spec_, names, opts);
  }
  ActivityReport strategy(const StrategyRequest& req, const StrategyOptions& opts) override {
    return run_strategy_activity(spec_, req, opts);
  }
  ActivityReport filter(std::span<const std::string> names) override {
    return run_test_set_filters(spec_, names);
  }
  Measurements measure(std::span<const std::string> names) const override {
    return measure_pool(spec_, names);
  }
  std::vector<CaseMeasurements> measure_cases(std::span<const std::string> names) const override {
    return measure_test_cases(spec_, names);
  }
  std::vector<TestCaseId> select(const std::string& filter) const override {
    return select_test_cases(spec_, filter);
  }
  ActivityReport execute(const std::string& executer, unsigned workers) override {
    return execute_pool(spec_, executer, workers);
  }
  CheckResult check(std::span<const std::string> names, unsigned workers) override {
    return check_pool(spec_, names, workers);
  }
  std::vector<AnalysisReport> analyse(std::span<const std::string> names) const override {
    return morphlab::analyse(spec_, names);
  }

  void remove(std::span<const TestCaseId> ids) override { spec_.pool().remove(ids); }

  void clear() override {
    spec_.pool().clear();
    for (auto& [name, pool] : spec_.aux_pools()) pool.clear();
  }

  nlohmann::json pool_json() const override {
    return pool_to_json(spec_.pool(), spec_.codec(), spec_.domain());
  }
  void load_pool_json(const nlohmann::json& doc) override {
    spec_.pool() = pool_from_json(doc, spec_.codec(), spec_.domain());
  }
  nlohmann::json aux_pools_json() const override {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [name, pool] : spec_.aux_pools()) {
      out[name] = pool_to_json(pool, spec_.codec(), spec_.domain());
    }
    return out;
  }
  void load_aux_pools_json(const nlohmann::json& doc) override {
    spec_.aux_pools().clear();
    for (const auto& [name, pool] : doc.items()) {
      spec_.aux_pool(name) = pool_from_json(pool, spec_.codec(), spec_.domain());
    }
  }
  void save_pool(const std::filesystem::path& path) const override {
    save_test_set(spec_.pool(), spec_.codec(), spec_.domain(), path);
  }
  void load_pool(const std::filesystem::path& path) override {
    spec_.pool() = load_test_set(path, spec_.codec(), spec_.domain());
  }

  void reseed(std::uint64_t seed) override { spec_.reseed(seed); }
  std::optional<std::uint64_t> random_seed() const override { return spec_.random_seed(); }
  Parameters& parameters() override { return spec_.parameters(); }

 private:
  TestSpecification<In, Out> spec_;
};

template <typename In, typename Out>
std::unique_ptr<SpecRuntime> bind(TestSpecification<In, Out> spec) {
  return std::make_unique<BoundSpec<In, Out>>(std::move(spec));
}

/// Named factories for the specifications a session can load.
class SpecCatalog {
 public:
  using Factory = std::function<std::unique_ptr<SpecRuntime>(const Parameters&)>;

  struct Entry {
    std::string name;
    std::string description;
    Factory factory;
  };

  void add(std::string name, std::string description, Factory factory) {
    entries_.push_back({std::move(name), std::move(description), std::move(factory)});
  }

  bool contains(const std::string& name) const { return find(name) != nullptr; }

  std::unique_ptr<SpecRuntime> create(const std::string& name, const Parameters& params) const {
    const auto* e = find(name);
    if (!e) throw Error(ErrorCode::kUnknownSpec, "no built-in test specification '" + name + "'");
    auto rt = e->factory(params);
    for (const auto& [k, v] : params) rt->parameters()[k] = v;
    return rt;
  }

  const std::vector<Entry>& entries() const { return entries_; }

 private:
  const Entry* find(const std::string& name) const {
    for (const auto& e : entries_) {
      if (e.name == name) return &e;
    }
    return nullptr;
  }

  std::vector<Entry> entries_;
};

}  // namespace morphlab
