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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morphlab/error.hpp"
#include "morphlab/morphism.hpp"
#include "morphlab/random.hpp"
#include "morphlab/uuid.hpp"

namespace morphlab {

using Parameters = std::map<std::string, std::string>;

struct MetamorphismOptions {
  std::optional<Feature> applicable_feature;
  std::optional<std::string> applicable_datamorphism;
  std::string message;
};

/// A test specification: the morphism registry, the main pool, named
/// auxiliary pools and the random sources seed makers and id generation
/// draw from.
template <typename In, typename Out>
class TestSpecification {
 public:
  using case_type = TestCase<In, Out>;
  using pool_type = TestPool<In, Out>;
  using morphism_type = Morphism<In, Out>;

  /// Seed makers draw from `seed`; ids come from a second stream keyed by
  /// `seed ^ kIdStreamSalt` so adding id draws never shifts seed draws.
  static constexpr std::uint64_t kIdStreamSalt = 0x5851f42d4c957f2dULL;

  TestSpecification(std::string name, std::string domain, Codec<In, Out> codec)
      : name_(std::move(name)), domain_(std::move(domain)), codec_(std::move(codec)) {}

  const std::string& name() const { return name_; }
  const std::string& domain() const { return domain_; }
  const Codec<In, Out>& codec() const { return codec_; }

  void register_morphism(morphism_type m) {
    validate(m);
    auto& bucket = by_kind_[static_cast<std::size_t>(m.info.kind)];
    if (find(m.info.kind, m.info.name)) {
      throw Error(ErrorCode::kDuplicateName,
                  std::string(to_string(m.info.kind)) + " '" + m.info.name +
                      "' is already registered");
    }
    bucket.push_back(std::move(m));
  }

  void add_seed_maker(std::string name, typename morphism_type::SeedMakerFn fn) {
    add(std::move(name), MorphismKind::kSeedMaker, std::move(fn));
  }

  void add_datamorphism(std::string name, int arity,
                        typename morphism_type::DatamorphismFn fn) {
    morphism_type m{make_info(std::move(name), MorphismKind::kDatamorphism), std::move(fn)};
    m.info.arity = arity;
    register_morphism(std::move(m));
  }

  void add_metamorphism(std::string name, typename morphism_type::MetamorphismFn fn,
                        MetamorphismOptions opts = {}) {
    morphism_type m{make_info(std::move(name), MorphismKind::kMetamorphism), std::move(fn)};
    m.info.applicable_feature = opts.applicable_feature;
    m.info.applicable_datamorphism = std::move(opts.applicable_datamorphism);
    m.info.message = std::move(opts.message);
    register_morphism(std::move(m));
  }

  void add_test_case_metric(std::string name, typename morphism_type::TestCaseMetricFn fn) {
    add(std::move(name), MorphismKind::kTestCaseMetric, std::move(fn));
  }
  void add_test_case_filter(std::string name, typename morphism_type::TestCaseFilterFn fn) {
    add(std::move(name), MorphismKind::kTestCaseFilter, std::move(fn));
  }
  void add_test_set_metric(std::string name, typename morphism_type::TestSetMetricFn fn) {
    add(std::move(name), MorphismKind::kTestSetMetric, std::move(fn));
  }
  void add_test_set_filter(std::string name, typename morphism_type::TestSetFilterFn fn) {
    add(std::move(name), MorphismKind::kTestSetFilter, std::move(fn));
  }
  void add_executer(std::string name, typename morphism_type::ExecuterFn fn,
                    bool pure = true) {
    morphism_type m{make_info(std::move(name), MorphismKind::kTestExecuter), std::move(fn)};
    m.info.pure = pure;
    register_morphism(std::move(m));
  }
  void add_analyser(std::string name, typename morphism_type::AnalyserFn fn) {
    add(std::move(name), MorphismKind::kAnalyser, std::move(fn));
  }

  const morphism_type* find(MorphismKind kind, std::string_view name) const {
    for (const auto& m : by_kind_[static_cast<std::size_t>(kind)]) {
      if (m.info.name == name) return &m;
    }
    return nullptr;
  }

  const morphism_type& get(MorphismKind kind, std::string_view name) const {
    const auto* m = find(kind, name);
    if (!m) {
      throw Error(ErrorCode::kUnregisteredMorphism,
                  std::string(to_string(kind)) + " '" + std::string(name) +
                      "' is not registered");
    }
    return *m;
  }

  /// Registered morphisms of one kind, in registration order.
  const std::vector<morphism_type>& list(MorphismKind kind) const {
    return by_kind_[static_cast<std::size_t>(kind)];
  }

  std::vector<MorphismInfo> inventory() const {
    std::vector<MorphismInfo> out;
    for (const auto& bucket : by_kind_) {
      for (const auto& m : bucket) out.push_back(m.info);
    }
    return out;
  }

  pool_type& pool() { return main_pool_; }
  const pool_type& pool() const { return main_pool_; }

  /// Returns the named auxiliary pool, creating it empty on first use.
  pool_type& aux_pool(const std::string& name) { return aux_pools_[name]; }
  const std::map<std::string, pool_type>& aux_pools() const { return aux_pools_; }
  std::map<std::string, pool_type>& aux_pools() { return aux_pools_; }

  std::optional<std::uint64_t> random_seed() const { return random_seed_; }

  void reseed(std::uint64_t seed) {
    random_seed_ = seed;
    rng_ = SplitMix64(seed);
    ids_.reseed(seed ^ kIdStreamSalt);
  }

  SplitMix64& rng() { return rng_; }
  TestCaseId new_id() { return ids_.next(); }

  Parameters& parameters() { return parameters_; }
  const Parameters& parameters() const { return parameters_; }

 private:
  static MorphismInfo make_info(std::string name, MorphismKind kind) {
    MorphismInfo info;
    info.name = std::move(name);
    info.kind = kind;
    return info;
  }

  template <typename Fn>
  void add(std::string name, MorphismKind kind, Fn fn) {
    register_morphism(morphism_type{make_info(std::move(name), kind), std::move(fn)});
  }

  void validate(const morphism_type& m) const {
    auto bad = [&](const std::string& why) {
      throw Error(ErrorCode::kInvalidDescriptor, "'" + m.info.name + "': " + why);
    };
    if (m.info.name.empty()) bad("empty name");
    if (m.fn.index() != static_cast<std::size_t>(m.info.kind)) {
      bad("callable does not match kind " + std::string(to_string(m.info.kind)));
    }
    const bool empty_fn = std::visit([](const auto& f) { return !f; }, m.fn);
    if (empty_fn) bad("no callable");
    const bool is_dm = m.info.kind == MorphismKind::kDatamorphism;
    if (is_dm && m.info.arity < 1) bad("datamorphism arity must be at least 1");
    if (!is_dm && m.info.arity != 0) bad("arity is only meaningful for datamorphisms");
    const bool is_mm = m.info.kind == MorphismKind::kMetamorphism;
    if (!is_mm && (m.info.applicable_feature || m.info.applicable_datamorphism)) {
      bad("applicability is only meaningful for metamorphisms");
    }
    if (m.info.applicable_datamorphism &&
        !find(MorphismKind::kDatamorphism, *m.info.applicable_datamorphism)) {
      bad("applicable datamorphism '" + *m.info.applicable_datamorphism +
          "' is not registered");
    }
  }

  std::string name_;
  std::string domain_;
  Codec<In, Out> codec_;
  std::array<std::vector<morphism_type>, kAllMorphismKinds.size()> by_kind_;
  pool_type main_pool_;
  std::map<std::string, pool_type> aux_pools_;
  std::optional<std::uint64_t> random_seed_;
  SplitMix64 rng_{entropy_seed()};
  UuidGenerator ids_;
  Parameters parameters_;
};

/// What a seed maker sees: the main pool, auxiliary pools, the seeded
/// random source and the session parameters. Every case it adds is an
/// original whose type is the seed maker's name.
template <typename In, typename Out>
class SeedContext {
 public:
  using case_type = TestCase<In, Out>;
  using pool_type = TestPool<In, Out>;

  SeedContext(TestSpecification<In, Out>& spec, std::string maker)
      : spec_(spec), maker_(std::move(maker)) {}

  const case_type& add_input(In input) {
    case_type tc;
    tc.id = spec_.new_id();
    tc.input = std::move(input);
    return add_case(std::move(tc));
  }

  /// Adds a seed and records `expected` for it in the auxiliary pool
  /// `expected` under the same id.
  const case_type& add_input_with_expected(In input, Out expected,
                                           const std::string& aux = "expected") {
    const auto& tc = add_input(std::move(input));
    case_type copy = tc;
    copy.output = std::move(expected);
    spec_.aux_pool(aux).add(std::move(copy));
    return tc;
  }

  const case_type& add_case(case_type tc) {
    if (tc.id.empty()) tc.id = spec_.new_id();
    tc.feature = Feature::kOriginal;
    tc.origins.clear();
    tc.type = maker_;
    spec_.pool().add(std::move(tc));
    ++added_;
    return spec_.pool()[spec_.pool().size() - 1];
  }

  const pool_type& pool() const { return spec_.pool(); }
  pool_type& aux_pool(const std::string& name) { return spec_.aux_pool(name); }
  SplitMix64& rng() { return spec_.rng(); }
  const Codec<In, Out>& codec() const { return spec_.codec(); }

  std::optional<std::string> parameter(const std::string& key) const {
    auto it = spec_.parameters().find(key);
    if (it == spec_.parameters().end()) return std::nullopt;
    return it->second;
  }

  std::string require_parameter(const std::string& key) const {
    auto v = parameter(key);
    if (!v) {
      throw Error(ErrorCode::kInvalidArgument,
                  "seed maker '" + maker_ + "' needs parameter '" + key + "'");
    }
    return *v;
  }

  std::size_t added() const { return added_; }

 private:
  TestSpecification<In, Out>& spec_;
  std::string maker_;
  std::size_t added_ = 0;
};

}  // namespace morphlab
