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
#include <chrono>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "morphlab/error.hpp"
#include "morphlab/specification.hpp"
#include "morphlab/strategy.hpp"
#include "morphlab/text.hpp"

namespace morphlab {

struct ActivityReport {
  std::string activity;
  std::string started;   // UTC ISO-8601
  std::string finished;  // UTC ISO-8601
  std::size_t cases_affected = 0;
  std::size_t failures = 0;
  std::vector<std::string> details;
};

/// One failed metamorphism check. str() is the message-panel form:
///
///   -- Rule: <message> on test case:
///   {
///    id:...,
///    ...
///   }
struct ErrorReport {
  std::string metamorphism;
  std::string message;
  std::string test_case_display;

  std::string str() const {
    return "-- Rule: " + message + " on test case:\n" + test_case_display;
  }
};

struct CheckResult {
  ActivityReport report;
  std::vector<ErrorReport> errors;
};

using Measurements = std::vector<std::pair<std::string, double>>;

struct CaseMeasurements {
  TestCaseId id;
  Measurements values;
};

struct AnalysisReport {
  std::string analyser;
  std::string text;
};

namespace detail {

inline std::string now_utc() { return text::iso8601_utc(std::chrono::system_clock::now()); }

inline ActivityReport begin_report(std::string activity) {
  ActivityReport r;
  r.activity = std::move(activity);
  r.started = now_utc();
  return r;
}

template <typename In, typename Out>
std::vector<const Morphism<In, Out>*> resolve(const TestSpecification<In, Out>& spec,
                                              MorphismKind kind,
                                              std::span<const std::string> names) {
  std::vector<const Morphism<In, Out>*> out;
  for (const auto& name : names) out.push_back(&spec.get(kind, name));
  return out;
}

/// Runs `fn(i)` for i in [0, n), split across `workers` threads.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn fn) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> threads;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t b = 0; b < n; b += chunk) {
    threads.emplace_back([&, b] {
      for (std::size_t i = b; i < std::min(n, b + chunk); ++i) fn(i);
    });
  }
}

inline std::string describe(const std::exception_ptr& ep) {
  try {
    std::rethrow_exception(ep);
  } catch (const std::exception& e) {
    return e.what();
  } catch (...) {
    return "unknown exception";
  }
}

}  // namespace detail

/// Seed: invokes each named seed maker once, in the given order.
template <typename In, typename Out>
ActivityReport run_seed_makers(TestSpecification<In, Out>& spec,
                               std::span<const std::string> names) {
  auto report = detail::begin_report("Seed");
  const auto makers = detail::resolve(spec, MorphismKind::kSeedMaker, names);
  for (const auto* m : makers) {
    SeedContext<In, Out> ctx(spec, m->info.name);
    try {
      std::get<typename Morphism<In, Out>::SeedMakerFn>(m->fn)(ctx);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kSeedMakerFailure, m->info.name + ": " + e.what());
    }
    report.cases_affected += ctx.added();
    report.details.push_back(m->info.name + " added " + std::to_string(ctx.added()) +
                             " test cases");
  }
  report.finished = detail::now_utc();
  return report;
}

namespace detail {

inline void describe_outcome(ActivityReport& report, const StrategyOutcome& outcome) {
  report.cases_affected = outcome.created;
  report.failures = outcome.failures.size();
  report.details.push_back("generated " + std::to_string(outcome.created) +
                           " mutant test cases");
  for (const auto& f : outcome.failures) {
    std::vector<std::string> ids;
    for (const auto& id : f.tuple) ids.push_back(id.str());
    report.details.push_back("DatamorphismFailure(" + f.datamorphism + ", [" +
                             text::join(ids, ",") + "]): " + f.reason);
  }
}

}  // namespace detail

/// Mutate: one first-order round over the whole current pool.
template <typename In, typename Out>
ActivityReport run_datamorphisms(TestSpecification<In, Out>& spec,
                                 std::span<const std::string> names,
                                 const StrategyOptions& opts = {}) {
  auto report = detail::begin_report("Mutate");
  detail::describe_outcome(report, first_order_complete(spec, names, opts));
  report.finished = detail::now_utc();
  return report;
}

template <typename In, typename Out>
ActivityReport run_strategy_activity(TestSpecification<In, Out>& spec,
                                     const StrategyRequest& req,
                                     const StrategyOptions& opts = {}) {
  auto report = detail::begin_report("Strategy " + std::string(to_string(req.strategy)));
  detail::describe_outcome(report, run_strategy(spec, req, opts));
  report.finished = detail::now_utc();
  return report;
}

/// Filter: applies test set filters in order; each sees the pool left by the
/// previous one. A filter may only drop cases.
template <typename In, typename Out>
ActivityReport run_test_set_filters(TestSpecification<In, Out>& spec,
                                    std::span<const std::string> names) {
  auto report = detail::begin_report("Filter");
  const auto filters = detail::resolve(spec, MorphismKind::kTestSetFilter, names);
  for (const auto* f : filters) {
    TestPool<In, Out> kept;
    try {
      kept = std::get<typename Morphism<In, Out>::TestSetFilterFn>(f->fn)(spec.pool());
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kFilterFailure, f->info.name + ": " + e.what());
    }
    std::unordered_set<TestCaseId> keep_ids;
    for (const auto& tc : kept) {
      if (!spec.pool().contains(tc.id)) {
        throw Error(ErrorCode::kFilterFailure,
                    f->info.name + ": returned case " + tc.id.str() + " not in the pool");
      }
      keep_ids.insert(tc.id);
    }
    std::vector<TestCaseId> drop;
    for (const auto& tc : spec.pool()) {
      if (!keep_ids.count(tc.id)) drop.push_back(tc.id);
    }
    spec.pool().remove(drop);
    report.cases_affected += drop.size();
    report.details.push_back(f->info.name + " removed " + std::to_string(drop.size()) +
                             " test cases");
  }
  report.finished = detail::now_utc();
  return report;
}

/// Measure: each named test set metric evaluated once on the pool.
template <typename In, typename Out>
Measurements measure_pool(const TestSpecification<In, Out>& spec,
                          std::span<const std::string> names) {
  Measurements out;
  for (const auto* m : detail::resolve(spec, MorphismKind::kTestSetMetric, names)) {
    try {
      out.emplace_back(m->info.name,
                       std::get<typename Morphism<In, Out>::TestSetMetricFn>(m->fn)(spec.pool()));
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kMetricFailure, m->info.name + ": " + e.what());
    }
  }
  return out;
}

/// Per-case test case metric values, in pool order. Not stored in the pool.
template <typename In, typename Out>
std::vector<CaseMeasurements> measure_test_cases(const TestSpecification<In, Out>& spec,
                                                 std::span<const std::string> names) {
  const auto metrics = detail::resolve(spec, MorphismKind::kTestCaseMetric, names);
  std::vector<CaseMeasurements> out;
  out.reserve(spec.pool().size());
  for (const auto& tc : spec.pool()) {
    CaseMeasurements row{tc.id, {}};
    for (const auto* m : metrics) {
      try {
        row.values.emplace_back(
            m->info.name,
            std::get<typename Morphism<In, Out>::TestCaseMetricFn>(m->fn)(tc, spec.pool()));
      } catch (const std::exception& e) {
        throw Error(ErrorCode::kMetricFailure, m->info.name + ": " + e.what());
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

/// Ids of the cases a test case filter selects, in pool order.
template <typename In, typename Out>
std::vector<TestCaseId> select_test_cases(const TestSpecification<In, Out>& spec,
                                          const std::string& filter) {
  const auto& f = spec.get(MorphismKind::kTestCaseFilter, filter);
  const auto& fn = std::get<typename Morphism<In, Out>::TestCaseFilterFn>(f.fn);
  std::vector<TestCaseId> out;
  for (const auto& tc : spec.pool()) {
    if (fn(tc, spec.pool())) out.push_back(tc.id);
  }
  return out;
}

/// Execute: output := executer(input) for every case, overwriting earlier
/// outputs. A case whose execution raises keeps no output and is listed in
/// the report; the run continues. An empty name selects the first
/// registered executer.
template <typename In, typename Out>
ActivityReport execute_pool(TestSpecification<In, Out>& spec, const std::string& executer,
                            unsigned workers = 1) {
  auto report = detail::begin_report("Execute");
  const Morphism<In, Out>* m = nullptr;
  if (executer.empty()) {
    const auto& all = spec.list(MorphismKind::kTestExecuter);
    if (all.empty()) {
      throw Error(ErrorCode::kUnregisteredMorphism, "no TestExecuter is registered");
    }
    m = &all.front();
  } else {
    m = &spec.get(MorphismKind::kTestExecuter, executer);
  }
  const auto& fn = std::get<typename Morphism<In, Out>::ExecuterFn>(m->fn);
  auto& pool = spec.pool();
  const std::size_t n = pool.size();
  std::vector<std::optional<Out>> outputs(n);
  std::vector<std::string> errors(n);
  detail::parallel_for(n, m->info.pure ? workers : 1u, [&](std::size_t i) {
    try {
      outputs[i] = fn(pool[i].input);
    } catch (...) {
      errors[i] = detail::describe(std::current_exception());
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    pool[i].output = std::move(outputs[i]);
    if (pool[i].output) {
      ++report.cases_affected;
    } else {
      ++report.failures;
      report.details.push_back("ExecutionFailure(" + pool[i].id.str() + "): " +
                               (errors[i].empty() ? "no output" : errors[i]));
    }
  }
  report.details.insert(report.details.begin(),
                        m->info.name + " executed " + std::to_string(report.cases_affected) +
                            " of " + std::to_string(n) + " test cases");
  report.finished = detail::now_utc();
  return report;
}

/// Whether metamorphism `m` applies to `tc` under its applicability
/// declaration.
template <typename In, typename Out>
bool applies_to(const MorphismInfo& m, const TestCase<In, Out>& tc) {
  if (m.applicable_feature && *m.applicable_feature != tc.feature) return false;
  if (m.applicable_datamorphism && *m.applicable_datamorphism != tc.type) return false;
  if (m.applicable_datamorphism && !tc.is_mutant()) return false;
  return true;
}

/// Check: evaluates the selected metamorphisms on every executed case they
/// apply to and records verdicts. Only correctness entries change. A
/// metamorphism that raises counts as a failure.
template <typename In, typename Out>
CheckResult check_pool(TestSpecification<In, Out>& spec, std::span<const std::string> names,
                       unsigned workers = 1) {
  CheckResult result;
  result.report = detail::begin_report("Check");
  const auto mms = detail::resolve(spec, MorphismKind::kMetamorphism, names);
  auto& pool = spec.pool();
  const CheckContext<In, Out> ctx(pool, spec.aux_pools());

  struct Outcome {
    const Morphism<In, Out>* m;
    Verdict verdict;
    std::string raised;
  };
  const std::size_t n = pool.size();
  std::vector<std::vector<Outcome>> outcomes(n);
  detail::parallel_for(n, workers, [&](std::size_t i) {
    const auto& tc = pool[i];
    if (!tc.output) return;
    for (const auto* m : mms) {
      if (!applies_to(m->info, tc)) continue;
      Outcome o{m, Verdict::kFail, {}};
      try {
        if (std::get<typename Morphism<In, Out>::MetamorphismFn>(m->fn)(tc, ctx)) {
          o.verdict = Verdict::kPass;
        }
      } catch (...) {
        o.raised = detail::describe(std::current_exception());
      }
      outcomes[i].push_back(std::move(o));
    }
  });

  std::size_t skipped = 0;
  std::size_t checks = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto& tc = pool[i];
    if (!tc.output) {
      ++skipped;
      continue;
    }
    for (const auto& o : outcomes[i]) tc.correctness.set(o.m->info.name, o.verdict);
    checks += outcomes[i].size();
    for (const auto& o : outcomes[i]) {
      if (o.verdict == Verdict::kPass) continue;
      std::string message = o.m->info.message.empty() ? o.m->info.name : o.m->info.message;
      if (!o.raised.empty()) message += " [MetamorphismFailure: " + o.raised + "]";
      result.errors.push_back({o.m->info.name, std::move(message), display(tc, spec.codec())});
    }
    if (!outcomes[i].empty()) ++result.report.cases_affected;
  }
  result.report.failures = result.errors.size();
  result.report.details.push_back("checked " + std::to_string(checks) + " metamorphism(s) on " +
                                  std::to_string(result.report.cases_affected) +
                                  " test cases, " + std::to_string(result.errors.size()) +
                                  " failed");
  if (skipped) {
    result.report.details.push_back("warning: skipped " + std::to_string(skipped) +
                                    " unexecuted test cases");
  }
  result.report.finished = detail::now_utc();
  return result;
}

/// Analyse: each analyser reads the pool and returns a report text.
template <typename In, typename Out>
std::vector<AnalysisReport> analyse(const TestSpecification<In, Out>& spec,
                                    std::span<const std::string> names) {
  std::vector<AnalysisReport> out;
  for (const auto* a : detail::resolve(spec, MorphismKind::kAnalyser, names)) {
    try {
      out.push_back({a->info.name,
                     std::get<typename Morphism<In, Out>::AnalyserFn>(a->fn)(spec.pool())});
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kAnalyserFailure, a->info.name + ": " + e.what());
    }
  }
  return out;
}

}  // namespace morphlab
