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

#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "morphlab/test_pool.hpp"
#include "morphlab/text.hpp"

namespace morphlab::specs {

/// Statistics report shared by the built-in specifications:
///
///   Statistics:
///   Total number of test cases = N
///   Number of original test cases = N
///   Number of mutant test cases = N
///    -- <type> avg = <v>      (with a numeric projection of the output)
///    -- <type> count = <n>    (without one)
///
/// Per-type lines cover mutants only and are sorted by type name.
template <typename In, typename Out>
std::string statistics_report(
    const TestPool<In, Out>& pool,
    const std::function<std::optional<double>(const Out&)>& value = {}) {
  std::size_t originals = 0, mutants = 0;
  std::map<std::string, std::pair<double, std::size_t>> by_type;
  std::map<std::string, std::size_t> counts;
  for (const auto& tc : pool) {
    if (tc.is_seed()) {
      ++originals;
      continue;
    }
    ++mutants;
    ++counts[tc.type];
    if (value && tc.output) {
      if (auto v = value(*tc.output)) {
        auto& [sum, n] = by_type[tc.type];
        sum += *v;
        ++n;
      }
    }
  }
  std::string out = "Statistics:\n";
  out += "Total number of test cases = " + std::to_string(pool.size()) + "\n";
  out += "Number of original test cases = " + std::to_string(originals) + "\n";
  out += "Number of mutant test cases = " + std::to_string(mutants) + "\n";
  if (value) {
    for (const auto& [type, acc] : by_type) {
      out += " -- " + type + " avg = " +
             text::format_double(acc.first / static_cast<double>(acc.second)) + "\n";
    }
  } else {
    for (const auto& [type, n] : counts) {
      out += " -- " + type + " count = " + std::to_string(n) + "\n";
    }
  }
  return out;
}

/// Share of checked test cases holding at least one failed verdict.
template <typename In, typename Out>
std::string pass_fail_report(const TestPool<In, Out>& pool) {
  std::size_t checked = 0, failed = 0, verdicts = 0, failed_verdicts = 0;
  for (const auto& tc : pool) {
    if (tc.correctness.empty()) continue;
    ++checked;
    bool any = false;
    for (const auto& [name, v] : tc.correctness.entries()) {
      ++verdicts;
      if (v == Verdict::kFail) {
        ++failed_verdicts;
        any = true;
      }
    }
    if (any) ++failed;
  }
  char rate[32];
  std::snprintf(rate, sizeof rate, "%.3f%%",
                checked ? 100.0 * static_cast<double>(failed) / static_cast<double>(checked) : 0.0);
  std::string out = "Checked test cases = " + std::to_string(checked) + "\n";
  out += "Failed test cases = " + std::to_string(failed) + "\n";
  out += "Verdicts = " + std::to_string(verdicts) + " (" + std::to_string(failed_verdicts) +
         " fail)\n";
  out += "Error rate = " + std::string(rate) + "\n";
  return out;
}

}  // namespace morphlab::specs
