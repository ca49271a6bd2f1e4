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

#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "morphlab/error.hpp"
#include "morphlab/external_command.hpp"
#include "morphlab/specification.hpp"
#include "morphlab/specs/common.hpp"
#include "morphlab/text.hpp"

namespace morphlab::specs {

using ExternalSpec = TestSpecification<double, double>;
using ExternalCase = TestCase<double, double>;

inline Codec<double, double> number_codec() {
  auto parse = [](std::string_view s) {
    auto d = text::parse_double(text::trim(s));
    if (!d) throw Error(ErrorCode::kParseFailure, "bad number '" + std::string(s) + "'");
    return *d;
  };
  auto show = [](const double& d) { return text::format_double(d); };
  return {show, parse, show, parse};
}

/// Numeric inputs tested through an external program.
///
/// Parameters: `command` (template with `{input}`), `timeoutMs` (default
/// 30000), `maxChildren` (default 4), `seedInput` (numbers separated by
/// ';' for the inputSeeds maker).
inline ExternalSpec make_external_spec(const Parameters& params = {}) {
  ExternalSpec spec("external", "number", number_codec());

  auto param = [&](const char* key) -> std::optional<std::string> {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
  };
  ExternalCommand::Options opts;
  if (auto t = param("timeoutMs")) {
    auto v = text::parse_int(*t);
    if (!v || *v <= 0) throw Error(ErrorCode::kInvalidArgument, "bad timeoutMs '" + *t + "'");
    opts.timeout = std::chrono::milliseconds(*v);
  }
  if (auto m = param("maxChildren")) {
    auto v = text::parse_int(*m);
    if (!v || *v <= 0) throw Error(ErrorCode::kInvalidArgument, "bad maxChildren '" + *m + "'");
    opts.max_children = static_cast<unsigned>(*v);
  }
  std::shared_ptr<ExternalCommand> command;
  if (auto c = param("command")) command = std::make_shared<ExternalCommand>(*c, opts);

  spec.add_seed_maker("inputSeeds", [](auto& ctx) {
    for (const auto& piece : text::split_names(ctx.require_parameter("seedInput"), ';')) {
      ctx.add_input(ctx.codec().input_from_text(piece));
    }
  });
  spec.add_seed_maker("range10", [](auto& ctx) {
    for (int i = 0; i < 10; ++i) ctx.add_input(static_cast<double>(i));
  });

  spec.add_datamorphism("negate", 1, unary<double, double>([](double x) { return -x; }));
  spec.add_datamorphism("twice", 1, unary<double, double>([](double x) { return 2 * x; }));
  spec.add_datamorphism("sum", 2,
                        binary<double, double>([](double x, double y) { return x + y; }));

  spec.add_metamorphism(
      "finiteOutput",
      [](const ExternalCase& tc, const CheckContext<double, double>&) {
        return tc.output && std::isfinite(*tc.output);
      },
      {std::nullopt, std::nullopt, "Output is not a finite number."});

  spec.add_executer(
      "command",
      [command](const double& x) {
        if (!command) {
          throw Error(ErrorCode::kExecutionFailure, "parameter 'command' is not set");
        }
        return (*command)(text::format_double(x));
      },
      true);

  spec.add_test_case_metric("output", [](const ExternalCase& tc, const auto&) {
    return tc.output.value_or(0.0);
  });
  spec.add_analyser("statistics", [](const TestPool<double, double>& pool) {
    return statistics_report<double, double>(
        pool, [](const double& v) -> std::optional<double> { return v; });
  });
  spec.add_analyser("passFailRate", [](const TestPool<double, double>& pool) {
    return pass_fail_report(pool);
  });
  return spec;
}

}  // namespace morphlab::specs
