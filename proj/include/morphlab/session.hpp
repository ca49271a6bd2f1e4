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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "morphlab/error.hpp"
#include "morphlab/persistence.hpp"
#include "morphlab/runtime.hpp"
#include "morphlab/script.hpp"
#include "morphlab/text.hpp"

namespace morphlab {

/// The state one tester works with: the loaded specification and its
/// pools, the random seed, the script buffer and the two message panels
/// (activity log and error log). Every public action can be recorded as a
/// script command.
class Session {
 public:
  explicit Session(const SpecCatalog& catalog, Parameters params = {})
      : catalog_(&catalog), params_(std::move(params)) {}

  // -- Management ----------------------------------------------------------

  void load_spec(const std::string& name) {
    auto rt = catalog_->create(name, params_);
    if (random_seed_) rt->reseed(*random_seed_);
    spec_ = std::move(rt);
    log("loadTestSpec: " + name);
    record("loadTestSpec", {name});
  }

  void load_test_set(const std::string& path) {
    require_spec().load_pool(path);
    log("loadTestSet: " + std::to_string(spec_->pool_size()) + " test cases from " + path);
    record("loadTestSet", {path});
  }

  void save_test_set(const std::string& path) {
    require_spec().save_pool(path);
    log("saveTestSet: " + std::to_string(spec_->pool_size()) + " test cases to " + path);
    record("saveTestSet", {path});
  }

  /// Writes `header` and the activity log so far to `path`; analyser and
  /// measurement output then streams there until redirected again.
  void save_message(const std::string& path, const std::string& header) {
    sink_.redirect(path, header, messages_);
    record("saveMessage", {path, header});
  }

  void set_random_seed(std::uint64_t seed) {
    random_seed_ = seed;
    if (spec_) spec_->reseed(seed);
    log("setRandomSeed: " + std::to_string(seed));
    record("setRandomSeed", {std::to_string(seed)});
  }

  /// Removes all test cases, messages and, unless recording, the script.
  void clear() {
    if (spec_) spec_->clear();
    messages_.clear();
    errors_.clear();
    if (!recording_) script_ = {};
    record("clear", {});
  }

  // -- Activities ----------------------------------------------------------

  ActivityReport make_seeds(const std::vector<std::string>& names) {
    auto r = require_spec().seed(names);
    log_report(r);
    record("makeSeeds", names);
    return r;
  }

  ActivityReport mutate(const std::vector<std::string>& names) {
    auto r = require_spec().mutate(names, strategy_options());
    log_report(r);
    record("mutate", names);
    return r;
  }

  ActivityReport filter(const std::vector<std::string>& names) {
    auto r = require_spec().filter(names);
    log_report(r);
    record("filter", names);
    return r;
  }

  Measurements measure(const std::vector<std::string>& names) {
    auto values = require_spec().measure(names);
    std::vector<std::string> lines;
    for (const auto& [name, v] : values) lines.push_back(name + "," + text::format_double(v));
    for (const auto& l : lines) log("measure: " + l);
    sink_.write(lines);
    record("measure", names);
    return values;
  }

  ActivityReport execute(const std::string& executer = {}) {
    auto r = require_spec().execute(executer, workers_);
    log_report(r);
    record("executeTestCases", executer.empty() ? std::vector<std::string>{}
                                                : std::vector<std::string>{executer});
    return r;
  }

  CheckResult check(const std::vector<std::string>& names) {
    auto r = require_spec().check(names, workers_);
    log_report(r.report);
    for (const auto& e : r.errors) errors_.push_back(e.str());
    record("check", names);
    return r;
  }

  std::vector<AnalysisReport> analyse(const std::vector<std::string>& names) {
    auto reports = require_spec().analyse(names);
    for (const auto& a : reports) {
      auto lines = text::split(a.text, '\n');
      while (!lines.empty() && lines.back().empty()) lines.pop_back();
      for (const auto& l : lines) log(l);
      sink_.write(lines);
    }
    record("analyse", names);
    return reports;
  }

  ActivityReport strategy(const StrategyRequest& req) {
    auto r = require_spec().strategy(req, strategy_options());
    log_report(r);
    std::vector<std::string> args{std::string(to_string(req.strategy)),
                                  script::render_list(req.datamorphisms)};
    if (req.strategy == Strategy::kKthOrderComplete) args.push_back(std::to_string(req.k));
    record("strategy", std::move(args));
    return r;
  }

  void remove_cases(std::span<const TestCaseId> ids) {
    require_spec().remove(ids);
    log("removed " + std::to_string(ids.size()) + " test cases");
  }

  // -- Script buffer -------------------------------------------------------

  void start_recording() { recording_ = true; }
  void stop_recording() { recording_ = false; }
  bool recording() const { return recording_; }
  const Script& script() const { return script_; }
  void set_script(Script s) { script_ = std::move(s); }

  /// Appends `cmd` to the script buffer when recording is on.
  void record_command(ScriptCommand cmd) {
    if (recording_ && !playing_) script_.append(std::move(cmd));
  }

  /// Executes one script command. Recording is suppressed while a script
  /// plays.
  ActivityReport run(const ScriptCommand& cmd) {
    const auto& a = cmd.args;
    auto simple = [&](std::string activity, std::string detail) {
      ActivityReport r;
      r.activity = std::move(activity);
      r.started = r.finished = text::iso8601_utc(std::chrono::system_clock::now());
      r.details.push_back(std::move(detail));
      return r;
    };
    if (cmd.name == "loadTestSpec") {
      load_spec(a.at(0));
      return simple("loadTestSpec", a.at(0));
    }
    if (cmd.name == "loadTestSet") {
      load_test_set(a.at(0));
      return simple("loadTestSet", a.at(0));
    }
    if (cmd.name == "saveTestSet") {
      save_test_set(a.at(0));
      return simple("saveTestSet", a.at(0));
    }
    if (cmd.name == "saveMessage") {
      save_message(a.at(0), a.size() > 1 ? a[1] : "");
      return simple("saveMessage", a.at(0));
    }
    if (cmd.name == "setRandomSeed") {
      auto seed = text::parse_int(a.at(0));
      if (!seed) throw Error(ErrorCode::kInvalidArgument, "bad seed '" + a.at(0) + "'");
      set_random_seed(static_cast<std::uint64_t>(*seed));
      return simple("setRandomSeed", a.at(0));
    }
    if (cmd.name == "clear") {
      clear();
      return simple("clear", "");
    }
    if (cmd.name == "makeSeeds") return make_seeds(a);
    if (cmd.name == "mutate") return mutate(a);
    if (cmd.name == "filter") return filter(a);
    if (cmd.name == "executeTestCases") return execute(a.empty() ? "" : a[0]);
    if (cmd.name == "check") return check(a).report;
    if (cmd.name == "measure") {
      auto values = measure(a);
      auto r = simple("Measure", "");
      r.details.clear();
      for (const auto& [n, v] : values) r.details.push_back(n + " = " + text::format_double(v));
      return r;
    }
    if (cmd.name == "analyse") {
      auto reports = analyse(a);
      auto r = simple("Analyse", "");
      r.details.clear();
      for (const auto& rep : reports) r.details.push_back(rep.text);
      return r;
    }
    if (cmd.name == "strategy") {
      StrategyRequest req;
      auto s = parse_strategy(a.at(0));
      if (!s) throw Error(ErrorCode::kInvalidArgument, "unknown strategy '" + a.at(0) + "'");
      req.strategy = *s;
      req.datamorphisms = script::list_items(a.at(1), cmd.line);
      if (a.size() > 2) req.k = static_cast<int>(text::parse_int(a[2]).value_or(1));
      return strategy(req);
    }
    throw Error(ErrorCode::kUnknownCommand, "'" + cmd.name + "'");
  }

  /// Plays `s` in order, stopping at the first failing command.
  std::vector<ActivityReport> play(const Script& s) {
    std::vector<ActivityReport> out;
    playing_ = true;
    struct Reset {
      bool& flag;
      ~Reset() { flag = false; }
    } reset{playing_};
    for (const auto& cmd : s.commands()) {
      try {
        out.push_back(run(cmd));
      } catch (const std::exception& e) {
        throw LineError(ErrorCode::kCommandFailure, cmd.line, e.what());
      }
    }
    return out;
  }

  // -- State ---------------------------------------------------------------

  bool has_spec() const { return spec_ != nullptr; }
  SpecRuntime& spec() { return require_spec(); }
  const SpecRuntime& spec() const {
    if (!spec_) throw Error(ErrorCode::kInvalidArgument, "no test specification is loaded");
    return *spec_;
  }
  const std::vector<std::string>& messages() const { return messages_; }
  const std::vector<std::string>& errors() const { return errors_; }
  std::optional<std::uint64_t> random_seed() const { return random_seed_; }
  Parameters& parameters() { return params_; }

  void set_workers(unsigned w) { workers_ = w == 0 ? 1 : w; }
  unsigned workers() const { return workers_; }
  void set_max_cases(std::size_t n) { max_cases_ = n; }
  std::size_t max_cases() const { return max_cases_; }

  StrategyOptions strategy_options() const { return {max_cases_, workers_}; }

  /// Session file: spec name, pools, script buffer, message log, seed.
  nlohmann::json to_json() const {
    nlohmann::json j;
    j["schema"] = kSessionSchema;
    j["specName"] = spec_ ? spec_->name() : "";
    j["randomSeed"] = random_seed_ ? nlohmann::json(*random_seed_) : nlohmann::json();
    j["parameters"] = params_;
    j["mainPool"] = spec_ ? spec_->pool_json() : nlohmann::json();
    j["auxPools"] = spec_ ? spec_->aux_pools_json() : nlohmann::json::object();
    j["script"] = render_script(script_);
    j["messageLog"] = messages_;
    j["errorLog"] = errors_;
    return j;
  }

  void from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("schema", "") != kSessionSchema) {
      throw Error(ErrorCode::kSchemaVersionMismatch,
                  "expected " + std::string(kSessionSchema) + " session file");
    }
    try {
      params_ = j.value("parameters", Parameters{});
      random_seed_.reset();
      if (j.contains("randomSeed") && !j["randomSeed"].is_null()) {
        random_seed_ = j["randomSeed"].get<std::uint64_t>();
      }
      spec_.reset();
      const auto name = j.value("specName", "");
      if (!name.empty()) {
        spec_ = catalog_->create(name, params_);
        if (random_seed_) spec_->reseed(*random_seed_);
        spec_->load_pool_json(j.at("mainPool"));
        spec_->load_aux_pools_json(j.value("auxPools", nlohmann::json::object()));
      }
      script_ = parse_script(j.value("script", ""));
      messages_ = j.value("messageLog", std::vector<std::string>{});
      errors_ = j.value("errorLog", std::vector<std::string>{});
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw schema_error(std::string("session: ") + e.what());
    }
  }

  void save_session(const std::filesystem::path& path) const {
    io::write_file(path, to_json().dump(1) + "\n");
  }

  void load_session(const std::filesystem::path& path) {
    from_json(io::parse_json(io::read_file(path)));
  }

 private:
  SpecRuntime& require_spec() {
    if (!spec_) throw Error(ErrorCode::kInvalidArgument, "no test specification is loaded");
    return *spec_;
  }

  void log(std::string line) { messages_.push_back(std::move(line)); }

  void log_report(const ActivityReport& r) {
    for (const auto& d : r.details) log(r.activity + ": " + d);
  }

  void record(std::string name, std::vector<std::string> args) {
    record_command(ScriptCommand{std::move(name), std::move(args), 0});
  }

  const SpecCatalog* catalog_;
  Parameters params_;
  std::unique_ptr<SpecRuntime> spec_;
  std::optional<std::uint64_t> random_seed_;
  Script script_;
  bool recording_ = false;
  bool playing_ = false;
  std::vector<std::string> messages_;
  std::vector<std::string> errors_;
  MessageSink sink_;
  unsigned workers_ = 1;
  std::size_t max_cases_ = StrategyOptions{}.max_cases;
};

/// Plays `s` against `session`; see Session::play.
inline std::vector<ActivityReport> play_script(Session& session, const Script& s) {
  return session.play(s);
}

}  // namespace morphlab
