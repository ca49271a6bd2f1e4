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

// morphlab: command-line driver for the built-in test specifications.
//
// Exit codes: 0 success, 1 usage error or unknown name, 2 command failure.

#include <csignal>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "morphlab/http_service.hpp"
#include "morphlab/session.hpp"
#include "morphlab/specs/builtin.hpp"

namespace {

using morphlab::Error;
using morphlab::ErrorCode;
using morphlab::MorphismKind;

constexpr int kUsage = 1;
constexpr int kFailure = 2;

struct Common {
  std::string spec;
  std::vector<std::string> params;
  unsigned jobs = 1;
  std::optional<std::uint64_t> seed_rng;
  std::size_t max_cases = morphlab::StrategyOptions{}.max_cases;
};

/// Thrown for errors that map to exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

morphlab::Parameters parse_params(const std::vector<std::string>& raw) {
  morphlab::Parameters out;
  for (const auto& p : raw) {
    auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + p + "'");
    out[p.substr(0, eq)] = p.substr(eq + 1);
  }
  return out;
}

void add_common(CLI::App* cmd, Common& c, bool need_spec) {
  auto* spec = cmd->add_option("--spec", c.spec, "Built-in test specification");
  if (need_spec) spec->required();
  cmd->add_option("--param", c.params, "Session parameter key=value (repeatable)");
  cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--seed-rng", c.seed_rng, "Random seed for seed makers and ids");
  cmd->add_option("--max-cases", c.max_cases, "Strategy size guard");
}

morphlab::Session open_session(const morphlab::SpecCatalog& catalog, const Common& c) {
  morphlab::Session s(catalog, parse_params(c.params));
  s.set_workers(c.jobs);
  s.set_max_cases(c.max_cases);
  if (c.seed_rng) s.set_random_seed(*c.seed_rng);
  if (!c.spec.empty()) {
    if (!catalog.contains(c.spec)) throw UsageError("unknown test specification '" + c.spec + "'");
    s.load_spec(c.spec);
  }
  return s;
}

void require_names(const morphlab::Session& s, MorphismKind kind,
                   const std::vector<std::string>& names) {
  const auto& rt = s.spec();
  for (const auto& n : names) {
    if (!rt.has(kind, n)) {
      throw UsageError("unknown " + std::string(to_string(kind)) + " '" + n + "'");
    }
  }
}

void print_report(const morphlab::ActivityReport& r) {
  for (const auto& d : r.details) std::cout << r.activity << ": " << d << "\n";
}

void print_errors(const morphlab::CheckResult& r, const std::string& report_path) {
  std::string all;
  for (const auto& e : r.errors) all += e.str() + "\n";
  if (!report_path.empty()) {
    morphlab::io::write_file(report_path, all);
  } else {
    std::cout << all;
  }
}

int cmd_specs(const morphlab::SpecCatalog& catalog, const std::string& only) {
  bool found = only.empty();
  for (const auto& e : catalog.entries()) {
    if (!only.empty() && e.name != only) continue;
    found = true;
    std::cout << e.name << " - " << e.description << "\n";
    for (const auto& m : e.factory({})->inventory()) {
      std::cout << "  " << to_string(m.kind) << " " << m.name;
      if (m.kind == MorphismKind::kDatamorphism) std::cout << "/" << m.arity;
      if (m.applicable_feature) std::cout << " [" << to_string(*m.applicable_feature) << "]";
      if (m.applicable_datamorphism) std::cout << " [" << *m.applicable_datamorphism << "]";
      std::cout << "\n";
    }
  }
  if (!found) throw UsageError("unknown test specification '" + only + "'");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGPIPE, SIG_IGN);
  const auto catalog = morphlab::specs::builtin_catalog();

  CLI::App app{"Datamorphic test automation"};
  app.require_subcommand(1);

  // specs
  std::string specs_only;
  auto* specs = app.add_subcommand("specs", "List built-in specifications and their morphisms");
  specs->add_option("--spec", specs_only, "Only this specification");

  // run
  Common run_c;
  std::string run_script, run_session_out;
  auto* run = app.add_subcommand("run", "Play a test script");
  add_common(run, run_c, false);
  run->add_option("--script", run_script, "Script file")->required()->check(CLI::ExistingFile);
  run->add_option("--session-out", run_session_out, "Write the final session here");

  // strategy
  Common st_c;
  std::string st_strategy = "first-order", st_out, st_pool;
  std::vector<std::string> st_morphisms, st_seeders;
  int st_k = 1;
  auto* strategy = app.add_subcommand("strategy", "Generate test cases with a combination strategy");
  add_common(strategy, st_c, true);
  strategy->add_option("--strategy", st_strategy,
                       "first-order | kth-order | combinatorial | permutation")
      ->capture_default_str();
  strategy->add_option("--morphisms", st_morphisms, "Datamorphisms")->delimiter(',')->required();
  strategy->add_option("--k", st_k, "Order for kth-order");
  strategy->add_option("--seeders", st_seeders, "Seed makers")->delimiter(',');
  strategy->add_option("--pool", st_pool, "Start from this test set")->check(CLI::ExistingFile);
  strategy->add_option("--out", st_out, "Output test set")->required();

  // exec
  Common ex_c;
  std::string ex_pool, ex_out, ex_executer;
  auto* exec = app.add_subcommand("exec", "Execute the program under test on a test set");
  add_common(exec, ex_c, true);
  exec->add_option("--pool", ex_pool, "Input test set")->required()->check(CLI::ExistingFile);
  exec->add_option("--out", ex_out, "Output test set")->required();
  exec->add_option("--executer", ex_executer, "Executer (default: the first registered)");

  // check
  Common ck_c;
  std::string ck_pool, ck_report, ck_out;
  std::vector<std::string> ck_mms;
  auto* check = app.add_subcommand("check", "Check executed test cases against metamorphisms");
  add_common(check, ck_c, true);
  check->add_option("--pool", ck_pool, "Input test set")->required()->check(CLI::ExistingFile);
  check->add_option("--metamorphisms", ck_mms, "Metamorphisms")->delimiter(',')->required();
  check->add_option("--report", ck_report, "Write error reports here instead of stdout");
  check->add_option("--out", ck_out, "Write the checked test set");

  // analyse
  Common an_c;
  std::string an_pool, an_out;
  std::vector<std::string> an_names;
  auto* analyse = app.add_subcommand("analyse", "Run analysers on a test set");
  add_common(analyse, an_c, true);
  analyse->add_option("--pool", an_pool, "Input test set")->required()->check(CLI::ExistingFile);
  analyse->add_option("--analysers", an_names, "Analysers")->delimiter(',')->required();
  analyse->add_option("--out", an_out, "Write the analysis here instead of stdout");

  // serve
  int sv_port = 8080;
  std::string sv_host = "127.0.0.1", sv_ui;
  unsigned sv_jobs = 1;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", sv_port, "Port (0 picks a free one)");
  serve->add_option("--host", sv_host, "Bind address");
  serve->add_option("--ui-dir", sv_ui, "Static files served at /")->check(CLI::ExistingDirectory);
  serve->add_option("--jobs", sv_jobs, "Worker threads per session")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*specs) return cmd_specs(catalog, specs_only);

    if (*run) {
      auto s = open_session(catalog, run_c);
      auto script = morphlab::parse_script(morphlab::io::read_file(run_script));
      int rc = 0;
      try {
        for (const auto& r : s.play(script)) print_report(r);
      } catch (const morphlab::LineError& e) {
        std::cerr << "morphlab: " << run_script << ": " << e.what() << "\n";
        rc = kFailure;
      }
      for (const auto& e : s.errors()) std::cout << e << "\n";
      if (!run_session_out.empty()) s.save_session(run_session_out);
      return rc;
    }

    if (*strategy) {
      auto s = open_session(catalog, st_c);
      auto kind = morphlab::parse_strategy(st_strategy);
      if (!kind) throw UsageError("unknown strategy '" + st_strategy + "'");
      require_names(s, MorphismKind::kDatamorphism, st_morphisms);
      require_names(s, MorphismKind::kSeedMaker, st_seeders);
      if (!st_pool.empty()) s.load_test_set(st_pool);
      if (!st_seeders.empty()) print_report(s.make_seeds(st_seeders));
      morphlab::StrategyRequest req{*kind, st_morphisms, st_k};
      print_report(s.strategy(req));
      s.save_test_set(st_out);
      std::cout << "pool size: " << s.spec().pool_size() << "\n";
      return 0;
    }

    if (*exec) {
      auto s = open_session(catalog, ex_c);
      if (!ex_executer.empty()) require_names(s, MorphismKind::kTestExecuter, {ex_executer});
      s.load_test_set(ex_pool);
      print_report(s.execute(ex_executer));
      s.save_test_set(ex_out);
      return 0;
    }

    if (*check) {
      auto s = open_session(catalog, ck_c);
      require_names(s, MorphismKind::kMetamorphism, ck_mms);
      s.load_test_set(ck_pool);
      auto r = s.check(ck_mms);
      print_errors(r, ck_report);
      print_report(r.report);
      if (!ck_out.empty()) s.save_test_set(ck_out);
      return 0;
    }

    if (*analyse) {
      auto s = open_session(catalog, an_c);
      require_names(s, MorphismKind::kAnalyser, an_names);
      s.load_test_set(an_pool);
      std::string all;
      for (const auto& a : s.analyse(an_names)) all += a.text;
      if (an_out.empty()) {
        std::cout << all;
      } else {
        morphlab::io::write_file(an_out, all);
      }
      return 0;
    }

    if (*serve) {
      morphlab::HttpService::Options opts;
      opts.ui_dir = sv_ui;
      opts.workers = sv_jobs;
      morphlab::HttpService svc(catalog, opts);
      int port = sv_port;
      if (port == 0) {
        port = svc.bind_to_any_port(sv_host);
      } else if (!svc.server().bind_to_port(sv_host, port)) {
        port = -1;
      }
      if (port < 0) {
        std::cerr << "morphlab: cannot bind " << sv_host << ":" << sv_port << "\n";
        return kFailure;
      }
      std::cout << "listening on http://" << sv_host << ":" << port << std::endl;
      return svc.listen_after_bind() ? 0 : kFailure;
    }
  } catch (const UsageError& e) {
    std::cerr << "morphlab: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "morphlab: " << e.what() << "\n";
    return e.code() == ErrorCode::kUnknownSpec ? kUsage : kFailure;
  } catch (const std::exception& e) {
    std::cerr << "morphlab: " << e.what() << "\n";
    return kFailure;
  }
  return 0;
}
