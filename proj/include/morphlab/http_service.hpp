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
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "morphlab/error.hpp"
#include "morphlab/session.hpp"
#include "morphlab/uuid.hpp"

namespace morphlab {

inline constexpr const char* kApiSchema = "morphlab/api/1";

namespace api {

using nlohmann::json;

inline json to_json(const ActivityReport& r) {
  return {{"activity", r.activity},         {"started", r.started},
          {"finished", r.finished},         {"casesAffected", r.cases_affected},
          {"failures", r.failures},         {"details", r.details}};
}

inline json to_json(const CheckResult& r) {
  json j = to_json(r.report);
  j["errors"] = json::array();
  for (const auto& e : r.errors) {
    j["errors"].push_back(
        {{"metamorphism", e.metamorphism}, {"message", e.message}, {"text", e.str()}});
  }
  return j;
}

inline json to_json(const MorphismInfo& m) {
  json j = {{"kind", std::string(to_string(m.kind))}, {"name", m.name}, {"arity", m.arity}};
  j["applicableFeature"] =
      m.applicable_feature ? json(std::string(to_string(*m.applicable_feature))) : json();
  j["applicableDatamorphism"] =
      m.applicable_datamorphism ? json(*m.applicable_datamorphism) : json();
  j["message"] = m.message;
  return j;
}

inline json to_json(const CaseView& v) {
  json origins = json::array();
  for (const auto& o : v.origins) origins.push_back(o.str());
  return {{"id", v.id.str()},
          {"input", v.input},
          {"output", v.output ? json(*v.output) : json()},
          {"feature", std::string(to_string(v.feature))},
          {"type", v.type},
          {"origins", origins},
          {"correctness", v.correctness},
          {"detached", v.detached}};
}

inline json signatures_json(const SpecRuntime& rt) {
  json out = json::array();
  for (const auto& s : rt.signatures()) out.push_back({{"type", s.type}, {"origins", s.origin_positions}});
  return out;
}

inline std::vector<std::string> names_of(const json& body, const char* key = "names") {
  if (!body.is_object() || !body.contains(key)) return {};
  const auto& v = body.at(key);
  if (!v.is_array()) throw Error(ErrorCode::kInvalidArgument, std::string("'") + key + "' must be a list");
  std::vector<std::string> out;
  for (const auto& n : v) {
    if (!n.is_string()) throw Error(ErrorCode::kInvalidArgument, std::string("'") + key + "' must hold strings");
    out.push_back(n.get<std::string>());
  }
  return out;
}

inline StrategyRequest strategy_from_json(const json& body) {
  if (!body.is_object()) throw Error(ErrorCode::kInvalidArgument, "strategy body must be an object");
  StrategyRequest req;
  auto name = body.value("strategy", "");
  auto s = parse_strategy(name);
  if (!s) throw Error(ErrorCode::kInvalidArgument, "unknown strategy '" + name + "'");
  req.strategy = *s;
  req.datamorphisms = names_of(body, "datamorphisms");
  req.k = body.value("k", 1);
  return req;
}

/// HTTP status for a library error: unknown names are 404, malformed or
/// inconsistent requests 422, failures inside user morphisms 500.
inline int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownSpec:
      return 404;
    case ErrorCode::kUnregisteredMorphism:
    case ErrorCode::kUnknownId:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParseFailure:
    case ErrorCode::kSchemaVersionMismatch:
    case ErrorCode::kSizeGuardExceeded:
    case ErrorCode::kUnknownCommand:
    case ErrorCode::kInvariantViolation:
    case ErrorCode::kDuplicateId:
    case ErrorCode::kCommandFailure:
      return 422;
    default:
      return 500;
  }
}

}  // namespace api

/// Serves sessions over HTTP/JSON. Each session has a revision counter
/// bumped once per accepted mutating request; strategy runs and script
/// playback are background jobs, and a session refuses other work (409)
/// while one is active.
class HttpService {
 public:
  using json = nlohmann::json;

  struct Options {
    std::string ui_dir;
    unsigned workers = 1;
    std::size_t max_cases = StrategyOptions{}.max_cases;
  };

  explicit HttpService(const SpecCatalog& catalog) : HttpService(catalog, Options()) {}
  HttpService(const SpecCatalog& catalog, Options opts)
      : catalog_(catalog), opts_(std::move(opts)) {
    routes();
  }

  ~HttpService() {
    stop();
    std::vector<std::thread> threads;
    {
      std::lock_guard lock(jobs_mu_);
      threads.swap(threads_);
    }
    for (auto& t : threads) {
      if (t.joinable()) t.join();
    }
  }

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  httplib::Server& server() { return server_; }

  bool listen(const std::string& host, int port) { return server_.listen(host, port); }
  int bind_to_any_port(const std::string& host) { return server_.bind_to_any_port(host); }
  bool listen_after_bind() { return server_.listen_after_bind(); }
  void wait_until_ready() { server_.wait_until_ready(); }
  void stop() { server_.stop(); }

  /// Blocks until no job is running.
  void wait_for_jobs() {
    std::vector<std::thread> threads;
    {
      std::lock_guard lock(jobs_mu_);
      threads.swap(threads_);
    }
    for (auto& t : threads) {
      if (t.joinable()) t.join();
    }
  }

 private:
  struct Slot {
    Slot(const SpecCatalog& catalog, Parameters params) : session(catalog, std::move(params)) {}
    std::mutex mu;
    Session session;
    std::atomic<std::uint64_t> revision{0};
    std::atomic<bool> busy{false};
    std::mutex ids_mu;
    std::set<std::string> request_ids;
    std::vector<TestCaseId> staged;
  };

  struct Job {
    std::string id;
    std::string session;
    std::string kind;
    std::string status = "running";
    json result;
    json error;
    std::uint64_t revision = 0;
  };

  using Handler = std::function<json(Slot&, const json& body)>;

  // -- helpers ---------------------------------------------------------------

  static void reply(httplib::Response& res, int status, json body) {
    body["schema"] = kApiSchema;
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  static void fail(httplib::Response& res, int status, const std::string& code,
                   const std::string& message, std::optional<std::uint64_t> revision = {}) {
    json j = {{"error", {{"code", code}, {"message", message}}}};
    if (revision) j["revision"] = *revision;
    reply(res, status, std::move(j));
  }

  static void fail(httplib::Response& res, const std::exception& e, std::uint64_t revision) {
    if (const auto* le = dynamic_cast<const LineError*>(&e)) {
      json j = {{"error",
                 {{"code", std::string(to_string(le->code()))},
                  {"message", le->what()},
                  {"line", le->line()}}},
                {"revision", revision}};
      reply(res, api::status_for(le->code()), std::move(j));
    } else if (const auto* me = dynamic_cast<const Error*>(&e)) {
      fail(res, api::status_for(me->code()), std::string(to_string(me->code())), me->what(),
           revision);
    } else {
      fail(res, 500, "InternalError", e.what(), revision);
    }
  }

  static json body_of(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    return json::parse(req.body);  // parse_error handled by callers
  }

  std::shared_ptr<Slot> find_slot(const std::string& id) {
    std::lock_guard lock(sessions_mu_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  std::shared_ptr<Slot> slot_or_404(const httplib::Request& req, httplib::Response& res) {
    auto id = req.path_params.at("id");
    auto slot = find_slot(id);
    if (!slot) fail(res, 404, "UnknownSession", "no session '" + id + "'");
    return slot;
  }

  /// Admission gate for mutating requests: session exists, no job running,
  /// request id not seen before. Returns the parsed body on success.
  std::optional<json> admit(const httplib::Request& req, httplib::Response& res, Slot& slot) {
    if (slot.busy) {
      fail(res, 409, "JobActive", "a job is running in this session", slot.revision.load());
      return std::nullopt;
    }
    json body;
    try {
      body = body_of(req);
    } catch (const json::parse_error& e) {
      fail(res, 422, "ParseFailure", e.what(), slot.revision.load());
      return std::nullopt;
    }
    if (req.has_header("X-Request-Id")) {
      auto rid = req.get_header_value("X-Request-Id");
      std::lock_guard lock(slot.ids_mu);
      if (!slot.request_ids.insert(rid).second) {
        fail(res, 409, "DuplicateRequest", "request id '" + rid + "' was already applied",
             slot.revision.load());
        return std::nullopt;
      }
    }
    return body;
  }

  /// Runs `fn` synchronously under the session lock; the revision moves
  /// once whether or not `fn` succeeds, since a failed activity may still
  /// have touched the pool.
  void mutate(const httplib::Request& req, httplib::Response& res, const Handler& fn) {
    auto slot = slot_or_404(req, res);
    if (!slot) return;
    auto body = admit(req, res, *slot);
    if (!body) return;
    std::unique_lock lock(slot->mu, std::try_to_lock);
    if (!lock.owns_lock() || slot->busy) {
      fail(res, 409, "JobActive", "session is busy", slot->revision.load());
      return;
    }
    try {
      json result = fn(*slot, *body);
      auto rev = ++slot->revision;
      reply(res, 200, {{"revision", rev}, {"result", std::move(result)}});
    } catch (const std::exception& e) {
      auto rev = ++slot->revision;
      fail(res, e, rev);
    }
  }

  /// Like mutate, but runs `fn` on a background thread and answers 202
  /// with the job id. The revision moves when the job finishes.
  void start_job(const httplib::Request& req, httplib::Response& res, std::string kind,
                 Handler fn) {
    auto slot = slot_or_404(req, res);
    if (!slot) return;
    auto body = admit(req, res, *slot);
    if (!body) return;
    bool expected = false;
    if (!slot->busy.compare_exchange_strong(expected, true)) {
      fail(res, 409, "JobActive", "a job is running in this session", slot->revision.load());
      return;
    }
    auto job = std::make_shared<Job>();
    job->session = req.path_params.at("id");
    job->kind = std::move(kind);
    {
      std::lock_guard lock(jobs_mu_);
      job->id = job_ids_.next().str();
      jobs_[job->id] = job;
      threads_.emplace_back([this, slot, job, fn = std::move(fn), body = std::move(*body)] {
        json result, error;
        bool ok = true;
        std::uint64_t rev = 0;
        {
          std::lock_guard slot_lock(slot->mu);
          try {
            result = fn(*slot, body);
          } catch (const LineError& e) {
            ok = false;
            error = {{"code", std::string(to_string(e.code()))}, {"message", e.what()},
                     {"line", e.line()}};
          } catch (const Error& e) {
            ok = false;
            error = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
          } catch (const std::exception& e) {
            ok = false;
            error = {{"code", "InternalError"}, {"message", e.what()}};
          }
          rev = ++slot->revision;
          slot->busy = false;
        }
        // Published after the session is released so a client that sees
        // the job finish can issue its next request straight away.
        std::lock_guard lock(jobs_mu_);
        job->status = ok ? "succeeded" : "failed";
        job->result = std::move(result);
        job->error = std::move(error);
        job->revision = rev;
      });
    }
    reply(res, 202, {{"jobId", job->id}, {"revision", slot->revision.load()}});
  }

  /// Read-only access; refused while a job holds the session.
  void read(const httplib::Request& req, httplib::Response& res,
            const std::function<json(Slot&)>& fn) {
    auto slot = slot_or_404(req, res);
    if (!slot) return;
    std::unique_lock lock(slot->mu, std::try_to_lock);
    if (!lock.owns_lock() || slot->busy) {
      fail(res, 409, "JobActive", "a job is running in this session", slot->revision.load());
      return;
    }
    try {
      json out = fn(*slot);
      out["revision"] = slot->revision.load();
      reply(res, 200, std::move(out));
    } catch (const std::exception& e) {
      fail(res, e, slot->revision.load());
    }
  }

  // -- pool view -------------------------------------------------------------

  static json pool_view(Slot& slot, const httplib::Request& req) {
    auto& rt = slot.session.spec();
    auto views = rt.cases();
    std::vector<std::string> metrics;
    if (req.has_param("metrics")) metrics = text::split_names(req.get_param_value("metrics"), ',');
    const auto sort = req.has_param("sort") ? req.get_param_value("sort") : std::string();
    const bool desc = req.has_param("dir") && req.get_param_value("dir") == "desc";
    if (!sort.empty() && rt.has(MorphismKind::kTestCaseMetric, sort) &&
        std::find(metrics.begin(), metrics.end(), sort) == metrics.end()) {
      metrics.push_back(sort);
    }

    std::map<TestCaseId, std::map<std::string, double>> values;
    if (!metrics.empty()) {
      for (auto& cm : rt.measure_cases(metrics)) {
        auto& row = values[cm.id];
        for (auto& [n, v] : cm.values) row[n] = v;
      }
    }

    std::vector<std::size_t> order(views.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (!sort.empty()) {
      auto key = [&](std::size_t i) -> std::variant<double, std::string> {
        const auto& v = views[i];
        if (sort == "id") return v.id.str();
        if (sort == "input") return v.input;
        if (sort == "output") return v.output.value_or("");
        if (sort == "feature") return std::string(to_string(v.feature));
        if (sort == "type") return v.type;
        auto row = values.find(v.id);
        if (row != values.end()) {
          auto it = row->second.find(sort);
          if (it != row->second.end()) return it->second;
        }
        throw Error(ErrorCode::kInvalidArgument, "cannot sort by '" + sort + "'");
      };
      std::vector<std::variant<double, std::string>> keys;
      keys.reserve(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) keys.push_back(key(i));
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return desc ? keys[b] < keys[a] : keys[a] < keys[b];
      });
    }

    std::size_t offset = 0, limit = order.size();
    if (req.has_param("offset")) {
      offset = static_cast<std::size_t>(text::parse_int(req.get_param_value("offset")).value_or(0));
    }
    if (req.has_param("limit")) {
      limit = static_cast<std::size_t>(
          text::parse_int(req.get_param_value("limit")).value_or(static_cast<long long>(limit)));
    }
    std::set<TestCaseId> staged(slot.staged.begin(), slot.staged.end());
    json cases = json::array();
    for (std::size_t i = offset; i < order.size() && i - offset < limit; ++i) {
      const auto& v = views[order[i]];
      json c = api::to_json(v);
      json m = json::object();
      if (auto row = values.find(v.id); row != values.end()) {
        for (auto& [n, x] : row->second) m[n] = x;
      }
      c["metrics"] = std::move(m);
      c["staged"] = staged.contains(v.id);
      cases.push_back(std::move(c));
    }
    json staged_ids = json::array();
    for (const auto& id : slot.staged) staged_ids.push_back(id.str());
    return {{"total", views.size()}, {"cases", std::move(cases)}, {"staged", staged_ids}};
  }

  // -- routes ----------------------------------------------------------------

  void routes() {
    auto& s = server_;

    s.Get("/specs", [this](const httplib::Request&, httplib::Response& res) {
      json specs = json::array();
      for (const auto& e : catalog_.entries()) {
        json inv = json::array();
        try {
          for (const auto& m : e.factory({})->inventory()) inv.push_back(api::to_json(m));
        } catch (const std::exception&) {
        }
        specs.push_back({{"name", e.name}, {"description", e.description}, {"morphisms", inv}});
      }
      reply(res, 200, {{"specs", specs}});
    });

    s.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      json body;
      try {
        body = body_of(req);
      } catch (const json::parse_error& e) {
        return fail(res, 422, "ParseFailure", e.what());
      }
      auto name = body.value("specName", "");
      if (!catalog_.contains(name)) {
        return fail(res, 404, "UnknownSpec", "no built-in test specification '" + name + "'");
      }
      try {
        Parameters params = body.value("parameters", Parameters{});
        auto slot = std::make_shared<Slot>(catalog_, params);
        slot->session.set_workers(opts_.workers);
        slot->session.set_max_cases(opts_.max_cases);
        if (body.contains("randomSeed") && !body["randomSeed"].is_null()) {
          slot->session.set_random_seed(body["randomSeed"].get<std::uint64_t>());
        }
        slot->session.load_spec(name);
        std::string id;
        {
          std::lock_guard lock(sessions_mu_);
          id = session_ids_.next().str();
          sessions_[id] = slot;
        }
        reply(res, 201, {{"sessionId", id}, {"specName", name}, {"revision", 0}});
      } catch (const std::exception& e) {
        fail(res, e, 0);
      }
    });

    s.Get("/sessions/:id", [this](const httplib::Request& req, httplib::Response& res) {
      read(req, res, [](Slot& slot) {
        return json{{"specName", slot.session.spec().name()},
                    {"poolSize", slot.session.spec().pool_size()},
                    {"recording", slot.session.recording()},
                    {"staged", slot.staged.size()}};
      });
    });

    s.Get("/sessions/:id/pool", [this](const httplib::Request& req, httplib::Response& res) {
      read(req, res, [&req](Slot& slot) { return pool_view(slot, req); });
    });

    s.Get("/sessions/:id/pool/export", [this](const httplib::Request& req, httplib::Response& res) {
      read(req, res, [](Slot& slot) {
        return json{{"pool", slot.session.spec().pool_json()},
                    {"signatures", api::signatures_json(slot.session.spec())}};
      });
    });

    s.Get("/sessions/:id/cases/:case", [this](const httplib::Request& req, httplib::Response& res) {
      read(req, res, [&req](Slot& slot) {
        auto id = TestCaseId::from_string(req.path_params.at("case"));
        return json{{"text", slot.session.spec().display_case(id)}};
      });
    });

    s.Delete("/sessions/:id/pool/cases", [this](const httplib::Request& req, httplib::Response& res) {
      mutate(req, res, [](Slot& slot, const json& body) {
        auto& rt = slot.session.spec();
        std::set<TestCaseId> known;
        for (const auto& v : rt.cases()) known.insert(v.id);
        std::vector<TestCaseId> ids;
        for (const auto& s : api::names_of(body, "ids")) {
          auto id = TestCaseId::from_string(s);
          if (!known.contains(id)) throw Error(ErrorCode::kUnknownId, s);
          ids.push_back(id);
        }
        for (auto& id : ids) {
          if (std::find(slot.staged.begin(), slot.staged.end(), id) == slot.staged.end()) {
            slot.staged.push_back(id);
          }
        }
        return json{{"staged", slot.staged.size()}};
      });
    });

    s.Post("/sessions/:id/pool/commit", [this](const httplib::Request& req, httplib::Response& res) {
      mutate(req, res, [](Slot& slot, const json&) {
        auto n = slot.staged.size();
        slot.session.remove_cases(slot.staged);
        slot.staged.clear();
        return json{{"removed", n}, {"poolSize", slot.session.spec().pool_size()}};
      });
    });

    s.Post("/sessions/:id/pool/discard", [this](const httplib::Request& req, httplib::Response& res) {
      mutate(req, res, [](Slot& slot, const json&) {
        auto n = slot.staged.size();
        slot.staged.clear();
        return json{{"discarded", n}};
      });
    });

    s.Post("/sessions/:id/activities/:kind", [this](const httplib::Request& req, httplib::Response& res) {
      const auto kind = req.path_params.at("kind");
      static const std::set<std::string> kKinds = {"seed",    "mutate", "filter", "measure",
                                                   "execute", "check",  "analyse"};
      if (!kKinds.contains(kind)) {
        return fail(res, 404, "UnknownActivity", "no activity '" + kind + "'");
      }
      Handler fn = [kind](Slot& slot, const json& body) -> json {
        auto& ses = slot.session;
        auto names = api::names_of(body);
        if (kind == "seed") return api::to_json(ses.make_seeds(names));
        if (kind == "mutate") return api::to_json(ses.mutate(names));
        if (kind == "filter") return api::to_json(ses.filter(names));
        if (kind == "execute") return api::to_json(ses.execute(body.value("executer", "")));
        if (kind == "check") return api::to_json(ses.check(names));
        if (kind == "measure") {
          json out = json::object();
          for (const auto& [n, v] : ses.measure(names)) out[n] = v;
          return {{"values", out}};
        }
        json out = json::array();
        for (const auto& a : ses.analyse(names)) out.push_back({{"analyser", a.analyser}, {"text", a.text}});
        return {{"reports", out}};
      };
      if (req.has_param("async") && req.get_param_value("async") == "true") {
        start_job(req, res, kind, std::move(fn));
      } else {
        mutate(req, res, fn);
      }
    });

    s.Post("/sessions/:id/strategy", [this](const httplib::Request& req, httplib::Response& res) {
      // Validate synchronously so a bad request never becomes a job.
      {
        json body;
        try {
          body = body_of(req);
          api::strategy_from_json(body);
        } catch (const json::parse_error& e) {
          return fail(res, 422, "ParseFailure", e.what());
        } catch (const Error& e) {
          return fail(res, 422, std::string(to_string(e.code())), e.what());
        }
      }
      start_job(req, res, "strategy", [](Slot& slot, const json& body) {
        auto report = slot.session.strategy(api::strategy_from_json(body));
        json out = api::to_json(report);
        out["poolSize"] = slot.session.spec().pool_size();
        return out;
      });
    });

    s.Get("/jobs/:job", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(jobs_mu_);
      auto it = jobs_.find(req.path_params.at("job"));
      if (it == jobs_.end()) return fail(res, 404, "UnknownJob", "no job '" + req.path_params.at("job") + "'");
      const auto& j = *it->second;
      json out = {{"jobId", j.id}, {"sessionId", j.session}, {"kind", j.kind}, {"status", j.status}};
      if (j.status != "running") {
        out["revision"] = j.revision;
        if (j.status == "succeeded") out["result"] = j.result;
        else out["error"] = j.error;
      }
      reply(res, 200, std::move(out));
    });

    s.Get("/sessions/:id/script", [this](const httplib::Request& req, httplib::Response& res) {
      read(req, res, [](Slot& slot) {
        return json{{"script", render_script(slot.session.script())},
                    {"recording", slot.session.recording()}};
      });
    });

    s.Put("/sessions/:id/script", [this](const httplib::Request& req, httplib::Response& res) {
      mutate(req, res, [](Slot& slot, const json& body) {
        if (!body.is_object() || !body.contains("script") || !body["script"].is_string()) {
          throw Error(ErrorCode::kInvalidArgument, "body must be {\"script\": <text>}");
        }
        auto script = parse_script(body["script"].get<std::string>());
        auto n = script.commands().size();
        slot.session.set_script(std::move(script));
        return json{{"commands", n}};
      });
    });

    s.Post("/sessions/:id/script/play", [this](const httplib::Request& req, httplib::Response& res) {
      start_job(req, res, "play", [](Slot& slot, const json&) {
        auto reports = slot.session.play(slot.session.script());
        json out = json::array();
        for (const auto& r : reports) out.push_back(api::to_json(r));
        return json{{"reports", out}, {"poolSize", slot.session.spec().pool_size()}};
      });
    });

    s.Post("/sessions/:id/record/:mode", [this](const httplib::Request& req, httplib::Response& res) {
      const auto mode = req.path_params.at("mode");
      if (mode != "start" && mode != "stop") {
        return fail(res, 404, "UnknownMode", "expected record/start or record/stop");
      }
      mutate(req, res, [mode](Slot& slot, const json&) {
        if (mode == "start") {
          slot.session.start_recording();
        } else {
          slot.session.stop_recording();
        }
        return json{{"recording", slot.session.recording()}};
      });
    });

    s.Get("/sessions/:id/logs", [this](const httplib::Request& req, httplib::Response& res) {
      read(req, res, [](Slot& slot) {
        return json{{"messages", slot.session.messages()}, {"errors", slot.session.errors()}};
      });
    });

    if (!opts_.ui_dir.empty()) server_.set_mount_point("/", opts_.ui_dir);
  }

  const SpecCatalog& catalog_;
  Options opts_;
  httplib::Server server_;

  std::mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  UuidGenerator session_ids_;

  std::mutex jobs_mu_;
  std::map<std::string, std::shared_ptr<Job>> jobs_;
  std::vector<std::thread> threads_;
  UuidGenerator job_ids_;
};

}  // namespace morphlab
