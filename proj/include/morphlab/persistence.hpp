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
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "morphlab/error.hpp"
#include "morphlab/test_pool.hpp"

namespace morphlab {

inline constexpr const char* kPoolSchema = "morphlab/pool/1";
inline constexpr const char* kSessionSchema = "morphlab/session/1";

namespace io {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoFailure, "read error on " + path.string());
  return buf.str();
}

/// Writes through a sibling temporary file and renames it into place.
inline void write_file(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::kIoFailure, "write error on " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIoFailure, "cannot replace " + path.string());
  }
}

/// Parses JSON text, mapping syntax errors to ParseFailure with a 1-based
/// line number.
inline nlohmann::json parse_json(const std::string& content) {
  if (content.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw LineError(ErrorCode::kParseFailure, 1, "empty document");
  }
  try {
    return nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min(e.byte == 0 ? 0 : e.byte - 1, content.size());
    const std::size_t line =
        1 + static_cast<std::size_t>(std::count(content.begin(), content.begin() + upto, '\n'));
    throw LineError(ErrorCode::kParseFailure, line, e.what());
  }
}

}  // namespace io

/// Structural problems found after the text parsed as JSON have no useful
/// line; they are reported against line 0.
inline LineError schema_error(const std::string& reason) {
  return LineError(ErrorCode::kParseFailure, 0, reason);
}

template <typename In, typename Out>
nlohmann::json case_to_json(const TestCase<In, Out>& tc, const Codec<In, Out>& codec) {
  nlohmann::json j;
  j["id"] = tc.id.str();
  j["input"] = codec.input_to_text(tc.input);
  j["output"] = tc.output ? nlohmann::json(codec.output_to_text(*tc.output)) : nlohmann::json();
  j["feature"] = std::string(to_string(tc.feature));
  j["type"] = tc.type;
  auto origins = nlohmann::json::array();
  for (const auto& o : tc.origins) origins.push_back(o.str());
  j["origins"] = std::move(origins);
  auto correctness = nlohmann::json::array();
  for (const auto& [name, verdict] : tc.correctness.entries()) {
    correctness.push_back({{"name", name}, {"verdict", std::string(to_string(verdict))}});
  }
  j["correctness"] = std::move(correctness);
  return j;
}

template <typename In, typename Out>
TestCase<In, Out> case_from_json(const nlohmann::json& j, const Codec<In, Out>& codec,
                                 std::size_t index) {
  const std::string where = "case #" + std::to_string(index) + ": ";
  try {
    TestCase<In, Out> tc;
    auto id = TestCaseId::parse(j.at("id").get<std::string>());
    if (!id) throw schema_error(where + "malformed id");
    tc.id = *id;
    tc.input = codec.input_from_text(j.at("input").get<std::string>());
    if (j.contains("output") && !j.at("output").is_null()) {
      tc.output = codec.output_from_text(j.at("output").get<std::string>());
    }
    auto feature = parse_feature(j.at("feature").get<std::string>());
    if (!feature) throw schema_error(where + "unknown feature");
    tc.feature = *feature;
    tc.type = j.value("type", "");
    for (const auto& o : j.value("origins", nlohmann::json::array())) {
      auto oid = TestCaseId::parse(o.get<std::string>());
      if (!oid) throw schema_error(where + "malformed origin id");
      tc.origins.push_back(*oid);
    }
    for (const auto& c : j.value("correctness", nlohmann::json::array())) {
      auto verdict = parse_verdict(c.at("verdict").get<std::string>());
      if (!verdict) throw schema_error(where + "unknown verdict");
      tc.correctness.set(c.at("name").get<std::string>(), *verdict);
    }
    return tc;
  } catch (const LineError&) {
    throw;
  } catch (const std::exception& e) {
    throw schema_error(where + e.what());
  }
}

template <typename In, typename Out>
nlohmann::json pool_to_json(const TestPool<In, Out>& pool, const Codec<In, Out>& codec,
                            const std::string& domain) {
  nlohmann::json doc;
  doc["schema"] = kPoolSchema;
  doc["domain"] = domain;
  auto cases = nlohmann::json::array();
  for (const auto& tc : pool) cases.push_back(case_to_json(tc, codec));
  doc["cases"] = std::move(cases);
  return doc;
}

template <typename In, typename Out>
TestPool<In, Out> pool_from_json(const nlohmann::json& doc, const Codec<In, Out>& codec,
                                 const std::string& domain) {
  if (!doc.is_object() || !doc.contains("schema")) throw schema_error("missing schema");
  const auto schema = doc.at("schema").get<std::string>();
  if (schema != kPoolSchema) {
    throw Error(ErrorCode::kSchemaVersionMismatch,
                "expected " + std::string(kPoolSchema) + ", found " + schema);
  }
  const auto file_domain = doc.value("domain", "");
  if (file_domain != domain) {
    throw Error(ErrorCode::kInvalidArgument,
                "pool domain '" + file_domain + "' does not match '" + domain + "'");
  }
  if (!doc.contains("cases") || !doc.at("cases").is_array()) throw schema_error("missing cases");
  TestPool<In, Out> pool;
  pool.reserve(doc.at("cases").size());
  std::size_t index = 0;
  for (const auto& j : doc.at("cases")) pool.restore(case_from_json(j, codec, index++));
  return pool;
}

template <typename In, typename Out>
void save_test_set(const TestPool<In, Out>& pool, const Codec<In, Out>& codec,
                   const std::string& domain, const std::filesystem::path& path) {
  io::write_file(path, pool_to_json(pool, codec, domain).dump(1) + "\n");
}

template <typename In, typename Out>
TestPool<In, Out> load_test_set(const std::filesystem::path& path, const Codec<In, Out>& codec,
                                const std::string& domain) {
  return pool_from_json(io::parse_json(io::read_file(path)), codec, domain);
}

/// Destination for message-log lines. redirect() appends a header and the
/// lines logged so far to the new file; later lines follow until the next
/// redirect.
class MessageSink {
 public:
  void redirect(const std::filesystem::path& path, const std::string& header,
                const std::vector<std::string>& existing) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string() + " for append");
    out << header << '\n';
    for (const auto& line : existing) out << line << '\n';
    if (!out) throw Error(ErrorCode::kIoFailure, "write error on " + path.string());
    path_ = path;
  }

  void write(const std::vector<std::string>& lines) const {
    if (!path_) return;
    std::ofstream out(*path_, std::ios::app);
    if (!out) throw Error(ErrorCode::kIoFailure, "cannot open " + path_->string() + " for append");
    for (const auto& line : lines) out << line << '\n';
  }

  const std::optional<std::filesystem::path>& path() const { return path_; }
  void reset() { path_.reset(); }

 private:
  std::optional<std::filesystem::path> path_;
};

}  // namespace morphlab
