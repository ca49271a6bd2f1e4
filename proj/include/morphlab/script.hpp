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

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "morphlab/error.hpp"
#include "morphlab/strategy.hpp"
#include "morphlab/text.hpp"

namespace morphlab {

struct ScriptCommand {
  std::string name;
  std::vector<std::string> args;
  std::size_t line = 0;  // source line; not part of equality

  friend bool operator==(const ScriptCommand& a, const ScriptCommand& b) {
    return a.name == b.name && a.args == b.args;
  }
};

/// A script line is a command, a `//` comment or blank.
struct ScriptLine {
  enum class Kind { kCommand, kComment, kBlank };

  Kind kind = Kind::kBlank;
  ScriptCommand command;
  std::string comment;  // text after `//`

  friend bool operator==(const ScriptLine&, const ScriptLine&) = default;
};

struct Script {
  std::vector<ScriptLine> lines;

  std::vector<ScriptCommand> commands() const {
    std::vector<ScriptCommand> out;
    for (const auto& l : lines) {
      if (l.kind == ScriptLine::Kind::kCommand) out.push_back(l.command);
    }
    return out;
  }

  void append(ScriptCommand cmd) {
    lines.push_back({ScriptLine::Kind::kCommand, std::move(cmd), {}});
  }

  bool empty() const { return lines.empty(); }

  friend bool operator==(const Script&, const Script&) = default;
};

namespace script {

enum class ArgShape { kNone, kSelection, kSingle, kOptionalSingle, kMessage, kStrategy };

struct CommandSpec {
  std::string_view name;
  ArgShape shape;
};

inline constexpr CommandSpec kVocabulary[] = {
    {"loadTestSpec", ArgShape::kSingle},       {"loadTestSet", ArgShape::kSingle},
    {"saveTestSet", ArgShape::kSingle},        {"saveMessage", ArgShape::kMessage},
    {"makeSeeds", ArgShape::kSelection},       {"mutate", ArgShape::kSelection},
    {"filter", ArgShape::kSelection},          {"measure", ArgShape::kSelection},
    {"executeTestCases", ArgShape::kOptionalSingle},
    {"check", ArgShape::kSelection},           {"analyse", ArgShape::kSelection},
    {"strategy", ArgShape::kStrategy},         {"setRandomSeed", ArgShape::kSingle},
    {"clear", ArgShape::kNone},
};

inline std::optional<ArgShape> shape_of(std::string_view name) {
  for (const auto& c : kVocabulary) {
    if (c.name == name) return c.shape;
  }
  return std::nullopt;
}

/// Splits on commas that are not inside square brackets.
inline std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.emplace_back(text::trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!text::trim(cur).empty() || !out.empty()) out.emplace_back(text::trim(cur));
  return out;
}

inline std::vector<std::string> list_items(std::string_view s, std::size_t line) {
  s = text::trim(s);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw LineError(ErrorCode::kParseFailure, line, "unterminated list");
    s = s.substr(1, s.size() - 2);
  }
  return text::split_names(s);
}

inline std::string render_list(const std::vector<std::string>& items) {
  return "[" + text::join(items, ",") + "]";
}

inline std::vector<std::string> parse_args(std::string_view name, ArgShape shape,
                                           std::string_view argtext, std::size_t line) {
  const auto bad = [&](const std::string& why) {
    return LineError(ErrorCode::kParseFailure, line, std::string(name) + ": " + why);
  };
  argtext = text::trim(argtext);
  switch (shape) {
    case ArgShape::kNone:
      if (!argtext.empty()) throw bad("takes no arguments");
      return {};
    case ArgShape::kSelection:
      return list_items(argtext, line);
    case ArgShape::kSingle:
      if (argtext.empty()) throw bad("needs one argument");
      if (name == "setRandomSeed" && !text::parse_int(argtext)) throw bad("seed must be an integer");
      return {std::string(argtext)};
    case ArgShape::kOptionalSingle:
      if (argtext.empty()) return {};
      return {std::string(argtext)};
    case ArgShape::kMessage: {
      const auto semi = argtext.find(';');
      const auto path = text::trim(argtext.substr(0, semi));
      if (path.empty()) throw bad("needs a file path");
      const auto header =
          semi == std::string_view::npos ? std::string_view{} : text::trim(argtext.substr(semi + 1));
      return {std::string(path), std::string(header)};
    }
    case ArgShape::kStrategy: {
      auto parts = split_top_level(argtext);
      if (parts.size() < 2 || parts.size() > 3) throw bad("expects (name, [datamorphisms], K?)");
      if (!parse_strategy(parts[0])) throw bad("unknown strategy '" + parts[0] + "'");
      std::vector<std::string> args{parts[0], render_list(list_items(parts[1], line))};
      if (parts.size() == 3) {
        if (!text::parse_int(parts[2])) throw bad("K must be an integer");
        args.push_back(parts[2]);
      }
      return args;
    }
  }
  return {};
}

inline bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

}  // namespace script

/// Parses the line-oriented script language:
///
///   // comment
///   name(arguments)
///
/// Selection arguments are bracketed lists, `saveMessage(path; header)`
/// separates its two arguments with `;`, and a command whose closing
/// parenthesis is missing continues on the following lines (their leading
/// whitespace is dropped).
inline Script parse_script(std::string_view source) {
  Script out;
  const auto raw = text::split(source, '\n');
  const std::size_t n = (!raw.empty() && text::trim(raw.back()).empty() && !source.empty() &&
                         source.back() == '\n')
                            ? raw.size() - 1
                            : raw.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t line_no = i + 1;
    std::string_view line = text::trim(raw[i]);
    if (line.empty()) {
      if (!source.empty()) out.lines.push_back({ScriptLine::Kind::kBlank, {}, {}});
      continue;
    }
    if (line.substr(0, 2) == "//") {
      out.lines.push_back({ScriptLine::Kind::kComment, {}, std::string(line.substr(2))});
      continue;
    }
    const auto open = line.find('(');
    if (open == std::string_view::npos) {
      throw LineError(ErrorCode::kParseFailure, line_no, "expected name(arguments)");
    }
    const std::string name(text::trim(line.substr(0, open)));
    if (!script::is_identifier(name)) {
      throw LineError(ErrorCode::kParseFailure, line_no, "malformed command name '" + name + "'");
    }
    const auto shape = script::shape_of(name);
    if (!shape) throw LineError(ErrorCode::kParseFailure, line_no, "unknown command '" + name + "'");

    std::string body(line.substr(open + 1));
    while (body.find(')') == std::string::npos && i + 1 < n) {
      body += std::string(text::trim(raw[++i]));
    }
    const auto close = body.rfind(')');
    if (close == std::string::npos) {
      throw LineError(ErrorCode::kParseFailure, line_no, "missing ')'");
    }
    if (!text::trim(std::string_view(body).substr(close + 1)).empty()) {
      throw LineError(ErrorCode::kParseFailure, line_no, "unexpected text after ')'");
    }
    ScriptCommand cmd{name, script::parse_args(name, *shape, body.substr(0, close), line_no),
                      line_no};
    out.lines.push_back({ScriptLine::Kind::kCommand, std::move(cmd), {}});
  }
  return out;
}

inline std::string render_command(const ScriptCommand& cmd) {
  const auto shape = script::shape_of(cmd.name).value_or(script::ArgShape::kOptionalSingle);
  switch (shape) {
    case script::ArgShape::kSelection:
      return cmd.name + "(" + script::render_list(cmd.args) + ")";
    case script::ArgShape::kMessage:
      return cmd.name + "(" + (cmd.args.empty() ? "" : cmd.args[0]) + "; " +
             (cmd.args.size() > 1 ? cmd.args[1] : "") + ")";
    case script::ArgShape::kStrategy:
      return cmd.name + "(" + text::join(cmd.args, ", ") + ")";
    default:
      return cmd.name + "(" + text::join(cmd.args, ",") + ")";
  }
}

inline std::string render_script(const Script& s) {
  std::string out;
  for (const auto& l : s.lines) {
    switch (l.kind) {
      case ScriptLine::Kind::kCommand: out += render_command(l.command); break;
      case ScriptLine::Kind::kComment: out += "//" + l.comment; break;
      case ScriptLine::Kind::kBlank: break;
    }
    out += '\n';
  }
  return out;
}

}  // namespace morphlab
