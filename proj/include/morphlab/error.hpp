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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace morphlab {

enum class ErrorCode {
  kDuplicateName,
  kInvalidDescriptor,
  kDuplicateId,
  kUnknownId,
  kInvariantViolation,
  kDetachedOrigin,
  kUnregisteredMorphism,
  kSizeGuardExceeded,
  kSeedMakerFailure,
  kFilterFailure,
  kMetricFailure,
  kAnalyserFailure,
  kExecutionFailure,
  kIoFailure,
  kParseFailure,
  kSchemaVersionMismatch,
  kUnknownCommand,
  kCommandFailure,
  kUnknownSpec,
  kInvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateName: return "DuplicateName";
    case ErrorCode::kInvalidDescriptor: return "InvalidDescriptor";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kUnknownId: return "UnknownId";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kDetachedOrigin: return "DetachedOrigin";
    case ErrorCode::kUnregisteredMorphism: return "UnregisteredMorphism";
    case ErrorCode::kSizeGuardExceeded: return "SizeGuardExceeded";
    case ErrorCode::kSeedMakerFailure: return "SeedMakerFailure";
    case ErrorCode::kFilterFailure: return "FilterFailure";
    case ErrorCode::kMetricFailure: return "MetricFailure";
    case ErrorCode::kAnalyserFailure: return "AnalyserFailure";
    case ErrorCode::kExecutionFailure: return "ExecutionFailure";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kParseFailure: return "ParseFailure";
    case ErrorCode::kSchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::kUnknownCommand: return "UnknownCommand";
    case ErrorCode::kCommandFailure: return "CommandFailure";
    case ErrorCode::kUnknownSpec: return "UnknownSpec";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code; the
/// message text is prefixed with the code name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Failure tied to a line of an input text (pool files, scripts).
class LineError : public Error {
 public:
  LineError(ErrorCode code, std::size_t line, const std::string& reason)
      : Error(code, "line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

}  // namespace morphlab
