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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "morphlab/error.hpp"
#include "morphlab/random.hpp"

namespace morphlab {

/// Canonical 36-character lowercase UUID text.
class TestCaseId {
 public:
  TestCaseId() = default;

  /// Accepts any-case hex in 8-4-4-4-12 form; stores lowercase.
  static std::optional<TestCaseId> parse(std::string_view text) {
    if (text.size() != 36) return std::nullopt;
    std::string out(text);
    for (std::size_t i = 0; i < out.size(); ++i) {
      char& c = out[i];
      if (i == 8 || i == 13 || i == 18 || i == 23) {
        if (c != '-') return std::nullopt;
        continue;
      }
      if (c >= 'A' && c <= 'F') c = static_cast<char>(c - 'A' + 'a');
      const bool hex = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
      if (!hex) return std::nullopt;
    }
    TestCaseId id;
    id.value_ = std::move(out);
    return id;
  }

  static TestCaseId from_string(std::string_view text) {
    auto id = parse(text);
    if (!id) {
      throw Error(ErrorCode::kInvalidArgument,
                  "malformed test case id '" + std::string(text) + "'");
    }
    return *id;
  }

  const std::string& str() const { return value_; }
  bool empty() const { return value_.empty(); }

  friend bool operator==(const TestCaseId&, const TestCaseId&) = default;
  friend auto operator<=>(const TestCaseId&, const TestCaseId&) = default;
  friend std::ostream& operator<<(std::ostream& os, const TestCaseId& id) {
    return os << id.value_;
  }

 private:
  std::string value_;
};

/// Version-4 UUIDs drawn from a SplitMix64 stream. With a fixed seed the
/// sequence is identical on every run.
class UuidGenerator {
 public:
  UuidGenerator() : rng_(entropy_seed()) {}
  explicit UuidGenerator(std::uint64_t seed) : rng_(seed) {}

  void reseed(std::uint64_t seed) { rng_ = SplitMix64(seed); }

  TestCaseId next() {
    std::array<std::uint8_t, 16> bytes{};
    const std::uint64_t hi = rng_.next();
    const std::uint64_t lo = rng_.next();
    for (int i = 0; i < 8; ++i) {
      bytes[i] = static_cast<std::uint8_t>(hi >> (56 - 8 * i));
      bytes[8 + i] = static_cast<std::uint8_t>(lo >> (56 - 8 * i));
    }
    bytes[6] = static_cast<std::uint8_t>((bytes[6] & 0x0f) | 0x40);
    bytes[8] = static_cast<std::uint8_t>((bytes[8] & 0x3f) | 0x80);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string text;
    text.reserve(36);
    for (int i = 0; i < 16; ++i) {
      if (i == 4 || i == 6 || i == 8 || i == 10) text.push_back('-');
      text.push_back(kHex[bytes[i] >> 4]);
      text.push_back(kHex[bytes[i] & 0x0f]);
    }
    return TestCaseId::from_string(text);
  }

 private:
  SplitMix64 rng_;
};

}  // namespace morphlab

template <>
struct std::hash<morphlab::TestCaseId> {
  std::size_t operator()(const morphlab::TestCaseId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
