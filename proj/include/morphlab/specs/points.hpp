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

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include "morphlab/error.hpp"
#include "morphlab/specification.hpp"
#include "morphlab/specs/common.hpp"
#include "morphlab/text.hpp"

namespace morphlab::specs {

struct Point2D {
  double x = 0, y = 0;
  friend bool operator==(const Point2D&, const Point2D&) = default;
};

enum class Region { kRed, kBlue, kBlack };

inline std::string to_string(Region r) {
  switch (r) {
    case Region::kRed: return "red";
    case Region::kBlue: return "blue";
    case Region::kBlack: return "black";
  }
  return "black";
}

inline Region parse_region(std::string_view s) {
  s = text::trim(s);
  if (s == "red") return Region::kRed;
  if (s == "blue") return Region::kBlue;
  if (s == "black") return Region::kBlack;
  throw Error(ErrorCode::kParseFailure, "not a region: '" + std::string(s) + "'");
}

inline std::string to_string(const Point2D& p) {
  return "(" + text::format_double(p.x) + "," + text::format_double(p.y) + ")";
}

inline Point2D parse_point(std::string_view s) {
  auto body = text::trim(s);
  if (body.size() < 2 || body.front() != '(' || body.back() != ')') {
    throw Error(ErrorCode::kParseFailure, "expected (x,y), got '" + std::string(s) + "'");
  }
  auto parts = text::split(body.substr(1, body.size() - 2), ',');
  if (parts.size() != 2) {
    throw Error(ErrorCode::kParseFailure, "expected (x,y), got '" + std::string(s) + "'");
  }
  auto x = text::parse_double(text::trim(parts[0]));
  auto y = text::parse_double(text::trim(parts[1]));
  if (!x || !y) throw Error(ErrorCode::kParseFailure, "bad point '" + std::string(s) + "'");
  return {*x, *y};
}

/// Three convex regions of the plane: red below x + y = 0.8, and above
/// it blue right of the diagonal, black on or left of it.
inline Region classify_point(const Point2D& p) {
  if (p.x + p.y < 0.8) return Region::kRed;
  return p.x > p.y ? Region::kBlue : Region::kBlack;
}

inline Point2D midpoint(const Point2D& a, const Point2D& b) {
  return {(a.x + b.x) / 2, (a.y + b.y) / 2};
}

using PointSpec = TestSpecification<Point2D, Region>;
using PointCase = TestCase<Point2D, Region>;

inline Codec<Point2D, Region> point_codec() {
  return {[](const Point2D& p) { return to_string(p); },
          [](std::string_view s) { return parse_point(s); },
          [](const Region& r) { return to_string(r); },
          [](std::string_view s) { return parse_region(s); }};
}

/// 2-D point classification over the unit square.
inline PointSpec make_points_spec() {
  PointSpec spec("points", "point2d", point_codec());

  spec.add_seed_maker("random100", [](auto& ctx) {
    for (int i = 0; i < 100; ++i) {
      double x = ctx.rng().uniform();
      double y = ctx.rng().uniform();
      ctx.add_input({x, y});
    }
  });

  spec.add_datamorphism("midpoint", 2, binary<Point2D, Region>(midpoint));

  // Regions are convex, so a midpoint of two points in one region stays
  // there.
  spec.add_metamorphism(
      "midpointRule",
      [](const PointCase& tc, const CheckContext<Point2D, Region>& ctx) {
        const auto& a = ctx.origin(tc, 0);
        const auto& b = ctx.origin(tc, 1);
        if (a.output != b.output) return true;
        return tc.output == a.output;
      },
      {Feature::kMutant, std::string("midpoint"), "Midpoint left the region of its origins."});

  spec.add_executer("classifier", classify_point);

  // Distance to the nearest original test case.
  spec.add_test_case_metric("Distance", [](const PointCase& tc, const TestPool<Point2D, Region>& pool) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& o : pool) {
      if (!o.is_seed()) continue;
      best = std::min(best, std::hypot(o.input.x - tc.input.x, o.input.y - tc.input.y));
    }
    return std::isinf(best) ? 0.0 : best;
  });
  spec.add_test_case_filter("mutantsOnly", [](const PointCase& tc, const auto&) {
    return tc.is_mutant();
  });
  spec.add_test_set_metric("poolSize", [](const TestPool<Point2D, Region>& pool) {
    return static_cast<double>(pool.size());
  });

  // CSV with header x,y,label; unexecuted cases are labelled "none".
  spec.add_analyser("scatter", [](const TestPool<Point2D, Region>& pool) {
    std::string out = "x,y,label\n";
    for (const auto& tc : pool) {
      out += text::format_double(tc.input.x) + "," + text::format_double(tc.input.y) + "," +
             (tc.output ? to_string(*tc.output) : std::string("none")) + "\n";
    }
    return out;
  });
  spec.add_analyser("statistics", [](const TestPool<Point2D, Region>& pool) {
    return statistics_report(pool);
  });
  return spec;
}

}  // namespace morphlab::specs
