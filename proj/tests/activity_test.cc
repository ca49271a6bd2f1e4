#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "morphlab/activity.hpp"
#include "morphlab/specs/common.hpp"
#include "morphlab/specs/triangle.hpp"
#include "test_support.hpp"

namespace morphlab {
namespace {

using specs::Triangle;
using specs::TriangleType;
using testing::IntCase;
using testing::IntPool;
using testing::IntSpec;

std::vector<std::string> all_triangle_dms() {
  std::vector<std::string> out;
  for (const auto& d : specs::kTriangleDatamorphisms) out.emplace_back(d.name);
  return out;
}

std::vector<std::string> all_triangle_rules() {
  std::vector<std::string> out;
  for (const auto& d : specs::kTriangleDatamorphisms) out.push_back(std::string(d.name) + "Rule");
  return out;
}

specs::TriangleSpec seeded_triangles(bool mutate = true) {
  auto spec = specs::make_triangle_spec();
  std::vector<std::string> makers = {"makeSeeds"};
  run_seed_makers(spec, makers);
  if (mutate) {
    auto dms = all_triangle_dms();
    run_datamorphisms(spec, std::span<const std::string>(dms));
  }
  return spec;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::kInvalidArgument;
}

// --- seed ---------------------------------------------------------------------

TEST(SeedActivityTest, AddsOriginalsInOrder) {
  auto spec = specs::make_triangle_spec();
  std::vector<std::string> makers = {"makeSeeds"};
  auto r = run_seed_makers(spec, makers);
  EXPECT_EQ(r.cases_affected, 4u);
  ASSERT_EQ(spec.pool().size(), 4u);
  EXPECT_EQ(spec.pool()[0].input, (Triangle{5, 5, 5}));
  EXPECT_EQ(spec.pool()[3].input, (Triangle{3, 5, 9}));
  for (const auto& tc : spec.pool()) {
    EXPECT_TRUE(tc.is_seed());
    EXPECT_TRUE(tc.origins.empty());
    EXPECT_FALSE(tc.output.has_value());
  }
}

TEST(SeedActivityTest, ExpectedOutputsGoToAuxPool) {
  auto spec = specs::make_triangle_spec();
  std::vector<std::string> makers = {"makeSeedsWithExpectedOutput"};
  run_seed_makers(spec, makers);
  ASSERT_TRUE(spec.aux_pools().count("expected"));
  const auto& expected = spec.aux_pools().at("expected");
  EXPECT_EQ(expected.size(), 4u);
  const auto* e = expected.find(spec.pool()[0].id);
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->output, TriangleType::kEquilateral);
}

TEST(SeedActivityTest, ParameterDrivenSeeds) {
  auto spec = specs::make_triangle_spec();
  spec.parameters()["seedInput"] = "(1,1,1); 2,3,4 => scalene";
  std::vector<std::string> makers = {"inputSeeds"};
  run_seed_makers(spec, makers);
  ASSERT_EQ(spec.pool().size(), 2u);
  EXPECT_EQ(spec.pool()[1].input, (Triangle{2, 3, 4}));
  EXPECT_EQ(spec.aux_pools().at("expected").size(), 1u);
}

TEST(SeedActivityTest, Errors) {
  auto spec = specs::make_triangle_spec();
  std::vector<std::string> unknown = {"noSuchMaker"};
  EXPECT_EQ(code_of([&] { run_seed_makers(spec, unknown); }), ErrorCode::kUnregisteredMorphism);
  std::vector<std::string> needs_param = {"inputSeeds"};
  EXPECT_EQ(code_of([&] { run_seed_makers(spec, needs_param); }),
            ErrorCode::kSeedMakerFailure);
  EXPECT_TRUE(spec.pool().empty());
}

// --- mutate -------------------------------------------------------------------

TEST(MutateActivityTest, BinarySumOnTwoSeeds) {
  auto spec = testing::make_int_spec(2, {{"sum", 2}});
  testing::seed(spec);
  std::vector<std::string> names = {"sum"};
  auto r = run_datamorphisms(spec, std::span<const std::string>(names));
  EXPECT_EQ(r.cases_affected, 4u);
  EXPECT_EQ(spec.pool().size(), 6u);
  // offset 1: 0+0+1, 0+10+1, 10+0+1, 10+10+1
  std::vector<long long> got;
  for (std::size_t i = 2; i < 6; ++i) got.push_back(spec.pool()[i].input);
  EXPECT_EQ(got, (std::vector<long long>{1, 11, 11, 21}));
}

TEST(MutateActivityTest, TriangleFirstOrder) {
  auto spec = seeded_triangles();
  EXPECT_EQ(spec.pool().size(), 84u);
  const auto& m = spec.pool()[4];
  EXPECT_EQ(m.type, "increaseX");
  EXPECT_EQ(m.input, (Triangle{6, 5, 5}));
  EXPECT_EQ(m.origins, std::vector<TestCaseId>{spec.pool()[0].id});
}

// --- filter -------------------------------------------------------------------

TEST(FilterActivityTest, RemoveDuplicatesMatchesIndependentCount) {
  auto spec = seeded_triangles();
  std::set<std::tuple<long long, long long, long long>> seen;
  std::size_t dup_mutants = 0;
  for (const auto& tc : spec.pool()) {
    bool fresh = seen.insert({tc.input.x, tc.input.y, tc.input.z}).second;
    if (!fresh && tc.is_mutant()) ++dup_mutants;
  }
  std::vector<std::string> names = {"removeDuplicates"};
  auto r = run_test_set_filters(spec, names);
  EXPECT_EQ(r.cases_affected, dup_mutants);
  EXPECT_EQ(spec.pool().size(), 84u - dup_mutants);
  EXPECT_GT(dup_mutants, 0u);
}

TEST(FilterActivityTest, FilterMayNotInventCases) {
  auto spec = testing::make_int_spec(2, {});
  testing::seed(spec);
  spec.add_test_set_filter("inventive", [](const IntPool&) {
    IntPool out;
    IntCase tc;
    tc.id = UuidGenerator(123).next();
    tc.input = 9;
    out.add(tc);
    return out;
  });
  std::vector<std::string> names = {"inventive"};
  EXPECT_EQ(code_of([&] { run_test_set_filters(spec, names); }), ErrorCode::kFilterFailure);
  EXPECT_EQ(spec.pool().size(), 2u);
}

TEST(FilterActivityTest, TestCaseFilterSelection) {
  auto spec = seeded_triangles();
  EXPECT_EQ(select_test_cases(spec, "mutantsOnly").size(), 80u);
  EXPECT_EQ(select_test_cases(spec, "seedsOnly").size(), 4u);
  EXPECT_TRUE(select_test_cases(spec, "failed").empty());
}

// --- measure ------------------------------------------------------------------

TEST(MeasureActivityTest, PoolAndCaseMetrics) {
  auto spec = seeded_triangles();
  std::vector<std::string> set_metrics = {"poolSize"};
  auto m = measure_pool(spec, set_metrics);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].first, "poolSize");
  EXPECT_EQ(m[0].second, 84.0);

  std::vector<std::string> case_metrics = {"x", "perimeter"};
  auto rows = measure_test_cases(spec, case_metrics);
  ASSERT_EQ(rows.size(), 84u);
  EXPECT_EQ(rows[0].values[0].second, 5.0);
  EXPECT_EQ(rows[3].values[0].second, 3.0);
  EXPECT_EQ(rows[3].values[1].second, 17.0);
  EXPECT_EQ(rows[0].id, spec.pool()[0].id);
}

TEST(MeasureActivityTest, TypeCoverageAfterExecution) {
  auto spec = seeded_triangles();
  execute_pool(spec, "classifier");
  std::vector<std::string> names = {"typeCoverage"};
  EXPECT_EQ(measure_pool(spec, names)[0].second, 4.0);
}

// --- execute ------------------------------------------------------------------

TEST(ExecuteActivityTest, DefaultExecuterIsTheFirstRegistered) {
  auto spec = seeded_triangles(false);
  auto r = execute_pool(spec, "");
  EXPECT_EQ(r.cases_affected, 4u);
  EXPECT_EQ(spec.pool()[0].output, TriangleType::kEquilateral);
  EXPECT_EQ(spec.pool()[1].output, TriangleType::kIsosceles);
  EXPECT_EQ(spec.pool()[2].output, TriangleType::kScalene);
  EXPECT_EQ(spec.pool()[3].output, TriangleType::kNoneTriangle);
}

TEST(ExecuteActivityTest, FailuresAreReportedAndClearOutputs) {
  auto spec = testing::make_int_spec(4, {});
  testing::seed(spec);
  spec.add_executer("half", [](const long long& v) {
    if (v == 20) throw std::runtime_error("odd one out");
    return v / 2;
  });
  spec.pool()[2].output = 99;
  auto r = execute_pool(spec, "half");
  EXPECT_EQ(r.cases_affected, 3u);
  EXPECT_EQ(r.failures, 1u);
  EXPECT_FALSE(spec.pool()[2].output.has_value());
  EXPECT_EQ(spec.pool()[3].output, 15);
  bool mentioned = false;
  for (const auto& d : r.details) mentioned |= d.find("odd one out") != std::string::npos;
  EXPECT_TRUE(mentioned);
}

TEST(ExecuteActivityTest, IdempotentForPureExecuters) {
  auto spec = seeded_triangles();
  execute_pool(spec, "classifier", 3);
  std::vector<std::optional<TriangleType>> first;
  for (const auto& tc : spec.pool()) first.push_back(tc.output);
  execute_pool(spec, "classifier", 3);
  for (std::size_t i = 0; i < first.size(); ++i) EXPECT_EQ(spec.pool()[i].output, first[i]);
}

TEST(ExecuteActivityTest, NoExecuterRegistered) {
  auto spec = testing::make_int_spec(1, {});
  EXPECT_EQ(code_of([&] { execute_pool(spec, ""); }), ErrorCode::kUnregisteredMorphism);
}

// --- check --------------------------------------------------------------------

TEST(CheckActivityTest, ApplicabilityIsExact) {
  auto spec = seeded_triangles();
  execute_pool(spec, "classifier");
  auto rules = all_triangle_rules();
  rules.push_back("matchExpected");
  auto result = check_pool(spec, rules);
  EXPECT_TRUE(result.errors.empty());
  for (const auto& tc : spec.pool()) {
    if (tc.is_seed()) {
      ASSERT_EQ(tc.correctness.size(), 1u);
      EXPECT_EQ(tc.correctness.str(), "matchExpected=pass;");
    } else {
      EXPECT_EQ(tc.correctness.str(), tc.type + "Rule=pass;");
    }
  }
}

TEST(CheckActivityTest, OnlyCorrectnessChanges) {
  auto spec = seeded_triangles();
  execute_pool(spec, "faultyClassifier");
  std::vector<std::string> before;
  for (const auto& tc : spec.pool()) {
    auto copy = tc;
    copy.correctness = {};
    before.push_back(display(copy, spec.codec()));
  }
  auto rules = all_triangle_rules();
  auto result = check_pool(spec, rules);
  std::size_t fails = 0;
  for (std::size_t i = 0; i < spec.pool().size(); ++i) {
    auto copy = spec.pool()[i];
    for (const auto& [n, v] : copy.correctness.entries()) fails += v == Verdict::kFail;
    copy.correctness = {};
    EXPECT_EQ(display(copy, spec.codec()), before[i]);
  }
  EXPECT_EQ(result.errors.size(), fails);
  EXPECT_GT(fails, 0u);
}

TEST(CheckActivityTest, ErrorReportCarriesTheDisplay) {
  auto spec = seeded_triangles();
  execute_pool(spec, "faultyClassifier");
  std::vector<std::string> rules = {"swapYZRule"};
  auto result = check_pool(spec, rules);
  ASSERT_FALSE(result.errors.empty());
  const auto& e = result.errors[0];
  EXPECT_EQ(e.metamorphism, "swapYZRule");
  EXPECT_EQ(e.message, "Failed the Swap Y Z rule.");
  EXPECT_EQ(e.str().rfind("-- Rule: Failed the Swap Y Z rule. on test case:\n{\n id:", 0), 0u);
  EXPECT_NE(e.test_case_display.find("swapYZRule=fail;"), std::string::npos);
}

TEST(CheckActivityTest, RaisingMetamorphismCountsAsFail) {
  auto spec = testing::make_int_spec(2, {});
  testing::seed(spec);
  spec.add_executer("id", [](const long long& v) { return v; });
  spec.add_metamorphism("explodes",
                        [](const IntCase& tc, const CheckContext<long long, long long>&) -> bool {
                          if (tc.input == 10) throw std::runtime_error("boom");
                          return true;
                        });
  execute_pool(spec, "id");
  std::vector<std::string> names = {"explodes"};
  auto result = check_pool(spec, names);
  ASSERT_EQ(result.errors.size(), 1u);
  EXPECT_NE(result.errors[0].message.find("boom"), std::string::npos);
  EXPECT_EQ(spec.pool()[1].correctness.get("explodes"), Verdict::kFail);
  EXPECT_EQ(spec.pool()[0].correctness.get("explodes"), Verdict::kPass);
}

TEST(CheckActivityTest, UnexecutedCasesAreSkipped) {
  auto spec = seeded_triangles();
  auto rules = all_triangle_rules();
  auto result = check_pool(spec, rules);
  EXPECT_TRUE(result.errors.empty());
  EXPECT_EQ(result.report.cases_affected, 0u);
  for (const auto& tc : spec.pool()) EXPECT_TRUE(tc.correctness.empty());
  bool warned = false;
  for (const auto& d : result.report.details) warned |= d.find("skipped 84") != std::string::npos;
  EXPECT_TRUE(warned);
}

TEST(CheckActivityTest, ParallelMatchesSerial) {
  auto a = seeded_triangles();
  auto b = seeded_triangles();
  execute_pool(a, "faultyClassifier");
  execute_pool(b, "faultyClassifier");
  auto rules = all_triangle_rules();
  auto ra = check_pool(a, rules, 1);
  auto rb = check_pool(b, rules, 4);
  ASSERT_EQ(ra.errors.size(), rb.errors.size());
  for (std::size_t i = 0; i < a.pool().size(); ++i) {
    EXPECT_EQ(a.pool()[i].correctness.str(), b.pool()[i].correctness.str());
  }
}

// --- analyse ------------------------------------------------------------------

TEST(AnalyseActivityTest, PassFailRate) {
  auto spec = testing::make_int_spec(104, {});
  testing::seed(spec);
  spec.add_executer("id", [](const long long& v) { return v; });
  spec.add_metamorphism("notFifty", [](const IntCase& tc, const CheckContext<long long, long long>&) {
    return tc.input != 50;
  });
  spec.add_analyser("rate", [](const IntPool& p) { return specs::pass_fail_report(p); });
  execute_pool(spec, "id");
  std::vector<std::string> names = {"notFifty"};
  check_pool(spec, names);
  std::vector<std::string> analysers = {"rate"};
  auto reports = analyse(spec, analysers);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].text,
            "Checked test cases = 104\n"
            "Failed test cases = 1\n"
            "Verdicts = 104 (1 fail)\n"
            "Error rate = 0.962%\n");
}

TEST(AnalyseActivityTest, StatisticsOnTriangles) {
  auto spec = seeded_triangles();
  std::vector<std::string> analysers = {"statistics"};
  auto text = analyse(spec, analysers)[0].text;
  EXPECT_EQ(text.rfind("Statistics:\n"
                       "Total number of test cases = 84\n"
                       "Number of original test cases = 4\n"
                       "Number of mutant test cases = 80\n"
                       " -- copyXToY count = 4\n",
                       0),
            0u);
}

TEST(AnalyseActivityTest, EmptyPool) {
  auto spec = specs::make_triangle_spec();
  std::vector<std::string> analysers = {"statistics", "passFailRate"};
  auto reports = analyse(spec, analysers);
  EXPECT_EQ(reports[0].text,
            "Statistics:\nTotal number of test cases = 0\nNumber of original test cases = 0\n"
            "Number of mutant test cases = 0\n");
  EXPECT_NE(reports[1].text.find("Error rate = 0.000%"), std::string::npos);
}

TEST(AnalyseActivityTest, FailingAnalyser) {
  auto spec = testing::make_int_spec(1, {});
  spec.add_analyser("bad", [](const IntPool&) -> std::string { throw std::runtime_error("x"); });
  std::vector<std::string> analysers = {"bad"};
  EXPECT_EQ(code_of([&] { analyse(spec, analysers); }), ErrorCode::kAnalyserFailure);
}

}  // namespace
}  // namespace morphlab
