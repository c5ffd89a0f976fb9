#include "modzhu/presentation_format.hpp"
#include "modzhu/suites.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace modzhu;

namespace {

SuiteParameters at_prime(unsigned p, int cutoff = -1) {
  SuiteParameters s;
  s.prime = p;
  if (cutoff >= 0) s.cutoff = cutoff;
  return s;
}

std::string golden(const std::string& name) { return read_text_file(std::string(MODZHU_GOLDEN_DIR) + "/" + name); }

const CheckRecord* find(const Report& r, const std::string& check, const nlohmann::ordered_json& cell) {
  for (const auto& c : r.checks)
    if (c.name == check && c.cell == cell) return &c;
  return nullptr;
}

}  // namespace

TEST(Suites, NamesAndErrors) {
  EXPECT_EQ(suite_names().size(), 10u);
  EXPECT_THROW(run_suite("no-such-suite", {}), ParameterError);
  for (const char* ns : {"zhu-ns", "zhu-ns0", "omega", "ramond", "counting", "restricted"})
    EXPECT_THROW(run_suite(ns, at_prime(3)), ParameterError) << ns;
  EXPECT_THROW(run_suite("counting", at_prime(9)), ParameterError);
  SuiteParameters twisted = at_prime(5);
  twisted.twist = "tau";
  EXPECT_THROW(run_suite("counting", twisted), ParameterError);
  SuiteParameters bad = at_prime(5);
  bad.twist = "rotation";
  EXPECT_THROW(run_suite("zhu-affine", bad), std::exception);
}

TEST(Suites, GoldenReports) {
  EXPECT_EQ(to_jsonl(run_suite("counting", at_prime(5))), golden("counting_p5.jsonl"));
  EXPECT_EQ(to_jsonl(run_suite("restricted", at_prime(5))), golden("restricted_p5.jsonl"));
}

TEST(Suites, CountingMatchesHandCount) {
  // h - c/24 runs over F_5 as h does: one zero with a single root, four units with two roots each in F_25.
  const Report r = run_suite("counting", at_prime(5));
  ASSERT_EQ(r.checks.size(), 5u);
  for (const auto& c : r.checks) EXPECT_EQ(c.witness["count"], 1 + 2 * 4);
}

TEST(Suites, ReportsAreDeterministic) {
  const std::string a = to_jsonl(run_suite("zhu-ns", at_prime(7, 4)));
  const std::string b = to_jsonl(run_suite("zhu-ns", at_prime(7, 4)));
  EXPECT_EQ(a, b);
}

TEST(Suites, JacobiPassesAtFive) {
  SuiteParameters s = at_prime(5);
  const Report r = run_suite("jacobi", s);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.checks.size(), 2u);
  s.algebra = "twisted_affine";
  EXPECT_TRUE(run_suite("jacobi", s).passed());
  s.algebra = std::string(MODZHU_DATA_DIR) + "/three_dim_twisted.pres";
  const Report file = run_suite("jacobi", s);
  EXPECT_TRUE(file.passed());
  EXPECT_GT(file.checks.front().cases, 1000u);
}

TEST(Suites, ZhuNsRecordsRelationsAndFlagsTheSign) {
  const Report r = run_suite("zhu-ns", at_prime(7, 6));
  EXPECT_TRUE(r.passed());
  const CheckRecord* rel = find(r, "relations", {{"c", 0}, {"cutoff", 6}});
  ASSERT_NE(rel, nullptr);
  const std::set<std::string> texts(rel->witness["relations"].begin(), rel->witness["relations"].end());
  EXPECT_EQ(texts, (std::set<std::string>{"y^2 - x", "x*y - y*x"}));
  // c = 3: c/24 = 1/8 = 1 in F_7, so the proof reading is y^2 - x + 1
  const CheckRecord* sign = find(r, "statement-sign", {{"c", 3}, {"cutoff", 6}});
  ASSERT_NE(sign, nullptr);
  EXPECT_EQ(sign->status, CheckStatus::kFlagged);
  EXPECT_EQ(sign->witness["computed"], "y^2 - x + 1");
  EXPECT_EQ(sign->witness["statement_reading"], "y^2 - x - 1");
  EXPECT_EQ(sign->witness["statement_reading_holds"], false);
  EXPECT_EQ(r.count(CheckStatus::kFlagged), 6u);
}

TEST(Suites, CutoffBelowTwoPMissesThePowerRelation) {
  const Report full = run_suite("zhu-ns0", at_prime(5, 10));
  EXPECT_TRUE(full.passed());
  const Report short_window = run_suite("zhu-ns0", at_prime(5, 8));
  EXPECT_FALSE(short_window.passed());
}

TEST(Suites, SummaryListsFailures) {
  Report r;
  r.suite = "demo";
  r.checks.push_back(CheckRecord{"a", {{"c", 1}}, CheckStatus::kPass, 1, nullptr});
  r.checks.push_back(CheckRecord{"b", {{"c", 2}}, CheckStatus::kFail, 1, nullptr});
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(summary(r), "suite demo: 2 checks, 1 pass, 1 fail, 0 flagged\n  fail b {\"c\":2}\n");
  EXPECT_NE(to_jsonl(r).find("\"status\":\"fail\""), std::string::npos);
}
