#include <gtest/gtest.h>

#include <atomic>
#include <sstream>

#include "spectralham/verify.hpp"

using namespace spectralham;

namespace {

RunParams params_with_jobs(std::size_t jobs) {
  RunParams p;
  p.jobs = jobs;
  return p;
}

RunItem item(Outcome o) {
  RunItem i;
  i.outcome = o;
  return i;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(ParallelMap, KeepsOrderAndPropagatesErrors) {
  auto sq = parallel_map<std::size_t>(1000, 8, [](std::size_t i) { return i * i; });
  for (std::size_t i = 0; i < sq.size(); ++i) EXPECT_EQ(sq[i], i * i);
  EXPECT_TRUE(parallel_map<int>(0, 4, [](std::size_t) { return 1; }).empty());
  std::atomic<int> calls{0};
  EXPECT_THROW(parallel_map<int>(50, 4,
                                 [&](std::size_t i) {
                                   ++calls;
                                   if (i == 17) throw std::runtime_error("boom");
                                   return 0;
                                 }),
               std::runtime_error);
  EXPECT_EQ(calls.load(), 50);
}

TEST(Run, SummaryAndAppend) {
  VerificationRun a;
  a.name = "a";
  for (Outcome o : {Outcome::pass, Outcome::fail, Outcome::unclaimed}) a.items.push_back(item(o));
  VerificationRun b;
  b.name = "b";
  for (Outcome o : {Outcome::inconclusive, Outcome::pass}) b.items.push_back(item(o));
  a.append(b);
  RunSummary s = a.summary();
  EXPECT_EQ(s.pass, 2u);
  EXPECT_EQ(s.fail, 1u);
  EXPECT_EQ(s.inconclusive, 1u);
  EXPECT_EQ(s.unclaimed, 1u);
  EXPECT_EQ(s.total(), 5u);
  EXPECT_FALSE(a.ok());
  EXPECT_EQ(a.name, "a; b");
  EXPECT_STREQ(to_string(Outcome::unclaimed), "UNCLAIMED");
}

TEST(Lemmas, AtThresholdAllPass) {
  RunParams p;
  VerificationRun r13 = cmd_verify_lemma(VerifyTarget::lemma_1_3, 2, 48, p);
  EXPECT_EQ(r13.items.size(), 5u);
  EXPECT_TRUE(r13.ok());
  EXPECT_EQ(r13.summary().pass, r13.items.size());

  VerificationRun r16 = cmd_verify_lemma(VerifyTarget::lemma_1_6_p2, 2, 74, p);
  EXPECT_EQ(r16.items.size(), 8u);
  EXPECT_EQ(r16.summary().pass, 8u);
  for (const auto& i : r16.items) EXPECT_EQ(i.method, "exact-inertia");
}

TEST(Lemmas, BelowThresholdNeedsOptIn) {
  RunParams p;
  EXPECT_THROW(cmd_verify_lemma(VerifyTarget::lemma_1_4, 2, 20, p), std::invalid_argument);
  p.allow_below_threshold = true;
  VerificationRun r = cmd_verify_lemma(VerifyTarget::lemma_1_4, 2, 20, p);
  ASSERT_FALSE(r.items.empty());
  for (const auto& i : r.items) EXPECT_EQ(i.outcome, Outcome::unclaimed);
  EXPECT_TRUE(r.ok());
}

TEST(Determinism, JobsDoNotChangeReports) {
  RunParams p1 = params_with_jobs(1);
  RunParams p4 = params_with_jobs(4);
  p1.allow_below_threshold = p4.allow_below_threshold = true;
  EXPECT_EQ(to_json(cmd_verify_lemma(VerifyTarget::lemma_1_4, 3, 30, p1)).dump(),
            to_json(cmd_verify_lemma(VerifyTarget::lemma_1_4, 3, 30, p4)).dump());
  EXPECT_EQ(to_json(cmd_crosscheck(10, 60, 3, p1)).dump(), to_json(cmd_crosscheck(10, 60, 3, p4)).dump());
  EXPECT_EQ(to_json(cmd_edge_bounds(2, 16, p1)).dump(), to_json(cmd_edge_bounds(2, 16, p4)).dump());
}

TEST(Crosscheck, SmallRunHasNoDisagreement) {
  VerificationRun r = cmd_crosscheck(12, 150, 11, RunParams{});
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.items.size(), 0u);
  EXPECT_THROW(cmd_crosscheck(30, 10, 1, RunParams{}), std::invalid_argument);
  EXPECT_THROW(cmd_crosscheck(5, 10, 1, RunParams{}), std::invalid_argument);
}

TEST(Check, SingleGraphs) {
  std::vector<TheoremId> all = {TheoremId::THM_NI16, TheoremId::THM_1,    TheoremId::THM_LN_ADJ,   TheoremId::THM_LN_Q,
                                TheoremId::THM_2,    TheoremId::EDGE_THM, TheoremId::EDGE_THM_BIP};
  VerificationRun pet = cmd_check(petersen(), "petersen", 2, all, RunParams{});
  EXPECT_TRUE(pet.ok());
  EXPECT_EQ(pet.items.back().claim, "decide: non_hamiltonian");
  EXPECT_EQ(pet.items.back().method, "exact_dp");

  VerificationRun k20 = cmd_check(complete(20), "K20", 2, all, RunParams{});
  EXPECT_TRUE(k20.ok());
}

TEST(Section5, RequiresKAtLeastThree) {
  EXPECT_THROW(cmd_section5(2, 48, RunParams{}), std::invalid_argument);
}

TEST(Families, DumpMatchesEnumeration) {
  VerificationRun r = cmd_families(FamilyTag::M2, 2, 10, RunParams{});
  EXPECT_EQ(r.items.size(), enumerate_family({.tag = FamilyTag::M2, .k = 2, .n = 10}).size());
  EXPECT_TRUE(r.ok());
}

TEST(Output, Formats) {
  VerificationRun r = cmd_edge_bounds(2, 12, RunParams{});
  ASSERT_TRUE(r.ok());
  std::ostringstream csv, js, text;
  write_run(csv, r, OutputFormat::csv);
  write_run(js, r, OutputFormat::json);
  write_run(text, r, OutputFormat::text);
  EXPECT_EQ(count_lines(csv.str()), r.items.size() + 1);
  EXPECT_EQ(csv.str().rfind("target,subject,claim,outcome,method,detail\n", 0), 0u);
  auto j = nlohmann::json::parse(js.str());
  EXPECT_EQ(j["items"].size(), r.items.size());
  EXPECT_EQ(j["summary"]["pass"], r.summary().pass);
  EXPECT_FALSE(j["params"].contains("jobs"));
  EXPECT_NE(text.str().find("summary: " + std::to_string(r.items.size()) + " pass, 0 fail"), std::string::npos);
  EXPECT_EQ(parse_output_format("csv"), OutputFormat::csv);
  EXPECT_THROW(parse_output_format("xml"), std::invalid_argument);
  EXPECT_EQ(parse_verify_target("lemma_1_6_p1"), VerifyTarget::lemma_1_6_p1);
}
