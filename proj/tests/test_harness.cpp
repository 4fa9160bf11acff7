#include "randsurf/harness/report.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace randsurf;
using namespace randsurf::harness;

namespace {

ExperimentConfig config(const std::string& command) {
  ExperimentConfig cfg;
  cfg.command = command;
  return cfg;
}

Json run_json(const ExperimentConfig& cfg) { return Json::parse(run_command(cfg)); }

double num(const Json& j) { return std::stod(j.get<std::string>()); }

}  // namespace

TEST(Words, ByLengthAndByTrace) {
  auto cfg = config("words");
  cfg.max_word_len = 2;
  const Json byLen = run_json(cfg);
  EXPECT_EQ(byLen["schema"], kSchemaVersion);
  ASSERT_EQ(byLen["classes"].size(), 3u);
  EXPECT_EQ(byLen["classes"][0]["class"], "L");
  EXPECT_EQ(byLen["classes"][1]["class"], "LL");
  EXPECT_EQ(byLen["classes"][2]["class"], "LR");
  EXPECT_EQ(byLen["classes"][2]["lambda"], "1/2");

  auto tr = config("words");
  tr.max_trace = 4;
  const Json byTrace = run_json(tr);
  EXPECT_EQ(byTrace["count"], 2);
  EXPECT_EQ(byTrace["config"]["max_trace"], 4);

  auto bad = config("words");
  bad.max_word_len = 0;
  EXPECT_THROW(run_command(bad), PreconditionError);
  EXPECT_THROW(run_command(config("words")), PreconditionError);
}

TEST(Words, CsvTable) {
  auto cfg = config("words");
  cfg.max_trace = 4;
  cfg.format = OutputFormat::csv;
  const std::string out = run_command(cfg);
  EXPECT_NE(out.find("# schema=randsurf-report/1\n"), std::string::npos);
  EXPECT_NE(out.find("class,class_size,word_length,trace,length,parabolic,lambda\n"), std::string::npos);
  EXPECT_NE(out.find("\nLLR,6,3,4,2.63391579385,0,1\n"), std::string::npos);
}

TEST(Bound, Examples) {
  auto cfg = config("bound");
  cfg.classes = "L";
  const Json j = run_json(cfg);
  EXPECT_NEAR(num(j["bound"]["main_bound"]["log10"]), 6.7023, 1e-4);
  EXPECT_EQ(j["bound"]["main_bound"]["exact"], "5038848");
  EXPECT_EQ(j["bound"]["main_bound"]["clamped"], "1");
  EXPECT_TRUE(j["bound"]["refined_within_main"].get<bool>());

  auto big = config("bound");
  big.classes = "LR";
  big.n = "1000000000000";
  const Json b = run_json(big);
  EXPECT_NEAR(num(b["bound"]["main_bound"]["clamped"]), 1.0, 1e-12);
  EXPECT_NEAR(std::pow(10.0, num(b["bound"]["main_bound"]["log10"])), 1.114512556032, 1e-9);

  auto bad = config("bound");
  bad.classes = "LLR";
  bad.n = "2";
  EXPECT_THROW(run_command(bad), PreconditionError);
  bad.n = "abc";
  EXPECT_THROW(run_command(bad), PreconditionError);
}

TEST(Stats, ByteIdenticalAcrossWorkerCounts) {
  auto cfg = config("stats");
  cfg.n = "12";
  cfg.samples = 3000;
  cfg.seed = 9;
  cfg.classes = "LR,LLR,LLRR";
  cfg.workers = 1;
  const std::string one = run_command(cfg);
  cfg.workers = 4;
  EXPECT_EQ(run_command(cfg), one);
  cfg.workers = 8;
  EXPECT_EQ(run_command(cfg), one);
  cfg.format = OutputFormat::csv;
  const std::string csv8 = run_command(cfg);
  cfg.workers = 1;
  EXPECT_EQ(run_command(cfg), csv8);
}

TEST(Stats, MeanAtNOneMatchesTheExactMean) {
  auto cfg = config("stats");
  cfg.n = "1";
  cfg.samples = 150000;
  cfg.classes = "LR";
  const Json j = run_json(cfg);
  const double mean = num(j["classes"][0]["mean"]["value"]);
  const double se = num(j["classes"][0]["mean"]["se"]);
  EXPECT_LE(std::abs(mean - 0.6), 3 * se);
  EXPECT_EQ(j["classes"][0]["sample_count"], 150000);
  EXPECT_TRUE(j["bounds"].is_string());  // m_W = 2 > N
}

TEST(Stats, ReportContents) {
  const auto r = run_stats(30, 2000, 3, {canonicalize(Word("LR")), canonicalize(Word("LLR"))}, 2);
  ASSERT_EQ(r.classes.size(), 2u);
  ASSERT_EQ(r.covariances.size(), 1u);
  EXPECT_GT(r.classes[0].mean.standard_error, 0);
  EXPECT_NEAR(r.classes[0].variance, r.classes[0].mean.standard_error * r.classes[0].mean.standard_error * 2000, 1e-9);
  ASSERT_TRUE(r.bounds.has_value());
  EXPECT_TRUE(r.bounds->refined_within_main());
  EXPECT_GE(r.joint_tv.value, r.classes[0].tv.value - 1e-12);  // a marginal is a coarsening
  EXPECT_GT(r.topology.connected_fraction.value, 0.5);
  EXPECT_EQ(r.samples.size(), 2000u);
  EXPECT_THROW(run_stats(1, 0, 1, {canonicalize(Word("LR"))}, 1), PreconditionError);
}

TEST(Oracle, NOneAndGate) {
  auto cfg = config("oracle");
  cfg.n = "1";
  cfg.classes = "LR";
  const Json j = run_json(cfg);
  EXPECT_EQ(j["gluing_count"], "15");
  EXPECT_EQ(j["classes"][0]["exact_mean"], "3/5");
  EXPECT_EQ(j["joint_law"].size(), 2u);
  EXPECT_EQ(j["joint_law"][1]["probability"], "1/5");
  EXPECT_TRUE(j["bounds"].is_string());  // m_W = 2 > N

  cfg.n = "2";
  const Json two = run_json(cfg);
  EXPECT_EQ(two["classes"][0]["exact_mean"], "6/11");
  EXPECT_TRUE(two["exact_mtv_within_main_bound"].get<bool>());

  cfg.n = "3";
  EXPECT_THROW(run_command(cfg), PreconditionError);
}

TEST(Spectrum, TorusGluing) {
  auto cfg = config("spectrum");
  cfg.n = "1";
  cfg.gluing = "1-4,2-5,3-6";
  cfg.max_word_len = 2;
  const Json j = run_json(cfg);
  ASSERT_EQ(j["counts"].size(), 1u);
  EXPECT_EQ(j["counts"][0]["class"], "LR");
  EXPECT_EQ(j["counts"][0]["count"], 3);
  EXPECT_EQ(j["topology"]["total_genus"], 1);
  EXPECT_EQ(j["topology"]["cusp_count"], 1);

  cfg.gluing = "1-4,2-5";
  EXPECT_THROW(run_command(cfg), PreconditionError);
  cfg.gluing = "1-4,2-5,3:6";
  EXPECT_THROW(run_command(cfg), PreconditionError);
}

TEST(Config, ClassResolution) {
  auto cfg = config("stats");
  EXPECT_THROW(resolve_classes(cfg), PreconditionError);
  cfg.max_trace = 5;
  EXPECT_EQ(resolve_classes(cfg).size(), enumerate_classes_by_trace(5).count);
  cfg.max_word_len = 3;
  EXPECT_THROW(resolve_classes(cfg), PreconditionError);
  EXPECT_THROW(run_command(config("nope")), PreconditionError);
}
