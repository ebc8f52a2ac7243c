// Copyright 2026 The ragmt Authors
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

#include "ragmt/experiment.h"

#include <gtest/gtest.h>

#include <sstream>

#include "test_support.h"

namespace ragmt {
namespace {

namespace fs = std::filesystem;

const TimePoint kFixedTime = TimePoint(std::chrono::seconds(1760000000));

// Copies the experiment fixture into a scratch directory.
fs::path StageFixture(const testing::TempDir& dir) {
  const fs::path target = dir / "experiment";
  fs::copy(testing::FixtureDir() / "experiment", target,
           fs::copy_options::recursive);
  return target;
}

nlohmann::json FixtureDoc() {
  return nlohmann::json::parse(
      testing::ReadFile(testing::FixtureDir() / "experiment/config.json"));
}

ExperimentRunOptions Options(const fs::path& out) {
  ExperimentRunOptions o;
  o.out_dir = out;
  o.clock = FixedClock(kFixedTime);
  return o;
}

TEST(ExperimentConfigTest, ParsesFixture) {
  testing::ScopedEnv no_override("RAGMT_CACHE_DIR", std::nullopt);
  const fs::path path = testing::FixtureDir() / "experiment/config.json";
  const ExperimentConfig c = ParseExperimentConfig(FixtureDoc(), path);
  EXPECT_EQ(c.lexicon_path, testing::FixtureDir() / "experiment/lexicon.tsv");
  EXPECT_EQ(c.cache_dir, testing::FixtureDir() / "experiment/cache");
  EXPECT_EQ(c.backend.kind, "mock");
  EXPECT_EQ(c.backend.rules.size(), 3u);
  EXPECT_EQ(c.parallelism, 4u);
  ASSERT_EQ(c.pipelines.size(), 7u);
  EXPECT_EQ(c.pipelines[6].variant, Variant::kIntegratedRag);
  EXPECT_EQ(c.pipelines[6].WorkflowDescription(), "Integrated Gemini 2.0 + RAG");
  EXPECT_NE(c.FindPipeline("Model 3a"), nullptr);
  EXPECT_EQ(c.FindPipeline("Model 9"), nullptr);
  EXPECT_FALSE(c.dictionary_mt.has_value());
}

TEST(ExperimentConfigTest, CacheDirOverride) {
  testing::ScopedEnv env("RAGMT_CACHE_DIR", "/tmp/elsewhere");
  const ExperimentConfig c = ParseExperimentConfig(FixtureDoc(), "/x/config.json");
  EXPECT_EQ(c.cache_dir, fs::path("/tmp/elsewhere"));
}

TEST(ExperimentConfigTest, SecretsComeFromEnvironmentAndStayOutOfSnapshot) {
  testing::ScopedEnv key("RAGMT_API_KEY", "sk-test-secret");
  testing::ScopedEnv dict("RAGMT_DICT_TOKEN", "dict-secret");
  auto doc = FixtureDoc();
  doc["backend"] = {{"kind", "http"}, {"base_url", "http://127.0.0.1:9"},
                    {"max_attempts", 3}, {"backoff_base_ms", 10}};
  doc["dictionary_mt"] = {{"kind", "http"}, {"base_url", "http://127.0.0.1:9"}};
  const ExperimentConfig c = ParseExperimentConfig(doc, "/x/config.json");
  EXPECT_EQ(c.backend.endpoint.token, "sk-test-secret");
  EXPECT_EQ(c.backend.retry.max_attempts, 3);
  EXPECT_EQ(c.backend.retry.base_delay, std::chrono::milliseconds(10));
  ASSERT_TRUE(c.dictionary_mt.has_value());
  EXPECT_EQ(c.dictionary_mt->token, "dict-secret");
  EXPECT_EQ(c.dictionary_mt->path, "/translate");
  const std::string snapshot = ConfigSnapshot(c).dump();
  EXPECT_EQ(snapshot.find("secret"), std::string::npos);
  EXPECT_EQ(snapshot.find("parallelism"), std::string::npos);
}

TEST(ExperimentConfigTest, SchemaViolations) {
  const auto bad = [](auto mutate) {
    auto doc = FixtureDoc();
    mutate(doc);
    return doc;
  };
  const std::vector<nlohmann::json> docs = {
      bad([](auto& d) { d.erase("lexicon_path"); }),
      bad([](auto& d) { d["lexicon_path"] = 7; }),
      bad([](auto& d) { d.erase("backend"); }),
      bad([](auto& d) { d["backend"]["kind"] = "carrier-pigeon"; }),
      bad([](auto& d) { d["pipelines"] = nlohmann::json::array(); }),
      bad([](auto& d) { d["pipelines"][1]["label"] = "Model 0"; }),
      bad([](auto& d) { d["pipelines"][0]["variant"] = "Magic"; }),
      bad([](auto& d) { d["pipelines"][0].erase("model_id"); }),
      bad([](auto& d) { d["parallelism"] = 0; }),
      bad([](auto& d) { d["eval"]["max_order"] = 12; }),
      bad([](auto& d) { d["eval"]["tokenization"] = "bpe"; }),
      bad([](auto& d) { d["pipelines"][0]["temperature"] = 3.0; }),
      bad([](auto& d) {
        d["pipelines"].push_back({{"label", "Model/0"}, {"variant", "Dictionary"}});
        d["pipelines"].push_back({{"label", "Model:0"}, {"variant", "Dictionary"}});
      }),
      nlohmann::json::array(),
  };
  for (const auto& doc : docs) {
    EXPECT_THROW(ParseExperimentConfig(doc, "/x/config.json"), ConfigError)
        << doc.dump();
  }
}

TEST(ExperimentConfigTest, LoadErrors) {
  EXPECT_THROW(LoadExperimentConfig("/nonexistent/config.json"), MissingInputError);
  testing::TempDir dir;
  testing::WriteFile(dir / "bad.json", "{ nope");
  EXPECT_THROW(LoadExperimentConfig(dir / "bad.json"), ConfigError);
}

TEST(CorpusTest, LoadsAndRejects) {
  std::istringstream ok("\xEF\xBB\xBF你好\t若好\r\n\n世界\t世界事\n");
  const auto corpus = LoadCorpus(ok);
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus[0].source, "你好");
  EXPECT_EQ(corpus[0].reference, "若好");
  std::istringstream no_tab("你好\t若好\n世界\n");
  try {
    LoadCorpus(no_tab);
    ADD_FAILURE();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  std::istringstream bad_utf8("\xff\tx\n");
  EXPECT_THROW(LoadCorpus(bad_utf8), ConfigError);
  EXPECT_THROW(LoadCorpusFile("/nonexistent.tsv"), MissingInputError);
}

TEST(LabelFileStemTest, Sanitizes) {
  EXPECT_EQ(LabelFileStem("Model 3a"), "Model_3a");
  EXPECT_EQ(LabelFileStem("a/b:c.d-e"), "a_b_c.d-e");
}

TEST(LinesTest, RoundTripFlattensBreaks) {
  testing::TempDir dir;
  WriteLines(dir / "h.txt", {"一", "二\n三", ""});
  EXPECT_EQ(testing::ReadFile(dir / "h.txt"), "一\n二 三\n\n");
  EXPECT_EQ(ReadLines(dir / "h.txt"), (std::vector<std::string>{"一", "二 三", ""}));
}

TEST(RunExperimentFromConfigTest, WritesArtifacts) {
  testing::TempDir dir;
  testing::ScopedEnv cache("RAGMT_CACHE_DIR", (dir / "cache").string());
  const fs::path fixture = StageFixture(dir);
  const auto outcome =
      RunExperimentFromConfig(fixture / "config.json", Options(dir / "out"));
  EXPECT_EQ(outcome.exit_code, 0);
  // Dictionary pipeline makes no calls; the rest make 3 each.
  EXPECT_EQ(outcome.backend_invocations, 18u);
  for (const char* stem : {"Model_0", "Model_0a", "Model_1", "Model_2",
                           "Model_3", "Model_3a", "Model_4"}) {
    EXPECT_EQ(ReadLines(dir / "out" / "hypotheses" / (std::string(stem) + ".txt")).size(), 3u);
    EXPECT_TRUE(fs::exists(dir / "out" / "traces" / (std::string(stem) + ".jsonl")));
  }
  EXPECT_EQ(ReadLines(dir / "out/hypotheses/Model_1.txt"),
            (std::vector<std::string>{"若好，世界事", "今晡日天時當好。",
                                      "𠊎兜去食飯吧"}));
  EXPECT_EQ(testing::ReadFile(dir / "out/report.txt"), outcome.report);
  const auto manifest =
      nlohmann::json::parse(testing::ReadFile(dir / "out/manifest.json"));
  EXPECT_EQ(manifest.at("status"), "ok");
  EXPECT_TRUE(manifest.at("error").is_null());
  EXPECT_EQ(manifest.at("started_at"), "2025-10-09T08:53:20Z");
  EXPECT_EQ(manifest.at("finished_at"), "2025-10-09T08:53:20Z");
  EXPECT_EQ(manifest.at("version"), "0.1.0");
  EXPECT_EQ(manifest.at("scores").size(), 7u);
  EXPECT_EQ(manifest.at("prompts").size(), 4u);
  EXPECT_EQ(manifest.at("corpus_size"), 3);
  EXPECT_EQ(manifest.at("config").at("pipelines").size(), 7u);
}

TEST(RunExperimentFromConfigTest, ReportsPerSentenceFailuresWithoutFailingTheRun) {
  testing::TempDir dir;
  testing::ScopedEnv cache("RAGMT_CACHE_DIR", (dir / "cache").string());
  const fs::path fixture = StageFixture(dir);
  auto doc = FixtureDoc();
  doc["backend"] = {{"kind", "replay"}};  // empty cache: every LLM call misses
  testing::WriteFile(fixture / "config.json", doc.dump());
  const auto outcome =
      RunExperimentFromConfig(fixture / "config.json", Options(dir / "out"));
  EXPECT_EQ(outcome.exit_code, 0);
  EXPECT_EQ(outcome.manifest.at("failures").size(), 18u);
  EXPECT_EQ(outcome.manifest.at("status"), "ok");
  EXPECT_EQ(ReadLines(dir / "out/hypotheses/Model_0.txt"),
            (std::vector<std::string>{"", "", ""}));
}

TEST(RunExperimentFromConfigTest, MissingInputsThrowBeforeStarting) {
  testing::TempDir dir;
  const fs::path fixture = StageFixture(dir);
  fs::remove(fixture / "corpus.tsv");
  EXPECT_THROW(RunExperimentFromConfig(fixture / "config.json", Options(dir / "out")),
               MissingInputError);
  EXPECT_FALSE(fs::exists(dir / "out" / "manifest.json"));
  fs::remove(fixture / "lexicon.tsv");
  EXPECT_THROW(RunExperimentFromConfig(fixture / "config.json", Options(dir / "out")),
               MissingInputError);
}

TEST(RunExperimentFromConfigTest, RuntimeFailureStillWritesManifest) {
  testing::TempDir dir;
  const fs::path fixture = StageFixture(dir);
  testing::ScopedEnv cache("RAGMT_CACHE_DIR", (dir / "cache").string());
  // A regular file where the hypotheses directory must go.
  testing::WriteFile(dir / "out" / "hypotheses", "x");
  const auto outcome =
      RunExperimentFromConfig(fixture / "config.json", Options(dir / "out"));
  EXPECT_EQ(outcome.exit_code, 3);
  const auto manifest =
      nlohmann::json::parse(testing::ReadFile(dir / "out/manifest.json"));
  EXPECT_EQ(manifest.at("status"), "failed");
  EXPECT_TRUE(manifest.at("error").is_string());
}

}  // namespace
}  // namespace ragmt
