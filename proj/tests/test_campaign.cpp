// Copyright 2026 The synthfuzz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "synthfuzz/campaign.hpp"
#include "synthfuzz/error.hpp"

using namespace synthfuzz;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / "synthfuzz-test-campaign" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

CampaignConfig small(const fs::path& out) {
  CampaignConfig c;
  c.pool = 4;
  c.k = 2;
  c.max_iter = 2;
  c.stimulus_cycles = 32;
  c.out_dir = out.string();
  c.seed = 7;
  return c;
}

}  // namespace

TEST(Config, LoadOverrideDumpRoundTrip) {
  fs::path dir = scratch("config");
  write(dir / "c.ini",
        "[campaign]\npool=6\nk=2\nmax_iter=3\noracle=cross-tool\n\n[gen]\nwidths=1,4,8\n\n"
        "[mutation]\nmode=tautological\n\n[tool.a]\ncommand=builtin:mock-A\ntimeout=5\n");
  CampaignConfig c = load_campaign_config((dir / "c.ini").string());
  EXPECT_EQ(c.pool, 6u);
  EXPECT_EQ(c.k, 2u);
  EXPECT_EQ(c.oracle, OracleMode::CrossTool);
  EXPECT_EQ(c.gen.widths, (std::vector<unsigned>{1, 4, 8}));
  ASSERT_EQ(c.tools.size(), 1u);
  EXPECT_EQ(c.tools[0].name, "a");
  EXPECT_DOUBLE_EQ(c.tools[0].timeout_seconds, 5);

  apply_config_override(c, "campaign.max_iter=20");
  apply_config_override(c, "tool.a.expected_exit=3");
  EXPECT_EQ(c.max_iter, 20u);
  EXPECT_EQ(c.tools[0].expected_exit, 3);

  write(dir / "d.ini", dump_campaign_config(c));
  CampaignConfig back = load_campaign_config((dir / "d.ini").string());
  EXPECT_EQ(dump_campaign_config(back), dump_campaign_config(c));
}

TEST(Config, Rejections) {
  fs::path dir = scratch("reject");
  CampaignConfig c;
  EXPECT_THROW(apply_config_override(c, "campaign.nope=1"), ConfigError);
  EXPECT_THROW(apply_config_override(c, "max_iter=1"), ConfigError);
  EXPECT_THROW(apply_config_override(c, "campaign.pool"), ConfigError);
  EXPECT_THROW(apply_config_override(c, "campaign.pool=many"), ConfigError);
  EXPECT_THROW(apply_config_override(c, "campaign.oracle=psychic"), ConfigError);
  write(dir / "bad.ini", "[weird]\nx=1\n");
  EXPECT_THROW(load_campaign_config((dir / "bad.ini").string()), ConfigError);
  EXPECT_THROW(load_campaign_config((dir / "missing.ini").string()), Error);

  CampaignConfig k_too_big;
  k_too_big.pool = 2;
  k_too_big.k = 3;
  EXPECT_THROW(k_too_big.check(), ConfigError);
  CampaignConfig cross;
  cross.oracle = OracleMode::CrossTool;
  EXPECT_THROW(cross.check(), ConfigError);
}

TEST(Campaign, SingleIterationWithoutFaults) {
  fs::path out = scratch("single");
  CampaignConfig c = small(out);
  c.max_iter = 1;
  CampaignStats s = run_campaign(c);
  EXPECT_EQ(s.iterations, 1u);
  EXPECT_EQ(s.variants_generated, c.pool);
  EXPECT_EQ(s.variants_selected, c.k);
  EXPECT_EQ(s.evaluations, c.k);
  EXPECT_EQ(s.new_bugs, 0u);
  EXPECT_EQ(s.verdicts["EQUIVALENT"], c.k);
  fs::path iter = out / "iter_0000";
  for (const char* f : {"seed.v", "stimulus.txt", "posterior.txt", "verdicts.txt", "log.txt", "variant_00.v"})
    EXPECT_TRUE(fs::exists(iter / f)) << f;
  EXPECT_TRUE(fs::exists(out / "campaign.log"));
}

TEST(Campaign, DeterministicAcrossWorkersAndResume) {
  fs::path a = scratch("det_a"), b = scratch("det_b");
  CampaignConfig ca = small(a);
  CampaignConfig cb = small(b);
  cb.workers = 2;
  run_campaign(ca);
  run_campaign(cb);
  EXPECT_EQ(slurp(a / "campaign.log"), slurp(b / "campaign.log"));

  // A rerun skips the finished iterations and rewrites the same log.
  std::string before = slurp(a / "campaign.log");
  CampaignStats again = run_campaign(ca);
  EXPECT_EQ(again.skipped_iterations, ca.max_iter);
  EXPECT_EQ(slurp(a / "campaign.log"), before);

  // Losing the last iteration's marker reruns only that iteration.
  fs::remove(a / "iter_0001" / "log.txt");
  CampaignStats resumed = run_campaign(ca);
  EXPECT_EQ(resumed.skipped_iterations, 1u);
  EXPECT_EQ(slurp(a / "campaign.log"), before);
}

TEST(Campaign, MockToolsProduceReports) {
  fs::path out = scratch("mocks");
  CampaignConfig c = small(out);
  c.max_iter = 6;
  for (const char* f : {"A", "B", "C"}) {
    ToolAdapter t;
    t.name = std::string("mock-") + f;
    t.command = std::string("builtin:mock-") + f;
    c.tools.push_back(t);
  }
  CampaignStats s = run_campaign(c);
  EXPECT_EQ(s.evaluations, c.max_iter * c.k * c.tools.size());
  EXPECT_EQ(s.new_bugs, s.reports.size());
  EXPECT_EQ(s.distinct_signatures, s.new_bugs);
  for (const auto& r : s.reports) EXPECT_TRUE(fs::exists(fs::path(r) / "report.txt")) << r;
}
