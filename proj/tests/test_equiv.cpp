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

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "synthfuzz/equiv.hpp"
#include "synthfuzz/error.hpp"
#include "synthfuzz/metrics.hpp"
#include "synthfuzz/mock_synth.hpp"
#include "synthfuzz/parser.hpp"
#include "synthfuzz/printer.hpp"
#include "synthfuzz/seed_gen.hpp"
#include "synthfuzz/simulator.hpp"

using namespace synthfuzz;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / "synthfuzz-test-equiv" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ToolAdapter adapter(std::string name, std::string command, double timeout = 10) {
  ToolAdapter t;
  t.name = std::move(name);
  t.command = std::move(command);
  t.timeout_seconds = timeout;
  return t;
}

Design small_seed(std::uint64_t s) {
  GenConfig g;
  g.seed = s;
  return generate_seed(g);
}

}  // namespace

TEST(Internal, SeedAgainstItselfAndAgainstPerturbation) {
  Design d = small_seed(21);
  Stimulus s = generate_stimulus(d, 64, 1);
  EXPECT_TRUE(internal_differential(d, d, s).equivalent());
  bool found = false;
  for (std::size_t skip = 0; skip < 400 && !found; ++skip) {
    Design p = d;
    if (!oracle::perturb_operator(p, skip)) break;
    OracleVerdict v = internal_differential(d, p, s);
    if (v.kind == OracleVerdict::Kind::Mismatch) {
      found = true;
      EXPECT_EQ(v.tool_a, "seed");
      EXPECT_EQ(v.tool_b, "variant");
      EXPECT_LT(v.cycle, 64u);
      EXPECT_NE(v.expected, v.actual);
    }
  }
  EXPECT_TRUE(found);
}

TEST(External, FalseIsACrash) {
  Design d = small_seed(22);
  Stimulus s = generate_stimulus(d, 8, 1);
  ToolResult r = run_tool(adapter("f", "false"), d, s, scratch("false").string());
  EXPECT_EQ(r.status, ToolResult::Status::Crash);
  EXPECT_EQ(r.exit_code, 1);
}

TEST(External, SleepTimesOut) {
  Design d = small_seed(23);
  Stimulus s = generate_stimulus(d, 8, 1);
  auto t0 = std::chrono::steady_clock::now();
  ToolResult r = run_tool(adapter("s", "sleep 3600", 1), d, s, scratch("sleep").string());
  EXPECT_EQ(r.status, ToolResult::Status::Timeout);
  EXPECT_LT(std::chrono::steady_clock::now() - t0, std::chrono::seconds(30));
}

TEST(External, MissingBinaryIsAnAdapterError) {
  Design d = small_seed(24);
  Stimulus s = generate_stimulus(d, 8, 1);
  ToolResult r = run_tool(adapter("m", "definitely-not-a-synth-tool {input}"), d, s, scratch("missing").string());
  EXPECT_EQ(r.status, ToolResult::Status::AdapterError);
}

TEST(External, FixtureTraceIsParsedBack) {
  Design d = small_seed(25);
  Stimulus s = generate_stimulus(d, 16, 1);
  fs::path dir = scratch("fixture");
  const fs::path fixture = dir / "expected.trace";
  Trace want = simulate(d, s);
  std::ofstream(fixture) << dump_trace(want);
  ToolResult r = run_tool(adapter("copy", "cp " + fixture.string() + " {trace_out}"), d, s, (dir / "work").string());
  ASSERT_EQ(r.status, ToolResult::Status::Ok) << r.detail;
  EXPECT_EQ(r.trace, want);
  EXPECT_TRUE(fs::exists(dir / "work" / "design.v"));
}

TEST(External, ToolPrefixIsSearchedFirst) {
  Design d = small_seed(26);
  Stimulus s = generate_stimulus(d, 16, 1);
  fs::path dir = scratch("prefix");
  fs::create_directories(dir / "bin");
  const fs::path fixture = dir / "expected.trace";
  std::ofstream(fixture) << dump_trace(simulate(d, s));
  const fs::path script = dir / "bin" / "fake-synth";
  std::ofstream(script) << "#!/bin/sh\ncp " << fixture.string() << " \"$1\"\n";
  fs::permissions(script, fs::perms::owner_all);
  ::setenv("SYNTHFUZZ_TOOL_PREFIX", (dir / "bin").c_str(), 1);
  ToolResult r = run_tool(adapter("fake", "fake-synth {trace_out}"), d, s, (dir / "work").string());
  ::unsetenv("SYNTHFUZZ_TOOL_PREFIX");
  EXPECT_EQ(r.status, ToolResult::Status::Ok) << r.detail;
}

TEST(Testbench, DrivesEveryInputAndDumpsOutputs) {
  Design d = small_seed(27);
  Stimulus s = generate_stimulus(d, 4, 1);
  std::string tb = emit_testbench(d, s, "trace.txt");
  EXPECT_NE(tb.find("module"), std::string::npos);
  EXPECT_NE(tb.find("trace.txt"), std::string::npos);
  for (const auto& in : s.inputs) EXPECT_NE(tb.find(in.name), std::string::npos) << in.name;
}

TEST(Mock, NoFaultIsIdentity) {
  Design d = small_seed(28);
  MockResult r = mock_synthesize(d, FaultClass::None);
  EXPECT_FALSE(r.crashed);
  EXPECT_EQ(r.netlist, d);
}

TEST(Mock, FaultCCrashesAboveTheReferenceLimit) {
  const std::string sub = "module s (\n  input clk,\n  input rst,\n  input [3:0] a,\n  output [3:0] y\n);\n"
                          "  assign y = (a + 4'd1);\nendmodule\n\n";
  std::string top = "(* top *) module t (\n  input clk,\n  input rst,\n  input [3:0] a,\n  output [3:0] y\n);\n";
  std::string prev = "a";
  for (std::size_t i = 0; i <= kMockRefLimit; ++i) {
    top += "  wire [3:0] w" + std::to_string(i) + ";\n";
    top += "  s u" + std::to_string(i) + " (\n    .clk(clk),\n    .rst(rst),\n    .a(" + prev + "),\n    .y(w" +
           std::to_string(i) + ")\n  );\n";
    prev = "w" + std::to_string(i);
  }
  top += "  assign y = " + prev + ";\nendmodule\n";
  Design d = parse_design(sub + top);
  ASSERT_GT(structural_metrics(d).refs, kMockRefLimit);
  MockResult r = mock_synthesize(d, FaultClass::C, 0, "/tmp/x/design.v");
  EXPECT_TRUE(r.crashed);
  EXPECT_EQ(r.exit_code, 134);
  EXPECT_FALSE(mock_synthesize(d, FaultClass::A).crashed);
}

TEST(Mock, BuiltinAdaptersThroughTheOracle) {
  Design d = small_seed(29);
  Stimulus s = generate_stimulus(d, 32, 1);
  fs::path dir = scratch("builtin");
  std::vector<ToolAdapter> tools{adapter("reference", "builtin:reference"), adapter("none", "builtin:mock-none")};
  EXPECT_TRUE(cross_tool_differential(d, tools, s, dir.string()).equivalent());
  EXPECT_TRUE(tool_differential(adapter("a", "builtin:mock-A"), d, d, s, dir.string()).equivalent());
  EXPECT_THROW(adapter("bad", "builtin:mock-Z").check(), ConfigError);
}
