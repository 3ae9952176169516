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
#include <string>

#include "oracles.hpp"
#include "synthfuzz/error.hpp"
#include "synthfuzz/parser.hpp"
#include "synthfuzz/printer.hpp"
#include "synthfuzz/simulator.hpp"
#include "synthfuzz/seed_gen.hpp"
#include "synthfuzz/triage.hpp"
#include "synthfuzz/validate.hpp"

using namespace synthfuzz;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / "synthfuzz-test-triage" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// Forty chained continuous assigns feeding one output.
std::string chain_design() {
  std::string s = "(* top *) module top (\n  input clk,\n  input rst,\n  input [7:0] a,\n  output [7:0] y\n);\n";
  for (int i = 0; i < 40; ++i) s += "  wire [7:0] n" + std::to_string(i) + ";\n";
  s += "  assign n0 = (a + 8'd1);\n";
  for (int i = 1; i < 40; ++i) s += "  assign n" + std::to_string(i) + " = (n" + std::to_string(i - 1) + " ^ a);\n";
  s += "  assign y = n39;\nendmodule\n";
  return s;
}

bool has_n20(const Design& c) { return print_design(c).find("assign n20 =") != std::string::npos; }

// `n` chained instances of a pure combinational module. Seven trip mock fault C.
std::string crowded_design(int n) {
  std::string s =
      "module leaf (\n  input clk,\n  input rst,\n  input [3:0] a,\n  output [3:0] y\n);\n"
      "  assign y = (a + 4'd3);\nendmodule\n\n"
      "(* top *) module top (\n  input clk,\n  input rst,\n  input [3:0] x,\n  output [3:0] q\n);\n";
  for (int i = 0; i <= n; ++i) s += "  wire [3:0] w" + std::to_string(i) + ";\n";
  s += "  assign w0 = x;\n";
  for (int i = 0; i < n; ++i) {
    s += "  leaf u" + std::to_string(i) + " (\n    .clk(clk),\n    .rst(rst),\n    .a(w" + std::to_string(i) +
         "),\n    .y(w" + std::to_string(i + 1) + ")\n  );\n";
  }
  s += "  assign q = w" + std::to_string(n) + ";\nendmodule\n";
  return s;
}

ToolAdapter mock(const std::string& fault) {
  ToolAdapter t;
  t.name = "mock" + fault;
  t.command = "builtin:mock-" + fault;
  return t;
}

}  // namespace

TEST(Reduce, KeepsTheNeededAssignAndIsOneMinimal) {
  Design d = parse_design(chain_design());
  ASSERT_EQ(statement_count(d), 41u);
  ReduceStats st;
  Design r = reduce(d, has_n20, &st);
  EXPECT_TRUE(has_n20(r));
  EXPECT_LE(statement_count(r) * 2, statement_count(d));
  EXPECT_GT(st.accepted, 0u);
  for (const Design& c : oracle::single_deletions(r)) {
    try {
      validate_design(c);
    } catch (const Error&) {
      continue;
    }
    if (oracle::has_comb_loop(c)) continue;
    EXPECT_FALSE(has_n20(c)) << print_design(c);
  }
  EXPECT_TRUE(is_one_minimal(r, has_n20));
}

TEST(Reduce, FalsePredicateOnInputIsFlaky) {
  Design d = parse_design(chain_design());
  EXPECT_THROW(reduce(d, [](const Design&) { return false; }), FlakyPredicate);
}

TEST(Reduce, AlwaysTruePredicateEmptiesTheBody) {
  Design d = parse_design(chain_design());
  Design r = reduce(d, [](const Design&) { return true; });
  EXPECT_EQ(statement_count(r), 0u);
}

TEST(Canonicalize, RenamesOutputsWithFailingSignalFirst) {
  Design d = parse_design(
      "(* top *) module top (\n  input clk,\n  input rst,\n  input [3:0] x,\n  output [3:0] p,\n"
      "  output [3:0] q\n);\n  assign p = (x + 4'd1);\n  assign q = (x ^ 4'd5);\nendmodule\n");
  Design c = canonicalize_outputs(d, "q");
  std::string text = print_design(c);
  EXPECT_NE(text.find("assign o0 = (x ^ 4'd5);"), std::string::npos) << text;
  EXPECT_NE(text.find("assign o1 = (x + 4'd1);"), std::string::npos) << text;
  Design plain = canonicalize_outputs(d);
  EXPECT_NE(print_design(plain).find("assign o0 = (x + 4'd1);"), std::string::npos);
}

TEST(Signature, NormalizationDropsVolatileDetail) {
  std::string a =
      "reading /tmp/run-1234/design.v\n"
      "2026-03-01 10:11:12 ERROR: assertion failed at /build/src/opt.cc:412:7 (0x7ffd1234)\n";
  std::string b =
      "reading /var/tmp/x/design.v\n"
      "2026-04-07T01:02:03Z ERROR: assertion failed at /home/u/opt.cc:97:1 (0xdeadbeef)\n";
  EXPECT_EQ(normalize_failure_text(a), normalize_failure_text(b));
  EXPECT_EQ(normalize_failure_text("Error on line 12\n"), normalize_failure_text("Error on line 300\n"));
  EXPECT_NE(normalize_failure_text("ERROR: x\n"), normalize_failure_text("ERROR: y\n"));

  OracleVerdict m1;
  m1.kind = OracleVerdict::Kind::Mismatch;
  m1.signal = "o0";
  m1.tool_a = "reference";
  m1.tool_b = "mockA";
  m1.cycle = 3;
  OracleVerdict m2 = m1;
  m2.cycle = 17;
  m2.expected = 9;
  EXPECT_EQ(signature(m1), signature(m2));
  m2.signal = "o1";
  EXPECT_NE(signature(m1).hash, signature(m2).hash);
  EXPECT_EQ(signature(m1).id().size(), 16u);
}

TEST(Signature, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cull);
}

TEST(Dedup, InsertOnceAndPersist) {
  fs::path dir = scratch("dedup");
  std::string path = (dir / "signatures.db").string();
  OracleVerdict v;
  v.kind = OracleVerdict::Kind::Crash;
  v.tool = "t";
  v.output = "fatal: boom\n";
  FailureSignature s = signature(v);
  {
    DedupDb db(path);
    EXPECT_TRUE(db.insert(s));
    EXPECT_FALSE(db.insert(s));
    EXPECT_EQ(db.size(), 1u);
  }
  DedupDb again(path);
  EXPECT_TRUE(again.contains(s));
  EXPECT_FALSE(again.insert(s));
  DedupDb memory;
  EXPECT_TRUE(memory.insert(s));
}

TEST(Report, PersistLoadReplay) {
  fs::path dir = scratch("report");
  Design d = parse_design(crowded_design(7));
  Stimulus s = generate_stimulus(d, 16, 5);
  ToolAdapter tool = mock("C");
  OracleVerdict v = reference_check(tool, d, s, (dir / "work").string());
  ASSERT_EQ(v.kind, OracleVerdict::Kind::Crash);

  BugReport r;
  r.id = "report_0001";
  r.classification = 'C';
  r.tool = tool;
  r.seed_id = "iter_0000";
  r.seed_rng = 0x1234;
  r.design = print_design(d);
  r.original_statements = statement_count(d);
  r.reduced_statements = statement_count(d);
  r.stimulus = s;
  r.lineage = "";
  r.verdict = v;
  r.signature = signature(v);
  r.created = "2026-01-01T00:00:00Z";
  std::string where = persist_report(r, (dir / "reports").string());
  EXPECT_TRUE(fs::exists(fs::path(where) / "design.v"));
  EXPECT_THROW(persist_report(r, (dir / "reports").string()), Error);

  BugReport back = load_report(where);
  EXPECT_EQ(back.id, r.id);
  EXPECT_EQ(back.classification, 'C');
  EXPECT_EQ(back.tool.command, tool.command);
  EXPECT_EQ(back.seed_rng, r.seed_rng);
  EXPECT_EQ(back.design, r.design);
  EXPECT_EQ(back.signature.hash, r.signature.hash);
  EXPECT_EQ(back.verdict.kind, r.verdict.kind);
  EXPECT_EQ(back.stimulus.values, s.values);
  EXPECT_TRUE(replay_matches(back, replay_report(back, (dir / "replay").string())));

  // One instance fewer removes the trigger.
  back.design = print_design(parse_design(crowded_design(6)));
  EXPECT_FALSE(replay_matches(back, replay_report(back, (dir / "replay2").string())));
}
