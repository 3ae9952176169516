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

#include "oracles.hpp"
#include "synthfuzz/error.hpp"
#include "synthfuzz/mutator.hpp"
#include "synthfuzz/parser.hpp"
#include "synthfuzz/seed_gen.hpp"
#include "synthfuzz/simulator.hpp"
#include "synthfuzz/smt.hpp"
#include "synthfuzz/smt_eval.hpp"

using namespace synthfuzz;

namespace {

Design tiny(std::uint64_t seed, std::size_t bits) {
  GenConfig g;
  g.seed = seed;
  g.line_min = 30;
  g.line_max = 110;
  g.min_submodules = 1;
  g.max_submodules = 2;
  g.max_input_bits = bits;
  g.widths = {1, 2, 3, 4};
  return generate_seed(g);
}

const char* kAcc =
    "module m (\n  input clk,\n  input rst,\n  input [1:0] a,\n  output [3:0] y\n);\n"
    "  reg [3:0] acc = 4'd0;\n"
    "  always @(posedge clk) begin\n    if (rst) begin\n      acc <= 4'd5;\n    end else begin\n"
    "      acc <= (acc + {2'd0, a});\n    end\n  end\n  assign y = acc;\nendmodule\n";

}  // namespace

TEST(SmtEval, HandWrittenScripts) {
  EXPECT_EQ(smt_brute_force("(declare-fun x () (_ BitVec 4))(assert (= (bvadd x #x1) #x0))(check-sat)"), "sat");
  EXPECT_EQ(smt_brute_force("(declare-fun x () (_ BitVec 4))(assert (bvult x x))(check-sat)"), "unsat");
  EXPECT_EQ(smt_brute_force("(declare-fun x () (_ BitVec 3))(assert (= ((_ extract 2 2) (bvshl x #b001)) #b1))"
                            "(check-sat)"),
            "sat");
  EXPECT_EQ(smt_brute_force("(declare-fun x () (_ BitVec 8))(define-fun y () (_ BitVec 8) (bvmul x #x02))"
                            "(assert (= ((_ extract 0 0) y) #b1))(check-sat)"),
            "unsat");
  EXPECT_THROW(smt_brute_force("(assert true)"), Error);
}

TEST(Miter, SelfMiterIsUnsat) {
  Design d = parse_design(kAcc);
  for (std::size_t unroll = 1; unroll <= 4; ++unroll) {
    std::string smt = export_smt_miter(d, d, unroll);
    EXPECT_NE(smt.find("(set-logic QF_BV)"), std::string::npos);
    EXPECT_EQ(smt_brute_force(smt), "unsat");
    if (auto z = solve_external(smt)) EXPECT_EQ(*z, "unsat");
  }
}

TEST(Miter, DifferenceOnlyVisibleAfterTwoCycles) {
  Design a = parse_design(kAcc);
  Design b = a;
  oracle::perturb_operator(b, 0);  // acc + a  ->  acc - a
  // Outputs show the reset value in cycle 0 and diverge from cycle 1 on.
  EXPECT_EQ(smt_brute_force(export_smt_miter(a, b, 1)), "unsat");
  EXPECT_EQ(smt_brute_force(export_smt_miter(a, b, 2)), "sat");
  EXPECT_TRUE(exhaustive_equivalence(a, b, 1).equivalent);
  ExhaustiveResult r = exhaustive_equivalence(a, b, 2);
  ASSERT_FALSE(r.equivalent);
  EXPECT_EQ(r.counterexample.cycles(), 2u);
  EXPECT_FALSE(compare_traces(simulate(a, r.counterexample), simulate(b, r.counterexample)).equivalent());
}

TEST(Miter, RejectsProfiledGuardsAndMismatchedInterfaces) {
  GenConfig g;
  Design seed = generate_seed(g);
  Stimulus s = generate_stimulus(seed, 64, 1);
  MutationConfig m;
  m.mode = GuardMode::Profiled;
  m.seed = 3;
  Variant v = mutate(seed, profile(seed, s), m);
  bool profiled = false;
  for (const auto& site : oracle::guard_sites(v.design)) profiled |= site.kind == GuardKind::Profiled;
  if (profiled) EXPECT_THROW(export_smt_miter(seed, v.design, 2), PreconditionError);
  EXPECT_THROW(export_smt_miter(seed, parse_design(kAcc), 1), PreconditionError);
  EXPECT_THROW(export_smt_miter(seed, seed, 0), PreconditionError);
}

TEST(Exhaustive, RefusesLargeInputSpaces) {
  Design d = parse_design(kAcc);
  EXPECT_EQ(miter_input_bits(d, 3), 6u);
  EXPECT_THROW(exhaustive_equivalence(d, d, 11, 20), PreconditionError);
}

TEST(MiterProperty, ExhaustiveAgreesWithSmtOnSmallPairs) {
  std::size_t pairs = 0, unequal = 0;
  for (std::uint64_t seed = 1; pairs < 24 && seed < 200; ++seed) {
    Design a;
    try {
      a = tiny(seed, 3);
    } catch (const BudgetInfeasible&) {
      continue;
    }
    Design b = a;
    if (seed % 2 == 0) {
      Stimulus s = generate_stimulus(a, 32, seed);
      MutationConfig m;
      m.mode = GuardMode::Tautological;
      m.seed = seed;
      b = mutate(a, profile(a, s), m).design;
    } else if (!oracle::perturb_operator(b, seed % 5)) {
      continue;
    }
    const std::size_t unroll = 1 + seed % 4;
    ExhaustiveResult r = exhaustive_equivalence(a, b, unroll);
    EXPECT_EQ(smt_brute_force(export_smt_miter(a, b, unroll)), r.equivalent ? "unsat" : "sat") << seed;
    ++pairs;
    unequal += !r.equivalent;
  }
  EXPECT_EQ(pairs, 24u);
  EXPECT_GT(unequal, 0u);
}
