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

#include <functional>

#include "oracles.hpp"
#include "synthfuzz/error.hpp"
#include "synthfuzz/metrics.hpp"
#include "synthfuzz/printer.hpp"
#include "synthfuzz/seed_gen.hpp"
#include "synthfuzz/validate.hpp"

using namespace synthfuzz;

namespace {

unsigned control_depth(const std::vector<Stmt>& body) {
  unsigned d = 0;
  for (const auto& s : body) {
    if (const auto* i = std::get_if<IfStmt>(&s.node))
      d = std::max(d, 1 + std::max(control_depth(i->then_body), control_depth(i->else_body)));
    if (const auto* c = std::get_if<CaseStmt>(&s.node)) {
      unsigned inner = control_depth(c->default_body);
      for (const auto& item : c->items) inner = std::max(inner, control_depth(item.body));
      d = std::max(d, 1 + inner);
    }
  }
  return d;
}

}  // namespace

TEST(SeedGen, DeterministicPerSeed) {
  GenConfig g;
  g.seed = 17;
  EXPECT_EQ(print_design(generate_seed(g)), print_design(generate_seed(g)));
  GenConfig h = g;
  h.seed = 18;
  EXPECT_NE(print_design(generate_seed(g)), print_design(generate_seed(h)));
}

TEST(SeedGen, ValidLoopFreeAndInBudget) {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    GenConfig g;
    g.seed = seed;
    Design d = generate_seed(g);
    EXPECT_NO_THROW(validate_design(d));
    EXPECT_FALSE(oracle::has_comb_loop(d)) << seed;
    const std::size_t lines = oracle::newline_count(print_design(d));
    EXPECT_GE(lines, g.line_min);
    EXPECT_LE(lines, g.line_max);
    Metrics m = structural_metrics(d);
    EXPECT_LE(m.refs, g.max_instances);
    EXPECT_GE(d.modules.size(), 1 + g.min_submodules);
    for (const auto& mod : d.modules)
      for (const auto& item : mod.items)
        if (const auto* b = std::get_if<AlwaysBlock>(&item)) {
          // The reset arm adds one level around the generated body.
          EXPECT_LE(control_depth(b->body), g.max_control_depth + 1);
        }
  }
}

TEST(SeedGen, SmallBudgetAndInputCap) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenConfig g;
    g.seed = seed;
    g.line_min = 30;
    g.line_max = 120;
    g.min_submodules = 1;
    g.max_submodules = 2;
    g.max_input_bits = 5;
    g.widths = {1, 2, 3, 4};
    Design d;
    try {
      d = generate_seed(g);
    } catch (const BudgetInfeasible&) {
      continue;
    }
    unsigned bits = 0;
    for (const auto& p : d.top_module().ports)
      if (p.direction == Direction::Input) bits += p.width;
    EXPECT_LE(bits, 5u);
    EXPECT_GE(bits, 1u);
  }
}

TEST(SeedGen, InfeasibleBudget) {
  GenConfig g;
  g.line_min = 2;
  g.line_max = 4;
  EXPECT_THROW(generate_seed(g), BudgetInfeasible);
}

TEST(SeedGen, RejectsBadConfig) {
  GenConfig g;
  g.line_max = g.line_min - 1;
  EXPECT_THROW(g.check(), ConfigError);
  GenConfig w;
  w.widths = {0};
  EXPECT_THROW(w.check(), ConfigError);
  GenConfig p;
  p.p_sequential = 1.5;
  EXPECT_THROW(p.check(), ConfigError);
  GenConfig o;
  o.weights = OpWeights{0, 0, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_THROW(o.check(), ConfigError);
}

TEST(Stimulus, ResetPrefixAndDeterminism) {
  GenConfig g;
  Design d = generate_seed(g);
  Stimulus a = generate_stimulus(d, 50, 9);
  Stimulus b = generate_stimulus(d, 50, 9);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.cycles(), 50u);
  EXPECT_TRUE(a.rst[0]);
  EXPECT_TRUE(a.rst[1]);
  for (std::size_t t = 2; t < 50; ++t) EXPECT_FALSE(a.rst[t]);
  for (const auto& row : a.values)
    for (std::size_t i = 0; i < row.size(); ++i)
      EXPECT_EQ(row[i] >> a.inputs[i].width, 0u) << "value wider than its input";
}
