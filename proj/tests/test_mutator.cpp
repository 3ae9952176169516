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
#include "synthfuzz/equiv.hpp"
#include "synthfuzz/error.hpp"
#include "synthfuzz/metrics.hpp"
#include "synthfuzz/mutator.hpp"
#include "synthfuzz/printer.hpp"
#include "synthfuzz/seed_gen.hpp"
#include "synthfuzz/validate.hpp"

using namespace synthfuzz;

namespace {

struct Fixture {
  Design seed;
  Stimulus stim;
  ValuationProfile prof;
};

Fixture make(std::uint64_t s) {
  GenConfig g;
  g.seed = s;
  Fixture f;
  f.seed = generate_seed(g);
  f.stim = generate_stimulus(f.seed, 128, s + 1);
  f.prof = profile(f.seed, f.stim);
  return f;
}

}  // namespace

TEST(Mutator, InsertionPointsAreSortedAndResolvable) {
  Fixture f = make(3);
  auto points = enumerate_insertion_points(f.seed);
  ASSERT_FALSE(points.empty());
  EXPECT_TRUE(std::is_sorted(points.begin(), points.end()));
  for (const auto& p : points) {
    EXPECT_EQ(parse_insertion_point(to_string(p)), p);
    EXPECT_NE(resolve_body(f.seed, p), nullptr);
  }
}

TEST(Mutator, TautologicalGuardsHoldForEveryValue) {
  Fixture f = make(4);
  Rng rng(1);
  auto points = enumerate_insertion_points(f.seed);
  for (std::size_t i = 0; i < points.size(); i += 3) {
    GuardPredicate g = synthesize_guard(f.prof, f.seed, points[i], GuardMode::Tautological, rng);
    EXPECT_EQ(g.kind, GuardKind::Tautological);
    const ModuleDef* m = f.seed.find(points[i].module);
    const SignalType* t = Scope(*m).lookup(g.variable);
    ASSERT_NE(t, nullptr);
    if (t->width <= 16) EXPECT_TRUE(oracle::guard_holds_exhaustively(g.expr, g.variable, t->width, t->is_signed));
  }
}

TEST(Mutator, ProfiledGuardsHoldOnTheProfile) {
  Fixture f = make(5);
  Rng rng(2);
  for (const auto& p : enumerate_insertion_points(f.seed)) {
    GuardPredicate g = synthesize_guard(f.prof, f.seed, p, GuardMode::Profiled, rng);
    Design d = clone_path_with_guard(f.seed, p, g);
    ASSERT_NO_THROW(validate_design(d));
    GuardCheck c = check_guards(d, f.stim);
    EXPECT_EQ(c.violations, 0u) << to_string(p) << " " << print_expr(g.expr);
    EXPECT_TRUE(internal_differential(f.seed, d, f.stim).equivalent());
  }
}

TEST(Mutator, UnreachedPointFallsBackToTautology) {
  Fixture f = make(6);
  Rng rng(3);
  ValuationProfile empty;
  auto points = enumerate_insertion_points(f.seed);
  GuardPredicate g = synthesize_guard(empty, f.seed, points.front(), GuardMode::Profiled, rng);
  EXPECT_EQ(g.kind, GuardKind::Tautological);
  EXPECT_NE(g.justification.find("not reached"), std::string::npos);
}

TEST(Mutator, DeadCodeAndWrapPreserveBehaviour) {
  Fixture f = make(7);
  Rng rng(4);
  std::size_t wraps = 0;
  auto points = enumerate_insertion_points(f.seed);
  for (std::size_t i = 0; i < points.size(); i += 2) {
    GuardPredicate g = synthesize_guard(f.prof, f.seed, points[i], GuardMode::Profiled, rng);
    Design cloned = clone_path_with_guard(f.seed, points[i], g);
    InsertionPoint moved;
    Design injected = inject_dead_code(cloned, points[i], 5, 100 + i, &moved);
    ASSERT_NO_THROW(validate_design(injected));
    EXPECT_FALSE(oracle::has_comb_loop(injected));
    EXPECT_TRUE(internal_differential(f.seed, injected, f.stim).equivalent());
    try {
      std::string name;
      Design wrapped = wrap_subsystem(injected, moved, &name);
      ++wraps;
      EXPECT_NE(wrapped.find(name), nullptr);
      EXPECT_FALSE(oracle::has_comb_loop(wrapped));
      EXPECT_TRUE(internal_differential(f.seed, wrapped, f.stim).equivalent());
      Metrics a = structural_metrics(injected), b = structural_metrics(wrapped);
      EXPECT_EQ(b.refs, a.refs + 1);
      EXPECT_GT(b.lines, a.lines);
    } catch (const UnextractableRegion&) {
    }
  }
  EXPECT_GT(wraps, 0u);
}

TEST(Mutator, MutateIsDeterministicAndReplayable) {
  Fixture f = make(8);
  MutationConfig m;
  m.seed = 77;
  m.p_wrap = 0.5;
  Variant a = mutate(f.seed, f.prof, m);
  Variant b = mutate(f.seed, f.prof, m);
  EXPECT_EQ(a.design, b.design);
  EXPECT_FALSE(a.noop);
  EXPECT_EQ(a.guard_check.violations, 0u);
  EXPECT_EQ(a.metrics, structural_metrics(a.design));
  Lineage parsed = parse_lineage(serialize_lineage(a.lineage));
  EXPECT_EQ(parsed, a.lineage);
  EXPECT_EQ(replay_lineage(f.seed, parsed), a.design);
}

TEST(Mutator, RejectsBadConfig) {
  MutationConfig m;
  m.dead_min = 5;
  m.dead_max = 2;
  EXPECT_THROW(m.check(), ConfigError);
  EXPECT_THROW(guard_mode_from_string("sometimes"), ConfigError);
}
