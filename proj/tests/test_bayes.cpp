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

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "synthfuzz/bayes.hpp"
#include "synthfuzz/error.hpp"

using namespace synthfuzz;

namespace {

Metrics vcs(std::size_t v, std::size_t c, std::size_t s) {
  Metrics m;
  m.v = v;
  m.c = c;
  m.s = s;
  return m;
}

VariantPool random_pool(Rng& rng, std::size_t n, std::size_t k) {
  VariantPool p;
  p.seed = vcs(rng.below(200), rng.below(200), rng.below(20));
  p.seed_timing = rng.below(40);
  for (std::size_t i = 0; i < n; ++i)
    p.variants.push_back({i, vcs(rng.below(300), rng.below(300), rng.below(30)), rng.below(60)});
  p.k = k;
  return p;
}

}  // namespace

TEST(Distance, PythagoreanExample) {
  EXPECT_EQ(program_distance(vcs(3, 4, 0), vcs(0, 0, 0)), 5.0);
  EXPECT_EQ(program_distance(vcs(7, 1, 2), vcs(7, 1, 2)), 0.0);
}

TEST(Distance, IgnoresRefsAndLines) {
  Metrics a = vcs(1, 2, 3), b = vcs(1, 2, 3);
  b.refs = 9;
  b.lines = 500;
  EXPECT_EQ(program_distance(a, b), 0.0);
}

TEST(DistanceProperty, MatchesOracleAndMetricAxioms) {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    Metrics a = vcs(rng.below(500), rng.below(500), rng.below(50));
    Metrics b = vcs(rng.below(500), rng.below(500), rng.below(50));
    Metrics c = vcs(rng.below(500), rng.below(500), rng.below(50));
    const double ab = program_distance(a, b);
    EXPECT_DOUBLE_EQ(ab, oracle::distance(a, b));
    EXPECT_GE(ab, 0.0);
    EXPECT_EQ(ab, program_distance(b, a));
    EXPECT_EQ(ab == 0.0, a == b);
    EXPECT_LE(program_distance(a, c), ab + program_distance(b, c) + 1e-9);
  }
}

TEST(Prior, TimingRatio) {
  EXPECT_DOUBLE_EQ(prior(3, {1, 3, 6}), 0.3);
  EXPECT_DOUBLE_EQ(prior(0, {0, 0}), 0.5);
}

TEST(PosteriorProperty, MatchesOracleAndSumsToOne) {
  Rng rng(12);
  for (int i = 0; i < 500; ++i) {
    VariantPool pool = random_pool(rng, 1 + rng.below(25), 1);
    Posterior p = posterior(pool);
    std::vector<double> d, t;
    for (const auto& v : pool.variants) {
      d.push_back(oracle::distance(v.metrics, pool.seed));
      t.push_back(static_cast<double>(v.timing));
    }
    std::vector<double> want = oracle::posterior(d, t);
    double sum = 0;
    for (std::size_t j = 0; j < want.size(); ++j) {
      EXPECT_NEAR(p.probability[j], want[j], 1e-12);
      sum += p.probability[j];
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(Posterior, AllVariantsEqualToSeedIsUniform) {
  VariantPool pool;
  pool.seed = vcs(5, 5, 5);
  for (std::size_t i = 0; i < 4; ++i) pool.variants.push_back({i, vcs(5, 5, 5), 0});
  Posterior p = posterior(pool);
  for (double x : p.probability) EXPECT_DOUBLE_EQ(x, 0.25);
}

TEST(TopKProperty, InvariantUnderPositiveScaling) {
  Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 2 + rng.below(20);
    std::vector<double> d(n), like(n), pri(n);
    std::vector<std::size_t> ids(n);
    for (std::size_t j = 0; j < n; ++j) {
      d[j] = static_cast<double>(rng.below(100));
      like[j] = static_cast<double>(rng.below(1000)) / 7.0;
      pri[j] = static_cast<double>(rng.below(50));
      ids[j] = j;
    }
    const std::size_t k = 1 + rng.below(n);
    auto base = rank_top_k(combine(d, like, pri), ids, k);
    const double a = 0.001 + rng.unit() * 1000, b = 0.001 + rng.unit() * 1000;
    auto sl = like, sp = pri;
    for (auto& x : sl) x *= a;
    for (auto& x : sp) x *= b;
    EXPECT_EQ(rank_top_k(combine(d, sl, sp), ids, k), base);
  }
}

TEST(TopK, TiesGoToDistanceThenId) {
  Posterior p;
  p.distance = {1, 3, 3, 2};
  p.probability = {0.25, 0.25, 0.25, 0.25};
  // Positions are returned; ids only break the final tie.
  EXPECT_EQ(rank_top_k(p, {10, 11, 12, 13}, 3), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(rank_top_k(p, {10, 12, 11, 13}, 2), (std::vector<std::size_t>{2, 1}));
}

TEST(Select, RandomBaselineIsADistinctSubset) {
  Rng rng(14);
  VariantPool pool = random_pool(rng, 20, 5);
  for (int i = 0; i < 50; ++i) {
    auto ids = select_random_k(pool, rng);
    EXPECT_EQ(ids.size(), 5u);
    EXPECT_EQ(std::set<std::size_t>(ids.begin(), ids.end()).size(), 5u);
  }
}

TEST(Select, Preconditions) {
  VariantPool empty;
  EXPECT_THROW(empty.check(), PreconditionError);
  Rng rng(15);
  VariantPool pool = random_pool(rng, 3, 4);
  EXPECT_THROW(pool.check(), PreconditionError);
  EXPECT_THROW(select_top_k(pool), PreconditionError);
}
