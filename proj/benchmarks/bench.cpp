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

#include <benchmark/benchmark.h>

#include "synthfuzz/bayes.hpp"
#include "synthfuzz/comb_graph.hpp"
#include "synthfuzz/mutator.hpp"
#include "synthfuzz/parser.hpp"
#include "synthfuzz/printer.hpp"
#include "synthfuzz/seed_gen.hpp"
#include "synthfuzz/simulator.hpp"

using namespace synthfuzz;

namespace {

Design seed_design(std::uint64_t s) {
  GenConfig g;
  g.seed = s;
  return generate_seed(g);
}

void BM_GenerateSeed(benchmark::State& st) {
  std::uint64_t s = 1;
  for (auto _ : st) benchmark::DoNotOptimize(seed_design(s++));
}
BENCHMARK(BM_GenerateSeed)->Unit(benchmark::kMillisecond);

void BM_PrintParse(benchmark::State& st) {
  const std::string text = print_design(seed_design(2));
  for (auto _ : st) benchmark::DoNotOptimize(parse_design(text));
  st.SetBytesProcessed(static_cast<std::int64_t>(st.iterations() * text.size()));
}
BENCHMARK(BM_PrintParse)->Unit(benchmark::kMicrosecond);

void BM_Simulate(benchmark::State& st) {
  Design d = seed_design(3);
  Stimulus s = generate_stimulus(d, static_cast<std::size_t>(st.range(0)), 3);
  Simulator sim(d);
  for (auto _ : st) benchmark::DoNotOptimize(sim.run(s));
  st.SetItemsProcessed(st.iterations() * st.range(0));  // cycles
}
BENCHMARK(BM_Simulate)->Arg(256)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_Mutate(benchmark::State& st) {
  Design d = seed_design(4);
  ValuationProfile prof = profile(d, generate_stimulus(d, 256, 4));
  MutationConfig m;
  for (auto _ : st) {
    ++m.seed;
    benchmark::DoNotOptimize(mutate(d, prof, m));
  }
}
BENCHMARK(BM_Mutate)->Unit(benchmark::kMillisecond);

void BM_Posterior(benchmark::State& st) {
  Rng rng(5);
  VariantPool pool;
  pool.k = 5;
  for (std::size_t i = 0; i < static_cast<std::size_t>(st.range(0)); ++i) {
    Metrics m;
    m.v = rng.below(400);
    m.c = rng.below(400);
    m.s = rng.below(40);
    pool.variants.push_back({i, m, rng.below(60)});
  }
  for (auto _ : st) benchmark::DoNotOptimize(select_top_k(pool));
}
BENCHMARK(BM_Posterior)->Arg(20)->Arg(1000);

void BM_TimingComplexity(benchmark::State& st) {
  Design d = seed_design(6);
  for (auto _ : st) benchmark::DoNotOptimize(timing_complexity(d));
}
BENCHMARK(BM_TimingComplexity)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
