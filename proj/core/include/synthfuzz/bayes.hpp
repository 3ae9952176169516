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

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "synthfuzz/metrics.hpp"
#include "synthfuzz/rng.hpp"

namespace synthfuzz {

struct VariantRecord {
  std::size_t id = 0;
  Metrics metrics;
  std::size_t timing = 0;
};

struct VariantPool {
  Metrics seed;
  std::size_t seed_timing = 0;
  std::vector<VariantRecord> variants;
  std::size_t k = 1;

  /// Throws PreconditionError for an empty pool or k larger than the pool.
  void check() const;
};

/// Per-variant quantities, indexed like the pool's variants.
struct Posterior {
  std::vector<double> distance;
  std::vector<double> likelihood;  // P(D|Vi)
  std::vector<double> prior;       // P(Vi)
  std::vector<double> probability; // P(Vi|D)
};

/// Euclidean distance over (v, c, s).
double program_distance(const Metrics& a, const Metrics& b);

/// Timing ratio T_i / sum T_j, uniform when every timing is zero.
double prior(std::size_t timing, const std::vector<std::size_t>& pool_timings);

/// Normalizes nonnegative weights to sum to one, uniform when all are zero.
std::vector<double> normalize(const std::vector<double>& weights);

/// Bayes' rule over explicit likelihoods and priors. Neither input needs to
/// be normalized; both are only required to be nonnegative.
Posterior combine(std::vector<double> distance, std::vector<double> likelihood, std::vector<double> prior);

Posterior posterior(const VariantPool& pool);

/// Indices of the k largest posteriors. Ties (relative difference below
/// 1e-12) go to the larger distance, then the smaller id.
std::vector<std::size_t> rank_top_k(const Posterior& p, const std::vector<std::size_t>& ids, std::size_t k);

/// Ids of the selected variants, best first.
std::vector<std::size_t> select_top_k(const VariantPool& pool);

/// Uniform random k-subset, the baseline selector.
std::vector<std::size_t> select_random_k(const VariantPool& pool, Rng& rng);

/// One line per variant: id, distance, timing, likelihood, prior, posterior.
std::string dump_posterior(const VariantPool& pool, const Posterior& p);

}  // namespace synthfuzz
