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

#include "synthfuzz/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "synthfuzz/error.hpp"

namespace synthfuzz {

void VariantPool::check() const {
  if (variants.empty()) throw PreconditionError("variant pool is empty");
  if (k > variants.size()) throw PreconditionError("k exceeds the pool size");
}

double program_distance(const Metrics& a, const Metrics& b) {
  auto sq = [](std::size_t x, std::size_t y) {
    double d = static_cast<double>(x) - static_cast<double>(y);
    return d * d;
  };
  return std::sqrt(sq(a.v, b.v) + sq(a.c, b.c) + sq(a.s, b.s));
}

std::vector<double> normalize(const std::vector<double>& weights) {
  double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<double> out(weights.size());
  if (!(total > 0)) {
    std::fill(out.begin(), out.end(), weights.empty() ? 0.0 : 1.0 / static_cast<double>(weights.size()));
    return out;
  }
  for (std::size_t i = 0; i < weights.size(); ++i) out[i] = weights[i] / total;
  return out;
}

double prior(std::size_t timing, const std::vector<std::size_t>& pool_timings) {
  if (pool_timings.empty()) throw PreconditionError("empty timing pool");
  std::size_t total = std::accumulate(pool_timings.begin(), pool_timings.end(), std::size_t{0});
  if (total == 0) return 1.0 / static_cast<double>(pool_timings.size());
  return static_cast<double>(timing) / static_cast<double>(total);
}

Posterior combine(std::vector<double> distance, std::vector<double> likelihood, std::vector<double> prior) {
  Posterior p;
  std::vector<double> joint(likelihood.size());
  for (std::size_t i = 0; i < joint.size(); ++i) joint[i] = likelihood[i] * prior[i];
  p.probability = normalize(joint);
  p.distance = std::move(distance);
  p.likelihood = std::move(likelihood);
  p.prior = std::move(prior);
  return p;
}

Posterior posterior(const VariantPool& pool) {
  pool.check();
  std::vector<double> dist, timings;
  for (const auto& v : pool.variants) {
    dist.push_back(program_distance(pool.seed, v.metrics));
    timings.push_back(static_cast<double>(v.timing));
  }
  std::vector<double> likelihood = normalize(dist);
  std::vector<double> pri = normalize(timings);
  return combine(std::move(dist), std::move(likelihood), std::move(pri));
}

std::vector<std::size_t> rank_top_k(const Posterior& p, const std::vector<std::size_t>& ids, std::size_t k) {
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto tied = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (!tied(p.probability[a], p.probability[b])) return p.probability[a] > p.probability[b];
    if (p.distance[a] != p.distance[b]) return p.distance[a] > p.distance[b];
    return ids[a] < ids[b];
  });
  order.resize(std::min(k, order.size()));
  return order;
}

std::vector<std::size_t> select_top_k(const VariantPool& pool) {
  Posterior p = posterior(pool);
  std::vector<std::size_t> ids;
  for (const auto& v : pool.variants) ids.push_back(v.id);
  std::vector<std::size_t> out;
  for (std::size_t i : rank_top_k(p, ids, pool.k)) out.push_back(ids[i]);
  return out;
}

std::vector<std::size_t> select_random_k(const VariantPool& pool, Rng& rng) {
  pool.check();
  std::vector<std::size_t> ids;
  for (const auto& v : pool.variants) ids.push_back(v.id);
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < pool.k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(ids.size() - i));
    std::swap(ids[i], ids[j]);
  }
  ids.resize(pool.k);
  return ids;
}

std::string dump_posterior(const VariantPool& pool, const Posterior& p) {
  std::string out = "# id distance timing likelihood prior posterior\n";
  for (std::size_t i = 0; i < pool.variants.size(); ++i) {
    out += fmt::format("{} {:.6f} {} {:.9f} {:.9f} {:.9f}\n", pool.variants[i].id, p.distance[i],
                       pool.variants[i].timing, p.likelihood[i], p.prior[i], p.probability[i]);
  }
  return out;
}

}  // namespace synthfuzz
