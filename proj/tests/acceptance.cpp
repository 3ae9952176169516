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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are pinned below.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "oracles.hpp"
#include "synthfuzz/bayes.hpp"
#include "synthfuzz/campaign.hpp"
#include "synthfuzz/equiv.hpp"
#include "synthfuzz/error.hpp"
#include "synthfuzz/metrics.hpp"
#include "synthfuzz/mutator.hpp"
#include "synthfuzz/parser.hpp"
#include "synthfuzz/printer.hpp"
#include "synthfuzz/seed_gen.hpp"
#include "synthfuzz/simulator.hpp"
#include "synthfuzz/smt.hpp"
#include "synthfuzz/smt_eval.hpp"
#include "synthfuzz/triage.hpp"
#include "synthfuzz/validate.hpp"

using namespace synthfuzz;
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kPairs = 500;
constexpr double kPairBudgetSeconds = 600;
constexpr unsigned kExhaustiveGuardWidth = 16;
constexpr double kPosteriorSumTol = 1e-9;
constexpr double kTriangleTol = 1e-9;
constexpr std::size_t kPools = 1000;
constexpr std::size_t kTriples = 10000;
constexpr std::size_t kSelectTrials = 100;
constexpr std::size_t kSelectPool = 20;
constexpr std::size_t kSelectK = 5;
constexpr double kSignAlpha = 0.05;
constexpr std::size_t kCampaignIters = 120;  // at most 500
constexpr std::size_t kBugClasses = 3;
constexpr std::size_t kSmtPairs = 50;
constexpr std::size_t kSmtBits = 12;
constexpr std::size_t kSmtUnroll = 4;
constexpr std::size_t kRoundTrips = 1000;
constexpr std::size_t kDeterminismIters = 25;

int failures = 0;

void report(int n, bool ok, const std::string& what) {
  std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", n, what.c_str());
  std::fflush(stdout);
  failures += !ok;
}

std::size_t threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// Runs fn(0..n-1) on a few threads; results go into caller-owned slots.
void parallel(std::size_t n, const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(threads(), n); ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) fn(i);
    });
  for (auto& t : pool) t.join();
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / "synthfuzz-acceptance" / name;
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

void collect_names(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::Ref || e.kind == Expr::Kind::Select) out.insert(e.name);
  for (const auto& a : e.args) collect_names(a, out);
}

// --- criteria 1-3 -----------------------------------------------------------

struct PairResult {
  bool generated = false;
  bool equivalent = false;
  bool fresh_equivalent = true;  // tautological variants on an unrelated stimulus
  std::size_t profiled_violations = 0;
  std::size_t profiled_guards = 0;
  std::size_t taut_checked = 0;
  std::size_t taut_failed = 0;
  bool loop = false;
  std::string error;
};

PairResult one_pair(std::size_t i) {
  PairResult r;
  try {
    GenConfig g;
    g.seed = 10000 + i;
    Design seed = generate_seed(g);
    Stimulus stim = generate_stimulus(seed, 256, g.seed);
    MutationConfig m;
    m.mode = i % 2 == 0 ? GuardMode::Profiled : GuardMode::Tautological;
    m.seed = 20000 + i;
    Variant v = mutate(seed, profile(seed, stim), m);
    r.generated = true;
    r.equivalent = internal_differential(seed, v.design, stim).equivalent();
    if (m.mode == GuardMode::Tautological)
      r.fresh_equivalent = internal_differential(seed, v.design, generate_stimulus(seed, 256, g.seed + 7)).equivalent();
    GuardCheck gc = check_guards(v.design, stim);
    r.profiled_violations = gc.violations + v.guard_check.violations;
    r.loop = oracle::has_comb_loop(seed) || oracle::has_comb_loop(v.design);
    for (const auto& site : oracle::guard_sites(v.design)) {
      if (site.kind == GuardKind::Profiled) ++r.profiled_guards;
      if (site.kind != GuardKind::Tautological) continue;
      std::set<std::string> names;
      collect_names(site.cond, names);
      const ModuleDef* mod = v.design.find(site.module);
      if (names.size() != 1 || mod == nullptr) {
        ++r.taut_failed;
        continue;
      }
      const SignalType* t = Scope(*mod).lookup(*names.begin());
      if (t == nullptr) {
        ++r.taut_failed;
        continue;
      }
      if (t->width > kExhaustiveGuardWidth) continue;
      ++r.taut_checked;
      if (!oracle::guard_holds_exhaustively(site.cond, *names.begin(), t->width, t->is_signed)) ++r.taut_failed;
    }
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

void criteria_1_to_3() {
  std::vector<PairResult> res(kPairs);
  auto t0 = std::chrono::steady_clock::now();
  parallel(kPairs, [&](std::size_t i) { res[i] = one_pair(i); });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::size_t equal = 0, generated = 0, violations = 0, profiled = 0, checked = 0, taut_failed = 0, loops = 0;
  std::string first_error;
  for (const auto& r : res) {
    generated += r.generated;
    equal += r.generated && r.equivalent && r.fresh_equivalent;
    violations += r.profiled_violations;
    profiled += r.profiled_guards;
    checked += r.taut_checked;
    taut_failed += r.taut_failed;
    loops += r.loop;
    if (first_error.empty() && !r.error.empty()) first_error = r.error;
  }
  report(1, equal == kPairs && secs < kPairBudgetSeconds,
         fmt::format("{}/{} seed/variant pairs EMI-equivalent in {:.1f}s (limit {:.0f}s){}", equal, kPairs, secs,
                     kPairBudgetSeconds, first_error.empty() ? "" : "; first error: " + first_error));
  report(2, generated == kPairs && violations == 0 && taut_failed == 0 && checked > 0,
         fmt::format("{} profiled guards, {} violations; {} tautological guards checked exhaustively (<= {} bits), {} "
                     "failed",
                     profiled, violations, checked, kExhaustiveGuardWidth, taut_failed));
  report(3, generated == kPairs && loops == 0,
         fmt::format("{} of {} seed/variant pairs contain a combinational loop", loops, generated));
}

// --- criteria 4-5 -----------------------------------------------------------

Metrics vcs(std::size_t v, std::size_t c, std::size_t s) {
  Metrics m;
  m.v = v;
  m.c = c;
  m.s = s;
  return m;
}

Metrics random_metrics(Rng& rng) { return vcs(rng.below(2000), rng.below(2000), rng.below(100)); }

void criterion_4() {
  Rng rng(404);
  double worst_sum = 0, worst_oracle = 0;
  for (std::size_t i = 0; i < kPools; ++i) {
    VariantPool pool;
    pool.seed = random_metrics(rng);
    pool.seed_timing = rng.below(100);
    const std::size_t n = 1 + rng.below(40);
    for (std::size_t j = 0; j < n; ++j) pool.variants.push_back({j, random_metrics(rng), rng.below(200)});
    pool.k = 1;
    Posterior p = posterior(pool);
    double sum = 0;
    for (double x : p.probability) sum += x;
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    std::vector<double> d, t;
    for (const auto& v : pool.variants) {
      d.push_back(oracle::distance(v.metrics, pool.seed));
      t.push_back(static_cast<double>(v.timing));
    }
    auto want = oracle::posterior(d, t);
    for (std::size_t j = 0; j < n; ++j) worst_oracle = std::max(worst_oracle, std::abs(want[j] - p.probability[j]));
  }

  std::size_t axiom_failures = 0;
  for (std::size_t i = 0; i < kTriples; ++i) {
    Metrics a = random_metrics(rng), b = random_metrics(rng), c = random_metrics(rng);
    if (i % 10 == 0) b = a;
    const double ab = program_distance(a, b), ba = program_distance(b, a);
    const double ac = program_distance(a, c), bc = program_distance(b, c);
    bool ok = ab >= 0 && ab == ba && ((ab == 0) == (a == b)) && program_distance(a, a) == 0 &&
              ac <= ab + bc + kTriangleTol;
    axiom_failures += !ok;
  }

  std::size_t scale_failures = 0;
  for (std::size_t i = 0; i < kPools; ++i) {
    const std::size_t n = 2 + rng.below(30);
    std::vector<double> d(n), like(n), pri(n);
    std::vector<std::size_t> ids(n);
    for (std::size_t j = 0; j < n; ++j) {
      d[j] = static_cast<double>(rng.below(500));
      like[j] = static_cast<double>(rng.below(1000)) / 3.0;
      pri[j] = static_cast<double>(rng.below(100));
      ids[j] = j;
    }
    const std::size_t k = 1 + rng.below(n);
    auto base = rank_top_k(combine(d, like, pri), ids, k);
    const double a = std::pow(10.0, rng.unit() * 8 - 4), b = std::pow(10.0, rng.unit() * 8 - 4);
    auto sl = like, sp = pri;
    for (auto& x : sl) x *= a;
    for (auto& x : sp) x *= b;
    scale_failures += rank_top_k(combine(d, sl, sp), ids, k) != base;
    scale_failures += rank_top_k(combine(d, sl, pri), ids, k) != base;
    scale_failures += rank_top_k(combine(d, like, sp), ids, k) != base;
  }
  report(4, worst_sum <= kPosteriorSumTol && worst_oracle <= kPosteriorSumTol && axiom_failures == 0 &&
                scale_failures == 0,
         fmt::format("posterior |sum-1| max {:.2e} over {} pools (tol {:.0e}), oracle gap {:.2e}; metric axioms "
                     "failed on {}/{} triples; top-k changed under scaling {} times",
                     worst_sum, kPools, kPosteriorSumTol, worst_oracle, axiom_failures, kTriples, scale_failures));
}

void criterion_5() {
  const double d = program_distance(vcs(3, 4, 0), vcs(0, 0, 0));
  Rng rng(505);
  bool self = true;
  for (int i = 0; i < 1000; ++i) {
    Metrics x = random_metrics(rng);
    self = self && program_distance(x, x) == 0.0;
  }
  report(5, d == 5.0 && self, fmt::format("d((3,4,0),0) = {:.17g}; d(x,x) = 0 on 1000 points: {}", d, self));
}

// --- criterion 6 --------------------------------------------------------------

void criterion_6() {
  struct Trial {
    double bayes = 0, random = 0;
    std::string error;
  };
  std::vector<Trial> trials(kSelectTrials);
  parallel(kSelectTrials, [&](std::size_t t) {
    try {
      GenConfig g;
      g.seed = 60000 + t;
      Design seed = generate_seed(g);
      Stimulus stim = generate_stimulus(seed, 128, g.seed);
      ValuationProfile prof = profile(seed, stim);
      VariantPool pool;
      pool.seed = structural_metrics(seed);
      pool.k = kSelectK;
      for (std::size_t j = 0; j < kSelectPool; ++j) {
        MutationConfig m;
        m.seed = 61000 + t * kSelectPool + j;
        Variant v = mutate(seed, prof, m);
        pool.variants.push_back({j, v.metrics, v.timing});
      }
      auto mean = [&](const std::vector<std::size_t>& ids) {
        double s = 0;
        for (std::size_t id : ids) s += oracle::distance(pool.variants[id].metrics, pool.seed);
        return s / static_cast<double>(ids.size());
      };
      Rng rng(62000 + t);
      trials[t].bayes = mean(select_top_k(pool));
      trials[t].random = mean(select_random_k(pool, rng));
    } catch (const Error& e) {
      trials[t].error = e.what();
    }
  });
  std::size_t wins = 0, losses = 0, errors = 0;
  double mb = 0, mr = 0;
  for (const auto& t : trials) {
    if (!t.error.empty()) {
      ++errors;
      continue;
    }
    wins += t.bayes > t.random;
    losses += t.bayes < t.random;
    mb += t.bayes;
    mr += t.random;
  }
  const double p = oracle::sign_test_p(wins, wins + losses);
  const double n = static_cast<double>(kSelectTrials - errors);
  report(6, errors == 0 && mb > mr && p < kSignAlpha,
         fmt::format("{} trials, pool {}, k {}: mean distance {:.2f} (posterior) vs {:.2f} (random), wins {} losses "
                     "{}, sign test p = {:.3g} (alpha {})",
                     kSelectTrials, kSelectPool, kSelectK, mb / n, mr / n, wins, losses, p, kSignAlpha));
}

// --- criterion 7 --------------------------------------------------------------

void criterion_7() {
  std::size_t wraps = 0, bad = 0;
  for (std::uint64_t s = 70; s < 90; ++s) {
    GenConfig g;
    g.seed = s;
    Design seed = generate_seed(g);
    Stimulus stim = generate_stimulus(seed, 128, s);
    ValuationProfile prof = profile(seed, stim);
    Rng rng(s);
    auto points = enumerate_insertion_points(seed);
    for (std::size_t i = 0; i < points.size(); i += 5) {
      GuardPredicate gp = synthesize_guard(prof, seed, points[i], GuardMode::Profiled, rng);
      InsertionPoint moved;
      Design injected = inject_dead_code(clone_path_with_guard(seed, points[i], gp), points[i], 3, s * 100 + i, &moved);
      Design wrapped;
      try {
        wrapped = wrap_subsystem(injected, moved);
      } catch (const UnextractableRegion&) {
        continue;
      }
      ++wraps;
      Metrics a = structural_metrics(injected), b = structural_metrics(wrapped);
      bad += !(b.v >= a.v && b.c >= a.c && b.lines > a.lines && b.refs == a.refs + 1);
    }
  }
  report(7, wraps > 0 && bad == 0,
         fmt::format("{} wraps, {} violated v'>=v, c'>=c, lines'>lines, refs'=refs+1", wraps, bad));
}

// --- criteria 8 and 10 ----------------------------------------------------------

CampaignConfig mock_campaign(const fs::path& out, std::size_t iters, std::size_t workers) {
  CampaignConfig c;
  c.max_iter = iters;
  c.out_dir = out.string();
  c.workers = workers;
  for (const char* f : {"A", "B", "C"}) {
    ToolAdapter t;
    t.name = std::string("mock-") + f;
    t.command = std::string("builtin:mock-") + f;
    c.tools.push_back(t);
  }
  return c;
}

// The reduction target: any mismatch for a miscompilation, the recorded
// signature for a crash.
bool same_bug(const OracleVerdict& v, const BugReport& r) {
  if (v.kind != r.verdict.kind) return false;
  if (v.kind == OracleVerdict::Kind::Mismatch) return true;
  return signature(v).hash == r.signature.hash;
}

std::vector<std::string> campaign_reports;

void criterion_8() {
  fs::path out = scratch("campaign");
  CampaignStats s;
  std::string error;
  try {
    s = run_campaign(mock_campaign(out, kCampaignIters, threads()));
  } catch (const Error& e) {
    error = e.what();
  }
  campaign_reports = s.reports;
  std::set<std::string> kinds;
  std::size_t too_big = 0, not_minimal = 0, checked = 0;
  double worst_ratio = 0;
  for (const auto& dir : s.reports) {
    BugReport r = load_report(dir);
    Design d = parse_design(r.design);
    kinds.insert(r.tool.name);
    const double ratio = static_cast<double>(statement_count(d)) / static_cast<double>(r.original_statements);
    worst_ratio = std::max(worst_ratio, ratio);
    too_big += ratio > 0.5;
    const fs::path work = out / "minimality";
    auto pred = [&](const Design& c) { return same_bug(reference_check(r.tool, c, r.stimulus, work.string()), r); };
    if (!pred(d)) {
      ++not_minimal;
      continue;
    }
    for (const Design& c : oracle::single_deletions(d)) {
      try {
        validate_design(c);
      } catch (const Error&) {
        continue;
      }
      if (oracle::has_comb_loop(c)) continue;
      ++checked;
      if (pred(c)) {
        ++not_minimal;
        break;
      }
    }
  }
  report(8, error.empty() && s.distinct_signatures == kBugClasses && kinds.size() == kBugClasses && too_big == 0 &&
                not_minimal == 0,
         fmt::format("{} iterations: {} distinct signatures from tools {{{}}}; reduced/original statements max {:.3f}; "
                     "{} reports not 1-minimal ({} single deletions checked){}",
                     kCampaignIters, s.distinct_signatures, fmt::join(kinds, ","), worst_ratio, not_minimal, checked,
                     error.empty() ? "" : "; error: " + error));
}

void criterion_10() {
  fs::path a = scratch("det_a"), b = scratch("det_b");
  std::string error;
  try {
    run_campaign(mock_campaign(a, kDeterminismIters, 1));
    run_campaign(mock_campaign(b, kDeterminismIters, std::max<std::size_t>(2, threads())));
  } catch (const Error& e) {
    error = e.what();
  }
  const std::string la = slurp(a / "campaign.log"), lb = slurp(b / "campaign.log");
  std::size_t replayed = 0, matched = 0;
  const fs::path work = scratch("replay");
  for (const auto& dir : campaign_reports) {
    BugReport r = load_report(dir);
    ++replayed;
    matched += replay_matches(r, replay_report(r, work.string()));
  }
  report(10, error.empty() && !la.empty() && la == lb && replayed > 0 && matched == replayed,
         fmt::format("campaign logs ({} bytes, 1 vs {} workers) identical: {}; {}/{} reports replay to their verdict{}",
                     la.size(), std::max<std::size_t>(2, threads()), la == lb, matched, replayed, error.empty() ? "" : "; error: " + error));
}

// --- criterion 9 --------------------------------------------------------------

void criterion_9() {
  std::size_t pairs = 0, agree = 0, sat = 0, z3_runs = 0, z3_agree = 0, max_bits = 0;
  const bool have_z3 = solve_external("(check-sat)").has_value();
  for (std::uint64_t seed = 1; pairs < kSmtPairs && seed < 1000; ++seed) {
    GenConfig g;
    g.seed = 90000 + seed;
    g.line_min = 30;
    g.line_max = 110;
    g.min_submodules = 1;
    g.max_submodules = 2;
    g.max_input_bits = 3;
    g.widths = {1, 2, 3, 4};
    Design a;
    try {
      a = generate_seed(g);
    } catch (const BudgetInfeasible&) {
      continue;
    }
    Design b = a;
    if (seed % 2 == 0) {
      MutationConfig m;
      m.mode = GuardMode::Tautological;
      m.seed = seed;
      b = mutate(a, profile(a, generate_stimulus(a, 32, seed)), m).design;
    } else if (!oracle::perturb_operator(b, seed % 7)) {
      continue;
    }
    const std::size_t unroll = 1 + seed % kSmtUnroll;
    const std::size_t bits = miter_input_bits(a, unroll);
    if (bits > kSmtBits) continue;
    max_bits = std::max(max_bits, bits);
    ++pairs;
    const bool eq = exhaustive_equivalence(a, b, unroll, kSmtBits).equivalent;
    const std::string smt = export_smt_miter(a, b, unroll);
    const std::string want = eq ? "unsat" : "sat";
    sat += !eq;
    agree += smt_brute_force(smt, kSmtBits) == want;
    if (have_z3) {
      ++z3_runs;
      auto z = solve_external(smt);
      z3_agree += z && *z == want;
    }
  }
  report(9, pairs == kSmtPairs && agree == pairs && z3_agree == z3_runs,
         fmt::format("{} pairs ({} inequivalent, <= {} input bits, unroll <= {}): exhaustive agrees with the "
                     "enumerating SMT decider on {}, with z3 on {}/{}",
                     pairs, sat, max_bits, kSmtUnroll, agree, z3_agree, z3_runs));
}

// --- criterion 11 -------------------------------------------------------------

void criterion_11() {
  std::vector<int> ok(kRoundTrips, 0), in_range(kRoundTrips, 0);
  std::vector<std::size_t> lines(kRoundTrips, 0);
  parallel(kRoundTrips, [&](std::size_t i) {
    GenConfig g;
    g.seed = 110000 + i;
    try {
      Design d = generate_seed(g);
      const std::string text = print_design(d);
      ok[i] = parse_design(text) == d;
      lines[i] = oracle::newline_count(text);
      in_range[i] = lines[i] >= 700 && lines[i] <= 1000;
    } catch (const Error&) {
    }
  });
  const auto good = std::count(ok.begin(), ok.end(), 1), ranged = std::count(in_range.begin(), in_range.end(), 1);
  const auto [lo, hi] = std::minmax_element(lines.begin(), lines.end());
  report(11, static_cast<std::size_t>(good) == kRoundTrips && static_cast<std::size_t>(ranged) == kRoundTrips,
         fmt::format("{}/{} designs round-trip; {} with line counts in [700, 1000] (observed {}..{})", good, kRoundTrips,
                     ranged, *lo, *hi));
}

}  // namespace

int main() {
  criteria_1_to_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
