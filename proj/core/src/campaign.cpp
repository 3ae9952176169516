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

#include "synthfuzz/campaign.hpp"

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "synthfuzz/bayes.hpp"
#include "synthfuzz/comb_graph.hpp"
#include "synthfuzz/error.hpp"
#include "synthfuzz/parser.hpp"
#include "synthfuzz/printer.hpp"
#include "synthfuzz/rng.hpp"
#include "synthfuzz/simulator.hpp"
#include "synthfuzz/smt.hpp"
#include "synthfuzz/triage.hpp"
#include "synthfuzz/validate.hpp"

namespace synthfuzz {

namespace fs = std::filesystem;

const char* to_string(OracleMode m) {
  switch (m) {
    case OracleMode::Internal: return "internal";
    case OracleMode::CrossTool: return "cross-tool";
    case OracleMode::SmtExport: return "smt-export";
  }
  return "?";
}

OracleMode oracle_mode_from_string(const std::string& text) {
  if (text == "internal") return OracleMode::Internal;
  if (text == "cross-tool") return OracleMode::CrossTool;
  if (text == "smt-export") return OracleMode::SmtExport;
  throw ConfigError("unknown oracle mode '" + text + "'");
}

void CampaignConfig::check() const {
  gen.check();
  mutation.check();
  if (pool == 0) throw ConfigError("pool must be at least 1");
  if (k == 0 || k > pool) throw ConfigError("k must lie in [1, pool]");
  if (max_iter == 0) throw ConfigError("max_iter must be at least 1");
  if (stimulus_cycles == 0) throw ConfigError("stimulus_cycles must be at least 1");
  if (workers == 0) throw ConfigError("workers must be at least 1");
  if (smt_unroll == 0) throw ConfigError("smt_unroll must be at least 1");
  std::set<std::string> names;
  for (const auto& t : tools) {
    t.check();
    if (!names.insert(t.name).second) throw ConfigError("duplicate tool '" + t.name + "'");
  }
  if (oracle == OracleMode::CrossTool && tools.empty()) throw ConfigError("cross-tool mode needs tools");
}

namespace {

std::uint64_t to_u64(const std::string& v) {
  try {
    std::size_t used = 0;
    std::uint64_t x = std::stoull(v, &used, 0);
    if (used != v.size()) throw ConfigError("not an integer: '" + v + "'");
    return x;
  } catch (const std::logic_error&) {
    throw ConfigError("not an integer: '" + v + "'");
  }
}

double to_double(const std::string& v) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw ConfigError("not a number: '" + v + "'");
    return x;
  } catch (const std::logic_error&) {
    throw ConfigError("not a number: '" + v + "'");
  }
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("not a boolean: '" + v + "'");
}

ToolAdapter& tool_named(CampaignConfig& cfg, const std::string& name) {
  for (auto& t : cfg.tools)
    if (t.name == name) return t;
  cfg.tools.push_back(ToolAdapter{});
  cfg.tools.back().name = name;
  return cfg.tools.back();
}

void set_value(CampaignConfig& cfg, const std::string& section, const std::string& key, const std::string& v) {
  auto unknown = [&] { throw ConfigError("unknown configuration key '" + section + "." + key + "'"); };
  if (section == "campaign") {
    if (key == "pool") cfg.pool = to_u64(v);
    else if (key == "k") cfg.k = to_u64(v);
    else if (key == "max_iter") cfg.max_iter = to_u64(v);
    else if (key == "stimulus_cycles") cfg.stimulus_cycles = to_u64(v);
    else if (key == "oracle") cfg.oracle = oracle_mode_from_string(v);
    else if (key == "smt_unroll") cfg.smt_unroll = to_u64(v);
    else if (key == "reduce") cfg.reduce = to_bool(v);
    else if (key == "out_dir") cfg.out_dir = v;
    else if (key == "seed") cfg.seed = to_u64(v);
    else if (key == "workers") cfg.workers = to_u64(v);
    else if (key == "seed_path") cfg.seed_path = v;
    else unknown();
  } else if (section == "gen") {
    GenConfig& g = cfg.gen;
    if (key == "line_min") g.line_min = to_u64(v);
    else if (key == "line_max") g.line_max = to_u64(v);
    else if (key == "min_submodules") g.min_submodules = to_u64(v);
    else if (key == "max_submodules") g.max_submodules = to_u64(v);
    else if (key == "max_instances") g.max_instances = to_u64(v);
    else if (key == "max_input_bits") g.max_input_bits = to_u64(v);
    else if (key == "max_expr_depth") g.max_expr_depth = static_cast<unsigned>(to_u64(v));
    else if (key == "max_control_depth") g.max_control_depth = static_cast<unsigned>(to_u64(v));
    else if (key == "p_sequential") g.p_sequential = to_double(v);
    else if (key == "p_signed") g.p_signed = to_double(v);
    else if (key == "widths") {
      g.widths.clear();
      std::stringstream ss(v);
      std::string w;
      while (std::getline(ss, w, ',')) g.widths.push_back(static_cast<unsigned>(to_u64(w)));
    } else if (key == "weight_arith") g.weights.arith = to_double(v);
    else if (key == "weight_bitwise") g.weights.bitwise = to_double(v);
    else if (key == "weight_unary") g.weights.unary = to_double(v);
    else if (key == "weight_shift") g.weights.shift = to_double(v);
    else if (key == "weight_ternary") g.weights.ternary = to_double(v);
    else if (key == "weight_concat") g.weights.concat = to_double(v);
    else if (key == "weight_compare") g.weights.compare = to_double(v);
    else if (key == "weight_reduce") g.weights.reduce = to_double(v);
    else if (key == "weight_logical") g.weights.logical = to_double(v);
    else unknown();
  } else if (section == "mutation") {
    MutationConfig& m = cfg.mutation;
    if (key == "mode") m.mode = guard_mode_from_string(v);
    else if (key == "dead_min") m.dead_min = to_u64(v);
    else if (key == "dead_max") m.dead_max = to_u64(v);
    else if (key == "p_wrap") m.p_wrap = to_double(v);
    else if (key == "max_guards") m.max_guards = to_u64(v);
    else if (key == "verify_guards") m.verify_guards = to_bool(v);
    else unknown();
  } else if (section.rfind("tool.", 0) == 0 && section.size() > 5) {
    ToolAdapter& t = tool_named(cfg, section.substr(5));
    if (key == "command") t.command = v;
    else if (key == "timeout") t.timeout_seconds = to_double(v);
    else if (key == "expected_exit") t.expected_exit = static_cast<int>(to_u64(v));
    else if (key == "normalizer") t.normalizer = v;
    else unknown();
  } else {
    unknown();
  }
}

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (std::size_t w = 0; w < std::min(workers, n); ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write " + p.string());
}

// Write-then-rename so a killed campaign never leaves a half-written marker.
void write_atomic(const fs::path& p, const std::string& text) {
  fs::path tmp = p;
  tmp += ".tmp";
  write_file(tmp, text);
  fs::rename(tmp, p);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool tool_available(const ToolAdapter& t) {
  if (t.builtin()) return true;
  std::istringstream ss(t.command);
  std::string exe;
  ss >> exe;
  if (exe.find('/') != std::string::npos) return access(exe.c_str(), X_OK) == 0;
  std::string path = std::getenv("PATH") ? std::getenv("PATH") : "";
  if (const char* prefix = std::getenv("SYNTHFUZZ_TOOL_PREFIX")) path = std::string(prefix) + ":" + path;
  std::stringstream dirs(path);
  std::string dir;
  while (std::getline(dirs, dir, ':'))
    if (!dir.empty() && access((fs::path(dir) / exe).c_str(), X_OK) == 0) return true;
  return false;
}

bool is_failure(const OracleVerdict& v) {
  return v.kind == OracleVerdict::Kind::Mismatch || v.kind == OracleVerdict::Kind::Crash ||
         v.kind == OracleVerdict::Kind::Timeout;
}

// Same bug for reduction purposes: a mismatch stays a mismatch, a crash keeps
// its normalized signature.
bool same_bug(const OracleVerdict& a, const OracleVerdict& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == OracleVerdict::Kind::Mismatch) return true;
  return signature(a).hash == signature(b).hash;
}

struct Evaluation {
  std::size_t variant = 0;
  const ToolAdapter* tool = nullptr;
  std::string tool_name;
  OracleVerdict verdict;
};

struct Triage {
  bool reproduced = false;
  Design reduced;
  OracleVerdict verdict;
};

class Campaign {
 public:
  explicit Campaign(const CampaignConfig& cfg)
      : cfg_(cfg),
        out_(cfg.out_dir),
        scratch_(scratch_root((fs::absolute(cfg.out_dir) / "scratch").string())) {}

  CampaignStats run();

 private:
  std::vector<std::string> iteration(std::size_t i);
  OracleVerdict evaluate(const Design& seed, const Design& variant, const Stimulus& s, const ToolAdapter* tool,
                         const fs::path& scratch, const fs::path& iter_dir, std::size_t j);
  Triage triage(const Design& variant, const Stimulus& s, const Evaluation& e, const fs::path& scratch);
  std::string next_report_id();

  void timed(const char* phase, const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    stats_.phase_seconds[phase] += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  CampaignConfig cfg_;
  fs::path out_;
  fs::path scratch_;
  std::vector<ToolAdapter> tools_;
  CampaignStats stats_;
  std::unique_ptr<DedupDb> db_;
  std::unique_ptr<DedupDb> raw_db_;
  std::size_t report_counter_ = 0;
  std::optional<Design> fixed_seed_;
};

std::string Campaign::next_report_id() {
  for (;;) {
    std::string id = fmt::format("report_{:04}", ++report_counter_);
    if (!fs::exists(out_ / "reports" / id)) return id;
  }
}

OracleVerdict Campaign::evaluate(const Design& seed, const Design& variant, const Stimulus& s,
                                 const ToolAdapter* tool, const fs::path& scratch, const fs::path& iter_dir,
                                 std::size_t j) {
  switch (cfg_.oracle) {
    case OracleMode::Internal:
      if (tool == nullptr) return internal_differential(seed, variant, s);
      return tool_differential(*tool, seed, variant, s, scratch.string());
    case OracleMode::CrossTool: {
      std::vector<ToolAdapter> all;
      ToolAdapter ref;
      ref.name = "reference";
      ref.command = "builtin:reference";
      all.push_back(ref);
      all.insert(all.end(), tools_.begin(), tools_.end());
      return cross_tool_differential(variant, all, s, scratch.string());
    }
    case OracleMode::SmtExport: {
      OracleVerdict v;
      std::string smt;
      try {
        smt = export_smt_miter(seed, variant, cfg_.smt_unroll);
      } catch (const Error& e) {
        v.kind = OracleVerdict::Kind::AdapterError;
        v.detail = e.what();
        return v;
      }
      write_file(iter_dir / fmt::format("variant_{:02}.smt2", j), smt);
      auto answer = solve_external(smt);
      if (!answer) {
        v.kind = OracleVerdict::Kind::AdapterError;
        v.detail = "miter written, no solver on PATH";
      } else if (*answer == "sat") {
        v.kind = OracleVerdict::Kind::Mismatch;
        v.signal = "<miter>";
        v.tool_a = "seed";
        v.tool_b = "variant";
      } else if (*answer != "unsat") {
        v.kind = OracleVerdict::Kind::AdapterError;
        v.detail = "solver answered " + *answer;
      }
      return v;
    }
  }
  return {};
}

Triage Campaign::triage(const Design& variant, const Stimulus& s, const Evaluation& e, const fs::path& scratch) {
  Triage t;
  t.reduced = variant;
  t.verdict = e.verdict;
  if (e.tool == nullptr || cfg_.oracle != OracleMode::Internal) return t;
  const ToolAdapter& tool = *e.tool;
  OracleVerdict first = reference_check(tool, variant, s, (scratch / "check").string());
  if (!is_failure(first)) return t;  // the tool also miscompiles the seed: keep the pair verdict
  t.reproduced = true;
  Design d = variant;
  if (cfg_.reduce) {
    const std::string dir = (scratch / "reduce").string();
    d = reduce(variant, [&](const Design& c) { return same_bug(reference_check(tool, c, s, dir), first); });
  }
  // The failing output goes first so it becomes o0.
  const std::string failing = reference_check(tool, d, s, (scratch / "final").string()).signal;
  t.reduced = canonicalize_outputs(d, failing);
  t.verdict = reference_check(tool, t.reduced, s, (scratch / "final").string());
  return t;
}

std::vector<std::string> Campaign::iteration(std::size_t i) {
  std::vector<std::string> log;
  const std::uint64_t iter_seed = derive_seed(cfg_.seed, i);
  const fs::path dir = out_ / fmt::format("iter_{:04}", i);
  fs::create_directories(dir);

  Design seed;
  Stimulus stim;
  ValuationProfile prof;
  GenConfig gen = cfg_.gen;
  gen.seed = derive_seed(iter_seed, 0);
  try {
    timed("generate", [&] {
      seed = fixed_seed_ ? *fixed_seed_ : generate_seed(gen);
      stim = generate_stimulus(seed, cfg_.stimulus_cycles, derive_seed(iter_seed, 1));
    });
    timed("profile", [&] { prof = profile(seed, stim); });
  } catch (const Error& e) {
    log.push_back(fmt::format("iter {} error {}", i, e.what()));
    return log;
  }
  write_file(dir / "seed.v", print_design(seed));
  write_file(dir / "stimulus.txt", dump_stimulus(stim));
  const Metrics sm = structural_metrics(seed);
  const std::size_t st = timing_complexity(seed);
  log.push_back(fmt::format("iter {} seed={:#018x} {} timing={}", i, gen.seed, to_string(sm), st));

  std::vector<Variant> variants(cfg_.pool);
  std::vector<std::string> errors(cfg_.pool);
  timed("mutate", [&] {
    parallel_for(cfg_.pool, cfg_.workers, [&](std::size_t j) {
      MutationConfig m = cfg_.mutation;
      m.seed = derive_seed(iter_seed, 100 + j);
      try {
        variants[j] = mutate(seed, prof, m);
        variants[j].lineage.seed_id = fmt::format("iter_{:04}", i);
      } catch (const Error& e) {
        errors[j] = e.what();
      }
    });
  });
  VariantPool pool;
  pool.seed = sm;
  pool.seed_timing = st;
  for (std::size_t j = 0; j < cfg_.pool; ++j) {
    if (!errors[j].empty()) {
      log.push_back(fmt::format("variant {}.{} error {}", i, j, errors[j]));
      continue;
    }
    const Variant& v = variants[j];
    ++stats_.variants_generated;
    write_file(dir / fmt::format("variant_{:02}.v", j), print_design(v.design));
    write_file(dir / fmt::format("variant_{:02}.lineage", j), serialize_lineage(v.lineage));
    log.push_back(fmt::format("variant {}.{} records={} {} timing={} guard_violations={}", i, j, v.lineage.log.size(),
                              to_string(v.metrics), v.timing, v.guard_check.violations));
    pool.variants.push_back(VariantRecord{j, v.metrics, v.timing});
  }
  if (pool.variants.empty()) return log;

  std::vector<std::size_t> selected;
  timed("select", [&] {
    pool.k = std::min(cfg_.k, pool.variants.size());
    Posterior post = posterior(pool);
    write_file(dir / "posterior.txt", dump_posterior(pool, post));
    selected = select_top_k(pool);
  });
  stats_.variants_selected += selected.size();
  std::string sel = fmt::format("select {}", i);
  for (std::size_t j : selected) sel += fmt::format(" {}", j);
  log.push_back(sel);

  std::vector<Evaluation> evals;
  for (std::size_t j : selected) {
    if (tools_.empty() || cfg_.oracle != OracleMode::Internal) {
      evals.push_back(Evaluation{j, nullptr, cfg_.oracle == OracleMode::Internal ? "reference" : to_string(cfg_.oracle), {}});
    } else {
      for (const auto& t : tools_) evals.push_back(Evaluation{j, &t, t.name, {}});
    }
  }
  timed("oracle", [&] {
    parallel_for(evals.size(), cfg_.workers, [&](std::size_t e) {
      Evaluation& ev = evals[e];
      const fs::path scratch = scratch_ / fmt::format("iter_{:04}", i) / fmt::format("v{:02}_{}", ev.variant, ev.tool_name);
      ev.verdict = evaluate(seed, variants[ev.variant].design, stim, ev.tool, scratch, dir, ev.variant);
    });
  });
  std::string verdict_text;
  for (const auto& ev : evals) {
    ++stats_.evaluations;
    ++stats_.verdicts[to_string(ev.verdict.kind)];
    std::string line = fmt::format("verdict {}.{} {} {}", i, ev.variant, ev.tool_name, to_string(ev.verdict));
    log.push_back(line);
    verdict_text += line + "\n";
  }
  write_file(dir / "verdicts.txt", verdict_text);

  // Triage: a failure whose unreduced signature was already triaged is a
  // known duplicate; the rest are reduced (in parallel) and deduplicated on
  // the reduced case's signature.
  std::vector<std::size_t> todo;
  std::set<std::string> raw_this_iteration;
  std::vector<std::string> raw_ids(evals.size());
  for (std::size_t e = 0; e < evals.size(); ++e) {
    if (!is_failure(evals[e].verdict)) continue;
    FailureSignature raw = signature(evals[e].verdict);
    raw_ids[e] = raw.id();
    if (raw_db_->contains(raw) || !raw_this_iteration.insert(raw.id()).second) continue;
    todo.push_back(e);
  }
  std::vector<Triage> triaged(evals.size());
  timed("triage", [&] {
    parallel_for(todo.size(), cfg_.workers, [&](std::size_t n) {
      const std::size_t e = todo[n];
      const fs::path scratch = scratch_ / fmt::format("iter_{:04}", i) / fmt::format("triage_{:02}", e);
      triaged[e] = triage(variants[evals[e].variant].design, stim, evals[e], scratch);
    });
  });
  std::set<std::size_t> reduced_set(todo.begin(), todo.end());
  for (std::size_t e = 0; e < evals.size(); ++e) {
    if (!is_failure(evals[e].verdict)) continue;
    const Evaluation& ev = evals[e];
    if (!reduced_set.count(e)) {
      log.push_back(fmt::format("bug {}.{} {} known raw={}", i, ev.variant, ev.tool_name, raw_ids[e]));
      continue;
    }
    FailureSignature raw = signature(ev.verdict);
    raw_db_->insert(raw);
    const Triage& t = triaged[e];
    FailureSignature sig = signature(t.verdict);
    const std::size_t before = statement_count(variants[ev.variant].design);
    const std::size_t after = statement_count(t.reduced);
    if (!db_->insert(sig)) {
      log.push_back(fmt::format("bug {}.{} {} duplicate sig={} raw={}", i, ev.variant, ev.tool_name, sig.id(), raw.id()));
      continue;
    }
    BugReport r;
    r.id = next_report_id();
    r.classification = t.verdict.kind == OracleVerdict::Kind::Mismatch ? 'M' : 'C';
    if (ev.tool != nullptr) {
      r.tool = *ev.tool;
    } else {
      r.tool.name = "reference";
      r.tool.command = "builtin:reference";
    }
    r.seed_id = fmt::format("iter_{:04}", i);
    r.seed_rng = gen.seed;
    r.design = print_design(t.reduced);
    r.original_statements = before;
    r.reduced_statements = after;
    r.stimulus = stim;
    r.lineage = serialize_lineage(variants[ev.variant].lineage);
    r.verdict = t.verdict;
    r.signature = sig;
    stats_.reports.push_back(persist_report(r, (out_ / "reports").string()));
    ++stats_.new_bugs;
    log.push_back(fmt::format("bug {}.{} {} new sig={} raw={} report={} class={} statements={}->{}", i, ev.variant,
                              ev.tool_name, sig.id(), raw.id(), r.id, r.classification, before, after));
  }
  return log;
}

CampaignStats Campaign::run() {
  cfg_.check();
  std::error_code ec;
  fs::create_directories(out_ / "reports", ec);
  if (ec) throw IoError("cannot create output directory " + out_.string() + ": " + ec.message());
  if (access(out_.c_str(), W_OK) != 0) throw IoError("output directory " + out_.string() + " is not writable");

  for (const auto& t : cfg_.tools) {
    if (tool_available(t)) {
      tools_.push_back(t);
    } else {
      std::cerr << "warning: tool '" << t.name << "' not found, skipped\n";
    }
  }
  if (cfg_.oracle == OracleMode::CrossTool && tools_.empty()) {
    std::cerr << "warning: no external tool available, falling back to the internal oracle\n";
    cfg_.oracle = OracleMode::Internal;
  }
  if (!cfg_.seed_path.empty()) {
    std::ifstream in(cfg_.seed_path);
    if (!in) throw IoError("cannot read seed design " + cfg_.seed_path);
    fixed_seed_ = parse_design(read_file(cfg_.seed_path));
    validate_design(*fixed_seed_);
  }
  db_ = std::make_unique<DedupDb>((out_ / "signatures.db").string());
  raw_db_ = std::make_unique<DedupDb>((out_ / "raw_signatures.db").string());

  std::string header = fmt::format("synthfuzz campaign seed={:#x} pool={} k={} max_iter={} cycles={} oracle={} tools=",
                                   cfg_.seed, cfg_.pool, cfg_.k, cfg_.max_iter, cfg_.stimulus_cycles,
                                   to_string(cfg_.oracle));
  for (std::size_t t = 0; t < tools_.size(); ++t) header += (t ? "," : "") + tools_[t].name;
  std::string log = header + "\n";
  for (std::size_t i = 0; i < cfg_.max_iter; ++i) {
    const fs::path marker = out_ / fmt::format("iter_{:04}", i) / "log.txt";
    if (fs::exists(marker)) {
      ++stats_.skipped_iterations;
    } else {
      std::string text;
      for (const auto& line : iteration(i)) text += line + "\n";
      write_atomic(marker, text);
      ++stats_.iterations;
    }
    log += read_file(marker);
  }
  stats_.distinct_signatures = db_->size();
  log += fmt::format("signatures {}\n", stats_.distinct_signatures);
  write_atomic(out_ / "campaign.log", log);
  return stats_;
}

}  // namespace

CampaignConfig load_campaign_config(const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  CampaignConfig cfg;
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError("key '" + section + "' outside a section");
    for (const auto& [key, value] : body) set_value(cfg, section, key, value.data());
  }
  return cfg;
}

void apply_config_override(CampaignConfig& cfg, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' lacks '='");
  const std::string lhs = assignment.substr(0, eq);
  auto dot = lhs.rfind('.');
  if (dot == std::string::npos) throw ConfigError("override '" + assignment + "' lacks a section");
  set_value(cfg, lhs.substr(0, dot), lhs.substr(dot + 1), assignment.substr(eq + 1));
}

std::string dump_campaign_config(const CampaignConfig& cfg) {
  std::string out = "[campaign]\n";
  out += fmt::format("pool={}\nk={}\nmax_iter={}\nstimulus_cycles={}\noracle={}\nsmt_unroll={}\nreduce={}\n", cfg.pool,
                     cfg.k, cfg.max_iter, cfg.stimulus_cycles, to_string(cfg.oracle), cfg.smt_unroll,
                     cfg.reduce ? "true" : "false");
  out += fmt::format("out_dir={}\nseed={}\nworkers={}\n", cfg.out_dir, cfg.seed, cfg.workers);
  if (!cfg.seed_path.empty()) out += "seed_path=" + cfg.seed_path + "\n";
  const GenConfig& g = cfg.gen;
  out += "\n[gen]\n";
  out += fmt::format("line_min={}\nline_max={}\nmin_submodules={}\nmax_submodules={}\nmax_instances={}\n", g.line_min,
                     g.line_max, g.min_submodules, g.max_submodules, g.max_instances);
  out += fmt::format("max_input_bits={}\n", g.max_input_bits);
  out += fmt::format("max_expr_depth={}\nmax_control_depth={}\np_sequential={}\np_signed={}\n", g.max_expr_depth,
                     g.max_control_depth, g.p_sequential, g.p_signed);
  std::string widths;
  for (unsigned w : g.widths) widths += (widths.empty() ? "" : ",") + std::to_string(w);
  out += "widths=" + widths + "\n";
  const OpWeights& w = g.weights;
  out += fmt::format(
      "weight_arith={}\nweight_bitwise={}\nweight_unary={}\nweight_shift={}\nweight_ternary={}\nweight_concat={}\n"
      "weight_compare={}\nweight_reduce={}\nweight_logical={}\n",
      w.arith, w.bitwise, w.unary, w.shift, w.ternary, w.concat, w.compare, w.reduce, w.logical);
  const MutationConfig& m = cfg.mutation;
  out += "\n[mutation]\n";
  out += fmt::format("mode={}\ndead_min={}\ndead_max={}\np_wrap={}\nmax_guards={}\nverify_guards={}\n", to_string(m.mode),
                     m.dead_min, m.dead_max, m.p_wrap, m.max_guards, m.verify_guards ? "true" : "false");
  for (const auto& t : cfg.tools) {
    out += fmt::format("\n[tool.{}]\ncommand={}\ntimeout={}\nexpected_exit={}\n", t.name, t.command, t.timeout_seconds,
                       t.expected_exit);
    if (!t.normalizer.empty()) out += "normalizer=" + t.normalizer + "\n";
  }
  return out;
}

CampaignStats run_campaign(const CampaignConfig& cfg) { return Campaign(cfg).run(); }

std::string to_string(const CampaignStats& s) {
  std::string out = fmt::format(
      "iterations={} resumed={} generated={} selected={} evaluations={} new_bugs={} signatures={}", s.iterations,
      s.skipped_iterations, s.variants_generated, s.variants_selected, s.evaluations, s.new_bugs,
      s.distinct_signatures);
  for (const auto& [k, v] : s.verdicts) out += fmt::format(" {}={}", k, v);
  return out;
}

std::string scratch_root(const std::string& fallback) {
  if (const char* env = std::getenv("SYNTHFUZZ_SCRATCH"); env != nullptr && *env) return env;
  return fallback;
}

}  // namespace synthfuzz
