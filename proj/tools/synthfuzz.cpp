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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "synthfuzz/bayes.hpp"
#include "synthfuzz/campaign.hpp"
#include "synthfuzz/comb_graph.hpp"
#include "synthfuzz/equiv.hpp"
#include "synthfuzz/error.hpp"
#include "synthfuzz/metrics.hpp"
#include "synthfuzz/mutator.hpp"
#include "synthfuzz/parser.hpp"
#include "synthfuzz/printer.hpp"
#include "synthfuzz/seed_gen.hpp"
#include "synthfuzz/simulator.hpp"
#include "synthfuzz/smt.hpp"
#include "synthfuzz/triage.hpp"
#include "synthfuzz/validate.hpp"

namespace fs = std::filesystem;
using namespace synthfuzz;

namespace {

enum Exit { kOk = 0, kUsage = 1, kBugs = 2, kInternal = 3 };

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write " + path);
}

Design load_design(const std::string& path) {
  Design d = parse_design(slurp(path));
  validate_design(d);
  return d;
}

ToolAdapter adapter_from(const std::string& command, double timeout) {
  ToolAdapter t;
  t.command = command;
  t.name = command.rfind("builtin:", 0) == 0 ? command.substr(8) : "tool";
  t.timeout_seconds = timeout;
  t.check();
  return t;
}

std::string scratch_dir(const std::string& leaf) {
  fs::path root = scratch_root((fs::temp_directory_path() / "synthfuzz").string());
  return (root / fmt::format("{}-{}", leaf, ::getpid())).string();
}

// Machine-readable diagnostics: `synthfuzz: error: <class>: <message>`.
int fail(const char* cls, const std::string& message, int code) {
  std::cerr << "synthfuzz: error: " << cls << ": " << message << "\n";
  return code;
}

const char* error_class(const Error& e) {
  if (dynamic_cast<const SyntaxError*>(&e)) return "syntax";
  if (dynamic_cast<const UnsupportedConstruct*>(&e)) return "unsupported";
  if (dynamic_cast<const InvalidDesign*>(&e)) return "invalid-design";
  if (dynamic_cast<const CombLoopError*>(&e)) return "comb-loop";
  if (dynamic_cast<const WidthMismatch*>(&e)) return "width";
  if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
  if (dynamic_cast<const BudgetInfeasible*>(&e)) return "budget";
  if (dynamic_cast<const NoEligibleVariable*>(&e)) return "no-eligible-variable";
  if (dynamic_cast<const UnextractableRegion*>(&e)) return "unextractable";
  if (dynamic_cast<const FlakyPredicate*>(&e)) return "flaky";
  if (dynamic_cast<const IoError*>(&e)) return "io";
  if (dynamic_cast<const ConfigError*>(&e)) return "config";
  return "internal";
}

// Errors caused by the user's inputs exit 1, everything else 3.
bool usage_class(const Error& e) {
  return dynamic_cast<const SyntaxError*>(&e) || dynamic_cast<const UnsupportedConstruct*>(&e) ||
         dynamic_cast<const InvalidDesign*>(&e) || dynamic_cast<const CombLoopError*>(&e) ||
         dynamic_cast<const WidthMismatch*>(&e) || dynamic_cast<const PreconditionError*>(&e) ||
         dynamic_cast<const IoError*>(&e) || dynamic_cast<const ConfigError*>(&e) ||
         dynamic_cast<const BudgetInfeasible*>(&e);
}

int verdict_exit(const OracleVerdict& v) {
  if (v.equivalent()) return kOk;
  if (v.kind == OracleVerdict::Kind::AdapterError) return kInternal;
  return kBugs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metamorphic fuzzer for logic-synthesis toolchains"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "synthfuzz 0.1.0");

  // generate
  GenConfig gen;
  std::string gen_out, gen_stim;
  std::size_t gen_cycles = 256;
  auto* generate = app.add_subcommand("generate", "Generate a random seed design");
  generate->add_option("--seed", gen.seed, "Generator seed");
  generate->add_option("--out,-o", gen_out, "Output Verilog file (default stdout)");
  generate->add_option("--line-min", gen.line_min);
  generate->add_option("--line-max", gen.line_max);
  generate->add_option("--max-input-bits", gen.max_input_bits, "Total width of top inputs (0 = unbounded)");
  generate->add_option("--stimulus", gen_stim, "Also write a random stimulus here");
  generate->add_option("--cycles", gen_cycles, "Stimulus length");

  // stimulus
  std::string stim_design, stim_out;
  std::uint64_t stim_seed = 1;
  std::size_t stim_cycles = 256;
  auto* stimulus = app.add_subcommand("stimulus", "Random input vectors for a design");
  stimulus->add_option("design", stim_design)->required()->check(CLI::ExistingFile);
  stimulus->add_option("--seed", stim_seed);
  stimulus->add_option("--cycles", stim_cycles);
  stimulus->add_option("--out,-o", stim_out);

  // mutate
  MutationConfig mut;
  std::string mut_design, mut_stim, mut_out, mut_lineage, mut_mode = "profiled";
  auto* mutate_cmd = app.add_subcommand("mutate", "Produce an equivalent variant of a seed");
  mutate_cmd->add_option("design", mut_design)->required()->check(CLI::ExistingFile);
  mutate_cmd->add_option("--stimulus", mut_stim, "Profiling stimulus")->required()->check(CLI::ExistingFile);
  mutate_cmd->add_option("--seed", mut.seed);
  mutate_cmd->add_option("--mode", mut_mode)->check(CLI::IsMember({"profiled", "tautological"}));
  mutate_cmd->add_option("--guards", mut.max_guards, "Maximum guard rounds");
  mutate_cmd->add_option("--p-wrap", mut.p_wrap);
  mutate_cmd->add_option("--out,-o", mut_out);
  mutate_cmd->add_option("--lineage", mut_lineage, "Write the mutation log here");

  // select
  std::string sel_seed, sel_posterior;
  std::vector<std::string> sel_variants;
  std::size_t sel_k = 3;
  auto* select = app.add_subcommand("select", "Rank variants by posterior and print the top k");
  select->add_option("seed", sel_seed)->required()->check(CLI::ExistingFile);
  select->add_option("variants", sel_variants)->required()->check(CLI::ExistingFile);
  select->add_option("-k", sel_k);
  select->add_option("--posterior", sel_posterior, "Write the posterior table here");

  // check
  std::string chk_mode = "internal", chk_a, chk_b, chk_stim, chk_tool = "builtin:reference", chk_smt;
  std::size_t chk_unroll = 4;
  double chk_timeout = 60;
  auto* check = app.add_subcommand("check", "Equivalence check of two designs");
  check->add_option("--mode", chk_mode)->check(CLI::IsMember({"internal", "tool", "smt", "exhaustive"}));
  check->add_option("a", chk_a)->required()->check(CLI::ExistingFile);
  check->add_option("b", chk_b)->required()->check(CLI::ExistingFile);
  check->add_option("--stimulus", chk_stim)->check(CLI::ExistingFile);
  check->add_option("--tool", chk_tool, "Adapter command for --mode tool");
  check->add_option("--timeout", chk_timeout);
  check->add_option("--unroll", chk_unroll);
  check->add_option("--smt-out", chk_smt, "Write the miter here (--mode smt)");

  // reduce
  std::string red_design, red_stim, red_tool, red_out;
  double red_timeout = 60;
  auto* reduce_cmd = app.add_subcommand("reduce", "Shrink a design while the tool still fails on it");
  reduce_cmd->add_option("design", red_design)->required()->check(CLI::ExistingFile);
  reduce_cmd->add_option("--stimulus", red_stim)->required()->check(CLI::ExistingFile);
  reduce_cmd->add_option("--tool", red_tool)->required();
  reduce_cmd->add_option("--timeout", red_timeout);
  reduce_cmd->add_option("--out,-o", red_out);

  // replay / report
  std::string rep_dir;
  auto* replay = app.add_subcommand("replay", "Re-run a bug report and compare with its recorded verdict");
  replay->add_option("report", rep_dir)->required()->check(CLI::ExistingDirectory);
  std::string show_dir;
  auto* report = app.add_subcommand("report", "Summarize a bug report");
  report->add_option("report", show_dir)->required()->check(CLI::ExistingDirectory);

  // metrics
  std::string met_design;
  auto* metrics = app.add_subcommand("metrics", "Structural metrics and timing complexity");
  metrics->add_option("design", met_design)->required()->check(CLI::ExistingFile);

  // run / config
  std::string run_config, run_out;
  std::vector<std::string> run_sets;
  std::uint64_t run_seed = 0;
  std::size_t run_iters = 0, run_workers = 0;
  bool dump_only = false;
  auto* run = app.add_subcommand("run", "Run a fuzzing campaign");
  run->add_option("--config,-c", run_config)->check(CLI::ExistingFile);
  run->add_option("--set", run_sets, "Override section.key=value");
  run->add_option("--out,-o", run_out);
  run->add_option("--seed", run_seed);
  run->add_option("--max-iter", run_iters);
  run->add_option("--workers,-j", run_workers);
  run->add_flag("--dump-config", dump_only, "Print the effective configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kUsage;
  }

  try {
    if (*generate) {
      gen.check();
      Design d = generate_seed(gen);
      emit(gen_out, print_design(d));
      if (!gen_stim.empty()) emit(gen_stim, dump_stimulus(generate_stimulus(d, gen_cycles, derive_seed(gen.seed, 1))));
      return kOk;
    }
    if (*stimulus) {
      Design d = load_design(stim_design);
      emit(stim_out, dump_stimulus(generate_stimulus(d, stim_cycles, stim_seed)));
      return kOk;
    }
    if (*mutate_cmd) {
      mut.mode = guard_mode_from_string(mut_mode);
      mut.check();
      Design d = load_design(mut_design);
      Stimulus s = parse_stimulus(slurp(mut_stim));
      Variant v = mutate(d, profile(d, s), mut);
      v.lineage.seed_id = fs::path(mut_design).stem().string();
      emit(mut_out, print_design(v.design));
      if (!mut_lineage.empty()) emit(mut_lineage, serialize_lineage(v.lineage));
      if (v.guard_check.violations > 0) return fail("guard", "guard violated during re-simulation", kInternal);
      return kOk;
    }
    if (*select) {
      Design seed = load_design(sel_seed);
      VariantPool pool;
      pool.seed = structural_metrics(seed);
      pool.seed_timing = timing_complexity(seed);
      for (std::size_t i = 0; i < sel_variants.size(); ++i) {
        Design v = load_design(sel_variants[i]);
        pool.variants.push_back(VariantRecord{i, structural_metrics(v), timing_complexity(v)});
      }
      pool.k = std::min(sel_k, pool.variants.size());
      pool.check();
      if (!sel_posterior.empty()) emit(sel_posterior, dump_posterior(pool, posterior(pool)));
      for (std::size_t id : select_top_k(pool)) std::cout << sel_variants[id] << "\n";
      return kOk;
    }
    if (*check) {
      Design a = load_design(chk_a);
      Design b = load_design(chk_b);
      if (chk_mode == "smt") {
        std::string smt = export_smt_miter(a, b, chk_unroll);
        if (!chk_smt.empty()) emit(chk_smt, smt);
        auto answer = solve_external(smt);
        if (!answer) {
          std::cout << "EXPORTED unroll=" << chk_unroll << "\n";
          return kOk;
        }
        std::cout << (*answer == "unsat" ? "EQUIVALENT" : *answer == "sat" ? "MISMATCH" : "UNKNOWN") << " solver="
                  << *answer << "\n";
        return *answer == "unsat" ? kOk : *answer == "sat" ? kBugs : kInternal;
      }
      if (chk_mode == "exhaustive") {
        ExhaustiveResult r = exhaustive_equivalence(a, b, chk_unroll);
        std::cout << (r.equivalent ? "EQUIVALENT" : "MISMATCH " + to_string(r.verdict)) << " sequences=" << r.sequences
                  << "\n";
        return r.equivalent ? kOk : kBugs;
      }
      if (chk_stim.empty()) return fail("usage", "--stimulus is required for this mode", kUsage);
      Stimulus s = parse_stimulus(slurp(chk_stim));
      OracleVerdict v = chk_mode == "internal"
                            ? internal_differential(a, b, s)
                            : tool_differential(adapter_from(chk_tool, chk_timeout), a, b, s, scratch_dir("check"));
      std::cout << to_string(v) << "\n";
      return verdict_exit(v);
    }
    if (*reduce_cmd) {
      Design d = load_design(red_design);
      Stimulus s = parse_stimulus(slurp(red_stim));
      ToolAdapter tool = adapter_from(red_tool, red_timeout);
      const std::string dir = scratch_dir("reduce");
      OracleVerdict first = reference_check(tool, d, s, dir);
      if (first.equivalent() || first.kind == OracleVerdict::Kind::AdapterError)
        return fail("precondition", "the tool does not fail on the input design", kUsage);
      const std::uint64_t want = signature(first).hash;
      ReduceStats stats;
      Design r = reduce(
          d,
          [&](const Design& c) {
            OracleVerdict v = reference_check(tool, c, s, dir);
            if (v.kind != first.kind) return false;
            return v.kind == OracleVerdict::Kind::Mismatch || signature(v).hash == want;
          },
          &stats);
      emit(red_out, print_design(r));
      std::cerr << fmt::format("statements {} -> {}, {} predicate calls\n", statement_count(d), statement_count(r),
                               stats.predicate_calls);
      return kOk;
    }
    if (*replay) {
      BugReport r = load_report(rep_dir);
      OracleVerdict v = replay_report(r, scratch_dir("replay"));
      const bool same = replay_matches(r, v);
      std::cout << to_string(v) << "\n" << (same ? "REPRODUCED" : "NOT-REPRODUCED") << "\n";
      return same ? kOk : kBugs;
    }
    if (*report) {
      BugReport r = load_report(show_dir);
      std::cout << fmt::format("{} class={} tool={} signature={}\n{}\nstatements {} -> {}\n", r.id, r.classification,
                               r.tool.name, r.signature.id(), to_string(r.verdict), r.original_statements,
                               r.reduced_statements);
      return kOk;
    }
    if (*metrics) {
      Design d = load_design(met_design);
      std::cout << to_string(structural_metrics(d)) << " timing=" << timing_complexity(d)
                << " statements=" << statement_count(d) << "\n";
      return kOk;
    }
    if (*run) {
      CampaignConfig cfg = run_config.empty() ? CampaignConfig{} : load_campaign_config(run_config);
      for (const auto& s : run_sets) apply_config_override(cfg, s);
      if (!run_out.empty()) cfg.out_dir = run_out;
      if (run->count("--seed")) cfg.seed = run_seed;
      if (run_iters) cfg.max_iter = run_iters;
      if (run_workers) cfg.workers = run_workers;
      cfg.check();
      if (dump_only) {
        std::cout << dump_campaign_config(cfg);
        return kOk;
      }
      CampaignStats stats = run_campaign(cfg);
      std::cout << to_string(stats) << "\n";
      for (const auto& [phase, secs] : stats.phase_seconds) std::cout << fmt::format("  {:<9} {:.3f}s\n", phase, secs);
      return stats.distinct_signatures > 0 ? kBugs : kOk;
    }
  } catch (const Error& e) {
    return fail(error_class(e), e.what(), usage_class(e) ? kUsage : kInternal);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kInternal);
  }
  return kUsage;
}
