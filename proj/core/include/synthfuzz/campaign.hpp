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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "synthfuzz/equiv.hpp"
#include "synthfuzz/mutator.hpp"
#include "synthfuzz/seed_gen.hpp"

namespace synthfuzz {

enum class OracleMode { Internal, CrossTool, SmtExport };

const char* to_string(OracleMode m);
OracleMode oracle_mode_from_string(const std::string& text);

struct CampaignConfig {
  GenConfig gen;
  MutationConfig mutation;
  std::size_t pool = 8;  // variants generated per iteration
  std::size_t k = 3;     // variants selected per iteration
  std::size_t max_iter = 10;
  std::size_t stimulus_cycles = 256;
  std::vector<ToolAdapter> tools;
  OracleMode oracle = OracleMode::Internal;
  std::size_t smt_unroll = 8;
  bool reduce = true;
  std::string out_dir = "synthfuzz-out";
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::string seed_path;  // fixed seed design for every iteration; empty = generate one per iteration

  void check() const;
};

/// Reads a sectioned INI file: [campaign], [gen], [mutation] and one
/// [tool.<name>] section per adapter. Unknown keys are rejected.
CampaignConfig load_campaign_config(const std::string& path);

/// Applies one `section.key=value` override, e.g. `campaign.max_iter=20`.
void apply_config_override(CampaignConfig& cfg, const std::string& assignment);

/// INI rendering of a configuration; load_campaign_config reads it back.
std::string dump_campaign_config(const CampaignConfig& cfg);

struct CampaignStats {
  std::size_t iterations = 0;
  std::size_t skipped_iterations = 0;  // resumed from the corpus or failed
  std::size_t variants_generated = 0;
  std::size_t variants_selected = 0;
  std::size_t evaluations = 0;  // (variant, tool) verdicts
  std::map<std::string, std::size_t> verdicts;  // verdict kind -> count
  std::size_t new_bugs = 0;
  std::size_t distinct_signatures = 0;  // in the dedup database after the run
  std::vector<std::string> reports;    // report directories written by this run
  std::map<std::string, double> phase_seconds;
};

/// Per iteration: generate (or load) a seed, profile it, mutate a pool of
/// variants, select k by posterior, evaluate them and triage failures.
/// Writes `out_dir/campaign.log`, which is byte-identical across runs of the
/// same configuration in internal mode, plus one corpus directory per
/// iteration, the signature database and bug reports. Iterations whose
/// corpus directory is complete are skipped, so an interrupted campaign
/// resumes where it stopped.
CampaignStats run_campaign(const CampaignConfig& cfg);

std::string to_string(const CampaignStats& s);

/// Directory for scratch files: $SYNTHFUZZ_SCRATCH when set, otherwise
/// `fallback`.
std::string scratch_root(const std::string& fallback);

}  // namespace synthfuzz
