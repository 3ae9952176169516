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
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "synthfuzz/ast.hpp"
#include "synthfuzz/equiv.hpp"
#include "synthfuzz/trace.hpp"

namespace synthfuzz {

using DesignPredicate = std::function<bool(const Design&)>;

struct ReduceStats {
  std::size_t predicate_calls = 0;  // calls on valid candidates
  std::size_t invalid_candidates = 0;
  std::size_t accepted = 0;
};

/// Deletes AST regions (statements, module items, top-level output ports,
/// unreferenced modules) while `pred` keeps holding: contiguous halves of
/// each list first, then ever smaller chunks down to single regions, repeated
/// to a fixpoint. Candidates that fail validation or contain a combinational
/// loop are discarded without calling `pred`. The result is 1-minimal: no
/// single region deletion preserves `pred`. Throws FlakyPredicate when
/// `pred(d)` is false.
Design reduce(const Design& d, const DesignPredicate& pred, ReduceStats* stats = nullptr);

/// Every design obtained from `d` by deleting exactly one region, valid or not.
std::vector<Design> single_deletions(const Design& d);

/// True when no valid single-region deletion of `d` satisfies `pred`.
bool is_one_minimal(const Design& d, const DesignPredicate& pred);

/// Renames the top module's output ports to o0, o1, ... in declaration order,
/// after moving `first` (when given) to the front. Reduced cases of the same
/// bug then report the same signal name.
Design canonicalize_outputs(const Design& d, const std::string& first = {});

struct FailureSignature {
  std::string kind;  // verdict kind
  std::string tool;
  std::string text;  // normalized failure text
  std::uint64_t hash = 0;

  std::string id() const;  // 16 hex digits
  bool operator==(const FailureSignature&) const = default;
};

/// Strips absolute paths, hex addresses, line/column numbers and timestamps.
std::string normalize_failure_text(const std::string& text);

/// Crash signatures hash the normalized tool output (`v.output` when
/// `tool_output` is empty); mismatch signatures hash the signal name and tool
/// pair, never the cycle.
FailureSignature signature(const OracleVerdict& v, const std::string& tool_output = "");

/// FNV-1a, 64 bit.
std::uint64_t fnv1a(std::string_view s);

/// Signature store. With a path, it is loaded on construction and appended
/// to on every new signature. Single writer.
class DedupDb {
 public:
  DedupDb() = default;
  explicit DedupDb(std::string path);

  /// True when `sig` was not seen before; records it.
  bool insert(const FailureSignature& sig);
  bool contains(const FailureSignature& sig) const;
  std::size_t size() const { return seen_.size(); }

 private:
  std::string path_;
  std::set<std::string> seen_;
};

struct BugReport {
  std::string id;
  char classification = 'M';  // 'C' crash, 'M' miscompilation
  ToolAdapter tool;
  std::string seed_id;
  std::uint64_t seed_rng = 0;
  std::string design;  // reduced source
  std::size_t original_statements = 0;
  std::size_t reduced_statements = 0;
  Stimulus stimulus;
  std::string lineage;  // serialized mutation log
  OracleVerdict verdict;
  FailureSignature signature;
  std::string created;  // ISO-8601 UTC
};

/// Writes `dir/<id>/` with report.txt, design.v, stimulus.txt and
/// lineage.txt. Refuses to overwrite an existing report. Returns the report
/// directory.
std::string persist_report(const BugReport& r, const std::string& dir);

/// Reads a report directory written by persist_report.
BugReport load_report(const std::string& report_dir);

/// Re-runs the report's tool on its reduced design against the internal
/// simulator.
OracleVerdict replay_report(const BugReport& r, const std::string& scratch);

/// True when `v` reproduces the recorded verdict: same kind and signature.
bool replay_matches(const BugReport& r, const OracleVerdict& v);

}  // namespace synthfuzz
