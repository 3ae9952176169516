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
#include <string>
#include <vector>

#include "synthfuzz/ast.hpp"
#include "synthfuzz/metrics.hpp"
#include "synthfuzz/point.hpp"
#include "synthfuzz/rng.hpp"
#include "synthfuzz/simulator.hpp"

namespace synthfuzz {

enum class GuardMode { Profiled, Tautological };

const char* to_string(GuardMode m);
GuardMode guard_mode_from_string(const std::string& text);

struct MutationConfig {
  GuardMode mode = GuardMode::Profiled;
  std::size_t dead_min = 2;  // dead-code statements per guard
  std::size_t dead_max = 6;
  double p_wrap = 0.3;
  std::size_t max_guards = 3;
  bool verify_guards = true;  // re-simulate with guard assertions after each guard
  std::uint64_t seed = 1;

  void check() const;
};

struct GuardPredicate {
  Expr expr;
  GuardKind kind = GuardKind::Profiled;
  std::string variable;
  std::string justification;
};

/// One step of a variant's mutation history. `point` addresses the inserted
/// guard If for inject and wrap records (its `position` is the statement
/// index), and the insertion position for clone records.
struct MutationRecord {
  enum class Kind { Clone, Inject, Wrap };
  Kind kind = Kind::Clone;
  InsertionPoint point;
  GuardKind guard = GuardKind::None;
  std::string guard_text;  // clone
  std::size_t count = 0;   // inject
  std::uint64_t seed = 0;  // inject
  std::string module;      // wrap: name of the extracted module

  bool operator==(const MutationRecord&) const = default;
};

struct Lineage {
  std::string seed_id;
  std::vector<MutationRecord> log;

  bool operator==(const Lineage&) const = default;
};

/// One line per record: `clone <point> <mode> <guard>`, `inject <point> <count>
/// <seed>`, `wrap <point> <module>`, preceded by `seed <id>`.
std::string serialize_lineage(const Lineage& l);
Lineage parse_lineage(const std::string& text);

/// Re-applies a mutation log to the seed design it was recorded against.
Design replay_lineage(const Design& seed, const Lineage& l);

struct Variant {
  Design design;
  Lineage lineage;
  Metrics metrics;
  std::size_t timing = 0;
  bool noop = false;        // no mutation could be applied
  GuardCheck guard_check;   // accumulated over the per-guard verifications
};

/// Statement positions whose module has at least one guard-eligible variable.
std::vector<InsertionPoint> enumerate_insertion_points(const Design& d);

/// Always-true predicate for `point`. Profiled mode falls back to a
/// tautology when the point never executed under the profiling stimulus.
GuardPredicate synthesize_guard(const ValuationProfile& profile, const Design& d,
                                const InsertionPoint& point, GuardMode mode, Rng& rng);

/// Moves the statements from `point` to the end of their list into the
/// then-branch of a new guarded If placed at `point`.
Design clone_path_with_guard(const Design& d, const InsertionPoint& point, const GuardPredicate& guard);

/// Fills the else-branch of the guard If at `at` with `count` dead
/// statements. New declarations are placed after the module's leading
/// declarations, which shifts item indices; the guard's new address is
/// written to `moved` when given.
Design inject_dead_code(const Design& d, const InsertionPoint& at, std::size_t count, std::uint64_t seed,
                        InsertionPoint* moved = nullptr);

/// Extracts the guard If at `at` into a new combinational module whose
/// outputs are the next values of the registers the If writes.
Design wrap_subsystem(const Design& d, const InsertionPoint& at, std::string* module_name = nullptr);

/// Clone, inject and optionally wrap, 1..max_guards times.
Variant mutate(const Design& d, const ValuationProfile& profile, const MutationConfig& cfg);

}  // namespace synthfuzz
