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
#include <memory>
#include <string>
#include <vector>

#include "synthfuzz/ast.hpp"
#include "synthfuzz/point.hpp"
#include "synthfuzz/trace.hpp"

namespace synthfuzz {

/// How a profiled variable is driven.
enum class DriverClass { Input, Combinational, Sequential };

const char* to_string(DriverClass c);

/// Facts about one variable, observed every time its insertion point executed.
/// min/max follow the variable's own ordering (two's complement when signed)
/// and are stored as bit patterns.
struct VarFacts {
  std::string name;
  unsigned width = 1;
  bool is_signed = false;
  DriverClass driver = DriverClass::Combinational;
  std::uint64_t hits = 0;
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  std::uint64_t first = 0;          // first observed value
  std::uint64_t constant_mask = 0;  // bits that never differed from `first`
  std::uint32_t distinct = 0;       // saturates at kDistinctCap

  static constexpr std::uint32_t kDistinctCap = 16;
};

struct PointProfile {
  InsertionPoint point;
  std::uint64_t hits = 0;  // executions summed over all instances
  std::vector<VarFacts> vars;
};

/// Per-insertion-point valuation facts gathered under one stimulus. Points of
/// a module are aggregated over all of its instances.
struct ValuationProfile {
  Stimulus stimulus;
  std::vector<PointProfile> points;

  const PointProfile* find(const InsertionPoint& p) const;
};

/// Result of re-simulating with guard assertions enabled. Only procedural
/// guards (tagged If statements and tagged ternaries inside always blocks)
/// are asserted; extracted guards in continuous logic are evaluated every
/// cycle regardless of reachability and are not meaningful to assert.
struct GuardCheck {
  std::uint64_t evaluations = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> violated;  // "module/item: cycle N", first few only
};

/// Signals of a module that a guard may test: width > 1 and driven by an
/// input port, a continuous assignment, an instance output or an always block.
std::vector<VarFacts> eligible_variables(const Design& d, const ModuleDef& m);

/// Compiled two-state cycle simulator of a validated, loop-free design.
class Simulator {
 public:
  explicit Simulator(const Design& design);
  ~Simulator();
  Simulator(Simulator&&) noexcept;
  Simulator& operator=(Simulator&&) noexcept;

  Trace run(const Stimulus& s);
  ValuationProfile profile(const Stimulus& s);
  GuardCheck check_guards(const Stimulus& s);

  const std::vector<TraceSignal>& inputs() const;
  const std::vector<TraceSignal>& outputs() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Trace simulate(const Design& d, const Stimulus& s);
ValuationProfile profile(const Design& d, const Stimulus& s);
GuardCheck check_guards(const Design& d, const Stimulus& s);

/// Top-level input interface of a design, declaration order.
std::vector<TraceSignal> input_interface(const Design& d);
std::vector<TraceSignal> output_interface(const Design& d);

}  // namespace synthfuzz
