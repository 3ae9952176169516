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
#include "synthfuzz/trace.hpp"

namespace synthfuzz {

struct OracleVerdict {
  enum class Kind { Equivalent, Mismatch, Crash, Timeout, AdapterError };
  Kind kind = Kind::Equivalent;
  // Mismatch
  std::size_t cycle = 0;
  std::string signal;
  std::uint64_t expected = 0;
  std::uint64_t actual = 0;
  std::string tool_a;  // expected side
  std::string tool_b;
  // Crash / Timeout
  std::string tool;
  int exit_code = 0;
  std::string output;  // captured console excerpt
  std::string detail;

  bool equivalent() const { return kind == Kind::Equivalent; }
};

const char* to_string(OracleVerdict::Kind k);
std::string to_string(const OracleVerdict& v);

/// Simulates both designs on `s` and compares the traces bit by bit.
OracleVerdict internal_differential(const Design& seed, const Design& variant, const Stimulus& s);

/// A synthesis or simulation tool. Commands starting with `builtin:` run in
/// process: `builtin:reference` is the internal simulator and
/// `builtin:mock-A` (B, C, none) the mock synthesizer followed by it.
/// Other commands run through /bin/sh with the placeholders {input}, {top},
/// {workdir}, {trace_out}, {stimulus} and {testbench} substituted.
struct ToolAdapter {
  std::string name;
  std::string command;
  double timeout_seconds = 60;
  int expected_exit = 0;
  std::string normalizer;  // optional command turning raw tool output into {trace_out}

  bool builtin() const;
  void check() const;
};

struct ToolResult {
  enum class Status { Ok, Crash, Timeout, AdapterError };
  Status status = Status::Ok;
  Trace trace;
  int exit_code = 0;
  std::string output;
  std::string detail;
};

/// Runs an adapter on one design. External commands get a testbench,
/// the design source and the stimulus written into `workdir`.
ToolResult run_tool(const ToolAdapter& adapter, const Design& d, const Stimulus& s, const std::string& workdir);

/// The external-process half of run_tool.
ToolResult run_external_tool(const ToolAdapter& adapter, const Design& d, const Stimulus& s,
                             const std::string& workdir);

/// Verilog testbench driving `s` into `d`'s top module and writing the
/// canonical trace format to `trace_path`.
std::string emit_testbench(const Design& d, const Stimulus& s, const std::string& trace_path);

/// Runs every adapter and compares all trace pairs. The first failing pair,
/// crash or timeout is reported.
OracleVerdict cross_tool_differential(const Design& d, const std::vector<ToolAdapter>& adapters,
                                      const Stimulus& s, const std::string& scratch);

/// EMI check under one tool: compiles seed and variant with the same tool and
/// compares the results.
OracleVerdict tool_differential(const ToolAdapter& adapter, const Design& seed, const Design& variant,
                                const Stimulus& s, const std::string& scratch);

/// Triage oracle: the tool's result on `d` against the internal simulator.
OracleVerdict reference_check(const ToolAdapter& adapter, const Design& d, const Stimulus& s,
                              const std::string& scratch);

}  // namespace synthfuzz
