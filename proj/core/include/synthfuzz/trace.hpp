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
#include <string_view>
#include <vector>

namespace synthfuzz {

struct TraceSignal {
  std::string name;
  unsigned width = 1;
  bool operator==(const TraceSignal&) const = default;
};

/// Input vectors applied to the top module, one row per clock cycle.
/// `rst[t]` drives the implicit synchronous reset.
struct Stimulus {
  std::vector<TraceSignal> inputs;
  std::vector<std::vector<std::uint64_t>> values;  // [cycle][input]
  std::vector<bool> rst;                           // [cycle]

  std::size_t cycles() const { return values.size(); }
  bool operator==(const Stimulus&) const = default;
};

/// Recorded top-level outputs, one row per cycle, sampled after the
/// combinational settle and before the clock edge.
struct Trace {
  std::vector<TraceSignal> signals;
  std::vector<std::vector<std::uint64_t>> records;  // [cycle][signal]

  bool operator==(const Trace&) const = default;
};

/// Canonical text: `name width` per signal, a blank line, then one line per
/// cycle holding each signal's bits MSB first, signals separated by a space.
std::string dump_trace(const Trace& t);
Trace parse_trace(std::string_view text);

/// Same layout as a trace; the first column is the 1-bit `rst`.
std::string dump_stimulus(const Stimulus& s);
Stimulus parse_stimulus(std::string_view text);

struct Verdict {
  enum class Kind { Equivalent, Mismatch, InterfaceMismatch };
  Kind kind = Kind::Equivalent;
  std::size_t cycle = 0;
  std::string signal;
  std::uint64_t expected = 0;
  std::uint64_t actual = 0;
  std::string detail;

  bool equivalent() const { return kind == Kind::Equivalent; }
};

/// Bitwise comparison of every signal in every cycle. `a` is the expected side.
Verdict compare_traces(const Trace& a, const Trace& b);

std::string to_string(const Verdict& v);

}  // namespace synthfuzz
