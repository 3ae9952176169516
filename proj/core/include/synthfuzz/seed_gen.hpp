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
#include <vector>

#include "synthfuzz/ast.hpp"
#include "synthfuzz/trace.hpp"

namespace synthfuzz {

/// Relative frequencies of expression shapes.
struct OpWeights {
  double arith = 3;     // + - *
  double bitwise = 3;   // & | ^
  double unary = 1;     // ~ -
  double shift = 1;     // << >> by a small amount
  double ternary = 1;
  double concat = 1;
  double compare = 3;   // 1-bit contexts only
  double reduce = 1;    // 1-bit contexts only
  double logical = 1;   // 1-bit contexts only
};

struct GenConfig {
  std::size_t line_min = 700;
  std::size_t line_max = 1000;
  std::size_t min_submodules = 2;
  std::size_t max_submodules = 6;
  std::size_t max_instances = 6;  // instances reachable from top
  std::size_t max_input_bits = 0;  // total width of top inputs, 0 = unbounded
  unsigned max_expr_depth = 3;
  unsigned max_control_depth = 2;  // nesting of if/case inside an always block
  std::vector<unsigned> widths{1, 4, 8, 8, 16, 32};
  OpWeights weights;
  double p_sequential = 0.55;
  double p_signed = 0.2;
  std::uint64_t seed = 1;

  /// Throws ConfigError when the configuration violates its invariants.
  void check() const;
};

/// Random well-typed, loop-free design whose printed size lies in the
/// configured line budget. Deterministic per configuration.
Design generate_seed(const GenConfig& cfg);

/// Uniform random input vectors; `rst` is high for the first
/// `reset_cycles` cycles.
Stimulus generate_stimulus(const Design& d, std::size_t cycles, std::uint64_t seed,
                           std::size_t reset_cycles = 2);

}  // namespace synthfuzz
